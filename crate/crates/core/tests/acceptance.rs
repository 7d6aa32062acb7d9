//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

mod common;

use std::time::{Duration, Instant};

use absorb::classify::{
    check_lattice_witness, check_witness, classify_submodule, one_absorbing_via_ideals, residue_verdict,
};
use absorb::harness::{default_family, find_counterexample, run_suite, CheckId, Claim, Instance, Status};
use absorb::intlattice::IntegerLattice;
use absorb::multiplication::{is_multiplication, is_multiplication_smith};
use absorb::radicals::{rad1_submodule, rad_submodule};
use absorb::{Limits, Module, ModuleSpec, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn build(ring: RingSpec, module: ModuleSpec) -> Module {
    Instance::new(ring, module).build(&Limits::default()).expect("instance builds")
}

fn family() -> Vec<Module> {
    default_family()
        .iter()
        .map(|i| i.build(&Limits::default()).expect("default family builds"))
        .collect()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t < limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_six_in_z30() -> Verdict {
    let start = Instant::now();
    let m = build(RingSpec::Integers, ModuleSpec::Znz(30));
    let n = m.span([m.parse_element("6").map_err(|e| e.to_string())?]);
    let v = classify_submodule(&m, &n).map_err(|e| e.to_string())?;
    ensure(v.two_absorbing() && !v.one_absorbing(), || format!("flags {v:?}"))?;
    let [a, b, x] = v.one_absorbing_witness.unwrap();
    let s = m.scalars();
    let triple = (s.label(a), s.label(b), m.label(x).to_string());
    ensure(triple == ("2".into(), "2".into(), "3".into()), || format!("witness {triple:?}"))?;
    let w = check_witness(&m, &n, "2", "2", "3", true).map_err(|e| e.to_string())?;
    ensure(
        w.abm_in_n && !w.ab_in_residue && !w.m_in_n && w.residue == "(6)",
        || format!("clause profile {w:?}"),
    )?;
    within(Duration::from_secs(1), start)?;
    Ok("2*2*3 in <6>, 4 not in (6), 3 not in <6>".into())
}

fn c2_lattice() -> Verdict {
    let start = Instant::now();
    let n = IntegerLattice::new(2, vec![vec![3, 0]]).map_err(|e| e.to_string())?;
    let w = check_lattice_witness(&n, 3, 2, &[1, 0], true).map_err(|e| e.to_string())?;
    ensure(
        w.abm_in_n && !w.ab_in_residue && !w.m_in_n && w.residue == "(0)" && w.refutes(),
        || format!("{w:?}"),
    )?;
    within(Duration::from_secs(1), start)?;
    Ok("(3,2,(1,0)) refutes span{(3,0)}, (N:M) = (0)".into())
}

fn c3_local_m2() -> Verdict {
    use ModuleSpec::{Product, Regular};
    let dual = RingSpec::PolyQuot {
        modulus: 2,
        coeffs: vec![0, 0, 1],
    };
    let cases = [
        (RingSpec::Zn(4), Regular),
        (dual.clone(), Regular),
        (RingSpec::Zn(4), Product(vec![Regular, Regular])),
        (dual, Product(vec![Regular, Regular])),
    ];
    let mut checked = 0;
    let mut z4_squared = 0;
    for (i, (r, spec)) in cases.into_iter().enumerate() {
        let m = build(r, spec);
        let subs = m.enumerate_submodules().map_err(|e| e.to_string())?;
        if i == 2 {
            z4_squared = subs.len();
        }
        for n in subs.iter().filter(|n| m.is_proper(n)) {
            let v = classify_submodule(&m, n).map_err(|e| e.to_string())?;
            ensure(v.one_absorbing(), || format!("{} in {}", m.submodule_label(n), m.description()))?;
            checked += 1;
        }
    }
    ensure(z4_squared == 15, || format!("Z_4^2 has {z4_squared} submodules"))?;
    Ok(format!("{checked} proper submodules, all 1-absorbing prime"))
}

fn c4_ideal_form() -> Verdict {
    let start = Instant::now();
    let mods = family();
    let mut pairs = 0;
    for m in &mods {
        let a = m.analysis().map_err(|e| e.to_string())?;
        for (n, v) in a.proper() {
            let r = one_absorbing_via_ideals(m, n).map_err(|e| e.to_string())?;
            ensure(r.holds() == v.one_absorbing(), || {
                format!("disagree on {} in {}", m.submodule_label(n), m.description())
            })?;
            pairs += 1;
        }
    }
    ensure(mods.len() >= 16, || format!("{} instances", mods.len()))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("{pairs} pairs over {} instances agree", mods.len()))
}

fn c5_quasilocal() -> Verdict {
    let mut exhibiting = 0;
    let mut nonlocal = 0;
    for m in &family() {
        let a = m.analysis().map_err(|e| e.to_string())?;
        let quasi = m.ring_is_quasilocal().map_err(|e| e.to_string())?;
        let gap = a.proper().any(|(_, v)| v.one_absorbing() && !v.prime());
        if gap {
            exhibiting += 1;
            ensure(quasi, || format!("{} is not quasilocal", m.description()))?;
        }
        if !quasi {
            nonlocal += 1;
            ensure(a.primes() == a.one_absorbing(), || {
                format!("prime and 1-absorbing sets differ on {}", m.description())
            })?;
        }
    }
    Ok(format!("{exhibiting} instances with a gap, all quasilocal; {nonlocal} non-quasilocal agree"))
}

fn c6_residues() -> Verdict {
    let mut ideals = 0;
    for m in &family() {
        let a = m.analysis().map_err(|e| e.to_string())?;
        for n in a.one_absorbing() {
            let label = || format!("{} in {}", m.submodule_label(n), m.description());
            let v = residue_verdict(m, n).map_err(|e| e.to_string())?;
            ensure(v.one_absorbing(), || format!("(N:M) fails for {}", label()))?;
            ideals += 1;
            for x in (0..m.size() as u32).filter(|&x| !n.contains(x)) {
                let v = m
                    .scalars()
                    .classify(&m.residue_elt_set(n, x))
                    .map_err(|e| e.to_string())?;
                ensure(v.one_absorbing(), || format!("(N:{}) fails for {}", m.label(x), label()))?;
                ideals += 1;
            }
        }
    }
    Ok(format!("{ideals} residue ideals are 1-absorbing prime"))
}

fn suite_failures(ids: &[CheckId]) -> (usize, usize, usize, Vec<String>) {
    let rep = run_suite(&default_family(), ids, &Limits::default());
    let bad = rep
        .results
        .iter()
        .filter(|r| matches!(r.status, Status::Fail(_) | Status::Error(_)))
        .map(|r| format!("{} on {}: {}", r.check, r.instance, r.detail()))
        .collect();
    (rep.results.len(), rep.count("pass"), rep.count("skipped"), bad)
}

fn c7_rad1() -> Verdict {
    for m in &family() {
        for n in m.enumerate_submodules().map_err(|e| e.to_string())?.iter() {
            let r1 = rad1_submodule(m, n).map_err(|e| e.to_string())?.result;
            let r = rad_submodule(m, n).map_err(|e| e.to_string())?;
            let label = || format!("{} in {}", m.submodule_label(n), m.description());
            ensure(r1.is_subset(&r), || format!("rad1 not in rad for {}", label()))?;
            ensure(n.is_subset(&r1), || format!("N not in rad1 for {}", label()))?;
            ensure((r1 == m.whole()) == (*n == m.whole()), || format!("rad1 = M mismatch for {}", label()))?;
        }
    }
    let (cells, pass, _, bad) = suite_failures(&[CheckId::Rad1Laws, CheckId::Rad1Fg, CheckId::Rad1Sum]);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("direct laws hold; {pass}/{cells} suite cells pass"))
}

fn c8_section3() -> Verdict {
    for m in &family() {
        let direct = is_multiplication(m).map_err(|e| e.to_string())?.is_none();
        let smith = is_multiplication_smith(m).map_err(|e| e.to_string())?.smith();
        ensure(direct == smith, || format!("oracles disagree on {}", m.description()))?;
    }
    let z4sq = build(RingSpec::Zn(4), ModuleSpec::Product(vec![ModuleSpec::Regular, ModuleSpec::Regular]));
    ensure(is_multiplication(&z4sq).map_err(|e| e.to_string())?.is_some(), || {
        "Z_4^2 reported multiplication".into()
    })?;
    let ids = [
        CheckId::MultEq,
        CheckId::Main,
        CheckId::MainCor,
        CheckId::Bolum,
        CheckId::GupRing,
        CheckId::Char,
    ];
    let (cells, pass, skipped, bad) = suite_failures(&ids);
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{pass} pass, {skipped} skipped-with-reason of {cells}"))
}

fn c9_counterexamples() -> Verdict {
    let fam = default_family();
    let lim = Limits::default();
    let expect = [
        (Claim::TwoabsNotOneabs, "Z_30 over Z", "<6>"),
        (Claim::OneabsNotPrime, "Z_4 over Z_4", "<0>"),
    ];
    for (claim, inst, sub) in expect {
        let a = find_counterexample(claim, &fam, &lim);
        let b = find_counterexample(claim, &fam, &lim);
        ensure(a == b, || format!("{claim} differs between runs"))?;
        let w = a.witness.ok_or_else(|| format!("{claim}: none found"))?;
        ensure(w.instance == inst && w.submodule == sub, || {
            format!("{claim}: got {} in {}", w.submodule, w.instance)
        })?;
    }
    Ok("<6>/Z_30 and <0>/Z_4, stable across runs".into())
}

fn c10_oracles() -> Verdict {
    let z30 = build(RingSpec::Integers, ModuleSpec::Znz(30));
    let n = z30.enumerate_submodules().map_err(|e| e.to_string())?.len();
    ensure(n == 8, || format!("Z_30 has {n} submodules"))?;
    let z4sq = build(RingSpec::Zn(4), ModuleSpec::Product(vec![ModuleSpec::Regular, ModuleSpec::Regular]));
    let n = z4sq.enumerate_submodules().map_err(|e| e.to_string())?.len();
    ensure(n == 15, || format!("Z_4^2 has {n} submodules"))?;

    for inst in default_family().iter().filter(|i| i.ring != RingSpec::Integers) {
        let m = inst.build(&Limits::default()).map_err(|e| e.to_string())?;
        let r = m.scalars().ring();
        for a in 0..r.size() as u32 {
            let brute = (0..r.size() as u32).any(|b| r.mul(a, b) == r.one());
            ensure(brute == r.is_unit(a), || format!("unit {} in {}", r.label(a), r.name()))?;
        }
        if let RingSpec::Zn(k) = inst.ring {
            for a in 0..k as u32 {
                let label: u64 = r.label(a).parse().unwrap();
                ensure(r.is_unit(a) == (common::gcd(label, k) == 1), || format!("gcd test on Z_{k}"))?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut decided = 0;
    while decided < 1000 {
        let rank = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=rank);
        let gens: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..rank).map(|_| rng.gen_range(-50..=50)).collect())
            .collect();
        let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
        let mut v: Vec<i64> = (0..rank)
            .map(|i| gens.iter().zip(&coeffs).map(|(g, c)| g[i] * c).sum())
            .collect();
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..rank);
            v[i] += rng.gen_range(-3..=3);
        }
        let Some(oracle) = common::rational_member(&gens, &v) else {
            continue;
        };
        let lat = IntegerLattice::new(rank, gens.clone()).map_err(|e| e.to_string())?;
        let got = lat.contains(&v).map_err(|e| e.to_string())?;
        ensure(got == oracle, || format!("membership of {v:?} in {gens:?}"))?;
        if oracle && rank <= 2 {
            ensure(common::brute_member(&gens, &v, 20), || format!("brute force misses {v:?} in {gens:?}"))?;
        }
        decided += 1;
    }
    Ok(format!("submodule counts 8 and 15, unit sets, {decided} lattice cases"))
}

fn c11_goldens() -> Verdict {
    let problems = common::check_goldens();
    ensure(problems.is_empty(), || problems.join("; "))?;
    Ok(format!(
        "{} scripts x {} formats, byte-identical twice",
        common::SCRIPTS.len(),
        common::FORMATS.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("<6> in Z_30 over Z is 2-absorbing, not 1-absorbing prime", c1_six_in_z30),
        ("integer-lattice witness in Z^2", c2_lattice),
        ("local rings with m^2 = 0", c3_local_m2),
        ("elementwise vs ideal-form 1-absorbing test", c4_ideal_form),
        ("1-absorbing-not-prime forces quasilocal", c5_quasilocal),
        ("residues of 1-absorbing primes", c6_residues),
        ("rad1 laws", c7_rad1),
        ("multiplication-module suite", c8_section3),
        ("documented counterexamples", c9_counterexamples),
        ("brute-force oracles", c10_oracles),
        ("CLI golden files", c11_goldens),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
