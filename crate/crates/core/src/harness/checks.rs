use std::collections::HashMap;

use crate::classify::{classify_submodule, one_absorbing_via_ideals, scan, SubmoduleVerdict};
use crate::elemset::ElemSet;
use crate::error::Result;
use crate::ideal::{classify_ideal, good_unit_property, quotient_ring, Ideal, Scalars};
use crate::module::{quotient_module, Module, Submodule};
use crate::multiplication::{is_multiplication, is_multiplication_smith, MaximalStatus};
use crate::radicals::{minimal_one_absorbing_over, one_absorbing_over, rad1_submodule, rad_submodule};
use crate::ring::Ring;

use super::{CheckId, Outcome};

const CHAIN_CAP: usize = 10_000;

pub(super) fn run(id: CheckId, m: &Module) -> Result<Outcome> {
    match id {
        CheckId::Chain => chain(m),
        CheckId::LocalM2 => local_m2(m),
        CheckId::Res1Abs => res_1abs(m),
        CheckId::Abk => abk(m),
        CheckId::IjkEq => ijk_eq(m),
        CheckId::Quasi => quasi(m),
        CheckId::QuasiEq => quasi_eq(m),
        CheckId::ChainLattice => chain_lattice(m),
        CheckId::HomPull => hom_pull(m),
        CheckId::HomPush => hom_push(m),
        CheckId::Quot => quot(m),
        CheckId::Minimal => minimal(m),
        CheckId::Rad1Laws => rad1_laws(m),
        CheckId::Rad1Fg => rad1_fg(m),
        CheckId::Rad1Sum => rad1_sum(m),
        CheckId::MultEq => mult_eq(m),
        CheckId::Main => main_thm(m),
        CheckId::MainCor => main_cor(m),
        CheckId::Bolum => bolum(m),
        CheckId::GupRing => gup_ring(m),
        CheckId::Char => characterisation(m),
    }
}

fn sub(m: &Module, n: &Submodule) -> String {
    m.submodule_label(n)
}

fn ideal(s: &Scalars, i: &ElemSet) -> String {
    s.ideal_label(i)
}

fn triple(m: &Module, [a, b, x]: [u32; 3]) -> String {
    let s = m.scalars();
    format!("(a, b, m) = ({}, {}, {})", s.label(a), s.label(b), m.label(x))
}

/// Ideals of the scalar ring that stand for proper ideals of `R` containing
/// `Ann(M)`. Over the integers these are `(d)` with `d | e`, `d > 1`.
fn proper_ideals(s: &Scalars) -> Result<Vec<ElemSet>> {
    Ok(s.ideals()?.into_iter().filter(|i| s.is_proper(i)).collect())
}

/// Re-evaluates every witness of a verdict against its defining clause.
fn replay(m: &Module, n: &Submodule, v: &SubmoduleVerdict) -> Option<String> {
    let s = m.scalars();
    let r = s.ring();
    let res = m.residue_set(n);
    if let Some([a, x]) = v.prime_witness {
        if !(n.contains(m.act(a, x)) && !n.contains(x) && !res.contains(a)) {
            return Some("prime witness does not violate".into());
        }
    }
    if let Some([a, b, x]) = v.one_absorbing_witness {
        let ab = r.mul(a, b);
        if !(s.is_nonunit(a) && s.is_nonunit(b) && n.contains(m.act(ab, x)))
            || res.contains(ab)
            || n.contains(x)
        {
            return Some("1-absorbing witness does not violate".into());
        }
    }
    if let Some([a, b, x]) = v.two_absorbing_witness {
        let ab = r.mul(a, b);
        if !n.contains(m.act(ab, x))
            || res.contains(ab)
            || n.contains(m.act(a, x))
            || n.contains(m.act(b, x))
        {
            return Some("2-absorbing witness does not violate".into());
        }
    }
    None
}

fn chain(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let mut combos = 0;
    for (n, v) in a.proper() {
        combos += 1;
        if let Some(e) = replay(m, n, v) {
            return Ok(Outcome::fail(combos, format!("N = {}: {e}", sub(m, n))));
        }
        if v.prime() && !v.one_absorbing() {
            return Ok(Outcome::fail(
                combos,
                format!("N = {} is prime but not 1-absorbing prime", sub(m, n)),
            ));
        }
        if v.one_absorbing() && !v.two_absorbing() {
            return Ok(Outcome::fail(
                combos,
                format!("N = {} is 1-absorbing prime but not 2-absorbing", sub(m, n)),
            ));
        }
    }
    let s = m.scalars();
    for i in proper_ideals(s)? {
        combos += 1;
        let v = s.classify(&i)?;
        if (v.prime() && !v.one_absorbing()) || (v.one_absorbing() && !v.two_absorbing()) {
            return Ok(Outcome::fail(
                combos,
                format!("ideal {} breaks the chain", ideal(s, &i)),
            ));
        }
    }
    Ok(Outcome::pass(combos))
}

fn local_m2(m: &Module) -> Result<Outcome> {
    if m.ring().is_integers() {
        return Ok(Outcome::skip("Z is not quasilocal"));
    }
    let s = m.scalars();
    let maxs = s.maximal_ideals()?;
    if maxs.len() != 1 {
        return Ok(Outcome::skip(format!(
            "ring has {} maximal ideals",
            maxs.len()
        )));
    }
    let mx = &maxs[0];
    if s.product(mx, mx) != s.zero_ideal() {
        return Ok(Outcome::skip(format!(
            "maximal ideal {} has non-zero square",
            ideal(s, mx)
        )));
    }
    let a = m.analysis()?;
    let mut combos = 0;
    for (n, v) in a.proper() {
        combos += 1;
        if let Some(w) = v.one_absorbing_witness {
            return Ok(Outcome::fail(
                combos,
                format!("N = {} not 1-absorbing prime: {}", sub(m, n), triple(m, w)),
            ));
        }
    }
    Ok(Outcome::pass(combos).note(format!("maximal ideal {}", ideal(s, mx))))
}

fn res_1abs(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let s = m.scalars();
    let mut combos = 0;
    for (n, v) in a.proper() {
        if !v.one_absorbing() {
            continue;
        }
        combos += 1;
        let res = m.residue_set(n);
        if let Some([x, y, z]) = s.classify(&res)?.one_absorbing_witness {
            return Ok(Outcome::fail(
                combos,
                format!(
                    "N = {}: (N:M) = {} not 1-absorbing prime at ({}, {}, {})",
                    sub(m, n),
                    ideal(s, &res),
                    s.label(x),
                    s.label(y),
                    s.label(z)
                ),
            ));
        }
        for x in (0..m.size() as u32).filter(|&x| !n.contains(x)) {
            combos += 1;
            let r = m.residue_elt_set(n, x);
            if !s.classify(&r)?.one_absorbing() {
                return Ok(Outcome::fail(
                    combos,
                    format!(
                        "N = {}, m = {}: (N:m) = {} not 1-absorbing prime",
                        sub(m, n),
                        m.label(x),
                        ideal(s, &r)
                    ),
                ));
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn abk(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let s = m.scalars();
    let r = s.ring();
    let ks = m.proper_submodules()?;
    let nonunits: Vec<u32> = s.nonunits().collect();
    let mut combos = 0;
    for (n, v) in a.proper() {
        if !v.one_absorbing() {
            continue;
        }
        let res = m.residue_set(n);
        for &x in &nonunits {
            for &y in &nonunits {
                let xy = r.mul(x, y);
                for k in &ks {
                    combos += 1;
                    if k.elements().iter().all(|e| n.contains(m.act(xy, e)))
                        && !res.contains(xy)
                        && !k.is_subset(n)
                    {
                        return Ok(Outcome::fail(
                            combos,
                            format!(
                                "N = {}, a = {}, b = {}, K = {}",
                                sub(m, n),
                                s.label(x),
                                s.label(y),
                                sub(m, k)
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn ijk_eq(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let s = m.scalars();
    let mut combos = 0;
    for (n, v) in a.proper() {
        let rep = one_absorbing_via_ideals(m, n)?;
        combos += rep.combos;
        if rep.holds() != v.one_absorbing() {
            let detail = match &rep.witness {
                Some((i, j, k)) => format!(
                    "ideal form refutes with I = {}, J = {}, K = {}",
                    ideal(s, i),
                    ideal(s, j),
                    sub(m, k)
                ),
                None => format!(
                    "ideal form holds, elementwise refutes with {}",
                    triple(m, v.one_absorbing_witness.expect("refuted"))
                ),
            };
            return Ok(Outcome::fail(combos, format!("N = {}: {detail}", sub(m, n))));
        }
    }
    Ok(Outcome::pass(combos))
}

fn quasi(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let quasilocal = m.ring_is_quasilocal()?;
    let exhibit = a
        .proper()
        .find(|(_, v)| v.one_absorbing() && !v.prime())
        .map(|(n, _)| n);
    let combos = a.proper().count() as u64;
    Ok(match exhibit {
        Some(n) if !quasilocal => Outcome::fail(
            combos,
            format!(
                "N = {} is 1-absorbing prime, not prime, over a non-quasilocal ring",
                sub(m, n)
            ),
        ),
        Some(n) => Outcome::pass(combos).note(format!(
            "N = {} is 1-absorbing prime, not prime; ring quasilocal",
            sub(m, n)
        )),
        None => Outcome::pass(combos).note("no 1-absorbing prime submodule that is not prime"),
    })
}

fn quasi_eq(m: &Module) -> Result<Outcome> {
    if m.ring_is_quasilocal()? {
        return Ok(Outcome::skip("ring is quasilocal"));
    }
    let a = m.analysis()?;
    let mut combos = 0;
    for (n, v) in a.proper() {
        combos += 1;
        if v.prime() != v.one_absorbing() {
            return Ok(Outcome::fail(
                combos,
                format!(
                    "N = {}: prime = {}, 1-absorbing prime = {}",
                    sub(m, n),
                    v.prime(),
                    v.one_absorbing()
                ),
            ));
        }
    }
    Ok(Outcome::pass(combos))
}

/// Maximal chains in Ω ordered by inclusion.
fn maximal_chains(omega: &[&Submodule]) -> (Vec<Vec<usize>>, bool) {
    let n = omega.len();
    let below = |i: usize, j: usize| i != j && omega[i].is_subset(omega[j]);
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)))
                .collect()
        })
        .collect();
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n)
        .filter(|&i| !(0..n).any(|k| below(k, i)))
        .map(|i| vec![i])
        .collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        if chains.len() >= CHAIN_CAP {
            return (chains, true);
        }
        let last = *path.last().expect("non-empty");
        if covers[last].is_empty() {
            chains.push(path);
            continue;
        }
        for &next in covers[last].iter().rev() {
            let mut p = path.clone();
            p.push(next);
            stack.push(p);
        }
    }
    (chains, false)
}

fn chain_lattice(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let omega = a.one_absorbing();
    let (chains, truncated) = maximal_chains(&omega);
    let mut combos = 0;
    for c in &chains {
        combos += 1;
        let members: Vec<&Submodule> = c.iter().map(|&i| omega[i]).collect();
        let meet = members
            .iter()
            .fold(m.whole(), |acc, p| m.intersection(&acc, p));
        let union = members
            .iter()
            .fold(ElemSet::empty(m.size()), |acc, p| acc.union(p.elements()));
        let union = match m.submodule(union) {
            Ok(u) if m.is_proper(&u) => u,
            _ => {
                return Ok(Outcome::fail(
                    combos,
                    "union of a chain is not a proper submodule".into(),
                ))
            }
        };
        for (what, p) in [("intersection", &meet), ("union", &union)] {
            if !scan(m, p).one_absorbing() {
                let labels: Vec<String> = members.iter().map(|p| sub(m, p)).collect();
                return Ok(Outcome::fail(
                    combos,
                    format!("{what} {} of chain {} is not 1-absorbing prime", sub(m, p), labels.join(" < ")),
                ));
            }
        }
    }
    let mut note = format!(
        "{} maximal chains; a finite chain's intersection and union are its bottom and top",
        chains.len()
    );
    if truncated {
        note.push_str(&format!(" (stopped at {CHAIN_CAP})"));
    }
    Ok(Outcome::pass(combos).note(note))
}

fn hom_pull(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let mut combos = 0;
    for k in m.proper_submodules()? {
        let f = quotient_module(m, &k)?;
        let ta = f.target.analysis()?;
        for n2 in ta.one_absorbing() {
            combos += 1;
            let pre = f.pull(m, n2);
            if let Some(w) = classify_submodule(m, &pre)?.one_absorbing_witness {
                return Ok(Outcome::fail(
                    combos,
                    format!(
                        "M -> M/{}: preimage {} of {} not 1-absorbing prime, {}",
                        sub(m, &k),
                        sub(m, &pre),
                        sub(&f.target, n2),
                        triple(m, w)
                    ),
                ));
            }
        }
    }
    for l in a.submodules().iter().filter(|l| l.len() >= 2) {
        let (lm, incl) = m.as_module(l)?;
        for n2 in a.one_absorbing() {
            let set = ElemSet::from_elems(
                lm.size(),
                (0..lm.size() as u32).filter(|&i| n2.contains(incl[i as usize])),
            );
            let pre = lm.submodule(set)?;
            if !lm.is_proper(&pre) {
                continue;
            }
            combos += 1;
            if let Some(w) = classify_submodule(&lm, &pre)?.one_absorbing_witness {
                return Ok(Outcome::fail(
                    combos,
                    format!(
                        "inclusion {} -> M: preimage {} of {} not 1-absorbing prime, {}",
                        sub(m, l),
                        sub(&lm, &pre),
                        sub(m, n2),
                        triple(&lm, w)
                    ),
                ));
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn hom_push(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let mut combos = 0;
    for k in m.proper_submodules()? {
        let f = quotient_module(m, &k)?;
        for n in a.one_absorbing().into_iter().filter(|n| k.is_subset(n)) {
            combos += 1;
            let img = f.push(n);
            if let Some(w) = classify_submodule(&f.target, &img)?.one_absorbing_witness {
                return Ok(Outcome::fail(
                    combos,
                    format!(
                        "M -> M/{}: image of {} not 1-absorbing prime, {}",
                        sub(m, &k),
                        sub(m, n),
                        triple(&f.target, w)
                    ),
                ));
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn quot(m: &Module) -> Result<Outcome> {
    let a = m.analysis()?;
    let mut combos = 0;
    for k in m.proper_submodules()? {
        let f = quotient_module(m, &k)?;
        // Coset c lies in N/K exactly when its least representative lies in N.
        let mut reps = vec![u32::MAX; f.target.size()];
        for x in (0..m.size() as u32).rev() {
            reps[f.project(x) as usize] = x;
        }
        for n in a.one_absorbing().into_iter().filter(|n| k.is_subset(n)) {
            combos += 1;
            let set = ElemSet::from_elems(
                f.target.size(),
                (0..f.target.size() as u32).filter(|&c| n.contains(reps[c as usize])),
            );
            let nk = f.target.submodule(set)?;
            if let Some(w) = classify_submodule(&f.target, &nk)?.one_absorbing_witness {
                return Ok(Outcome::fail(
                    combos,
                    format!(
                        "{}/{} in M/{} not 1-absorbing prime, {}",
                        sub(m, n),
                        sub(m, &k),
                        sub(m, &k),
                        triple(&f.target, w)
                    ),
                ));
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn minimal(m: &Module) -> Result<Outcome> {
    let mut combos = 0;
    for n in m.proper_submodules()? {
        let omega = one_absorbing_over(m, &n)?;
        let mins = minimal_one_absorbing_over(m, &n)?;
        combos += omega.len() as u64;
        if omega.is_empty() || mins.is_empty() {
            return Ok(Outcome::fail(
                combos,
                format!("no 1-absorbing prime contains N = {}", sub(m, &n)),
            ));
        }
        for p in &omega {
            if !mins.iter().any(|q| q.is_subset(p)) {
                return Ok(Outcome::fail(
                    combos,
                    format!("N = {}: {} contains no minimal member", sub(m, &n), sub(m, p)),
                ));
            }
        }
        for p in &mins {
            let strictly_below = omega.iter().any(|q| q != p && q.is_subset(p));
            let comparable = mins.iter().any(|q| q != p && q.is_subset(p));
            if !omega.contains(p) || strictly_below || comparable {
                return Ok(Outcome::fail(
                    combos,
                    format!("N = {}: {} is not minimal", sub(m, &n), sub(m, p)),
                ));
            }
        }
    }
    Ok(Outcome::pass(combos))
}

struct Rad1Table {
    subs: Vec<Submodule>,
    rad1: Vec<Submodule>,
    index: HashMap<ElemSet, usize>,
}

impl Rad1Table {
    fn new(m: &Module) -> Result<Self> {
        let subs = m.enumerate_submodules()?.to_vec();
        let rad1 = subs
            .iter()
            .map(|n| Ok(rad1_submodule(m, n)?.result))
            .collect::<Result<Vec<_>>>()?;
        let index = subs
            .iter()
            .enumerate()
            .map(|(i, n)| (n.elements().clone(), i))
            .collect();
        Ok(Rad1Table { subs, rad1, index })
    }

    fn of(&self, n: &Submodule) -> &Submodule {
        &self.rad1[self.index[n.elements()]]
    }
}

fn rad1_laws(m: &Module) -> Result<Outcome> {
    let t = Rad1Table::new(m)?;
    let s = m.scalars();
    let mut combos = 0;
    let fail = |combos, what: String| Ok(Outcome::fail(combos, what));
    for (n, r) in t.subs.iter().zip(&t.rad1) {
        combos += 1;
        if !n.is_subset(r) {
            return fail(combos, format!("N = {} not in rad1(N) = {}", sub(m, n), sub(m, r)));
        }
        if t.of(r) != r {
            return fail(
                combos,
                format!("rad1(rad1({})) = {} differs from rad1", sub(m, n), sub(m, t.of(r))),
            );
        }
        if m.is_proper(n) && !r.is_subset(&rad_submodule(m, n)?) {
            return fail(combos, format!("rad1({}) not in rad", sub(m, n)));
        }
        let res = m.residue_set(n);
        let lhs = s.rad1(&res)?;
        if !lhs.is_subset(&m.residue_set(r)) {
            return fail(
                combos,
                format!("rad1((N:M)) = {} not in (rad1(N):M) for N = {}", ideal(s, &lhs), sub(m, n)),
            );
        }
        for l in &t.subs {
            combos += 1;
            let lhs = t.of(&m.intersection(n, l));
            let rhs = m.intersection(r, t.of(l));
            if !lhs.is_subset(&rhs) {
                return fail(
                    combos,
                    format!("rad1({} meet {}) = {} not in {}", sub(m, n), sub(m, l), sub(m, lhs), sub(m, &rhs)),
                );
            }
        }
    }
    for i in s.quantified_ideals()? {
        combos += 1;
        let im = m.ideal_times(&i);
        let rim = m.ideal_times(&s.radical(&i));
        if !t.of(&im).is_subset(t.of(&rim)) {
            return fail(
                combos,
                format!("I = {}: rad1(IM) = {} not in rad1(sqrt(I)M) = {}", ideal(s, &i), sub(m, t.of(&im)), sub(m, t.of(&rim))),
            );
        }
    }
    for i in proper_ideals(s)? {
        combos += 1;
        if !s.rad1(&i)?.is_subset(&s.radical(&i)) {
            return fail(combos, format!("rad1({}) not in sqrt", ideal(s, &i)));
        }
    }
    Ok(Outcome::pass(combos))
}

fn rad1_fg(m: &Module) -> Result<Outcome> {
    let t = Rad1Table::new(m)?;
    for (i, (n, r)) in t.subs.iter().zip(&t.rad1).enumerate() {
        if m.is_proper(r) == !m.is_proper(n) {
            return Ok(Outcome::fail(
                i as u64 + 1,
                format!("N = {}, rad1(N) = {}", sub(m, n), sub(m, r)),
            ));
        }
    }
    Ok(Outcome::pass(t.subs.len() as u64))
}

fn rad1_sum(m: &Module) -> Result<Outcome> {
    let t = Rad1Table::new(m)?;
    let whole = m.whole();
    let mut combos = 0;
    for (n, rn) in t.subs.iter().zip(&t.rad1) {
        for (l, rl) in t.subs.iter().zip(&t.rad1) {
            combos += 1;
            if (m.sum(n, l) == whole) != (m.sum(rn, rl) == whole) {
                return Ok(Outcome::fail(
                    combos,
                    format!("N = {}, L = {}", sub(m, n), sub(m, l)),
                ));
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn mult_eq(m: &Module) -> Result<Outcome> {
    let rep = is_multiplication_smith(m)?;
    let combos = (m.enumerate_submodules()?.len() + rep.per_maximal.len()) as u64;
    let neither: Vec<&str> = rep
        .per_maximal
        .iter()
        .filter(|c| c.status == MaximalStatus::Neither)
        .map(|c| c.label.as_str())
        .collect();
    let direct = match &rep.direct_witness {
        None => "multiplication".to_string(),
        Some(n) => format!("N = {} differs from (N:M)M", sub(m, n)),
    };
    if rep.direct() != rep.smith() {
        return Ok(Outcome::fail(
            combos,
            format!("{direct}; neither torsion nor cyclic at [{}]", neither.join(", ")),
        ));
    }
    Ok(Outcome::pass(combos).note(if rep.direct() {
        direct
    } else {
        format!("not multiplication: {direct}; Q = {}", neither.join(", "))
    }))
}

/// Faithful multiplication modules only; the reason otherwise.
fn faithful_multiplication(m: &Module) -> Result<Option<String>> {
    if !m.is_faithful() {
        return Ok(Some(format!("not faithful: Ann(M) = {}", ann_label(m))));
    }
    if let Some(n) = is_multiplication(m)? {
        return Ok(Some(format!("not a multiplication module: {} != (N:M)M", sub(m, &n))));
    }
    Ok(None)
}

fn ann_label(m: &Module) -> String {
    match m.annihilator() {
        Ideal::Generated(g) => format!("({g})"),
        Ideal::Elements(set) => m.scalars().ideal_label(&set),
    }
}

fn one_absorbing_ideals(s: &Scalars) -> Result<Vec<ElemSet>> {
    let mut out = Vec::new();
    for i in proper_ideals(s)? {
        if s.classify(&i)?.one_absorbing() {
            out.push(i);
        }
    }
    Ok(out)
}

fn main_thm(m: &Module) -> Result<Outcome> {
    if let Some(reason) = faithful_multiplication(m)? {
        return Ok(Outcome::skip(reason));
    }
    let s = m.scalars();
    let r = s.ring();
    let nonunits: Vec<u32> = s.nonunits().collect();
    let mut combos = 0;
    for i in one_absorbing_ideals(s)? {
        let im = m.ideal_times(&i);
        for &a in &nonunits {
            for &b in &nonunits {
                let ab = r.mul(a, b);
                for x in 0..m.size() as u32 {
                    combos += 1;
                    if im.contains(m.act(ab, x)) && !i.contains(ab) && !im.contains(x) {
                        return Ok(Outcome::fail(
                            combos,
                            format!("I = {}: {}", ideal(s, &i), triple(m, [a, b, x])),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn main_cor(m: &Module) -> Result<Outcome> {
    if let Some(reason) = faithful_multiplication(m)? {
        return Ok(Outcome::skip(reason));
    }
    let s = m.scalars();
    let mut combos = 0;
    for i in one_absorbing_ideals(s)? {
        let im = m.ideal_times(&i);
        if !m.is_proper(&im) {
            continue;
        }
        combos += 1;
        if let Some(w) = classify_submodule(m, &im)?.one_absorbing_witness {
            return Ok(Outcome::fail(
                combos,
                format!("I = {}: IM = {} not 1-absorbing prime, {}", ideal(s, &i), sub(m, &im), triple(m, w)),
            ));
        }
    }
    Ok(Outcome::pass(combos))
}

fn bolum(m: &Module) -> Result<Outcome> {
    let s = m.scalars();
    let limits = *m.limits();
    let mut combos = 0;
    match m.ring() {
        Ring::Finite(_) => {
            let ideals = proper_ideals(s)?;
            for i in &ideals {
                let q = quotient_ring(m.ring(), &Ideal::Elements(i.clone()), &limits)?;
                let qs = Scalars::of_ring(q.ring.clone(), limits);
                for j in ideals.iter().filter(|j| i.is_subset(j)) {
                    if !s.classify(j)?.one_absorbing() {
                        continue;
                    }
                    combos += 1;
                    let image = ElemSet::from_elems(qs.size(), j.iter().map(|x| q.project(x)));
                    if !qs.classify(&image)?.one_absorbing() {
                        return Ok(Outcome::fail(
                            combos,
                            format!("I = {}, J = {}: J/I not 1-absorbing prime", ideal(s, i), ideal(s, j)),
                        ));
                    }
                }
            }
        }
        Ring::Integers => {
            let e = s.modulus().expect("integer view");
            let divisors: Vec<u64> = (2..=e).filter(|d| e % d == 0).collect();
            for &d in &divisors {
                let q = quotient_ring(m.ring(), &Ideal::Generated(d), &limits)?;
                let qs = Scalars::of_ring(q.ring.clone(), limits);
                for &g in divisors.iter().filter(|&&g| d % g == 0) {
                    if !classify_ideal(m.ring(), &Ideal::Generated(g))?.one_absorbing() {
                        continue;
                    }
                    combos += 1;
                    let image = ElemSet::from_elems(
                        qs.size(),
                        (0..d as i64).map(|k| q.project_int(g as i64 * k)),
                    );
                    if !qs.classify(&image)?.one_absorbing() {
                        return Ok(Outcome::fail(
                            combos,
                            format!("I = ({d}), J = ({g}): J/I not 1-absorbing prime"),
                        ));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(combos))
}

fn gup_ring(m: &Module) -> Result<Outcome> {
    let ann = m.annihilator();
    if !good_unit_property(m.ring(), &ann, m.limits())? {
        return Ok(Outcome::skip(format!(
            "no good unit property for Ann(M) = {}",
            ann_label(m)
        )));
    }
    let rm = m.restrict_to_quotient_ring()?;
    let ra = rm.analysis()?;
    let mut combos = 0;
    for (n, v) in ra.proper() {
        combos += 1;
        if !v.one_absorbing() {
            continue;
        }
        let over_r = m.submodule(n.elements().clone())?;
        if let Some(w) = classify_submodule(m, &over_r)?.one_absorbing_witness {
            return Ok(Outcome::fail(
                combos,
                format!(
                    "N = {} is 1-absorbing prime over {} but not over {}: {}",
                    sub(m, &over_r),
                    rm.ring().name(),
                    m.ring().name(),
                    triple(m, w)
                ),
            ));
        }
    }
    Ok(Outcome::pass(combos).note(format!("Ann(M) = {}", ann_label(m))))
}

fn characterisation(m: &Module) -> Result<Outcome> {
    if let Some(n) = is_multiplication(m)? {
        return Ok(Outcome::skip(format!(
            "not a multiplication module: {} != (N:M)M",
            sub(m, &n)
        )));
    }
    if !good_unit_property(m.ring(), &m.annihilator(), m.limits())? {
        return Ok(Outcome::skip(format!(
            "no good unit property for Ann(M) = {}",
            ann_label(m)
        )));
    }
    let s = m.scalars();
    let ann = m.annihilator_set();
    let candidates: Vec<ElemSet> = one_absorbing_ideals(s)?
        .into_iter()
        .filter(|i| ann.is_subset(i))
        .collect();
    let a = m.analysis()?;
    let mut combos = 0;
    for (n, v) in a.proper() {
        combos += 1;
        let c1 = v.one_absorbing();
        let c2 = s.classify(&m.residue_set(n))?.one_absorbing();
        let c3 = candidates.iter().any(|i| m.ideal_times(i) == *n);
        if c1 != c2 || c2 != c3 {
            return Ok(Outcome::fail(
                combos,
                format!("N = {}: (1) {c1}, (2) {c2}, (3) {c3}", sub(m, n)),
            ));
        }
    }
    Ok(Outcome::pass(combos))
}
