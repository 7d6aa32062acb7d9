//! Prime, 1-absorbing prime and 2-absorbing classification of submodules.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::intlattice::IntegerLattice;
use crate::module::{Module, Submodule};
use crate::ring::Ring;

/// Witnesses are scalar indices of the module's scalar view and module
/// elements. A flag holds exactly when its witness is absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubmoduleVerdict {
    /// `(r, m)` with `rm ∈ N`, `m ∉ N`, `rM ⊄ N`.
    pub prime_witness: Option<[u32; 2]>,
    /// Non-units `a, b` and `m` with `abm ∈ N`, `ab ∉ (N:M)`, `m ∉ N`.
    pub one_absorbing_witness: Option<[u32; 3]>,
    /// `(a, b, m)` with `abm ∈ N` and `ab ∉ (N:M)`, `am ∉ N`, `bm ∉ N`.
    pub two_absorbing_witness: Option<[u32; 3]>,
}

impl SubmoduleVerdict {
    pub fn prime(&self) -> bool {
        self.prime_witness.is_none()
    }

    pub fn one_absorbing(&self) -> bool {
        self.one_absorbing_witness.is_none()
    }

    pub fn two_absorbing(&self) -> bool {
        self.two_absorbing_witness.is_none()
    }
}

pub fn classify_submodule(m: &Module, n: &Submodule) -> Result<SubmoduleVerdict> {
    if !m.is_proper(n) {
        return Err(Error::ImproperSubmodule);
    }
    if let Some(Ok(a)) = m.analysis.get() {
        if let Some(v) = a.verdict_of(n) {
            return Ok(v.clone());
        }
    }
    Ok(scan(m, n))
}

pub(crate) fn scan(m: &Module, n: &Submodule) -> SubmoduleVerdict {
    let s = m.scalars();
    let r = s.ring();
    let res = m.residue_set(n);
    let inn = |x: u32| n.contains(x);
    let size = m.size() as u32;
    let order = s.order();
    let nonunits: Vec<u32> = s.nonunits().collect();

    let mut prime_witness = None;
    'prime: for &a in order {
        if res.contains(a) {
            continue;
        }
        for x in 0..size {
            if !inn(x) && inn(m.act(a, x)) {
                prime_witness = Some([a, x]);
                break 'prime;
            }
        }
    }

    let mut one_absorbing_witness = None;
    'one: for &a in &nonunits {
        for &b in &nonunits {
            let ab = r.mul(a, b);
            if res.contains(ab) {
                continue;
            }
            for x in 0..size {
                if !inn(x) && inn(m.act(ab, x)) {
                    one_absorbing_witness = Some([a, b, x]);
                    break 'one;
                }
            }
        }
    }

    let mut two_absorbing_witness = None;
    'two: for &a in order {
        for &b in order {
            let ab = r.mul(a, b);
            if res.contains(ab) {
                continue;
            }
            for x in 0..size {
                if inn(m.act(ab, x)) && !inn(m.act(a, x)) && !inn(m.act(b, x)) {
                    two_absorbing_witness = Some([a, b, x]);
                    break 'two;
                }
            }
        }
    }

    SubmoduleVerdict {
        prime_witness,
        one_absorbing_witness,
        two_absorbing_witness,
    }
}

/// The classified submodule lattice of a module, computed once per module.
#[derive(Debug)]
pub struct Analysis {
    submodules: Arc<Vec<Submodule>>,
    /// `None` for the module itself.
    verdicts: Vec<Option<SubmoduleVerdict>>,
    index: HashMap<ElemSet, usize>,
}

impl Analysis {
    pub fn submodules(&self) -> &[Submodule] {
        &self.submodules
    }

    pub fn verdicts(&self) -> &[Option<SubmoduleVerdict>] {
        &self.verdicts
    }

    pub fn position(&self, n: &Submodule) -> Option<usize> {
        self.index.get(n.elements()).copied()
    }

    pub fn verdict_of(&self, n: &Submodule) -> Option<&SubmoduleVerdict> {
        self.position(n).and_then(|i| self.verdicts[i].as_ref())
    }

    /// Proper submodules paired with their verdicts, canonically ordered.
    pub fn proper(&self) -> impl Iterator<Item = (&Submodule, &SubmoduleVerdict)> {
        self.submodules
            .iter()
            .zip(&self.verdicts)
            .filter_map(|(n, v)| v.as_ref().map(|v| (n, v)))
    }

    pub fn primes(&self) -> Vec<&Submodule> {
        self.proper().filter(|(_, v)| v.prime()).map(|(n, _)| n).collect()
    }

    pub fn one_absorbing(&self) -> Vec<&Submodule> {
        self.proper()
            .filter(|(_, v)| v.one_absorbing())
            .map(|(n, _)| n)
            .collect()
    }
}

impl Module {
    /// Submodule lattice with every proper member classified.
    pub fn analysis(&self) -> Result<Arc<Analysis>> {
        self.analysis
            .get_or_init(|| {
                let submodules = self.enumerate_submodules()?;
                let verdicts = submodules
                    .par_iter()
                    .map(|n| self.is_proper(n).then(|| scan(self, n)))
                    .collect();
                let index = submodules
                    .iter()
                    .enumerate()
                    .map(|(i, n)| (n.elements().clone(), i))
                    .collect();
                Ok(Arc::new(Analysis {
                    submodules,
                    verdicts,
                    index,
                }))
            })
            .clone()
    }
}

/// Outcome of the ideal-form test: for all proper ideals `I, J` and proper
/// submodules `K`, `IJK ⊆ N` implies `IJ ⊆ (N:M)` or `K ⊆ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFormReport {
    /// `(I, J, K)` violating the implication, first in scan order.
    pub witness: Option<(ElemSet, ElemSet, Submodule)>,
    pub combos: u64,
}

impl IdealFormReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn one_absorbing_via_ideals(m: &Module, n: &Submodule) -> Result<IdealFormReport> {
    if !m.is_proper(n) {
        return Err(Error::ImproperSubmodule);
    }
    let s = m.scalars();
    let ideals = s.quantified_ideals_by_generator()?;
    let res = m.residue_set(n);
    let ks = submodules_by_generator(m)?;
    let mut combos = 0u64;
    for i in &ideals {
        for j in &ideals {
            let ij = s.product(i, j);
            if ij.is_subset(&res) {
                combos += ks.len() as u64;
                continue;
            }
            for k in &ks {
                combos += 1;
                if k.is_subset(n) {
                    continue;
                }
                if m.ideal_times_sub(&ij, k.elements()).is_subset(n) {
                    return Ok(IdealFormReport {
                        witness: Some((i.clone(), j.clone(), k.clone())),
                        combos,
                    });
                }
            }
        }
    }
    Ok(IdealFormReport {
        witness: None,
        combos,
    })
}

/// Proper submodules, cyclic ones first ordered by generator, then the rest
/// canonically.
fn submodules_by_generator(m: &Module) -> Result<Vec<Submodule>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in 0..m.size() as u32 {
        let c = m.cyclic(x);
        if m.is_proper(&c) && seen.insert(c.elements().clone()) {
            out.push(c);
        }
    }
    for n in m.enumerate_submodules()?.iter() {
        if m.is_proper(n) && seen.insert(n.elements().clone()) {
            out.push(n.clone());
        }
    }
    Ok(out)
}

/// Clause evaluation of one candidate triple against 1-absorbing primeness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub a: String,
    pub b: String,
    pub m: String,
    pub a_nonunit: bool,
    pub b_nonunit: bool,
    pub abm_in_n: bool,
    /// The residue `(N:M)` in label form.
    pub residue: String,
    pub ab_in_residue: bool,
    pub m_in_n: bool,
}

impl WitnessReport {
    pub fn refutes(&self) -> bool {
        self.a_nonunit && self.b_nonunit && self.abm_in_n && !self.ab_in_residue && !self.m_in_n
    }
}

fn strict_check(strict: bool, token: &str, nonunit: bool) -> Result<()> {
    if strict && !nonunit {
        Err(Error::UnitScalar(token.to_string()))
    } else {
        Ok(())
    }
}

/// Evaluate `(a, b, m)` against a submodule of a finite module. Over the
/// integers the scalars must be concrete integers and are tested for being
/// non-units of Z itself.
pub fn check_witness(
    module: &Module,
    n: &Submodule,
    a: &str,
    b: &str,
    m: &str,
    strict: bool,
) -> Result<WitnessReport> {
    let s = module.scalars();
    let nonunit = |token: &str, idx: u32| -> Result<bool> {
        Ok(match module.ring() {
            Ring::Integers => {
                let k: i64 = token
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownElement(token.to_string()))?;
                k.abs() != 1
            }
            Ring::Finite(_) => s.is_nonunit(idx),
        })
    };
    let (ai, bi) = (s.parse(a)?, s.parse(b)?);
    let mi = module.parse_element(m)?;
    let (a_nonunit, b_nonunit) = (nonunit(a, ai)?, nonunit(b, bi)?);
    strict_check(strict, a, a_nonunit)?;
    strict_check(strict, b, b_nonunit)?;
    let ab = s.ring().mul(ai, bi);
    let res = module.residue_set(n);
    Ok(WitnessReport {
        a: a.trim().to_string(),
        b: b.trim().to_string(),
        m: module.label(mi).to_string(),
        a_nonunit,
        b_nonunit,
        abm_in_n: n.contains(module.act(ab, mi)),
        residue: s.ideal_label(&res),
        ab_in_residue: res.contains(ab),
        m_in_n: n.contains(mi),
    })
}

/// Evaluate `(a, b, v)` against a sublattice `N` of `Z^k`.
pub fn check_lattice_witness(
    n: &IntegerLattice,
    a: i64,
    b: i64,
    v: &[i64],
    strict: bool,
) -> Result<WitnessReport> {
    let (a_nonunit, b_nonunit) = (a.abs() != 1, b.abs() != 1);
    strict_check(strict, &a.to_string(), a_nonunit)?;
    strict_check(strict, &b.to_string(), b_nonunit)?;
    let m_in_n = n.contains(v)?;
    let ab = a as i128 * b as i128;
    let abv: Vec<i128> = v.iter().map(|&x| ab * x as i128).collect();
    let d = n.residue_of_ambient() as i128;
    let ab_in_residue = if d == 0 { ab == 0 } else { ab % d == 0 };
    let labels: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    Ok(WitnessReport {
        a: a.to_string(),
        b: b.to_string(),
        m: format!("({})", labels.join(",")),
        a_nonunit,
        b_nonunit,
        abm_in_n: n.contains_wide(&abv),
        residue: format!("({d})"),
        ab_in_residue,
        m_in_n,
    })
}

/// The ideal `(N:M)` classified in the ring; improper residues (`N = M`)
/// are rejected.
pub fn residue_verdict(m: &Module, n: &Submodule) -> Result<crate::ideal::IdealVerdict> {
    m.scalars().classify(&m.residue_set(n))
}

/// Ideal form of a scalar set, for reporting.
pub fn scalar_ideal(m: &Module, set: &ElemSet) -> Ideal {
    m.scalars().to_ideal(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{build_module, ModuleSpec};
    use crate::ring::{build_ring, RingSpec};
    use crate::Limits;

    fn module(r: RingSpec, m: ModuleSpec) -> Module {
        let ring = build_ring(&r, &Limits::default()).unwrap();
        build_module(&ring, &m, &Limits::default()).unwrap()
    }

    fn z30_over_z() -> Module {
        module(RingSpec::Integers, ModuleSpec::Znz(30))
    }

    fn z4() -> Module {
        module(RingSpec::Zn(4), ModuleSpec::Regular)
    }

    /// Oracle: evaluate the defining clause directly, over integers drawn
    /// from 2..=2e+1 so residue 1 is reached through a non-unit.
    fn one_absorbing_by_integers(m: &Module, n: &Submodule) -> bool {
        let e = m.exponent().unwrap() as i64;
        let s = m.scalars();
        let res = m.residue_set(n);
        for a in 2..=2 * e + 1 {
            for b in 2..=2 * e + 1 {
                let ab = s.parse(&(a * b).to_string()).unwrap();
                for x in 0..m.size() as u32 {
                    if n.contains(m.act(ab, x)) && !res.contains(ab) && !n.contains(x) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn six_in_z30_over_integers() {
        let m = z30_over_z();
        let n = m.cyclic(6);
        let v = classify_submodule(&m, &n).unwrap();
        assert!(v.two_absorbing());
        assert!(!v.prime());
        let [a, b, x] = v.one_absorbing_witness.unwrap();
        let s = m.scalars();
        assert_eq!((s.label(a), s.label(b), m.label(x)), ("2".into(), "2".into(), "3"));
        assert!(!one_absorbing_by_integers(&m, &n));
    }

    #[test]
    fn five_in_z30_is_prime() {
        let m = z30_over_z();
        let v = classify_submodule(&m, &m.cyclic(5)).unwrap();
        assert!(v.prime() && v.one_absorbing() && v.two_absorbing());
    }

    #[test]
    fn zero_in_z4() {
        let m = z4();
        let v = classify_submodule(&m, &m.zero_submodule()).unwrap();
        assert!(v.one_absorbing());
        assert_eq!(v.prime_witness, Some([2, 2]));
    }

    #[test]
    fn improper_rejected() {
        let m = z4();
        assert_eq!(
            classify_submodule(&m, &m.whole()).unwrap_err(),
            Error::ImproperSubmodule
        );
        assert_eq!(
            one_absorbing_via_ideals(&m, &m.whole()).unwrap_err(),
            Error::ImproperSubmodule
        );
    }

    #[test]
    fn integer_semantics_match_concrete_integers() {
        for e in [4, 6, 12, 30] {
            let m = module(RingSpec::Integers, ModuleSpec::Znz(e));
            for n in m.proper_submodules().unwrap() {
                assert_eq!(
                    classify_submodule(&m, &n).unwrap().one_absorbing(),
                    one_absorbing_by_integers(&m, &n),
                    "Z_{e}, {}",
                    m.submodule_label(&n)
                );
            }
        }
    }

    #[test]
    fn witnesses_re_violate() {
        for m in [z30_over_z(), z4(), module(RingSpec::Zn(12), ModuleSpec::Regular)] {
            let a = m.analysis().unwrap();
            let r = m.scalars().ring().clone();
            for (n, v) in a.proper() {
                let res = m.residue_set(n);
                if let Some([s, x]) = v.prime_witness {
                    assert!(n.contains(m.act(s, x)) && !n.contains(x) && !res.contains(s));
                }
                if let Some([p, q, x]) = v.one_absorbing_witness {
                    let pq = r.mul(p, q);
                    assert!(m.scalars().is_nonunit(p) && m.scalars().is_nonunit(q));
                    assert!(n.contains(m.act(pq, x)) && !res.contains(pq) && !n.contains(x));
                }
                if let Some([p, q, x]) = v.two_absorbing_witness {
                    let pq = r.mul(p, q);
                    assert!(n.contains(m.act(pq, x)) && !res.contains(pq));
                    assert!(!n.contains(m.act(p, x)) && !n.contains(m.act(q, x)));
                }
                assert!(!v.prime() || v.one_absorbing());
                assert!(!v.one_absorbing() || v.two_absorbing());
            }
        }
    }

    #[test]
    fn ideal_form_witness() {
        let m = z30_over_z();
        let rep = one_absorbing_via_ideals(&m, &m.cyclic(6)).unwrap();
        let (i, j, k) = rep.witness.unwrap();
        let s = m.scalars();
        assert_eq!(s.ideal_label(&i), "(2)");
        assert_eq!(s.ideal_label(&j), "(2)");
        assert_eq!(m.submodule_label(&k), "<3>");
        assert!(one_absorbing_via_ideals(&m, &m.cyclic(5)).unwrap().holds());
        let z = z4();
        assert!(one_absorbing_via_ideals(&z, &z.zero_submodule()).unwrap().holds());
    }

    #[test]
    fn ideal_form_agrees_with_elementwise() {
        let sq = module(
            RingSpec::Zn(4),
            ModuleSpec::Product(vec![ModuleSpec::Regular, ModuleSpec::Regular]),
        );
        for m in [z30_over_z(), z4(), sq, module(RingSpec::Zn(12), ModuleSpec::Regular)] {
            for n in m.proper_submodules().unwrap() {
                assert_eq!(
                    one_absorbing_via_ideals(&m, &n).unwrap().holds(),
                    classify_submodule(&m, &n).unwrap().one_absorbing()
                );
            }
        }
    }

    #[test]
    fn finite_witness_checks() {
        let m = z30_over_z();
        let r = check_witness(&m, &m.cyclic(6), "2", "2", "3", true).unwrap();
        assert!(r.abm_in_n && !r.ab_in_residue && !r.m_in_n && r.refutes());
        assert_eq!(r.residue, "(6)");
        let r = check_witness(&m, &m.cyclic(5), "2", "3", "5", true).unwrap();
        assert!(r.abm_in_n && r.m_in_n && !r.refutes());
        assert_eq!(
            check_witness(&m, &m.cyclic(6), "-1", "2", "3", true).unwrap_err(),
            Error::UnitScalar("-1".into())
        );
        // 31 is a non-unit of Z even though it reduces to 1.
        assert!(check_witness(&m, &m.cyclic(6), "31", "2", "3", true).unwrap().a_nonunit);
    }

    #[test]
    fn lattice_witness() {
        let n = IntegerLattice::new(2, vec![vec![3, 0]]).unwrap();
        let r = check_lattice_witness(&n, 3, 2, &[1, 0], true).unwrap();
        assert!(r.abm_in_n);
        assert!(!r.ab_in_residue);
        assert_eq!(r.residue, "(0)");
        assert!(!r.m_in_n);
        assert!(r.refutes());
        assert!(check_lattice_witness(&n, 1, 2, &[1, 0], true).is_err());
        assert!(!check_lattice_witness(&n, 1, 2, &[1, 0], false).unwrap().refutes());
    }
}
