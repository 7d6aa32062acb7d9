//! Multiplication modules, decided directly and through the Q-torsion /
//! Q-cyclic characterisation.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{Module, Submodule};
use crate::ring::Ring;

/// First submodule with `N ≠ (N:M)M`, or `None` when `M` is a multiplication
/// module.
pub fn is_multiplication(m: &Module) -> Result<Option<Submodule>> {
    for n in m.enumerate_submodules()?.iter() {
        if m.ideal_times(&m.residue_set(n)) != *n {
            return Ok(Some(n.clone()));
        }
    }
    Ok(None)
}

pub fn is_faithful(m: &Module) -> bool {
    m.is_faithful()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCertificate {
    /// Scalar index of `q` in the module's scalar view.
    pub q: u32,
    /// `q` as a ring element; over the integers, the least non-negative
    /// integer in `Q` with the right residue.
    pub q_label: String,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalStatus {
    Torsion,
    Cyclic(QCertificate),
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalCheck {
    pub ideal: Ideal,
    pub label: String,
    pub status: MaximalStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultReport {
    pub direct_witness: Option<Submodule>,
    pub per_maximal: Vec<MaximalCheck>,
}

impl MultReport {
    pub fn direct(&self) -> bool {
        self.direct_witness.is_none()
    }

    pub fn smith(&self) -> bool {
        self.per_maximal
            .iter()
            .all(|c| c.status != MaximalStatus::Neither)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The maximal ideals that matter for `M`: all of them for a finite ring;
/// over the integers, `(p)` for the primes dividing the exponent.
pub fn maximal_ideals(m: &Module) -> Result<Vec<Ideal>> {
    let s = m.scalars();
    Ok(s.maximal_ideals()?.iter().map(|q| s.to_ideal(q)).collect())
}

/// `Q` inside the scalar view, with the prime when over the integers.
fn view_of(m: &Module, q: &Ideal) -> Result<(ElemSet, Option<u64>)> {
    let s = m.scalars();
    match (m.ring(), q) {
        (Ring::Integers, Ideal::Generated(p)) if is_prime(*p) => Ok((s.from_ideal(q)?, Some(*p))),
        (Ring::Finite(_), Ideal::Elements(set)) if s.maximal_ideals()?.contains(set) => {
            Ok((set.clone(), None))
        }
        _ => Err(Error::NotMaximal(match q {
            Ideal::Generated(g) => format!("({g})"),
            Ideal::Elements(set) if set.universe() == s.size() => s.ideal_label(set),
            Ideal::Elements(_) => "ideal of another ring".into(),
        })),
    }
}

fn q_label(m: &Module, q: u32, p: Option<u64>) -> String {
    let s = m.scalars();
    match (p, s.modulus()) {
        (Some(p), Some(e)) => {
            let r = q as u64;
            let k = (0..p).find(|k| (r + k * e) % p == 0).expect("CRT: p is prime");
            (r + k * e).to_string()
        }
        _ => s.label(q),
    }
}

/// `T_Q(M) = { m | (1 - q)m = 0 for some q ∈ Q }`.
pub fn torsion_tq(m: &Module, q: &Ideal) -> Result<Submodule> {
    let (view, _) = view_of(m, q)?;
    let r = m.scalars().ring();
    let factors: Vec<u32> = view.iter().map(|x| r.sub(r.one(), x)).collect();
    let set = ElemSet::from_elems(
        m.size(),
        (0..m.size() as u32).filter(|&x| factors.iter().any(|&f| m.act(f, x) == 0)),
    );
    m.submodule(set)
}

/// First `(q, m)` in scan order with `(1 - q)M ⊆ Rm`.
pub fn is_q_cyclic(m: &Module, q: &Ideal) -> Result<Option<QCertificate>> {
    let (view, p) = view_of(m, q)?;
    let s = m.scalars();
    let r = s.ring();
    let orbits: Vec<ElemSet> = (0..m.size() as u32).map(|x| m.cyclic(x).elements().clone()).collect();
    for &qi in s.order().iter().filter(|&&x| view.contains(x)) {
        let f = r.sub(r.one(), qi);
        let image = ElemSet::from_elems(m.size(), (0..m.size() as u32).map(|x| m.act(f, x)));
        if let Some(x) = orbits.iter().position(|o| image.is_subset(o)) {
            return Ok(Some(QCertificate {
                q: qi,
                q_label: q_label(m, qi, p),
                m: x as u32,
            }));
        }
    }
    Ok(None)
}

pub fn is_multiplication_smith(m: &Module) -> Result<MultReport> {
    let s = m.scalars();
    let mut per_maximal = Vec::new();
    for q in maximal_ideals(m)? {
        let status = if torsion_tq(m, &q)? == m.whole() {
            MaximalStatus::Torsion
        } else if let Some(c) = is_q_cyclic(m, &q)? {
            MaximalStatus::Cyclic(c)
        } else {
            MaximalStatus::Neither
        };
        let label = match &q {
            Ideal::Generated(g) => format!("({g})"),
            Ideal::Elements(set) => s.ideal_label(set),
        };
        per_maximal.push(MaximalCheck {
            ideal: q,
            label,
            status,
        });
    }
    Ok(MultReport {
        direct_witness: is_multiplication(m)?,
        per_maximal,
    })
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

    fn z4_squared() -> Module {
        module(
            RingSpec::Zn(4),
            ModuleSpec::Product(vec![ModuleSpec::Regular, ModuleSpec::Regular]),
        )
    }

    #[test]
    fn direct_examples() {
        assert_eq!(is_multiplication(&module(RingSpec::Integers, ModuleSpec::Znz(30))).unwrap(), None);
        assert_eq!(is_multiplication(&module(RingSpec::Zn(12), ModuleSpec::Regular)).unwrap(), None);
        let sq = z4_squared();
        let w = is_multiplication(&sq).unwrap().unwrap();
        assert_eq!(sq.submodule_label(&w), "<(0,2)>");
        assert_eq!(sq.residue(&w), Ideal::Elements(ElemSet::from_elems(4, [0])));
        let e1 = sq.cyclic(sq.parse_element("(1,0)").unwrap());
        assert_eq!(sq.residue(&e1), Ideal::Elements(ElemSet::from_elems(4, [0])));
        assert_ne!(sq.ideal_times(&sq.residue_set(&e1)), e1);
    }

    #[test]
    fn torsion_examples() {
        let z = module(RingSpec::Integers, ModuleSpec::Znz(30));
        assert_eq!(torsion_tq(&z, &Ideal::Generated(2)).unwrap(), z.cyclic(2));
        let z4 = module(RingSpec::Integers, ModuleSpec::Znz(4));
        assert_eq!(torsion_tq(&z4, &Ideal::Generated(3)).unwrap(), z4.whole());
        let z6 = module(RingSpec::Zn(6), ModuleSpec::Regular);
        let two = z6.scalars().principal(2);
        assert_eq!(torsion_tq(&z6, &Ideal::Elements(two)).unwrap(), z6.cyclic(2));
    }

    #[test]
    fn non_maximal_rejected() {
        let z = module(RingSpec::Integers, ModuleSpec::Znz(30));
        assert!(matches!(torsion_tq(&z, &Ideal::Generated(6)), Err(Error::NotMaximal(_))));
        let z6 = module(RingSpec::Zn(6), ModuleSpec::Regular);
        let zero = z6.scalars().zero_ideal();
        assert!(matches!(is_q_cyclic(&z6, &Ideal::Elements(zero)), Err(Error::NotMaximal(_))));
    }

    #[test]
    fn cyclic_examples() {
        let z = module(RingSpec::Integers, ModuleSpec::Znz(30));
        let c = is_q_cyclic(&z, &Ideal::Generated(2)).unwrap().unwrap();
        assert_eq!((c.q_label.as_str(), c.m), ("0", 1));
        // The certificate q = 16, m = 15 is also valid: 15M = {0, 15} ⊆ Z·15.
        let f = z.scalars().parse("-15").unwrap();
        let image = ElemSet::from_elems(30, (0..30).map(|x| z.act(f, x)));
        assert!(image.is_subset(z.cyclic(15).elements()));
        assert_eq!(f, z.scalars().ring().sub(1, z.scalars().parse("16").unwrap()));

        let z6 = module(RingSpec::Zn(6), ModuleSpec::Regular);
        for q in maximal_ideals(&z6).unwrap() {
            let c = is_q_cyclic(&z6, &q).unwrap().unwrap();
            assert_eq!((c.q_label.as_str(), c.m), ("0", 1));
        }
        let sq = z4_squared();
        assert_eq!(is_q_cyclic(&sq, &maximal_ideals(&sq).unwrap()[0]).unwrap(), None);
    }

    #[test]
    fn q_label_lies_in_q() {
        // Z_4 over Z at Q = (3): residue 1 is hit by 9.
        let z4 = module(RingSpec::Integers, ModuleSpec::Znz(4));
        let c = is_q_cyclic(&z4, &Ideal::Generated(3)).unwrap().unwrap();
        let q: u64 = c.q_label.parse().unwrap();
        assert_eq!(q % 3, 0);
        assert_eq!(q % 4, c.q as u64);
    }

    #[test]
    fn smith_examples() {
        let z = module(RingSpec::Integers, ModuleSpec::Znz(30));
        let r = is_multiplication_smith(&z).unwrap();
        let labels: Vec<&str> = r.per_maximal.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["(5)", "(3)", "(2)"]);
        assert!(r.smith() && r.direct());
        let sq = is_multiplication_smith(&z4_squared()).unwrap();
        assert!(!sq.smith() && !sq.direct());
        assert_eq!(sq.per_maximal[0].status, MaximalStatus::Neither);
        assert!(is_multiplication_smith(&module(RingSpec::Zn(2), ModuleSpec::Regular)).unwrap().smith());
    }

    #[test]
    fn faithfulness() {
        assert!(is_faithful(&module(RingSpec::Zn(30), ModuleSpec::Regular)));
        assert!(!is_faithful(&module(RingSpec::Integers, ModuleSpec::Znz(30))));
        assert!(is_faithful(&z4_squared()));
    }
}
