use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::classify::{check_lattice_witness, classify_submodule, SubmoduleVerdict, WitnessReport};
use crate::error::{Error, Result};
use crate::intlattice::IntegerLattice;
use crate::module::{Module, ModuleSpec, Submodule};
use crate::ring::RingSpec;
use crate::Limits;

use super::Instance;

/// Converses of the implications between the three classes, and of the
/// residue statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    TwoabsNotOneabs,
    OneabsNotPrime,
    ResConverse,
}

impl Claim {
    pub const ALL: &'static [Claim] = &[Claim::TwoabsNotOneabs, Claim::OneabsNotPrime, Claim::ResConverse];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::TwoabsNotOneabs => "TWOABS_NOT_ONEABS",
            Claim::OneabsNotPrime => "ONEABS_NOT_PRIME",
            Claim::ResConverse => "RES_CONVERSE",
        }
    }

    /// The documented example checked before the exhaustive scan.
    fn documented(self) -> Option<(Instance, Vec<&'static str>)> {
        match self {
            Claim::TwoabsNotOneabs => Some((
                Instance::new(RingSpec::Integers, ModuleSpec::Znz(30)),
                vec!["6"],
            )),
            Claim::OneabsNotPrime => Some((Instance::new(RingSpec::Zn(4), ModuleSpec::Regular), vec![])),
            Claim::ResConverse => None,
        }
    }

    fn refutes(self, m: &Module, n: &Submodule, v: &SubmoduleVerdict) -> Result<Option<String>> {
        let s = m.scalars();
        let triple = |[a, b, x]: [u32; 3]| format!("({}, {}, {})", s.label(a), s.label(b), m.label(x));
        Ok(match self {
            Claim::TwoabsNotOneabs => match v.one_absorbing_witness {
                Some(w) if v.two_absorbing() => Some(format!("2-absorbing; 1-absorbing fails at {}", triple(w))),
                _ => None,
            },
            Claim::OneabsNotPrime => match v.prime_witness {
                Some([r, x]) if v.one_absorbing() => Some(format!(
                    "1-absorbing prime; prime fails at (r, m) = ({}, {})",
                    s.label(r),
                    m.label(x)
                )),
                _ => None,
            },
            Claim::ResConverse => match v.one_absorbing_witness {
                Some(w) if s.classify(&m.residue_set(n))?.one_absorbing() => Some(format!(
                    "(N:M) = {} is 1-absorbing prime; N fails at {}",
                    s.ideal_label(&m.residue_set(n)),
                    triple(w)
                )),
                _ => None,
            },
        })
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub instance: String,
    pub submodule: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub claim: Claim,
    /// The reported counterexample: the documented one when it is in the
    /// family (or is the fixed lattice witness) and verifies, else the
    /// first refutation in family order.
    pub witness: Option<Hit>,
    pub documented: bool,
    pub first_in_order: Option<Hit>,
    pub refutations: usize,
    pub examined: usize,
    /// Instances that could not be built or enumerated.
    pub errors: usize,
    pub lattice: Option<WitnessReport>,
}

fn fixed_lattice_witness() -> Result<WitnessReport> {
    let n = IntegerLattice::new(2, vec![vec![3, 0]])?;
    check_lattice_witness(&n, 3, 2, &[1, 0], true)
}

pub fn find_counterexample(claim: Claim, family: &[Instance], limits: &Limits) -> CounterexampleReport {
    let scanned: Vec<Result<(usize, Vec<Hit>)>> = family
        .par_iter()
        .map(|inst| {
            let m = inst.build(limits)?;
            let a = m.analysis()?;
            let mut hits = Vec::new();
            let mut examined = 0;
            for (n, v) in a.proper() {
                examined += 1;
                if let Some(detail) = claim.refutes(&m, n, v)? {
                    hits.push(Hit {
                        instance: m.description(),
                        submodule: m.submodule_label(n),
                        detail,
                    });
                }
            }
            Ok((examined, hits))
        })
        .collect();
    let mut examined = 0;
    let mut errors = 0;
    let mut hits = Vec::new();
    for r in scanned {
        match r {
            Ok((e, h)) => {
                examined += e;
                hits.extend(h);
            }
            Err(_) => errors += 1,
        }
    }

    let mut documented = None;
    if let Some((inst, gens)) = claim.documented() {
        if family.contains(&inst) {
            documented = verify_documented(claim, &inst, &gens, limits).ok().flatten();
        }
    }
    let lattice = match claim {
        Claim::ResConverse => fixed_lattice_witness().ok(),
        _ => None,
    };
    if let Some(w) = lattice.as_ref().filter(|w| w.refutes()) {
        documented = Some(Hit {
            instance: "Z^2 over Z".into(),
            submodule: "<(3,0)>".into(),
            detail: format!(
                "(N:M) = {} is 1-absorbing prime; N fails at ({}, {}, {})",
                w.residue, w.a, w.b, w.m
            ),
        });
    }
    let first_in_order = hits.first().cloned();
    CounterexampleReport {
        claim,
        documented: documented.is_some(),
        witness: documented.or_else(|| first_in_order.clone()),
        first_in_order,
        refutations: hits.len(),
        examined,
        errors,
        lattice,
    }
}

fn verify_documented(claim: Claim, inst: &Instance, gens: &[&str], limits: &Limits) -> Result<Option<Hit>> {
    let m = inst.build(limits)?;
    let ids = gens
        .iter()
        .map(|g| m.parse_element(g))
        .collect::<Result<Vec<_>>>()?;
    let n = m.span(ids);
    let v = classify_submodule(&m, &n)?;
    Ok(claim.refutes(&m, &n, &v)?.map(|detail| Hit {
        instance: m.description(),
        submodule: m.submodule_label(&n),
        detail,
    }))
}
