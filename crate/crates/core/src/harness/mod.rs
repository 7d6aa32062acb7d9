//! Check registry, instance families and the suite runner.

mod checks;
mod counter;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::module::{build_module, Module, ModuleSpec};
use crate::ring::{build_ring, RingSpec};
use crate::Limits;

pub use counter::{find_counterexample, Claim, CounterexampleReport, Hit};

macro_rules! check_ids {
    ($($variant:ident => $name:literal, $about:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId {
            $($variant,)*
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $name,)*
                }
            }

            /// One-line statement of what the check verifies.
            pub fn about(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $about,)*
                }
            }
        }

        impl FromStr for CheckId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(CheckId::$variant),)*
                    _ => Err(Error::UnknownCheck(s.to_string())),
                }
            }
        }
    };
}

check_ids! {
    Chain => "CHAIN", "prime => 1-absorbing prime => 2-absorbing";
    LocalM2 => "LOCAL_M2", "local ring with m^2 = 0: every proper submodule is 1-absorbing prime";
    Res1Abs => "RES_1ABS", "N 1-absorbing prime => (N:M) and (N:m), m not in N, are 1-absorbing prime ideals";
    Abk => "ABK", "N 1-absorbing prime, abK in N => ab in (N:M) or K in N";
    IjkEq => "IJK_EQ", "elementwise and ideal-form 1-absorbing tests agree";
    Quasi => "QUASI", "a 1-absorbing prime that is not prime forces a quasilocal ring";
    QuasiEq => "QUASI_EQ", "over a non-quasilocal ring, 1-absorbing prime = prime";
    ChainLattice => "CHAIN_LATTICE", "intersection and union of a chain of 1-absorbing primes";
    HomPull => "HOM_PULL", "preimages of 1-absorbing primes under quotient maps and inclusions";
    HomPush => "HOM_PUSH", "images of 1-absorbing primes containing the kernel under epimorphisms";
    Quot => "QUOT", "K in N, N 1-absorbing prime => N/K 1-absorbing prime in M/K";
    Minimal => "MINIMAL", "minimal 1-absorbing primes exist under every member of the family";
    Rad1Laws => "RAD1_LAWS", "the five rad1 inclusions and rad1 contained in rad";
    Rad1Fg => "RAD1_FG", "rad1(N) = M iff N = M";
    Rad1Sum => "RAD1_SUM", "N + L = M iff rad1(N) + rad1(L) = M";
    MultEq => "MULT_EQ", "N = (N:M)M for all N iff every maximal Q is torsion or cyclic";
    Main => "MAIN", "faithful multiplication M, I 1-absorbing prime: abm in IM => ab in I or m in IM";
    MainCor => "MAINCOR", "faithful multiplication M, I 1-absorbing prime, IM != M => IM 1-absorbing prime";
    Bolum => "BOLUM", "I in J, J 1-absorbing prime => J/I 1-absorbing prime in R/I";
    GupRing => "GUP_RING", "good unit property for Ann(M): 1-absorbing over R/Ann(M) => over R";
    Char => "CHAR", "multiplication M with good unit property: three characterisations agree";
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A counterexample, rendered with element labels.
    Fail(String),
    Skipped(String),
    Error(Error),
}

impl Status {
    pub fn keyword(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail(_) => "fail",
            Status::Skipped(_) => "skipped",
            Status::Error(_) => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: CheckId,
    pub instance: String,
    pub status: Status,
    pub combos: u64,
    pub note: Option<String>,
}

impl CheckResult {
    /// Payload, skip reason, error or note, whichever applies.
    pub fn detail(&self) -> String {
        match &self.status {
            Status::Fail(p) => p.clone(),
            Status::Skipped(r) => r.clone(),
            Status::Error(e) => e.to_string(),
            Status::Pass => self.note.clone().unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub ring: RingSpec,
    pub module: ModuleSpec,
}

impl Instance {
    pub fn new(ring: RingSpec, module: ModuleSpec) -> Self {
        Instance { ring, module }
    }

    pub fn name(&self) -> String {
        let ring = self.ring.name();
        format!("{} over {}", self.module.name(&ring), ring)
    }

    pub fn build(&self, limits: &Limits) -> Result<Module> {
        let ring = build_ring(&self.ring, limits)?;
        build_module(&ring, &self.module, limits)
    }
}

pub fn default_family() -> Vec<Instance> {
    use ModuleSpec::{Product, Regular, Znz};
    use RingSpec::{Integers, PolyQuot, Zn};
    let mut family: Vec<Instance> = [
        Zn(2),
        Zn(4),
        Zn(6),
        Zn(8),
        Zn(9),
        Zn(12),
        Zn(30),
        RingSpec::Product(vec![Zn(2), Zn(2)]),
        PolyQuot {
            modulus: 2,
            coeffs: vec![0, 0, 1],
        },
        PolyQuot {
            modulus: 4,
            coeffs: vec![0, 0, 1],
        },
    ]
    .into_iter()
    .map(|r| Instance::new(r, Regular))
    .collect();
    family.extend([4, 6, 12, 30].map(|n| Instance::new(Integers, Znz(n))));
    family.push(Instance::new(Zn(4), Product(vec![Regular, Regular])));
    family.push(Instance::new(Zn(2), Product(vec![Regular, Regular])));
    family
}

pub(crate) struct Outcome {
    status: Status,
    combos: u64,
    note: Option<String>,
}

impl Outcome {
    fn pass(combos: u64) -> Self {
        Outcome {
            status: Status::Pass,
            combos,
            note: None,
        }
    }

    fn fail(combos: u64, payload: String) -> Self {
        Outcome {
            status: Status::Fail(payload),
            combos,
            note: None,
        }
    }

    fn skip(reason: impl Into<String>) -> Self {
        Outcome {
            status: Status::Skipped(reason.into()),
            combos: 0,
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn run_check(id: CheckId, module: &Module) -> CheckResult {
    let outcome = checks::run(id, module).unwrap_or_else(|e| Outcome {
        status: Status::Error(e),
        combos: 0,
        note: None,
    });
    CheckResult {
        check: id,
        instance: module.description(),
        status: outcome.status,
        combos: outcome.combos,
        note: outcome.note,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn count(&self, keyword: &str) -> usize {
        self.results
            .iter()
            .filter(|r| r.status.keyword() == keyword)
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results
            .iter()
            .filter(|r| matches!(r.status, Status::Fail(_)))
    }

    pub fn cap_exceeded(&self) -> bool {
        self.results
            .iter()
            .any(|r| matches!(r.status, Status::Error(Error::CapExceeded { .. })))
    }
}

/// Every `(instance, check)` cell, ordered by instance then registry order.
/// Cells run concurrently; a cell that errors leaves the others untouched.
pub fn run_suite(family: &[Instance], ids: &[CheckId], limits: &Limits) -> SuiteReport {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.dedup();
    let modules: Vec<Result<Module>> = family.par_iter().map(|i| i.build(limits)).collect();
    let cells: Vec<(usize, CheckId)> = (0..family.len())
        .flat_map(|i| ids.iter().map(move |&id| (i, id)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(i, id)| match &modules[i] {
            Ok(m) => run_check(id, m),
            Err(e) => CheckResult {
                check: id,
                instance: family[i].name(),
                status: Status::Error(e.clone()),
                combos: 0,
                note: None,
            },
        })
        .collect();
    SuiteReport { results }
}
