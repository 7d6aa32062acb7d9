pub mod classify;
pub mod dsl;
pub mod elemset;
pub mod exec;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod intlattice;
mod lattice;
pub mod module;
pub mod multiplication;
pub mod radicals;
pub mod render;
pub mod ring;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use ideal::{Ideal, IdealVerdict, Scalars};
pub use module::{build_module, quotient_module, Module, ModuleSpec, QuotientMap, Submodule};
pub use ring::{build_ring, FiniteRing, Ring, RingSpec, Units};

/// Size caps. Exceeding one is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier (ring or module) that will be materialised.
    pub max_elements: usize,
    /// Largest ideal or submodule lattice that will be enumerated.
    pub max_lattice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 4096,
            max_lattice: 10_000,
        }
    }
}
