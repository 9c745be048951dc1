//! Finite specialization semilattices, their closures, and the free
//! extensions that give every element a closure.
//!
//! Elements are dense indices `0..n` into a join table. The crate covers
//! validation of the axioms, closure computation, the free extension and its
//! variant over a set `Z` of existing closures, lifting of homomorphisms, and
//! a brute-force verifier for the universal properties.

pub mod catalog;
pub mod closure;
pub mod elemset;
pub mod error;
pub mod factory;
pub mod free_extension;
pub mod hom;
pub mod report;
pub mod semilattice;
pub mod specialization;
pub mod verifier;
pub mod z_extension;

pub type Element = usize;

pub use closure::ClosureSemilattice;
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use free_extension::{
    build_free_extension, build_free_extension_with, lift_hom, map_extension, BuildOptions,
    Extension, Pair, PairSpace,
};
pub use hom::{HomKind, Homomorphism};
pub use report::{Axiom, AxiomReport, Violation};
pub use semilattice::JoinSemilattice;
pub use specialization::{complete_specialization, SpecSemilattice};
pub use verifier::{enumerate_homs, VerificationReport};
pub use z_extension::{build_z_extension, build_z_extension_with, lift_hom_z, ClosureSet};

/// Resource bounds applied by front ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted input structure.
    pub structure_cap: usize,
    /// Largest source of a free or `Z`-extension.
    pub extension_cap: usize,
    /// Most candidate maps a homomorphism enumeration may examine.
    pub hom_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            structure_cap: 64,
            extension_cap: 10,
            hom_budget: verifier::DEFAULT_HOM_BUDGET,
        }
    }
}
