//! A fixed, versioned list of small structures used by tests, benches and
//! the CLI's self-check.

use crate::error::Result;
use crate::factory::{
    mod_ideal, powerset_from_preorder, random_spec_semilattice, GroundSet, Ideal,
};
use crate::semilattice::JoinSemilattice;
use crate::specialization::{complete_specialization, SpecSemilattice};

/// Bumped whenever an entry is added, removed or changed.
pub const CATALOG_VERSION: u32 = 1;

/// Seeds of the random entries; sizes cycle through 2..=5.
pub const RANDOM_SEEDS: [u64; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub structure: SpecSemilattice,
}

pub fn random_entry_size(seed: u64) -> usize {
    2 + (seed as usize % 4)
}

pub fn catalog() -> Result<Vec<CatalogEntry>> {
    let entry = |name: &str, structure| CatalogEntry {
        name: name.to_string(),
        structure,
    };
    let g2 = GroundSet::new(2)?;
    let mut out = vec![
        entry(
            "singleton",
            SpecSemilattice::discrete(JoinSemilattice::chain(1)),
        ),
        entry(
            "chain2",
            SpecSemilattice::discrete(JoinSemilattice::chain(2)),
        ),
        entry(
            "chain2-total",
            complete_specialization(&JoinSemilattice::chain(2), &[(1, 0)])?,
        ),
        entry(
            "powerset2-discrete",
            powerset_from_preorder(g2, &[(0, 0), (1, 1)])?.0,
        ),
        entry(
            "powerset2-indiscrete",
            powerset_from_preorder(g2, &[(0, 0), (1, 1), (0, 1), (1, 0)])?.0,
        ),
        entry(
            "powerset2-sierpinski",
            powerset_from_preorder(g2, &[(0, 0), (1, 1), (1, 0)])?.0,
        ),
        entry(
            "mod-ideal3-p",
            mod_ideal(&Ideal::new(GroundSet::new(3)?, &[0b001])?)?,
        ),
    ];
    for seed in RANDOM_SEEDS {
        let n = random_entry_size(seed);
        out.push(entry(
            &format!("random-{seed}-n{n}"),
            random_spec_semilattice(seed, n)?,
        ));
    }
    Ok(out)
}
