//! Benchmarks live in `benches/`; this crate only exposes shared inputs.

use specsemi::catalog::CatalogEntry;

/// Catalog entries small enough to extend inside a benchmark loop.
pub fn extendable_inputs() -> Vec<CatalogEntry> {
    specsemi::catalog::catalog()
        .expect("catalog builds")
        .into_iter()
        .filter(|e| e.structure.size() <= 5)
        .collect()
}
