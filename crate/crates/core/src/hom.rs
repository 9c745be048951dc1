//! Maps between finite structures and the four homomorphism notions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specialization::SpecSemilattice;
use crate::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HomKind {
    /// Preserves `∨`.
    Join,
    /// Preserves `∨` and `⊑`.
    Spec,
    /// A spec-hom between principal structures that also commutes with `K`.
    KHom,
    /// Injective spec-hom that reflects `⊑`.
    Embedding,
}

impl HomKind {
    pub fn name(self) -> &'static str {
        match self {
            HomKind::Join => "join-homomorphism",
            HomKind::Spec => "specialization homomorphism",
            HomKind::KHom => "K-homomorphism",
            HomKind::Embedding => "embedding",
        }
    }
}

impl fmt::Display for HomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A total map between carriers, tagged with the strongest kind it was
/// checked (or constructed) to be. Domain and codomain are supplied by the
/// caller wherever they matter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    table: Vec<Element>,
    kind: HomKind,
}

impl Homomorphism {
    /// Validates `table` as a map of the given kind from `dom` to `cod`.
    pub fn new(
        dom: &SpecSemilattice,
        cod: &SpecSemilattice,
        table: Vec<Element>,
        kind: HomKind,
    ) -> Result<Self> {
        if let Some(witness) = hom_violation(dom, cod, &table, kind)? {
            return Err(Error::NotHomomorphism {
                kind: kind.name(),
                witness,
            });
        }
        Ok(Homomorphism { table, kind })
    }

    pub fn unchecked(table: Vec<Element>, kind: HomKind) -> Self {
        Homomorphism { table, kind }
    }

    pub fn identity(n: usize, kind: HomKind) -> Self {
        Homomorphism {
            table: (0..n).collect(),
            kind,
        }
    }

    pub fn apply(&self, x: Element) -> Element {
        self.table[x]
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    /// Diagrammatic composition: `self` first, then `next`. The result is
    /// tagged with the weaker of the two kinds.
    pub fn then(&self, next: &Homomorphism) -> Homomorphism {
        use HomKind::*;
        let kind = match (self.kind, next.kind) {
            (Join, _) | (_, Join) => Join,
            (Embedding, Embedding) => Embedding,
            (KHom, KHom) => KHom,
            _ => Spec,
        };
        Homomorphism {
            table: self.table.iter().map(|&x| next.table[x]).collect(),
            kind,
        }
    }
}

/// First failure of `table` to be a map of `kind`, described for humans.
///
/// Errors only when the check is meaningless: wrong table length, images
/// out of range, or a K-hom check between non-principal structures.
pub fn hom_violation(
    dom: &SpecSemilattice,
    cod: &SpecSemilattice,
    table: &[Element],
    kind: HomKind,
) -> Result<Option<String>> {
    if table.len() != dom.size() {
        return Err(Error::malformed(format!(
            "map has {} entries, domain has {} elements",
            table.len(),
            dom.size()
        )));
    }
    for &y in table {
        cod.base().check_element(y)?;
    }
    let f = |x: Element| table[x];
    for x in dom.elements() {
        for y in dom.elements() {
            if f(dom.join(x, y)) != cod.join(f(x), f(y)) {
                return Ok(Some(format!(
                    "f({} ∨ {}) = {} but f({}) ∨ f({}) = {}",
                    dom.label(x),
                    dom.label(y),
                    cod.label(f(dom.join(x, y))),
                    dom.label(x),
                    dom.label(y),
                    cod.label(cod.join(f(x), f(y)))
                )));
            }
        }
    }
    if kind == HomKind::Join {
        return Ok(None);
    }
    for x in dom.elements() {
        for y in dom.elements() {
            if dom.spec(x, y) && !cod.spec(f(x), f(y)) {
                return Ok(Some(format!(
                    "{} ⊑ {} but {} ⋢ {}",
                    dom.label(x),
                    dom.label(y),
                    cod.label(f(x)),
                    cod.label(f(y))
                )));
            }
        }
    }
    match kind {
        HomKind::KHom => {
            let kd = dom.closure_table()?;
            let kc = cod.closure_table()?;
            for x in dom.elements() {
                if f(kd[x]) != kc[f(x)] {
                    return Ok(Some(format!(
                        "f(K {}) = {} but K f({}) = {}",
                        dom.label(x),
                        cod.label(f(kd[x])),
                        dom.label(x),
                        cod.label(kc[f(x)])
                    )));
                }
            }
        }
        HomKind::Embedding => {
            for x in dom.elements() {
                for y in dom.elements() {
                    if x < y && f(x) == f(y) {
                        return Ok(Some(format!(
                            "not injective: {} and {} both map to {}",
                            dom.label(x),
                            dom.label(y),
                            cod.label(f(x))
                        )));
                    }
                    if !dom.spec(x, y) && cod.spec(f(x), f(y)) {
                        return Ok(Some(format!(
                            "{} ⋢ {} but {} ⊑ {}",
                            dom.label(x),
                            dom.label(y),
                            cod.label(f(x)),
                            cod.label(f(y))
                        )));
                    }
                }
            }
        }
        HomKind::Join | HomKind::Spec => {}
    }
    Ok(None)
}
