//! Finite join-semilattices given by their join table.

use crate::error::{Error, Result};
use crate::report::{Axiom, AxiomReport};
use crate::Element;

/// A finite carrier `0..size` with a total join table.
///
/// The induced order is `x <= y` iff `join(x, y) == y`. Construction through
/// [`JoinSemilattice::new`] validates the semilattice laws;
/// [`JoinSemilattice::from_table`] only checks shape and ranges so that
/// broken tables can still be inspected with [`validate_join_table`].
///
/// [`validate_join_table`]: JoinSemilattice::validate_join_table
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinSemilattice {
    size: usize,
    join: Vec<Element>,
    labels: Vec<String>,
}

impl JoinSemilattice {
    pub fn new(rows: Vec<Vec<Element>>, labels: Option<Vec<String>>) -> Result<Self> {
        let j = Self::from_table(rows, labels)?;
        let report = j.validate_join_table();
        if !report.ok() {
            return Err(Error::Axioms {
                structure: "join table",
                report,
            });
        }
        Ok(j)
    }

    /// Shape and range checks only.
    pub fn from_table(rows: Vec<Vec<Element>>, labels: Option<Vec<String>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::malformed("carrier must have at least one element"));
        }
        let mut join = Vec::with_capacity(size * size);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::malformed(format!(
                    "join row {x} has {} entries, expected {size}",
                    row.len()
                )));
            }
            for (y, z) in row.into_iter().enumerate() {
                if z >= size {
                    return Err(Error::malformed(format!(
                        "join({x},{y}) = {z} is outside the carrier 0..{size}"
                    )));
                }
                join.push(z);
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != size {
                    return Err(Error::malformed(format!(
                        "{} labels for {size} elements",
                        l.len()
                    )));
                }
                let mut sorted = l.clone();
                sorted.sort();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::malformed(format!("duplicate label {:?}", w[0])));
                }
                l
            }
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        Ok(JoinSemilattice { size, join, labels })
    }

    /// Builds a semilattice from a join function, trusting it to be one.
    pub(crate) fn from_fn(
        size: usize,
        labels: Vec<String>,
        join: impl Fn(Element, Element) -> Element,
    ) -> Self {
        debug_assert_eq!(labels.len(), size);
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                table.push(join(x, y));
            }
        }
        JoinSemilattice {
            size,
            join: table,
            labels,
        }
    }

    /// Chain `0 < 1 < .. < n-1` with join = max.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, (0..n).map(|i| i.to_string()).collect(), |x, y| x.max(y))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.size + y]
    }

    /// `x <= y` in the induced order.
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.join(x, y) == y
    }

    /// Join of a nonempty sequence; `None` for an empty one.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Element>) -> Option<Element> {
        xs.into_iter().reduce(|acc, x| self.join(acc, x))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        let rows = self.rows();
        let relabeled = Self::from_table(rows, Some(labels))?;
        self.labels = relabeled.labels;
        Ok(self)
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.join.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::malformed(format!(
                "element {x} is outside the carrier 0..{}",
                self.size
            )))
        }
    }

    /// The greatest element, if any (always present for a valid table).
    pub fn top(&self) -> Option<Element> {
        let t = self.join_all(self.elements())?;
        self.elements().all(|x| self.leq(x, t)).then_some(t)
    }

    /// Reports every idempotence, commutativity and associativity failure.
    pub fn validate_join_table(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        for x in self.elements() {
            if self.join(x, x) != x {
                report.push(Axiom::Idempotent, vec![x]);
            }
        }
        for x in self.elements() {
            for y in x + 1..self.size {
                if self.join(x, y) != self.join(y, x) {
                    report.push(Axiom::Commutative, vec![x, y]);
                }
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.join(x, y);
                for z in self.elements() {
                    if self.join(xy, z) != self.join(x, self.join(y, z)) {
                        report.push(Axiom::Associative, vec![x, y, z]);
                    }
                }
            }
        }
        report
    }

    /// Elements that are not the join of the elements strictly below them.
    ///
    /// In a finite semilattice every element is the join of the
    /// join-irreducibles beneath it.
    pub fn join_irreducibles(&self) -> Vec<Element> {
        self.elements()
            .filter(|&x| {
                let below = self.elements().filter(|&y| y != x && self.leq(y, x));
                self.join_all(below) != Some(x)
            })
            .collect()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Element, Element)> {
        let lt = |x: Element, y: Element| x != y && self.leq(x, y);
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if lt(x, y) && !self.elements().any(|z| lt(x, z) && lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Reindexes the carrier: element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[Element]) -> Self {
        let mut inv = vec![0; self.size];
        for (x, &px) in perm.iter().enumerate() {
            inv[px] = x;
        }
        let labels = (0..self.size)
            .map(|i| self.labels[inv[i]].clone())
            .collect();
        Self::from_fn(self.size, labels, |x, y| perm[self.join(inv[x], inv[y])])
    }
}
