//! Specialization semilattices: a join-semilattice with a relation `⊑`
//! satisfying (S1)-(S3), and the closures that relation determines.

use crate::closure::ClosureSemilattice;
use crate::error::{Error, Result};
use crate::report::{Axiom, AxiomReport};
use crate::semilattice::JoinSemilattice;
use crate::Element;

/// A [`JoinSemilattice`] together with a specialization relation `x ⊑ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecSemilattice {
    base: JoinSemilattice,
    spec: Vec<bool>,
}

impl SpecSemilattice {
    /// Validating constructor: the join table and (S1)-(S3) must hold.
    pub fn new(base: JoinSemilattice, relation: impl Fn(Element, Element) -> bool) -> Result<Self> {
        let s = Self::unchecked(base, relation);
        let report = s.validate_specialization()?;
        if !report.ok() {
            return Err(Error::Axioms {
                structure: "specialization relation",
                report,
            });
        }
        Ok(s)
    }

    pub fn from_pairs(base: JoinSemilattice, pairs: &[(Element, Element)]) -> Result<Self> {
        let n = base.size();
        let mut rel = vec![false; n * n];
        for &(x, y) in pairs {
            base.check_element(x)?;
            base.check_element(y)?;
            rel[x * n + y] = true;
        }
        Self::new(base, |x, y| rel[x * n + y])
    }

    /// No validation. Used for negative tests and by constructions that
    /// establish the axioms by other means.
    pub fn unchecked(base: JoinSemilattice, relation: impl Fn(Element, Element) -> bool) -> Self {
        let n = base.size();
        let mut spec = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                spec.push(relation(x, y));
            }
        }
        SpecSemilattice { base, spec }
    }

    /// The order itself as the specialization (`⊑ = <=`).
    pub fn discrete(base: JoinSemilattice) -> Self {
        let b = base.clone();
        Self::unchecked(base, |x, y| b.leq(x, y))
    }

    pub fn base(&self) -> &JoinSemilattice {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        self.base.elements()
    }

    pub fn join(&self, x: Element, y: Element) -> Element {
        self.base.join(x, y)
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.base.leq(x, y)
    }

    /// `x ⊑ y`.
    pub fn spec(&self, x: Element, y: Element) -> bool {
        self.spec[x * self.size() + y]
    }

    pub fn label(&self, x: Element) -> &str {
        self.base.label(x)
    }

    /// All pairs `(x, y)` with `x ⊑ y`, in row-major order.
    pub fn spec_pairs(&self) -> Vec<(Element, Element)> {
        let n = self.size();
        (0..n * n)
            .filter(|&i| self.spec[i])
            .map(|i| (i / n, i % n))
            .collect()
    }

    /// Exhaustive check of (S1), (S2), (S3) and the derived (S4).
    ///
    /// The join table is validated first; a broken table is an error rather
    /// than a report, since the order the axioms mention is then undefined.
    pub fn validate_specialization(&self) -> Result<AxiomReport> {
        let base_report = self.base.validate_join_table();
        if !base_report.ok() {
            return Err(Error::Axioms {
                structure: "join table",
                report: base_report,
            });
        }
        let mut report = AxiomReport::default();
        for x in self.elements() {
            for y in self.elements() {
                if self.leq(x, y) && !self.spec(x, y) {
                    report.push(Axiom::S1, vec![x, y]);
                }
            }
        }
        for x in self.elements() {
            for y in self.elements().filter(|&y| self.spec(x, y)) {
                for z in self.elements() {
                    if self.spec(y, z) && !self.spec(x, z) {
                        report.push(Axiom::S2, vec![x, y, z]);
                    }
                }
            }
        }
        for z in self.elements() {
            for x in self.elements().filter(|&x| self.spec(x, z)) {
                for y in self.elements().filter(|&y| y > x && self.spec(y, z)) {
                    if !self.spec(self.join(x, y), z) {
                        report.push(Axiom::S3, vec![x, y, z]);
                    }
                }
            }
        }
        for x in self.elements() {
            if !self.spec(x, x) {
                report.push(Axiom::S4, vec![x]);
            }
        }
        Ok(report)
    }

    /// Re-evaluates a single violation witness against this structure.
    pub fn reproduces(&self, axiom: Axiom, w: &[Element]) -> bool {
        match (axiom, w) {
            (Axiom::S1, &[x, y]) => self.leq(x, y) && !self.spec(x, y),
            (Axiom::S2, &[x, y, z]) => self.spec(x, y) && self.spec(y, z) && !self.spec(x, z),
            (Axiom::S3, &[x, y, z]) => {
                self.spec(x, z) && self.spec(y, z) && !self.spec(self.join(x, y), z)
            }
            (Axiom::S4, &[x]) => !self.spec(x, x),
            _ => false,
        }
    }

    /// The closure `K a`: the `<=`-maximum of `{b | b ⊑ a}`, if it exists.
    ///
    /// The candidate is the join of the downset; it is accepted only if it
    /// lies in the downset itself and dominates every member, so the answer
    /// stays correct on structures that fail validation.
    pub fn closure_of(&self, a: Element) -> Option<Element> {
        let downset: Vec<Element> = self.elements().filter(|&b| self.spec(b, a)).collect();
        let m = self.base.join_all(downset.iter().copied())?;
        (self.spec(m, a) && downset.iter().all(|&b| self.leq(b, m))).then_some(m)
    }

    /// `closure_of` for every element.
    pub fn closures(&self) -> Vec<Option<Element>> {
        self.elements().map(|a| self.closure_of(a)).collect()
    }

    pub fn is_principal(&self) -> bool {
        self.elements().all(|a| self.closure_of(a).is_some())
    }

    /// The closure table, or the first element without a closure.
    pub fn closure_table(&self) -> Result<Vec<Element>> {
        self.elements()
            .map(|a| self.closure_of(a).ok_or(Error::NotPrincipal(a)))
            .collect()
    }

    pub fn to_closure_semilattice(&self) -> Result<ClosureSemilattice> {
        let k = self.closure_table()?;
        ClosureSemilattice::new(self.base.clone(), k)
    }

    /// Reindexes the carrier: element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[Element]) -> Self {
        let mut inv = vec![0; self.size()];
        for (x, &px) in perm.iter().enumerate() {
            inv[px] = x;
        }
        Self::unchecked(self.base.permuted(perm), |x, y| self.spec(inv[x], inv[y]))
    }

    /// Copy with elements reordered by label, the canonical indexing.
    pub fn sorted_by_label(&self) -> Self {
        let mut order: Vec<Element> = self.elements().collect();
        order.sort_by(|&x, &y| self.label(x).cmp(self.label(y)));
        let mut perm = vec![0; self.size()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        self.permuted(&perm)
    }
}

/// The least specialization relation on `base` containing `<=` and `seeds`.
///
/// Computed as a monotone fixpoint alternating transitive closure (S2) with
/// join closure (S3). The full relation bounds the iteration.
pub fn complete_specialization(
    base: &JoinSemilattice,
    seeds: &[(Element, Element)],
) -> Result<SpecSemilattice> {
    let n = base.size();
    let mut rel = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            rel[x * n + y] = base.leq(x, y);
        }
    }
    for &(x, y) in seeds {
        base.check_element(x)?;
        base.check_element(y)?;
        rel[x * n + y] = true;
    }
    loop {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] && !rel[i * n + j] {
                            rel[i * n + j] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        for z in 0..n {
            for x in 0..n {
                if !rel[x * n + z] {
                    continue;
                }
                for y in 0..n {
                    if rel[y * n + z] {
                        let xy = base.join(x, y);
                        if !rel[xy * n + z] {
                            rel[xy * n + z] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(SpecSemilattice::unchecked(base.clone(), |x, y| {
        rel[x * n + y]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> JoinSemilattice {
        JoinSemilattice::chain(2)
    }

    #[test]
    fn order_is_a_specialization() {
        let s = SpecSemilattice::discrete(chain2());
        assert!(s.validate_specialization().unwrap().ok());
    }

    #[test]
    fn missing_order_pair_violates_s1() {
        let s = SpecSemilattice::unchecked(chain2(), |x, y| x == y);
        let report = s.validate_specialization().unwrap();
        let v = report.first(Axiom::S1).unwrap();
        assert_eq!(v.witness, vec![0, 1]);
        assert!(s.reproduces(v.axiom, &v.witness));
        assert!(SpecSemilattice::from_pairs(chain2(), &[(0, 0), (1, 1)]).is_err());
    }

    #[test]
    fn every_reported_witness_reproduces() {
        // 3-chain with a relation breaking S2 and S3 in several places
        let s = SpecSemilattice::unchecked(JoinSemilattice::chain(3), |x, y| {
            x <= y || (x, y) == (2, 1) || (x, y) == (1, 0)
        });
        let report = s.validate_specialization().unwrap();
        assert!(!report.ok());
        for v in &report.violations {
            assert!(s.reproduces(v.axiom, &v.witness), "{v:?}");
        }
    }

    #[test]
    fn invalid_base_rejected_before_checks() {
        let base = JoinSemilattice::from_table(vec![vec![0, 0], vec![1, 1]], None).unwrap();
        let s = SpecSemilattice::unchecked(base, |_, _| true);
        assert!(s.validate_specialization().is_err());
    }

    #[test]
    fn completion_without_seeds_is_the_order() {
        let s = complete_specialization(&chain2(), &[]).unwrap();
        assert_eq!(s, SpecSemilattice::discrete(chain2()));
    }

    #[test]
    fn completion_of_reverse_pair_is_total() {
        let s = complete_specialization(&chain2(), &[(1, 0)]).unwrap();
        assert!(s.elements().all(|x| s.elements().all(|y| s.spec(x, y))));
        assert!(s.validate_specialization().unwrap().ok());
    }

    #[test]
    fn completion_ignores_seed_order() {
        let base = JoinSemilattice::chain(4);
        let a = complete_specialization(&base, &[(3, 1), (2, 0)]).unwrap();
        let b = complete_specialization(&base, &[(2, 0), (3, 1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn closures_on_two_chain() {
        let s = SpecSemilattice::discrete(chain2());
        assert_eq!(s.closure_of(0), Some(0));
        assert_eq!(s.closure_of(1), Some(1));
        let total = complete_specialization(&chain2(), &[(1, 0)]).unwrap();
        assert_eq!(total.closure_of(0), Some(1));
        assert!(total.is_principal());
    }

    #[test]
    fn closure_absent_when_downset_join_escapes() {
        // powerset of {p,q}: {p} ⊑ {} and {q} ⊑ {} but not {p,q} ⊑ {} (S3 broken)
        let base =
            JoinSemilattice::from_fn(4, (0..4).map(|i| i.to_string()).collect(), |x, y| x | y);
        let s = SpecSemilattice::unchecked(base, |x, y| x & !y == 0 || (y == 0 && x != 3));
        assert_eq!(s.closure_of(0), None);
        assert!(!s.is_principal());
        assert!(matches!(
            s.to_closure_semilattice(),
            Err(Error::NotPrincipal(0))
        ));
    }

    #[test]
    fn sorted_by_label_reindexes() {
        let base = chain2().with_labels(vec!["z".into(), "a".into()]).unwrap();
        let s = SpecSemilattice::discrete(base).sorted_by_label();
        assert_eq!(s.label(0), "a");
        assert!(s.leq(1, 0));
        assert!(s.spec(1, 0));
    }
}
