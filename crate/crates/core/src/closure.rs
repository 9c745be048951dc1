//! Closure semilattices and their correspondence with principal
//! specialization semilattices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::{Axiom, AxiomReport};
use crate::semilattice::JoinSemilattice;
use crate::specialization::SpecSemilattice;
use crate::Element;

/// A join-semilattice with an extensive, idempotent, isotone map `K`.
/// Additivity is not assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureSemilattice {
    base: JoinSemilattice,
    k: Vec<Element>,
}

/// Tuples beyond this count are sampled instead of enumerated.
const IDENTITY_EXHAUSTIVE_LIMIT: usize = 1 << 22;
const IDENTITY_SAMPLES: usize = 200_000;

impl ClosureSemilattice {
    pub fn new(base: JoinSemilattice, k: Vec<Element>) -> Result<Self> {
        let c = Self::unchecked(base, k)?;
        let report = c.validate_closure();
        if !report.ok() {
            return Err(Error::Axioms {
                structure: "closure operator",
                report,
            });
        }
        Ok(c)
    }

    /// Range checks only.
    pub fn unchecked(base: JoinSemilattice, k: Vec<Element>) -> Result<Self> {
        if k.len() != base.size() {
            return Err(Error::malformed(format!(
                "closure table has {} entries for {} elements",
                k.len(),
                base.size()
            )));
        }
        for &y in &k {
            base.check_element(y)?;
        }
        Ok(ClosureSemilattice { base, k })
    }

    pub fn base(&self) -> &JoinSemilattice {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn closure(&self, x: Element) -> Element {
        self.k[x]
    }

    pub fn table(&self) -> &[Element] {
        &self.k
    }

    pub fn validate_closure(&self) -> AxiomReport {
        let mut report = self.base.validate_join_table();
        if !report.ok() {
            return report;
        }
        let b = &self.base;
        for x in b.elements() {
            if !b.leq(x, self.k[x]) {
                report.push(Axiom::Extensive, vec![x]);
            }
            if self.k[self.k[x]] != self.k[x] {
                report.push(Axiom::ClosureIdempotent, vec![x]);
            }
        }
        for x in b.elements() {
            for y in b.elements() {
                if b.leq(x, y) && !b.leq(self.k[x], self.k[y]) {
                    report.push(Axiom::Isotone, vec![x, y]);
                }
            }
        }
        report
    }

    /// `a ⊑ b` iff `a <= K b`.
    pub fn to_specialization_semilattice(&self) -> SpecSemilattice {
        let b = self.base.clone();
        SpecSemilattice::unchecked(self.base.clone(), |x, y| b.leq(x, self.k[y]))
    }

    /// Checks `K(a1 ∨ .. ∨ ar ∨ K b1 ∨ .. ∨ K bs) = K(a1 ∨ .. ∨ ar ∨ b1 ∨ .. ∨ bs)`.
    ///
    /// All `n^(r+s)` tuples are checked when that count is moderate, otherwise
    /// a fixed-seed sample. Witnesses list `a1..ar` then `b1..bs`.
    pub fn check_closure_identity(&self, r: usize, s: usize) -> Result<AxiomReport> {
        if r + s == 0 {
            return Err(Error::malformed("closure identity needs r + s >= 1"));
        }
        let n = self.size();
        let arity = r + s;
        let mut report = AxiomReport::default();
        let mut check = |t: &[Element]| {
            let b = &self.base;
            let lhs = b
                .join_all(
                    t[..r]
                        .iter()
                        .copied()
                        .chain(t[r..].iter().map(|&x| self.k[x])),
                )
                .expect("arity >= 1");
            let rhs = b.join_all(t.iter().copied()).expect("arity >= 1");
            if self.k[lhs] != self.k[rhs] {
                report.push(Axiom::ClosureIdentity, t.to_vec());
            }
        };
        let total = (n as f64).powi(arity as i32);
        if total <= IDENTITY_EXHAUSTIVE_LIMIT as f64 {
            let mut t = vec![0; arity];
            'outer: loop {
                check(&t);
                for i in (0..arity).rev() {
                    t[i] += 1;
                    if t[i] < n {
                        continue 'outer;
                    }
                    t[i] = 0;
                }
                break;
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let mut t = vec![0; arity];
            for _ in 0..IDENTITY_SAMPLES {
                for x in t.iter_mut() {
                    *x = rng.random_range(0..n);
                }
                check(&t);
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialization::complete_specialization;

    fn powerset2() -> JoinSemilattice {
        JoinSemilattice::from_fn(4, (0..4).map(|i| i.to_string()).collect(), |x, y| x | y)
    }

    #[test]
    fn identity_closure_gives_order() {
        let c = ClosureSemilattice::new(JoinSemilattice::chain(2), vec![0, 1]).unwrap();
        assert_eq!(
            c.to_specialization_semilattice(),
            SpecSemilattice::discrete(JoinSemilattice::chain(2))
        );
    }

    #[test]
    fn total_relation_gives_constant_top() {
        let s = complete_specialization(&JoinSemilattice::chain(2), &[(1, 0)]).unwrap();
        assert_eq!(s.to_closure_semilattice().unwrap().table(), &[1, 1]);
    }

    #[test]
    fn sierpinski_closure_specialization_table() {
        // bit 0 = p, bit 1 = q; closed sets {}, {q}, {p,q}: K{p} = {p,q}, K{q} = {q}
        let c = ClosureSemilattice::new(powerset2(), vec![0, 3, 2, 3]).unwrap();
        let s = c.to_specialization_semilattice();
        assert!(s.validate_specialization().unwrap().ok());
        // {q} ⊑ {p} since {q} ⊆ K{p}; {p} ⊑ {q} fails
        assert!(s.spec(0b10, 0b01));
        assert!(!s.spec(0b01, 0b10));
        assert_eq!(s.to_closure_semilattice().unwrap(), c);
    }

    #[test]
    fn non_closure_rejected() {
        let err = ClosureSemilattice::new(JoinSemilattice::chain(2), vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::Axioms { .. }));
        assert!(ClosureSemilattice::new(JoinSemilattice::chain(2), vec![0]).is_err());
    }

    #[test]
    fn closure_identity_trivial_cases() {
        let c = ClosureSemilattice::new(JoinSemilattice::chain(2), vec![0, 1]).unwrap();
        assert!(c.check_closure_identity(0, 1).unwrap().ok());
        assert!(c.check_closure_identity(1, 1).unwrap().ok());
        assert!(c.check_closure_identity(0, 0).is_err());
    }

    #[test]
    fn closure_identity_detects_non_closure() {
        // a non-idempotent map breaks the r=0, s=1 instance
        let c = ClosureSemilattice::unchecked(JoinSemilattice::chain(3), vec![1, 2, 2]).unwrap();
        let report = c.check_closure_identity(0, 1).unwrap();
        assert!(!report.ok());
        assert_eq!(report.violations[0].witness, vec![0]);
    }
}
