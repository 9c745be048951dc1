use std::fmt;

use serde::Serialize;

use crate::Element;

/// Tags for every law the checkers know about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    Idempotent,
    Commutative,
    Associative,
    /// `x <= y` implies `x ⊑ y`.
    S1,
    /// Transitivity of `⊑`.
    S2,
    /// `x ⊑ z` and `y ⊑ z` imply `x ∨ y ⊑ z`.
    S3,
    /// Reflexivity of `⊑` (derived).
    S4,
    Extensive,
    ClosureIdempotent,
    Isotone,
    /// `K(a1 ∨ .. ∨ ar ∨ Kb1 ∨ .. ∨ Kbs) = K(a1 ∨ .. ∨ ar ∨ b1 ∨ .. ∨ bs)`.
    ClosureIdentity,
    /// `η(K a) = K η(a)` for closures in a designated set.
    ClosurePreservation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Idempotent => "idempotence",
            Axiom::Commutative => "commutativity",
            Axiom::Associative => "associativity",
            Axiom::S1 => "S1",
            Axiom::S2 => "S2",
            Axiom::S3 => "S3",
            Axiom::S4 => "S4",
            Axiom::Extensive => "extensive",
            Axiom::ClosureIdempotent => "closure idempotence",
            Axiom::Isotone => "isotone",
            Axiom::ClosureIdentity => "closure identity",
            Axiom::ClosurePreservation => "closure preservation",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Element>,
}

/// Outcome of an exhaustive axiom check. Empty means every law held.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, axiom: Axiom, witness: Vec<Element>) {
        self.violations.push(Violation { axiom, witness });
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.violations.extend(other.violations);
    }

    pub fn first(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(f, "; {} at {:?}", v.axiom, v.witness)?;
        }
        if self.violations.len() > 5 {
            f.write_str("; ...")?;
        }
        Ok(())
    }
}
