use thiserror::Error;

use crate::report::AxiomReport;
use crate::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The input does not describe a well-formed structure (shape, ranges).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// The structure is well-formed but fails its defining axioms.
    #[error("{structure} fails its axioms: {report}")]
    Axioms {
        structure: &'static str,
        report: AxiomReport,
    },

    #[error("element {0} has no closure; structure is not principal")]
    NotPrincipal(Element),

    #[error("element {0} is not a closure (K({0}) = {1})")]
    NotClosure(Element, Element),

    #[error("map is not a {kind}: {witness}")]
    NotHomomorphism { kind: &'static str, witness: String },

    #[error("map does not preserve closures in Z: {0}")]
    ClosureNotPreserved(String),

    #[error("size {size} exceeds cap {cap} ({detail})")]
    CapExceeded {
        size: usize,
        cap: usize,
        detail: String,
    },

    #[error("search budget exceeded: {estimate} candidate maps > bound {bound}")]
    BudgetExceeded { estimate: f64, bound: u64 },

    /// A construction-time self check failed. Indicates a bug, never bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
