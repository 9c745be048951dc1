use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] specsemi::Error),
}

impl CliError {
    /// 2 for bad input, 3 for a resource cap, 1 for a failed internal check.
    pub fn exit_code(&self) -> i32 {
        use specsemi::Error as E;
        match self {
            CliError::Core(E::CapExceeded { .. } | E::BudgetExceeded { .. }) => 3,
            CliError::Core(E::Internal(_)) => 1,
            _ => 2,
        }
    }
}
