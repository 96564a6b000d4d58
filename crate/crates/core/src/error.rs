use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("radicand mismatch: sqrt({lhs}) vs sqrt({rhs})")]
    RadicandMismatch { lhs: String, rhs: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported branch: {0}")]
    UnsupportedBranch(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
