use thiserror::Error;

/// Errors shared by all modules of this crate.
///
/// Checker verdicts are never errors: a failed axiom or a falsified
/// inequality is reported as data in a [`crate::report::CheckReport`].
/// `CoreError` covers misuse of the API itself.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live on different domains")]
    DomainMismatch,

    #[error("operand list is empty")]
    EmptyOperands,

    #[error("level {0} is outside (0, 1]")]
    InvalidLevel(f64),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid fuzzy set: {0}")]
    InvalidSet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("points are identical; separation is undefined")]
    IdenticalPoints,

    #[error("no catalog functional separates the two points")]
    NoSeparatingFunctional,
}

pub type Result<T> = std::result::Result<T, CoreError>;
