use thiserror::Error;

/// Errors raised by the exact-arithmetic engine and the geometric layers
/// built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable tables")]
    TableMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` is not bound at the evaluation point")]
    UnboundVariable(String),

    #[error("pole at point: denominator factor {factor} vanishes")]
    PoleAtPoint { factor: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("X = X_f + X_d is undefined on H0 (x11 = 0)")]
    NotDecomposable,

    #[error("endomorphism field is not nilpotent of order two")]
    InvalidDeformation,

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
