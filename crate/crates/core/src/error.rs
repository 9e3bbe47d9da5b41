use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameter violates a precondition of an identity (parity, range, ...).
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// A summand hits an exact zero denominator; the jump is not guessed.
    #[error("singular term at index {index}: {detail}")]
    Singular { index: i64, detail: String },

    #[error("pole proximity: {0}")]
    PoleProximity(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("linear solve failed: {0}")]
    Solver(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parse error: {0}")]
    Parse(String),
}
