use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("empty set: {0}")]
    EmptySet(&'static str),
    #[error("bump set is not closed under inversion")]
    AsymmetricBump,
    #[error("integer overflow in Smith normal form (entry exceeds 2^31)")]
    Overflow,
    #[error("effective spectral support Q ∩ conj(Q) is empty")]
    EmptyEffectiveSupport,
    #[error("the zero element must belong to W")]
    ZeroNotInW,
    #[error("instance too large for vertex enumeration: {0}")]
    OracleTooLarge(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("solution is not optimal")]
    NotOptimal,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
