use thiserror::Error;

/// Errors raised by the library.
///
/// `InvalidInput` covers everything a caller can get wrong; `Internal` means
/// a construction produced data violating its own invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a complex: composite of consecutive maps is nonzero")]
    NotAComplex,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True if the error is the caller's fault rather than a bug.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::NotPrime(_) | Error::Overflow(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
