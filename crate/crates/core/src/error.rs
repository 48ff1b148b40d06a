use thiserror::Error;

/// Errors produced by the isozeta pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("inexact division: {0}")]
    Divisibility(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported j-invariant: {0}")]
    UnsupportedJ(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("unknown export format `{0}`")]
    UnknownFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::Divisibility(_))
    }
}
