use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Two series (or tables) with incompatible variable counts or bounds.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An operation's mathematical precondition failed.
    #[error("domain error: {0}")]
    Domain(String),

    /// A user-supplied space or model failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// Input data is internally inconsistent (e.g. not a point-count sequence).
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// The requested computation needs data that is not available.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Enumeration would exceed the configured size guard.
    #[error("size guard exceeded: {0}")]
    TooLarge(String),

    /// A structural invariant the engine relies on failed; always a bug or a
    /// falsified identity worth reporting verbatim.
    #[error("internal check failed: {0}")]
    Check(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
