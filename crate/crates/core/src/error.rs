use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value {0} is outside the unit interval")]
    OutOfRange(f64),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid fuzzy set: {0}")]
    InvalidFuzzySet(String),

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("method {method} does not apply to {family}")]
    InapplicableMethod { method: String, family: String },

    #[error("unknown operator reference `{0}`")]
    UnknownReference(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
