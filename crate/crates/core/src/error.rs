use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The hypothesis class is too large to enumerate. `count` is the exact
    /// cardinality in decimal.
    #[error("hypothesis space has {count} elements, exceeding the enumeration budget of {budget}")]
    BudgetExceeded { count: String, budget: u64 },

    #[error("matrix decomposition failed: {0}")]
    Decomposition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
