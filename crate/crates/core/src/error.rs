use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system {type_label}{rank}")]
    InvalidType { type_label: String, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("node {node} is out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not integral")]
    NotIntegral(String),

    #[error("node {0} is not minuscule")]
    NotMinuscule(usize),

    #[error("node budget of {budget} exceeded ({seen} nodes seen, {frontier} in frontier)")]
    BudgetExceeded {
        budget: usize,
        seen: usize,
        frontier: usize,
    },

    #[error("crystal has {0} dominant elements; split into components first")]
    MultipleDominant(usize),

    #[error("value does not fit: {0}")]
    Overflow(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
