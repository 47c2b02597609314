use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("coefficient at index {index} is negative ({value}); completely positive maps need non-negative coefficients")]
    NegativeCoefficient { index: i64, value: f64 },

    #[error("symbol is not Hermitian (t_-j != t_j); a real moment is undefined")]
    NotHermitian,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: i64, order: usize },

    #[error("order n = {n} exceeds the limit {max} for {what}")]
    SizeGuard {
        n: usize,
        max: usize,
        what: &'static str,
    },

    #[error("duplicate block label {0}")]
    DuplicateLabel(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
