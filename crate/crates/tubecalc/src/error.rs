//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised while parsing, loading or computing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclo order must be positive, got {0}")]
    BadCycloOrder(i64),
    #[error("not exactly representable: {0}")]
    NotExact(String),
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(&'static str, &'static str),
    #[error("invalid tolerance: {0}")]
    Tolerance(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("F-block ({0}): {1}")]
    FBlock(String, String),
    #[error("incomposable word: {0}")]
    Incomposable(String),
    #[error("word mismatch: {0}")]
    WordMismatch(String),
    #[error("singular Gram matrix for word {0}")]
    SingularGram(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("half-braiding: {0}")]
    HalfBraiding(String),
    #[error("numerical precision failure: {0}")]
    Precision(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
