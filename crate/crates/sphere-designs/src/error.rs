use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a {t}-design: max residual {residual:e} exceeds tolerance {tolerance:e}")]
    NotADesign {
        t: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("unsupported family parameter: {0}")]
    UnsupportedFamily(String),

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
