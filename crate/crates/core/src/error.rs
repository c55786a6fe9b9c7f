use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("invalid region spec {spec}: {reason}")]
    InvalidSpec { spec: String, reason: String },

    #[error("region has {cells} cells, exceeding the oracle cap of {cap}")]
    CellCapExceeded { cells: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("inexact division in {0}")]
    InexactDivision(String),

    #[error("internal disagreement: {0}")]
    Disagreement(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
