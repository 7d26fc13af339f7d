//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by tensor, compression, training and pipeline operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    Range(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-parsable category name, used by the CLI on stderr.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Range(_) => "range",
            Error::Numeric(_) => "numeric",
            Error::Config(_) => "config",
            Error::Infeasible(_) => "infeasible",
            Error::Format(_) => "format",
            Error::Degenerate(_) => "degenerate",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
