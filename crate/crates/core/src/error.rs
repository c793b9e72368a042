use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("genus mismatch: expected {expected}, got {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("element is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic,
    #[error("representation failed validation: {0}")]
    ValidationFailed(String),
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
    #[error("malformed cache file: {0}")]
    Format(String),
    #[error("incompatible censuses: {0}")]
    IncompatibleCensus(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("x = {0} is outside the domain x >= 2")]
    Domain(f64),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
