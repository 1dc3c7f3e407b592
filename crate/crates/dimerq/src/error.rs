use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, DataError>;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },

    #[error("missing column {column}; expected header {expected}")]
    MissingColumn {
        column: &'static str,
        expected: &'static str,
    },

    #[error("unknown unit tag {tag:?}; accepted: {accepted}")]
    UnknownUnit { tag: String, accepted: &'static str },

    #[error("duplicate temperature {t} K on lines {first} and {second}")]
    DuplicateTemperature { t: f64, first: u64, second: u64 },

    #[error("unknown preset {name:?}; available: {available}")]
    UnknownPreset { name: String, available: String },

    #[error("cannot parse {input:?} as a value with uncertainty")]
    BadLiteral { input: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Physics(#[from] dimerq_core::Error),
}
