//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by corpus loading, feature extraction, training and
/// model persistence.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("missing required column `{0}` in header")]
    MissingColumn(&'static str),

    #[error("malformed row at line {line}: expected {expected} fields, found {found}")]
    MalformedRow {
        line: u64,
        expected: u64,
        found: u64,
    },

    #[error("{path}: zero data rows")]
    ZeroDataRows { path: String },

    #[error("class `{class}` has {count} document(s); at least 2 are required to split")]
    ClassTooSmall { class: String, count: usize },

    #[error("test fraction {fraction} yields an empty {side} set")]
    DegenerateSplit { fraction: f64, side: &'static str },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot fit on an empty input set")]
    EmptyFit,

    #[error("all documents are empty after preprocessing")]
    AllDocumentsEmpty,

    #[error("cosine similarity is undefined for a zero-norm vector")]
    ZeroNorm,

    #[error("non-finite loss at epoch {epoch}, batch {batch}")]
    NonFiniteLoss { epoch: usize, batch: usize },

    #[error("training data contains a single class; both classes are required")]
    SingleClass,

    #[error("multinomial naive bayes requires nonnegative features; feature {index} is {value}")]
    NegativeFeature { index: usize, value: f64 },

    #[error("feature dimension mismatch: model expects {expected}, input has {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported model file version {found} (this build reads version {expected})")]
    VersionMismatch { found: u64, expected: u64 },

    #[error(
        "{path}: parse error at byte offset {offset} (line {line}, column {column}): {message}"
    )]
    Parse {
        path: String,
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid model file: {0}")]
    InvalidModel(String),

    #[error("invalid option value for `{key}`: {message}")]
    InvalidOption { key: String, message: String },

    #[error("{0}")]
    Pipeline(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wrap an I/O error with the path it occurred on.
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
