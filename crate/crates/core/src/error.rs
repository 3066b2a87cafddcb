use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("document has no non-whitespace content")]
    EmptyDocument,

    #[error("document has no sentences left after preprocessing")]
    DegenerateDocument,

    #[error("dimension mismatch: expected width {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("RBM parameters became non-finite during training")]
    NonFinite,

    #[error("system summary is empty")]
    EmptySystemSummary,

    #[error("reference summary is empty")]
    EmptyReference,

    #[error("no reference summary for document `{0}`")]
    MissingReference(String),

    #[error("reference for `{id}` names sentence {index}, but the document has {n} sentences")]
    InvalidReference { id: String, index: usize, n: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
