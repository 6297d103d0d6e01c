use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("capacity exceeded: {what} needs {needed} elements, limit is {limit}")]
    CapacityExceeded {
        what: String,
        needed: u128,
        limit: usize,
    },
    #[error("invalid generator set: {0}")]
    InvalidGenerator(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("ambiguous coloring: {0}")]
    AmbiguousColoring(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    /// A family construction disagrees with its closed-form prediction.
    #[error("{family}: predicted {predicted}, constructed {actual}")]
    PredictionMismatch {
        family: String,
        predicted: String,
        actual: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, needed: u128, limit: usize) -> Self {
        Error::CapacityExceeded {
            what: what.into(),
            needed,
            limit,
        }
    }
}
