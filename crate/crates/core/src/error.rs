use thiserror::Error;

/// Errors raised by the workbench.
///
/// `Precondition` covers every violated input contract (out-of-range indices,
/// unsupported shapes, missing vertices); `Malformed` covers structurally
/// invalid data such as broken simplicial identities or bad JSON payloads.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Segal condition fails: {0}")]
    Segal(String),
    #[error("colimit not stabilized: {0}")]
    NotStabilized(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
