use thiserror::Error;

/// Errors raised by the geometric pipelines.
///
/// `Precondition` covers violated input hypotheses (collinear triples, degenerate
/// arrangements, malformed monad shapes); `Claim` covers an identity that was
/// expected to hold and did not.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("claim failed: {0}")]
    Claim(String),
    #[error("unresolved: {0}")]
    Unresolved(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Claim(_) => 3,
            Error::Unresolved(_) => 4,
            _ => 2,
        }
    }
}
