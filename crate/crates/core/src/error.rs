use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operator file version {found} does not match {expected}")]
    Version { found: String, expected: String },
    #[error("checksum mismatch in operator file")]
    Checksum,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
