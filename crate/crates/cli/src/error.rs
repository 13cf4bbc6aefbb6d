use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sweep spec: {0}")]
    Spec(String),
    #[error("cannot read config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },
    #[error("schema mismatch: {0}")]
    Schema(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl Error {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Spec(_) | Error::Config { .. } | Error::Schema(_) => 2,
            Error::Io { .. } | Error::Csv { .. } | Error::Pool(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
