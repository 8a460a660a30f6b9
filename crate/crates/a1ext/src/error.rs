use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{module}: degree {degree}: {msg}")]
    Range { module: String, degree: i32, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("inconsistent differential: {0}")]
    Consistency(String),
    #[error("extension budget mismatch: {0}")]
    Budget(String),
    #[error("unstable readout: {0}")]
    Unstable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn range(module: impl Into<String>, degree: i32, msg: impl Into<String>) -> Self {
        Error::Range {
            module: module.into(),
            degree,
            msg: msg.into(),
        }
    }
}
