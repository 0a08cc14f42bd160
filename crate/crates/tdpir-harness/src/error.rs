use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] tdpir::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed frame: {0}")]
    MalformedFrame(String),
    #[error("server error frame: {0}")]
    ServerError(String),
    #[error("protocol violation: {0}")]
    Protocol(String),
    #[error("bad file format: {0}")]
    FileFormat(String),
    #[error("{0}")]
    Invalid(String),
}
