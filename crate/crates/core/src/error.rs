use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("truncation cap reached before the tail bound: {0}")]
    Truncation(String),
    #[error("divergent semi-infinite row: {0}")]
    Divergence(String),
    #[error("contour error: {0}")]
    Contour(String),
    #[error("config key `{key}`: {msg}")]
    Config { key: String, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
