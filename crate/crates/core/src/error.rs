use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised across the library. Each variant maps onto a fixed process
/// exit code (see [`Error::exit_code`]) so that the CLI and the C ABI report
/// the same categories.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch at {path}: {message}")]
    Dimension { path: String, message: String },

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn dim(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Dimension {
            path: path.into(),
            message: message.into(),
        }
    }

    /// 0 ok, 1 invalid input / io, 2 parse, 3 dimension or resource, 4 verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Dimension { .. } | Error::Resource(_) => 3,
            Error::Verification(_) => 4,
            Error::InvalidInput(_) | Error::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
