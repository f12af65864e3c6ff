use thiserror::Error;

/// Errors surfaced by the library. Consistency failures in the fixed
/// geometric data (e.g. a class that should be integral but is not) are
/// reported as [`Error::Internal`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("element is not in the local ring at {prime}")]
    NotInLocalRing { prime: String },
    #[error("not an isometry: {0}")]
    NotIsometry(String),
    #[error("unexpected dimension: expected {expected}, found {found} ({what})")]
    Dimension {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("common intersecting line is not unique: {0}")]
    NotUnique(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("serialization error: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

/// Shorthand for an [`Error::Internal`] with a formatted message.
macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(format!($($arg)*))
    };
}
pub(crate) use internal;
