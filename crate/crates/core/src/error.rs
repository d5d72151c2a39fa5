use thiserror::Error;

/// Errors surfaced by the engine and its text formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed partition, label or cache text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Element enumeration would exceed the configured budget.
    #[error("group of order {required} exceeds the element budget {budget}")]
    Budget { required: u128, budget: u128 },

    /// A cache file was written by an incompatible version.
    #[error("stale cache: {0}")]
    StaleCache(String),

    /// An exactness assertion failed (non-integral quotient, broken conservation law).
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
