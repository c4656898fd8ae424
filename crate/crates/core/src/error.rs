use thiserror::Error;

/// Errors produced by the group, search and iteration operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit: {what} needs {requested}, limit is {limit}")]
    ResourceLimit {
        what: String,
        requested: String,
        limit: u64,
    },

    /// An exact post-condition check failed. Never expected; carries the witness.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn limit(what: impl Into<String>, requested: impl ToString, limit: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            requested: requested.to_string(),
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
