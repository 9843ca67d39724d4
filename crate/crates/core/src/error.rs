use thiserror::Error;

use crate::groups::CayleyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// Raised by infinite backends asked for an element enumeration.
    #[error("group is not enumerable: {0}")]
    NotEnumerable(String),

    #[error("invalid Cayley table: {0}")]
    Cayley(#[from] CayleyError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
