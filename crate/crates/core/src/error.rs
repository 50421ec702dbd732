use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("Weil bound violated: {0}")]
    WeilViolation(String),
    #[error("repeated zeros are not supported by this operation")]
    UnsupportedMultiplicity,
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
