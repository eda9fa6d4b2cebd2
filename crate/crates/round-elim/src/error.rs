use lcl_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("{0}")]
    Invalid(String),
}
