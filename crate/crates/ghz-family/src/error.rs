use lcl_core::CoreError;
use round_elim::ReError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GhzError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Re(#[from] ReError),
    #[error("label `{0}` is outside the domain of the renaming")]
    Renaming(String),
    #[error("generated set {0} is not a label of the derived problem")]
    MissingSet(String),
}
