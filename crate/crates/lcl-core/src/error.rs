use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("empty disjunction")]
    EmptyGroup,
    #[error("invalid label name `{0}`")]
    InvalidLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("arity {0} exceeds the supported maximum of {max}", max = crate::MAX_ARITY)]
    ArityTooLarge(usize),
    #[error("expansion exceeds the cap of {0} configurations")]
    ExpansionCap(usize),
}
