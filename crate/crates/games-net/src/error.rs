use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid game: {0}")]
    Game(String),
    #[error("invalid strategy: {0}")]
    Strategy(String),
    #[error("invalid circuit: {0}")]
    Circuit(String),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error("no safe output for player {player} on input {input}")]
    NoSafeOutput { player: usize, input: String },
}
