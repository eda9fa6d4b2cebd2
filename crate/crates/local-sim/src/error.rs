use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid network: {0}")]
    Network(String),
    #[error("node {node} sent to port {port}, which does not exist")]
    NoSuchPort { node: usize, port: usize },
    #[error("edge at node {node} port {port} got two outputs")]
    OutputConflict { node: usize, port: usize },
    #[error("node {node} received two messages on port {port} in one round")]
    DoubleDelivery { node: usize, port: usize },
    #[error("algorithm failed at node {node}: {msg}")]
    Algorithm { node: usize, msg: String },
    #[error(transparent)]
    Game(#[from] games_net::GameError),
    #[error(transparent)]
    Core(#[from] lcl_core::CoreError),
    #[error(transparent)]
    Ghz(#[from] ghz_family::GhzError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
