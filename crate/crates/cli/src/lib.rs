//! Command-line tools and an HTTP/JSON service over the round-elimination,
//! GHZ-family, games and simulation engines. Both front ends go through
//! [`ops::apply`].

pub mod api;
pub mod commands;
pub mod ops;
pub mod session;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

pub use api::router;
pub use session::Store;

/// Serves the API until the process is stopped.
pub async fn serve(port: u16, data_dir: Option<PathBuf>) -> Result<(), String> {
    let store = match data_dir {
        Some(d) => Store::persistent(d).map_err(|e| e.to_string())?,
        None => Store::in_memory(),
    };
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr).await.map_err(|e| format!("bind {addr}: {e}"))?;
    eprintln!("listening on {addr}");
    axum::serve(listener, router(Arc::new(store))).await.map_err(|e| e.to_string())
}
