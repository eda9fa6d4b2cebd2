//! Synchronous simulation of port-numbered networks, labeling checks, and
//! the classical, simulated-quantum and network-of-games algorithms.

pub mod check;
pub mod engine;
pub mod error;
pub mod games;
pub mod ghz;
pub mod network;
pub mod sim;

pub use check::{check_labeling, labeling_from_text, labeling_to_text, Checker, LabelViolation, Labeling};
pub use engine::{node_rng, run_sync, NodeAlgorithm, RunTrace, Step, View};
pub use error::SimError;
pub use games::{games_labeling, games_network, ghz_as_games, ghz_labels, GamesAlg};
pub use ghz::{ClassicalGhz, GhzResource, QuantumSimGhz, ResourceHandle, Share};
pub use network::{gen_colored_biregular, Node, PortNetwork, Role};
pub use sim::{games_family, run_once, RunSummary, SimKind};
