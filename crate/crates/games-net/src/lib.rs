//! Games over finite alphabets, non-signaling strategies, strong
//! completability, circuits of half-games and networks of games.

pub mod circuit;
pub mod complete;
pub mod error;
pub mod format;
pub mod game;
pub mod instance;
pub mod strategy;

pub use circuit::{random_circuit, Gate, HalfGame, HalfGameCircuit, Table};
pub use complete::{completable_in_any_order, is_strongly_completable, safe_pick, Incompletable, Move, SafePicker};
pub use error::GameError;
pub use format::{parse_game, parse_strategy, write_game, write_strategy};
pub use game::{is_solvable, max_deterministic_wins, words, Game, Sym, Word};
pub use instance::{check_games_labeling, random_instance, BlackSpec, Edge, GamesInstance, GamesViolation, NodeRef, WhiteSpec};
pub use strategy::{conditional, draw, ratio, verify_ns_strategy, NsBox, Prob, Strategy, Violation};
