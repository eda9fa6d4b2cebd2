//! The iterated GHZ problem family and the mechanical check of its
//! round-elimination lower-bound sequence at concrete degree.

pub mod appendix;
pub mod certificate;
pub mod color;
pub mod error;
pub mod ghz;
pub mod pi;
pub mod prime;
pub mod second;

pub use appendix::{check_claims, parse_claims, Claim, ClaimOutcome, Witness};
pub use certificate::{verify_sequence, verify_step, SequenceCertificate, StepRecord, MAX_DELTA};
pub use color::{ColorClass, Kind};
pub use error::GhzError;
pub use ghz::{bit_configurations, ghz_allows, iterated_chsh, iterated_ghz};
pub use pi::{pi, pi_white, present_black, special_black, strikethrough_from_bits};
pub use prime::{black_generators, generated, minimal, n_plus, pi_prime, FirstStep};
pub use second::{rename_after_second_step, SecondStep};

/// Transcribed appendix non-relations, one claim per line.
pub const APPENDIX_CLAIMS: &str = include_str!("../tests/data/appendix.txt");
