//! Locally checkable labeling problems in the black-white formalism.
//!
//! A [`Problem`] has an alphabet and two constraints. Each constraint is a list
//! of condensed configurations: multisets of label disjunctions, each standing
//! for every configuration obtained by picking one label per disjunction.

pub mod config;
pub mod error;
pub mod expand;
pub mod format;
pub mod label;
pub mod matching;
pub mod problem;

pub use config::{Condensed, Configuration, Constraint, Group, LabelId};
pub use error::CoreError;
pub use expand::{expand_condensed, expand_constraint, DEFAULT_EXPANSION_CAP};
pub use format::{format_condensed, parse_condensed_line, parse_problem, serialize};
pub use label::{name_cmp, split_name, Label};
pub use matching::{
    constraint_contains, dominates_config, dominates_labels, has_perfect_matching, pick_check, StrengthRelation,
};
pub use problem::{NamedCondensed, Problem, ProblemBuilder, Side};

/// Largest supported configuration arity.
pub const MAX_ARITY: usize = 16;
