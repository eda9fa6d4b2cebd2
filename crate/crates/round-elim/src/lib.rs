//! Round elimination for black-white LCL problems.
//!
//! [`re`] maximizes the black side under the universal quantifier and lifts
//! the white side existentially; [`rere`] does the mirror image. Labels of the
//! derived problems are sets of source labels and record their members.

pub mod compare;
pub mod error;
pub mod maximize;
pub mod ops;
pub mod relax;
pub mod sets;
pub mod strength;
pub mod zero;

pub use compare::{compare_constraints, compare_sides, same_problem, SideComparison};
pub use error::ReError;
pub use lcl_core::StrengthRelation;
pub use maximize::{box_consensus, maximize_universal, satisfies_universal, MaximizeOptions, Method};
pub use ops::{
    derived_problem, existential_lift, heuristic_exhaust, heuristic_relax_step, member_sets, merge_labels, name_sets,
    new_labels, re, rere, SetLabel,
};
pub use relax::{
    check_relaxation_of_re, check_relaxation_of_rere, check_relaxation_with, dominated_by, Failure, RelaxationReport,
    Stats,
};
pub use strength::{diagram, diagram_from_relation, strength_leq, strength_relation, Diagram};
pub use zero::{zero_round_solvable, ZeroRoundWitness};
