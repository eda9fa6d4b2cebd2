//! End-to-end verification of the lower-bound sequence at a fixed Δ.

use std::time::Instant;

use lcl_core::{Constraint, LabelId, Problem, Side};
use round_elim::{
    check_relaxation_with, compare_sides, maximize_universal, same_problem, zero_round_solvable, MaximizeOptions,
    RelaxationReport, SideComparison, ZeroRoundWitness,
};
use serde::{Deserialize, Serialize};

use crate::error::GhzError;
use crate::ghz::iterated_ghz;
use crate::pi::pi;
use crate::prime::{FirstStep, CAP};
use crate::second::SecondStep;

/// Largest Δ accepted by [`verify_sequence`].
pub const MAX_DELTA: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub equal: bool,
    /// A configuration of the first problem missing from the second.
    pub only_in_first: Option<Vec<String>>,
    /// A configuration of the second problem missing from the first.
    pub only_in_second: Option<Vec<String>>,
}

impl From<SideComparison> for Comparison {
    fn from(c: SideComparison) -> Self {
        Comparison { equal: c.equal(), only_in_first: c.only_in_first, only_in_second: c.only_in_second }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenamingCheck {
    pub ok: bool,
    pub error: Option<String>,
    pub white: Comparison,
    pub black: Comparison,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub pi: usize,
    pub pi_prime: usize,
    pub pi_fourth: usize,
}

/// Labels of the derived problems that are not right-closed in the source order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightClosedness {
    pub re_labels: usize,
    pub rere_labels: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub i: usize,
    /// Π′ is a relaxation of re(Π).
    pub all_step_1: RelaxationReport,
    /// Π⁗ is a relaxation of rere(Π′).
    pub all_step_22: RelaxationReport,
    pub renaming: RenamingCheck,
    pub label_counts: LabelCounts,
    pub right_closed: RightClosedness,
    pub wall_ms: u64,
}

impl StepRecord {
    pub fn ok(&self) -> bool {
        self.all_step_1.ok && self.all_step_22.ok && self.renaming.ok && self.right_closed.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalFirst {
    pub white_strict_subset: bool,
    pub black_strict_subset: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceCertificate {
    pub v: u32,
    pub delta: usize,
    pub steps: Vec<StepRecord>,
    pub natural_first: NaturalFirst,
    /// `"unsolvable"` or `"solvable"` for Π_{Δ−2,Δ} with an edge coloring.
    pub final_zero_round: String,
    pub final_witness: Option<ZeroRoundWitness>,
    pub errors: Vec<String>,
    pub valid: bool,
    pub wall_ms: u64,
}

impl SequenceCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn closure_violations(
    source: &Problem,
    maxed: &Constraint,
    rel: &lcl_core::StrengthRelation,
    tag: &str,
    out: &mut Vec<String>,
) -> usize {
    let mut sets: Vec<Vec<LabelId>> =
        maxed.configs().iter().flat_map(|c| c.groups().iter().map(|g| g.labels().to_vec())).collect();
    sets.sort();
    sets.dedup();
    for s in &sets {
        if !rel.is_right_closed(s) {
            let names: Vec<&str> = s.iter().map(|&l| source.name_of(l)).collect();
            out.push(format!("{tag} [{}]", names.join(",")));
        }
    }
    sets.len()
}

fn color_of(p: &Problem) -> impl Fn(LabelId) -> Option<u32> + '_ {
    move |l| p.label(l).color
}

/// Runs every check of one step `i → i + 1`, starting from a possibly altered Π′.
pub fn verify_step(first: FirstStep) -> Result<StepRecord, GhzError> {
    let start = Instant::now();
    let opts = MaximizeOptions::default();
    let i = first.i;
    let delta = first.delta;
    let re_black = maximize_universal(first.pi.black(), &color_of(&first.pi), opts)?;
    let all_step_1 = check_relaxation_with(&first.pi, &re_black, &first.prime, Side::Black, CAP)?;
    let second = SecondStep::from_first(first)?;
    let prime = &second.first.prime;
    let rere_white = maximize_universal(prime.white(), &color_of(prime), opts)?;
    let all_step_22 = check_relaxation_with(prime, &rere_white, &second.fourth, Side::White, CAP)?;

    let mut violations = Vec::new();
    let re_labels = closure_violations(&second.first.pi, &re_black, &second.first.pi_black, "re", &mut violations);
    let rere_labels = closure_violations(prime, &rere_white, &second.prime_white, "rere", &mut violations);

    let renaming = match second.rename(&second.fourth) {
        Ok(renamed) => {
            let (w, b) = same_problem(&renamed, &pi(i + 1, delta)?, CAP)?;
            let (w, b): (Comparison, Comparison) = (w.into(), b.into());
            RenamingCheck { ok: w.equal && b.equal, error: None, white: w, black: b }
        }
        Err(e) => RenamingCheck { ok: false, error: Some(e.to_string()), ..Default::default() },
    };
    Ok(StepRecord {
        i,
        all_step_1,
        all_step_22,
        renaming,
        label_counts: LabelCounts {
            pi: second.first.pi.alphabet_size(),
            pi_prime: prime.alphabet_size(),
            pi_fourth: second.fourth.alphabet_size(),
        },
        right_closed: RightClosedness { re_labels, rere_labels, violations },
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Verifies the whole sequence Π_{0,Δ} → … → Π_{Δ−2,Δ}; steps run in parallel.
pub fn verify_sequence(delta: usize) -> Result<SequenceCertificate, GhzError> {
    if !(3..=MAX_DELTA).contains(&delta) {
        return Err(GhzError::Range(format!("Δ = {delta} outside [3, {MAX_DELTA}]")));
    }
    let start = Instant::now();
    let results: Vec<Result<StepRecord, GhzError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=delta - 3)
            .map(|i| scope.spawn(move || FirstStep::new(i, delta).and_then(verify_step)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("step thread panicked")).collect()
    });
    let mut steps = Vec::new();
    let mut errors = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(s) => steps.push(s),
            Err(e) => errors.push(format!("step {i}: {e}")),
        }
    }
    let ghz = iterated_ghz(delta)?;
    let p0 = pi(0, delta)?;
    let natural_first = NaturalFirst {
        white_strict_subset: compare_sides(&ghz, Side::White, &p0, Side::White, CAP)?.strict_subset(),
        black_strict_subset: compare_sides(&ghz, Side::Black, &p0, Side::Black, CAP)?.strict_subset(),
    };
    let final_witness = zero_round_solvable(&pi(delta - 2, delta)?, true);
    let valid = errors.is_empty()
        && steps.iter().all(StepRecord::ok)
        && natural_first.white_strict_subset
        && natural_first.black_strict_subset
        && final_witness.is_none();
    Ok(SequenceCertificate {
        v: 1,
        delta,
        steps,
        natural_first,
        final_zero_round: if final_witness.is_none() { "unsolvable" } else { "solvable" }.into(),
        final_witness,
        errors,
        valid,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}
