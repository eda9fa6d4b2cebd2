//! Checking that a candidate problem is a relaxation of re(source) or rere(source).

use std::collections::BTreeSet;
use std::time::Instant;

use lcl_core::{has_perfect_matching, Constraint, LabelId, Problem, Side};
use serde::{Deserialize, Serialize};

use crate::compare::compare_constraints;
use crate::error::ReError;
use crate::maximize::{maximize_universal, MaximizeOptions};
use crate::ops::{existential_lift, member_sets, SetLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub configuration: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub configs_in: usize,
    pub configs_out: usize,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelaxationReport {
    pub v: u32,
    pub ok: bool,
    pub failures: Vec<Failure>,
    pub stats: Stats,
}

impl RelaxationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn fmt_sets(source: &Problem, sets: &[Vec<LabelId>]) -> String {
    sets.iter()
        .map(|s| format!("[{}]", s.iter().map(|&l| source.name_of(l)).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Verifies that `candidate` is a relaxation of re(`source`).
pub fn check_relaxation_of_re(source: &Problem, candidate: &Problem, opts: MaximizeOptions) -> Result<RelaxationReport, ReError> {
    check_relaxation(source, candidate, Side::Black, opts)
}

/// Verifies that `candidate` is a relaxation of rere(`source`).
pub fn check_relaxation_of_rere(source: &Problem, candidate: &Problem, opts: MaximizeOptions) -> Result<RelaxationReport, ReError> {
    check_relaxation(source, candidate, Side::White, opts)
}

fn check_relaxation(source: &Problem, candidate: &Problem, side: Side, opts: MaximizeOptions) -> Result<RelaxationReport, ReError> {
    let start = Instant::now();
    let color = |l: LabelId| source.label(l).color;
    let maxed = maximize_universal(source.side(side), &color, opts)?;
    let mut r = check_relaxation_with(source, &maxed, candidate, side, opts.cap)?;
    r.stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// As [`check_relaxation_of_re`]/[`check_relaxation_of_rere`] with the maximized
/// side of `source` already computed (`maxed`, groups are sets of source ids).
///
/// Checks: (i) every maximized configuration is dominated by a candidate
/// configuration on `side`; (ii) every candidate label occurs on `side`;
/// (iii) the candidate's other side equals the existential lift of the
/// source's other side.
pub fn check_relaxation_with(
    source: &Problem,
    maxed: &Constraint,
    candidate: &Problem,
    side: Side,
    cap: usize,
) -> Result<RelaxationReport, ReError> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let members = match member_sets(candidate, source) {
        Ok(m) => m,
        Err(e) => {
            return Ok(RelaxationReport {
                v: 1,
                ok: false,
                failures: vec![Failure { configuration: String::new(), reason: format!("candidate labels: {e}") }],
                stats: Stats::default(),
            })
        }
    };
    // (i)
    let cand_side = candidate.side(side);
    for c in maxed.configs() {
        let sets: Vec<&[LabelId]> = c.groups().iter().map(|g| g.labels()).collect();
        if !dominated_by(&sets, cand_side, &members) {
            failures.push(Failure {
                configuration: fmt_sets(source, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()),
                reason: "not dominated by any candidate configuration".into(),
            });
        }
    }
    // (ii)
    let on_side: BTreeSet<LabelId> = cand_side.labels().into_iter().collect();
    for l in candidate.side(side.other()).labels() {
        if !on_side.contains(&l) {
            failures.push(Failure {
                configuration: candidate.name_of(l).to_string(),
                reason: format!("label does not occur on the {side:?} side"),
            });
        }
    }
    // (iii)
    let lifted = existential_lift(source.side(side.other()), &members)?;
    let color = |l: LabelId| candidate.label(l).color;
    let (extra, missing) = compare_constraints(candidate.side(side.other()), &lifted, &color, cap)?;
    let names = |w: Vec<LabelId>| w.iter().map(|&l| candidate.name_of(l)).collect::<Vec<_>>().join(" ");
    if let Some(w) = extra {
        failures.push(Failure { configuration: names(w), reason: "in candidate but not in the existential lift".into() });
    }
    if let Some(w) = missing {
        failures.push(Failure { configuration: names(w), reason: "in the existential lift but not in candidate".into() });
    }
    Ok(RelaxationReport {
        v: 1,
        ok: failures.is_empty(),
        failures,
        stats: Stats {
            configs_in: maxed.len(),
            configs_out: cand_side.len(),
            wall_ms: start.elapsed().as_millis() as u64,
        },
    })
}

/// Whether the configuration of sets `sets` is dominated by some configuration
/// pickable from `k`, whose labels stand for `members`.
pub fn dominated_by(sets: &[&[LabelId]], k: &Constraint, members: &[SetLabel]) -> bool {
    let sub = |s: &[LabelId], l: LabelId| {
        let m = &members[l as usize];
        s.iter().all(|x| m.binary_search(x).is_ok())
    };
    k.configs().iter().any(|d| {
        let g = d.groups();
        has_perfect_matching(sets.len(), |i, j| g[j].labels().iter().any(|&l| sub(sets[i], l)))
    })
}
