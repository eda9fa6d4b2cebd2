//! Operations shared by the command line and the HTTP service.

use local_sim::{run_once, RunSummary, SimKind};
use lcl_core::{format_condensed, parse_problem, serialize, CoreError, Problem, Side, MAX_ARITY};
use round_elim::{heuristic_exhaust, heuristic_relax_step, merge_labels, new_labels, re, rere, MaximizeOptions, Method, ReError};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Largest alphabet accepted from outside.
pub const MAX_ALPHABET: usize = 4096;

#[derive(Debug, Error)]
pub enum OpError {
    /// Malformed input or a reference to something that does not exist.
    #[error("{0}")]
    Bad(String),
    /// A size guardrail or expansion cap was hit.
    #[error("{0}")]
    TooLarge(String),
    /// Nothing to do, such as a heuristic step with no qualifying pair.
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    Internal(String),
}

impl From<CoreError> for OpError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ArityTooLarge(_) | CoreError::ExpansionCap(_) => OpError::TooLarge(e.to_string()),
            _ => OpError::Bad(e.to_string()),
        }
    }
}

impl From<ReError> for OpError {
    fn from(e: ReError) -> Self {
        match e {
            ReError::Core(c) => c.into(),
            ReError::Cap(_) => OpError::TooLarge(e.to_string()),
            ReError::Invalid(_) => OpError::Bad(e.to_string()),
        }
    }
}

impl From<ghz_family::GhzError> for OpError {
    fn from(e: ghz_family::GhzError) -> Self {
        match e {
            ghz_family::GhzError::Range(_) => OpError::Bad(e.to_string()),
            _ => OpError::Internal(e.to_string()),
        }
    }
}

/// Parses a side name for the command line.
pub fn parse_side(s: &str) -> Result<Side, String> {
    match s {
        "white" => Ok(Side::White),
        "black" => Ok(Side::Black),
        _ => Err(format!("unknown side `{s}`")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Ghz,
    Chsh,
    Pi,
    PiPrime,
}

/// One edge of the provenance tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Operation {
    Generator { name: Family, delta: usize, #[serde(default)] i: usize },
    Load { text: String },
    Re { method: Method },
    Rere { method: Method },
    Merge { a: String, b: String },
    Heuristic { side: Side, exhaust: bool },
}

impl Operation {
    pub fn is_root(&self) -> bool {
        matches!(self, Operation::Generator { .. } | Operation::Load { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Operation::Generator { .. } => "generator",
            Operation::Load { .. } => "load",
            Operation::Re { .. } => "re",
            Operation::Rere { .. } => "rere",
            Operation::Merge { .. } => "merge",
            Operation::Heuristic { .. } => "heuristic",
        }
    }
}

pub fn guard(p: &Problem) -> Result<(), OpError> {
    if p.alphabet_size() > MAX_ALPHABET {
        return Err(OpError::TooLarge(format!("alphabet of {} labels exceeds {MAX_ALPHABET}", p.alphabet_size())));
    }
    for side in [Side::White, Side::Black] {
        if p.side(side).arity() > MAX_ARITY {
            return Err(OpError::TooLarge(format!("arity {} exceeds {MAX_ARITY}", p.side(side).arity())));
        }
    }
    Ok(())
}

pub fn generate(name: Family, delta: usize, i: usize) -> Result<Problem, OpError> {
    if delta > MAX_ARITY {
        return Err(OpError::TooLarge(format!("Δ = {delta} exceeds the arity limit {MAX_ARITY}")));
    }
    Ok(match name {
        Family::Ghz => ghz_family::iterated_ghz(delta)?,
        Family::Chsh => ghz_family::iterated_chsh(delta)?,
        Family::Pi => ghz_family::pi(i, delta)?,
        Family::PiPrime => ghz_family::pi_prime(i, delta)?,
    })
}

pub fn load(text: &str) -> Result<Problem, OpError> {
    let p = parse_problem(text)?;
    guard(&p)?;
    Ok(p)
}

/// Applies `op`. Root operations ignore `parent`; the others require it.
/// Returns the new problem and, for heuristic steps, the merges made.
pub fn apply(op: &Operation, parent: Option<&Problem>) -> Result<(Problem, Vec<(String, String)>), OpError> {
    let need = || parent.ok_or_else(|| OpError::Bad(format!("{} needs a parent problem", op.name())));
    let opts = |method: Method| MaximizeOptions { method, ..MaximizeOptions::default() };
    let p = match op {
        Operation::Generator { name, delta, i } => generate(*name, *delta, *i)?,
        Operation::Load { text } => load(text)?,
        Operation::Re { method } => re(need()?, opts(*method))?,
        Operation::Rere { method } => rere(need()?, opts(*method))?,
        Operation::Merge { a, b } => merge_labels(need()?, a, b)?,
        Operation::Heuristic { side, exhaust: true } => {
            let (p, merges) = heuristic_exhaust(need()?, *side, lcl_core::DEFAULT_EXPANSION_CAP)?;
            guard(&p)?;
            return Ok((p, merges));
        }
        Operation::Heuristic { side, exhaust: false } => {
            let src = need()?;
            let step = heuristic_relax_step(src, &new_labels(src), *side, lcl_core::DEFAULT_EXPANSION_CAP)?;
            let (a, b) = step.ok_or_else(|| OpError::Conflict("no label pair qualifies for the heuristic".into()))?;
            let p = merge_labels(src, &a, &b)?;
            return Ok((p, vec![(a, b)]));
        }
    };
    guard(&p)?;
    Ok((p, Vec::new()))
}

pub fn hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub name: String,
    pub alphabet_size: usize,
    pub white_arity: usize,
    pub black_arity: usize,
    pub white_configs: usize,
    pub black_configs: usize,
    pub hash: String,
}

pub fn summary(p: &Problem) -> Summary {
    Summary {
        name: p.name.clone(),
        alphabet_size: p.alphabet_size(),
        white_arity: p.white().arity(),
        black_arity: p.black().arity(),
        white_configs: p.white().len(),
        black_configs: p.black().len(),
        hash: hash(&serialize(p)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diff {
    pub labels_added: Vec<String>,
    pub labels_removed: Vec<String>,
    pub white_configs: (usize, usize),
    pub black_configs: (usize, usize),
}

pub fn diff(before: &Problem, after: &Problem) -> Diff {
    let names = |p: &Problem| p.labels().iter().map(|l| l.name.clone()).collect::<std::collections::BTreeSet<_>>();
    let (a, b) = (names(before), names(after));
    Diff {
        labels_added: b.difference(&a).cloned().collect(),
        labels_removed: a.difference(&b).cloned().collect(),
        white_configs: (before.white().len(), after.white().len()),
        black_configs: (before.black().len(), after.black().len()),
    }
}

/// Condensed lines of one side in file syntax.
pub fn side_lines(p: &Problem, side: Side) -> Vec<String> {
    p.named(side).iter().map(format_condensed).collect()
}

/// Largest white-node count accepted for one simulation run.
pub const MAX_SIM_NODES: usize = 30_000;

impl From<local_sim::SimError> for OpError {
    fn from(e: local_sim::SimError) -> Self {
        match e {
            local_sim::SimError::Network(_) => OpError::Bad(e.to_string()),
            local_sim::SimError::Ghz(ghz_family::GhzError::Range(_)) => OpError::Bad(e.to_string()),
            _ => OpError::Internal(e.to_string()),
        }
    }
}

pub fn parse_sim_kind(s: &str) -> Result<SimKind, String> {
    match s {
        "classical-ghz" => Ok(SimKind::ClassicalGhz),
        "quantum-ghz" => Ok(SimKind::QuantumGhz),
        "games-net" => Ok(SimKind::GamesNet),
        _ => Err(format!("unknown simulation `{s}`")),
    }
}

/// Checked wrapper around [`run_once`] shared by the CLI and the service.
pub fn simulate(kind: SimKind, delta: usize, n_white: usize, seed: u64, games: &str) -> Result<RunSummary, OpError> {
    if n_white > MAX_SIM_NODES {
        return Err(OpError::TooLarge(format!("n = {n_white} exceeds {MAX_SIM_NODES}")));
    }
    if delta > MAX_ARITY {
        return Err(OpError::TooLarge(format!("Δ = {delta} exceeds {MAX_ARITY}")));
    }
    if kind == SimKind::GamesNet && local_sim::games_family(games).is_none() {
        return Err(OpError::Bad(format!("unknown game family `{games}`")));
    }
    if kind != SimKind::GamesNet && delta < 2 {
        return Err(OpError::Bad(format!("Δ = {delta} < 2")));
    }
    Ok(run_once(kind, delta, n_white, seed, games)?)
}
