//! Batch runs of the three algorithms with checking.

use std::sync::Arc;

use games_net::{check_games_labeling, random_instance, Game};
use ghz_family::iterated_ghz;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::Checker;
use crate::engine::run_sync;
use crate::error::SimError;
use crate::games::{games_labeling, games_network, GamesAlg};
use crate::ghz::{ClassicalGhz, QuantumSimGhz};
use crate::network::gen_colored_biregular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimKind {
    ClassicalGhz,
    QuantumGhz,
    GamesNet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunSummary {
    pub seed: u64,
    pub n_white: usize,
    pub valid: bool,
    pub violations: Vec<String>,
    pub rounds: usize,
    pub message_rounds: Vec<usize>,
    pub messages: usize,
    pub sample: Vec<String>,
}

/// Game families for network-of-games runs.
pub fn games_family(name: &str) -> Option<Vec<Game>> {
    match name {
        "symm-ghz" => Some(vec![Game::symm(), Game::ghz()]),
        "chsh" => Some(vec![Game::chsh()]),
        "symm" => Some(vec![Game::symm()]),
        "ghz" => Some(vec![Game::ghz()]),
        _ => None,
    }
}

/// One run. For the GHZ kinds `delta` is Δ and the network is a random
/// colored biregular one; for `GamesNet` it is the circuit depth `d` and
/// `games` names the family.
pub fn run_once(kind: SimKind, delta: usize, n_white: usize, seed: u64, games: &str) -> Result<RunSummary, SimError> {
    let summarize = |valid: bool, violations: Vec<String>, rounds, message_rounds: Vec<usize>, messages, sample| RunSummary {
        seed,
        n_white,
        valid,
        violations,
        rounds,
        message_rounds,
        messages,
        sample,
    };
    match kind {
        SimKind::ClassicalGhz | SimKind::QuantumGhz => {
            let net = gen_colored_biregular(delta, n_white, seed)?;
            let trace = if kind == SimKind::ClassicalGhz {
                run_sync(&net, &ClassicalGhz::new(delta), 2 * delta, seed)?
            } else {
                run_sync(&net, &QuantumSimGhz::new(delta), 1, seed)?
            };
            let p = iterated_ghz(delta)?;
            let v: Vec<String> = Checker::new(&p).check(&net, &trace.labeling)?.iter().map(|v| format!("node {}: {}", v.node, v.reason)).collect();
            let sample = trace.labeling.iter().take(8).map(|((w, q), l)| format!("{w}:{q} {l}")).collect();
            Ok(summarize(v.is_empty() && !trace.budget_exceeded, v, trace.rounds, trace.message_rounds(), trace.messages.iter().sum(), sample))
        }
        SimKind::GamesNet => {
            let family = games_family(games).ok_or_else(|| SimError::Network(format!("unknown game family {games}")))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = Arc::new(random_instance(&family, delta, n_white, &mut rng)?);
            let net = games_network(&inst)?;
            let trace = run_sync(&net, &GamesAlg::new(inst.clone()), 2 * delta, rng.gen())?;
            let lab = games_labeling(&inst, &trace);
            let v: Vec<String> = check_games_labeling(&inst, &lab).iter().map(ToString::to_string).collect();
            let sample = trace.labeling.iter().take(8).map(|((w, q), (x, y))| format!("{w}:{q} ({x},{y})")).collect();
            Ok(summarize(v.is_empty() && !trace.budget_exceeded, v, trace.rounds, trace.message_rounds(), trace.messages.iter().sum(), sample))
        }
    }
}
