//! Networks of games: white nodes run circuits of half-games, black nodes
//! host games, and every edge carries an (x, y) pair.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{random_circuit, HalfGameCircuit};
use crate::error::GameError;
use crate::game::{Game, Sym};

/// One edge; ports are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub white: usize,
    pub white_port: usize,
    pub black: usize,
    pub black_port: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhiteSpec {
    pub xi: Sym,
    pub circuit: usize,
    /// `sigma[i]` is the port wired to half-game `i + 1`.
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlackSpec {
    pub game: usize,
    /// `sigma[i]` is the port holding player `i + 1`.
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GamesInstance {
    pub k: usize,
    pub d: usize,
    pub m: usize,
    pub games: Vec<Game>,
    pub circuits: Vec<HalfGameCircuit>,
    pub whites: Vec<WhiteSpec>,
    pub blacks: Vec<BlackSpec>,
    edges: Vec<Edge>,
    at_black: Vec<Vec<usize>>,
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    sigma.len() == n && sigma.iter().all(|&p| p >= 1 && p <= n && !std::mem::replace(&mut seen[p], true))
}

impl GamesInstance {
    pub fn new(
        k: usize,
        games: Vec<Game>,
        circuits: Vec<HalfGameCircuit>,
        whites: Vec<WhiteSpec>,
        blacks: Vec<BlackSpec>,
        mut edges: Vec<Edge>,
    ) -> Result<Self, GameError> {
        let bad = |m: String| GameError::Instance(m);
        let d = circuits.first().map_or(0, HalfGameCircuit::d);
        let m = games.first().map_or(0, Game::m);
        if games.iter().any(|g| g.m() != m || g.k() != k) || circuits.iter().any(|c| c.d() != d || c.k() != k) {
            return Err(bad("games and circuits must share m, d and the alphabet".into()));
        }
        for (w, s) in whites.iter().enumerate() {
            if s.circuit >= circuits.len() || !is_permutation(&s.sigma, d) || s.xi as usize >= k {
                return Err(bad(format!("white {w} has a bad circuit, permutation or input")));
            }
        }
        for (b, s) in blacks.iter().enumerate() {
            if s.game >= games.len() || !is_permutation(&s.sigma, m) {
                return Err(bad(format!("black {b} has a bad game or permutation")));
            }
        }
        edges.sort();
        let mut at_white = vec![vec![usize::MAX; d]; whites.len()];
        let mut at_black = vec![vec![usize::MAX; m]; blacks.len()];
        for (i, e) in edges.iter().enumerate() {
            let slot = |v: &mut Vec<Vec<usize>>, n: usize, p: usize, deg: usize| -> Result<(), GameError> {
                let cell = v.get_mut(n).and_then(|r| r.get_mut(p.wrapping_sub(1))).filter(|_| p >= 1 && p <= deg);
                match cell {
                    Some(c) if *c == usize::MAX => {
                        *c = i;
                        Ok(())
                    }
                    _ => Err(GameError::Instance(format!("edge {e:?} reuses or misses a port"))),
                }
            };
            slot(&mut at_white, e.white, e.white_port, d)?;
            slot(&mut at_black, e.black, e.black_port, m)?;
        }
        if at_white.iter().chain(&at_black).flatten().any(|&c| c == usize::MAX) {
            return Err(bad("some port has no edge".into()));
        }
        Ok(GamesInstance { k, d, m, games, circuits, whites, blacks, edges, at_black })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Index of the edge at port `port` of white `w`.
    pub fn white_edge(&self, w: usize, port: usize) -> usize {
        w * self.d + port - 1
    }

    pub fn black_edge(&self, b: usize, port: usize) -> usize {
        self.at_black[b][port - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeRef {
    White(usize),
    Black(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GamesViolation {
    pub node: NodeRef,
    pub reason: String,
}

impl fmt::Display for GamesViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            NodeRef::White(w) => write!(f, "white {w}: {}", self.reason),
            NodeRef::Black(b) => write!(f, "black {b}: {}", self.reason),
        }
    }
}

/// Checks C(ξ, y^σ_w) = x^σ_w at every white node and y^σ_b ∈ 𝔤(x^σ_b) at
/// every black node. `labeling[e]` is the (x, y) pair of edge `e`.
pub fn check_games_labeling(inst: &GamesInstance, labeling: &[Option<(Sym, Sym)>]) -> Vec<GamesViolation> {
    let mut out = Vec::new();
    if labeling.len() != inst.edges.len() {
        out.push(GamesViolation { node: NodeRef::White(0), reason: "labeling has the wrong length".into() });
        return out;
    }
    for (w, s) in inst.whites.iter().enumerate() {
        let pairs: Option<Vec<(Sym, Sym)>> = s.sigma.iter().map(|&p| labeling[inst.white_edge(w, p)]).collect();
        let Some(pairs) = pairs else {
            out.push(GamesViolation { node: NodeRef::White(w), reason: "unlabeled edge".into() });
            continue;
        };
        let (xs, ys): (Vec<Sym>, Vec<Sym>) = pairs.into_iter().unzip();
        match inst.circuits[s.circuit].eval(s.xi, &ys) {
            Ok(expect) if expect == xs => {}
            Ok(expect) => out.push(GamesViolation {
                node: NodeRef::White(w),
                reason: format!("circuit gives x = {expect:?}, edges carry {xs:?}"),
            }),
            Err(e) => out.push(GamesViolation { node: NodeRef::White(w), reason: e.to_string() }),
        }
    }
    for (b, s) in inst.blacks.iter().enumerate() {
        let pairs: Option<Vec<(Sym, Sym)>> = s.sigma.iter().map(|&p| labeling[inst.black_edge(b, p)]).collect();
        let Some(pairs) = pairs else {
            out.push(GamesViolation { node: NodeRef::Black(b), reason: "unlabeled edge".into() });
            continue;
        };
        let (xs, ys): (Vec<Sym>, Vec<Sym>) = pairs.into_iter().unzip();
        let g = &inst.games[s.game];
        if !g.valid(&xs, &ys) {
            out.push(GamesViolation {
                node: NodeRef::Black(b),
                reason: format!("{} -> {} is not a move of {}", g.show(&xs), g.show(&ys), g.name()),
            });
        }
    }
    out
}

/// A random instance with `n_white` white nodes of degree `d`, black nodes of
/// degree `m = games[_].m()`, a uniform random stub matching, random
/// permutations, a random circuit per white node and a random game per black.
pub fn random_instance<R: Rng + ?Sized>(
    games: &[Game],
    d: usize,
    n_white: usize,
    rng: &mut R,
) -> Result<GamesInstance, GameError> {
    let g0 = games.first().ok_or_else(|| GameError::Instance("no games".into()))?;
    let (k, m) = (g0.k(), g0.m());
    if !(n_white * d).is_multiple_of(m) {
        return Err(GameError::Instance(format!("{n_white} whites of degree {d} do not split into games of {m}")));
    }
    let n_black = n_white * d / m;
    let mut stubs: Vec<(usize, usize)> = (0..n_black).flat_map(|b| (1..=m).map(move |p| (b, p))).collect();
    stubs.shuffle(rng);
    let edges = (0..n_white)
        .flat_map(|w| (1..=d).map(move |p| (w, p)))
        .zip(stubs)
        .map(|((white, white_port), (black, black_port))| Edge { white, white_port, black, black_port })
        .collect();
    let perm = |n: usize, rng: &mut R| {
        let mut p: Vec<usize> = (1..=n).collect();
        p.shuffle(rng);
        p
    };
    let circuits = (0..n_white).map(|_| random_circuit(k, d, rng)).collect::<Result<Vec<_>, _>>()?;
    let whites =
        (0..n_white).map(|w| WhiteSpec { xi: rng.gen_range(0..k as Sym), circuit: w, sigma: perm(d, rng) }).collect();
    let blacks = (0..n_black).map(|_| BlackSpec { game: rng.gen_range(0..games.len()), sigma: perm(m, rng) }).collect();
    GamesInstance::new(k, games.to_vec(), circuits, whites, blacks, edges)
}
