//! Algorithm 𝒜 for networks of games: round `2i - 1` carries x_i from each
//! white node, round `2i` carries the black nodes' answers y_i.

use std::collections::BTreeMap;
use std::sync::Arc;

use games_net::{BlackSpec, Edge, Game, GamesInstance, HalfGameCircuit, Move, SafePicker, Sym, WhiteSpec};
use rand_chacha::ChaCha8Rng;

use crate::engine::{NodeAlgorithm, RunTrace, Step, View};
use crate::error::SimError;
use crate::network::{Node, PortNetwork, Role};

/// The instance's graph as a port network: white `w` is node `w`, black `b`
/// is node `n_white + b`.
pub fn games_network(inst: &GamesInstance) -> Result<PortNetwork, SimError> {
    let nw = inst.whites.len();
    let mut nodes: Vec<Node> =
        (0..nw).map(|id| Node { id, role: Role::White, degree: inst.d, inputs: BTreeMap::new() }).collect();
    nodes.extend((0..inst.blacks.len()).map(|b| Node { id: nw + b, role: Role::Black, degree: inst.m, inputs: BTreeMap::new() }));
    let edges: Vec<[usize; 4]> = inst.edges().iter().map(|e| [e.white, e.white_port, nw + e.black, e.black_port]).collect();
    PortNetwork::new(nodes, &edges)
}

pub enum GamesNode {
    White { w: usize, xs: Vec<Sym>, ys: Vec<Sym> },
    Black { b: usize, committed: Vec<Move> },
}

pub struct GamesAlg {
    inst: Arc<GamesInstance>,
    pickers: Vec<SafePicker>,
}

impl GamesAlg {
    pub fn new(inst: Arc<GamesInstance>) -> Self {
        let pickers = inst.games.iter().cloned().map(SafePicker::new).collect();
        GamesAlg { inst, pickers }
    }
}

impl NodeAlgorithm for GamesAlg {
    type State = GamesNode;
    type Msg = Sym;
    type Out = (Sym, Sym);

    fn init(&self, view: &View) -> GamesNode {
        let nw = self.inst.whites.len();
        match view.role {
            Role::White => GamesNode::White { w: view.id, xs: Vec::new(), ys: Vec::new() },
            Role::Black => GamesNode::Black { b: view.id - nw, committed: Vec::new() },
        }
    }

    fn step(&self, s: &mut GamesNode, r: usize, inbox: &[Option<Sym>], _: &mut ChaCha8Rng) -> Result<Step<Sym, (Sym, Sym)>, String> {
        let inst = &self.inst;
        match s {
            GamesNode::White { w, xs, ys } => {
                if r.is_multiple_of(2) {
                    return Ok(Step::wait());
                }
                let spec = &inst.whites[*w];
                let i = r.div_ceil(2);
                if i >= 2 {
                    let y = inbox[spec.sigma[i - 2] - 1].ok_or(format!("no answer for half-game {}", i - 1))?;
                    ys.push(y);
                }
                if i > inst.d {
                    let outs = (0..inst.d).map(|j| (spec.sigma[j], (xs[j], ys[j]))).collect();
                    return Ok(Step::halt(outs));
                }
                let x = inst.circuits[spec.circuit].eval_prefix(i, spec.xi, ys).map_err(|e| e.to_string())?[i - 1];
                xs.push(x);
                Ok(Step::send(vec![(spec.sigma[i - 1], x)]))
            }
            GamesNode::Black { b, committed } => {
                let spec = &inst.blacks[*b];
                let mut send = Vec::new();
                for (i, m) in inbox.iter().enumerate() {
                    let Some(x) = *m else { continue };
                    let port = i + 1;
                    let player = spec.sigma.iter().position(|&p| p == port).ok_or("port outside the permutation")?;
                    let y = self.pickers[spec.game].pick(committed, (player, x)).map_err(|e| e.to_string())?;
                    committed.push((player, x, y));
                    send.push((port, y));
                }
                let halt = (committed.len() == inst.m).then(Vec::new);
                Ok(Step { send, halt })
            }
        }
    }
}

/// Edge pairs of a run, indexed as in `check_games_labeling`.
pub fn games_labeling(inst: &GamesInstance, trace: &RunTrace<(Sym, Sym)>) -> Vec<Option<(Sym, Sym)>> {
    let mut out = vec![None; inst.edges().len()];
    for (&(w, p), &xy) in &trace.labeling {
        out[inst.white_edge(w, p)] = Some(xy);
    }
    out
}

/// The iterated GHZ problem on a colored network as a network of games:
/// color-1 black nodes play SYMM, the others GHZ, and every white node runs
/// the chain circuit x_1 = 0, x_c = y_{c-1} with half-game `c` on its
/// color-`c` edge.
pub fn ghz_as_games(net: &PortNetwork, delta: usize) -> Result<GamesInstance, SimError> {
    let index: Vec<usize> = {
        let (mut w, mut b) = (0, 0);
        net.nodes()
            .iter()
            .map(|n| {
                let c = if n.role == Role::White { &mut w } else { &mut b };
                *c += 1;
                *c - 1
            })
            .collect()
    };
    let mut whites = Vec::new();
    let mut blacks = Vec::new();
    for n in net.nodes() {
        match n.role {
            Role::White => {
                let mut sigma = vec![0; delta];
                for p in 1..=n.degree {
                    let c = net.edge_inputs(n.id, p).get("color").copied().unwrap_or(0) as usize;
                    if c == 0 || c > delta {
                        return Err(SimError::Network(format!("white {} port {p} has no valid color", n.id)));
                    }
                    sigma[c - 1] = p;
                }
                whites.push(WhiteSpec { xi: 0, circuit: 0, sigma });
            }
            Role::Black => {
                let c = n.inputs.get("color").copied().unwrap_or(0);
                blacks.push(BlackSpec { game: usize::from(c != 1), sigma: (1..=n.degree).collect() });
            }
        }
    }
    let edges = net
        .edges()
        .into_iter()
        .map(|[w, wp, b, bp]| Edge { white: index[w], white_port: wp, black: index[b], black_port: bp })
        .collect();
    let circuit = HalfGameCircuit::chain(2, delta)?;
    Ok(GamesInstance::new(2, vec![Game::symm(), Game::ghz()], vec![circuit], whites, blacks, edges)?)
}

/// Reads a GHZ-as-games labeling back as labels of the iterated GHZ problem.
pub fn ghz_labels(net: &PortNetwork, trace: &RunTrace<(Sym, Sym)>) -> BTreeMap<(usize, usize), String> {
    trace
        .labeling
        .iter()
        .map(|(&(w, p), &(x, y))| {
            let c = net.edge_inputs(w, p).get("color").copied().unwrap_or(0);
            let l = if c == 1 { format!("MY{y}_1") } else { format!("X{x}{y}_{c}") };
            ((w, p), l)
        })
        .collect()
}
