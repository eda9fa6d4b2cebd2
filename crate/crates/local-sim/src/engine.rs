//! Synchronous round engine. Step `r` of a node consumes the messages sent
//! in round `r - 1` and emits the messages of round `r`. A node that halts
//! at step `r` without sending has used `r - 1` rounds.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::SimError;
use crate::network::{PortNetwork, Role};

/// What a node sees of itself at the start.
pub struct View<'a> {
    pub id: usize,
    pub role: Role,
    pub degree: usize,
    pub inputs: &'a BTreeMap<String, u32>,
    /// Inputs of the edge at port `p`, at index `p - 1`.
    pub edge_inputs: Vec<&'a BTreeMap<String, u32>>,
}

pub struct Step<M, O> {
    pub send: Vec<(usize, M)>,
    /// Outputs on incident edges, by port. Halts the node.
    pub halt: Option<Vec<(usize, O)>>,
}

impl<M, O> Step<M, O> {
    pub fn wait() -> Self {
        Step { send: Vec::new(), halt: None }
    }

    pub fn send(send: Vec<(usize, M)>) -> Self {
        Step { send, halt: None }
    }

    pub fn halt(outputs: Vec<(usize, O)>) -> Self {
        Step { send: Vec::new(), halt: Some(outputs) }
    }
}

pub trait NodeAlgorithm {
    type State;
    type Msg: Clone;
    type Out: Clone;

    fn init(&self, view: &View) -> Self::State;

    /// `inbox[p - 1]` holds the message that arrived on port `p`, if any.
    /// `rng` is keyed by (seed, node id, round) and shared by nothing else.
    fn step(
        &self,
        state: &mut Self::State,
        round: usize,
        inbox: &[Option<Self::Msg>],
        rng: &mut ChaCha8Rng,
    ) -> Result<Step<Self::Msg, Self::Out>, String>;
}

/// Randomness for node `node` at round `round`, independent across keys.
pub fn node_rng(seed: u64, node: usize, round: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(node as u64);
    rng.set_word_pos((round as u128) << 40);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunTrace<O> {
    /// Last round in which any message was sent.
    pub rounds: usize,
    /// `messages[r - 1]` messages were sent in round `r`.
    pub messages: Vec<usize>,
    /// Rounds used by each node before halting.
    pub halt_round: Vec<Option<usize>>,
    pub budget_exceeded: bool,
    /// Output per edge, keyed by (white node, white port).
    #[serde(serialize_with = "edge_list", bound(serialize = "O: Serialize"))]
    pub labeling: BTreeMap<(usize, usize), O>,
}

fn edge_list<O: Serialize, S: serde::Serializer>(l: &BTreeMap<(usize, usize), O>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(l.iter().map(|((w, p), o)| (w, p, o)))
}

impl<O> RunTrace<O> {
    pub fn message_rounds(&self) -> Vec<usize> {
        self.messages.iter().enumerate().filter(|(_, &n)| n > 0).map(|(r, _)| r + 1).collect()
    }
}

/// Runs `alg` on every node in lock step until all nodes halt or
/// `max_rounds` communication rounds have passed. Nodes step in id order.
pub fn run_sync<A: NodeAlgorithm>(
    net: &PortNetwork,
    alg: &A,
    max_rounds: usize,
    seed: u64,
) -> Result<RunTrace<A::Out>, SimError> {
    let n = net.len();
    let mut states: Vec<Option<A::State>> = net
        .nodes()
        .iter()
        .map(|node| {
            let view = View {
                id: node.id,
                role: node.role,
                degree: node.degree,
                inputs: &node.inputs,
                edge_inputs: (1..=node.degree).map(|p| net.edge_inputs(node.id, p)).collect(),
            };
            Some(alg.init(&view))
        })
        .collect();
    let mut inbox: Vec<Vec<Option<A::Msg>>> = net.nodes().iter().map(|v| vec![None; v.degree]).collect();
    let mut trace = RunTrace {
        rounds: 0,
        messages: Vec::new(),
        halt_round: vec![None; n],
        budget_exceeded: false,
        labeling: BTreeMap::new(),
    };
    let mut live = n;
    let mut r = 1;
    while live > 0 {
        if r > max_rounds + 1 {
            trace.budget_exceeded = true;
            break;
        }
        let mut next: Vec<Vec<Option<A::Msg>>> = net.nodes().iter().map(|v| vec![None; v.degree]).collect();
        let mut sent = 0;
        for v in 0..n {
            let Some(state) = states[v].as_mut() else { continue };
            let mut rng = node_rng(seed, v, r);
            let step = alg.step(state, r, &inbox[v], &mut rng).map_err(|msg| SimError::Algorithm { node: v, msg })?;
            let spoke = !step.send.is_empty();
            for (p, msg) in step.send {
                if p == 0 || p > net.node(v).degree {
                    return Err(SimError::NoSuchPort { node: v, port: p });
                }
                let (u, q) = net.link(v, p);
                if next[u][q - 1].replace(msg).is_some() {
                    return Err(SimError::DoubleDelivery { node: u, port: q });
                }
                sent += 1;
            }
            if let Some(outs) = step.halt {
                for (p, o) in outs {
                    if p == 0 || p > net.node(v).degree {
                        return Err(SimError::NoSuchPort { node: v, port: p });
                    }
                    let key = if net.node(v).role == Role::White { (v, p) } else { net.link(v, p) };
                    if trace.labeling.insert(key, o).is_some() {
                        return Err(SimError::OutputConflict { node: v, port: p });
                    }
                }
                trace.halt_round[v] = Some(if spoke { r } else { r - 1 });
                states[v] = None;
                live -= 1;
            }
        }
        trace.messages.push(sent);
        if sent > 0 {
            trace.rounds = r;
        }
        // Messages to halted nodes are dropped.
        for (v, ms) in next.iter_mut().enumerate() {
            if states[v].is_none() {
                ms.iter_mut().for_each(|m| *m = None);
            }
        }
        inbox = next;
        r += 1;
    }
    while trace.messages.last() == Some(&0) {
        trace.messages.pop();
    }
    Ok(trace)
}
