//! The two algorithms for the iterated GHZ problem: a classical one that
//! resolves colors one after another, and one that receives a shared GHZ box
//! per black node in round 1 and then only measures.

use std::sync::{Arc, Mutex};

use games_net::{Game, Move, NsBox, SafePicker, Strategy, Sym};
use rand_chacha::ChaCha8Rng;

use crate::engine::{NodeAlgorithm, Step, View};
use crate::network::Role;

fn my(g: Sym) -> String {
    format!("MY{g}_1")
}

fn xy(c: usize, x: Sym, y: Sym) -> String {
    format!("X{x}{y}_{c}")
}

/// Port of each color at a white node, from the edge inputs.
fn ports_by_color(view: &View) -> Result<Vec<usize>, String> {
    let mut out = vec![0; view.degree];
    for p in 1..=view.degree {
        let c = *view.edge_inputs[p - 1].get("color").ok_or(format!("port {p} has no color"))? as usize;
        match out.get_mut(c.wrapping_sub(1)) {
            Some(slot) if *slot == 0 => *slot = p,
            _ => return Err(format!("color {c} is out of range or repeated")),
        }
    }
    Ok(out)
}

/// Output labels of a white node from its bits g_1..g_Δ.
fn labels(ports: &[usize], g: &[Sym]) -> Vec<(usize, String)> {
    let mut out = vec![(ports[0], my(g[0]))];
    for c in 2..=g.len() {
        out.push((ports[c - 1], xy(c, g[c - 2], g[c - 1])));
    }
    out
}

pub enum Node {
    White { ports: Result<Vec<usize>, String>, g: Vec<Sym> },
    Black { color: usize, committed: Vec<Move> },
}

fn init(view: &View) -> Node {
    match view.role {
        Role::White => Node::White { ports: ports_by_color(view), g: Vec::new() },
        Role::Black => Node::Black { color: view.inputs.get("color").map_or(0, |&c| c as usize), committed: Vec::new() },
    }
}

/// Phase `c` takes rounds `2c - 1` and `2c`: each white node sends g_{c-1}
/// to its color-`c` black neighbor, which answers with g_c for all three.
/// Color-1 black nodes answer 1 on port 1 and 0 elsewhere. Other black nodes
/// answer arrivals in port order with the safe GHZ output.
pub struct ClassicalGhz {
    delta: usize,
    picker: SafePicker,
}

impl ClassicalGhz {
    pub fn new(delta: usize) -> Self {
        ClassicalGhz { delta, picker: SafePicker::new(Game::ghz()) }
    }
}

impl NodeAlgorithm for ClassicalGhz {
    type State = Node;
    type Msg = Option<Sym>;
    type Out = String;

    fn init(&self, view: &View) -> Node {
        init(view)
    }

    fn step(&self, s: &mut Node, r: usize, inbox: &[Option<Option<Sym>>], _: &mut ChaCha8Rng) -> Result<Step<Option<Sym>, String>, String> {
        match s {
            Node::White { ports, g } => {
                let ports = ports.as_ref().map_err(Clone::clone)?;
                if r.is_multiple_of(2) {
                    return Ok(Step::wait());
                }
                let c = r.div_ceil(2);
                if c >= 2 {
                    let b = inbox[ports[c - 2] - 1].flatten().ok_or(format!("no answer from color {}", c - 1))?;
                    g.push(b);
                }
                if c > self.delta {
                    return Ok(Step::halt(labels(ports, g)));
                }
                Ok(Step::send(vec![(ports[c - 1], g.last().copied())]))
            }
            Node::Black { color, committed } => {
                if r != 2 * *color {
                    return Ok(Step::wait());
                }
                let mut send = Vec::new();
                for (i, m) in inbox.iter().enumerate() {
                    if m.is_none() {
                        return Err(format!("no request on port {}", i + 1));
                    }
                    let y = if *color == 1 {
                        Sym::from(i == 0)
                    } else {
                        let x = m.flatten().ok_or("request without a bit")?;
                        let y = self.picker.pick(committed, (i, x)).map_err(|e| e.to_string())?;
                        committed.push((i, x, y));
                        y
                    };
                    send.push((i + 1, Some(y)));
                }
                Ok(Step { send, halt: Some(Vec::new()) })
            }
        }
    }
}

/// A GHZ box held by one black node. Parties measure in any order; each
/// outcome is drawn from the box conditioned on earlier outcomes.
#[derive(Debug)]
pub struct GhzResource {
    state: NsBox,
    rng: ChaCha8Rng,
}

pub type ResourceHandle = Arc<Mutex<GhzResource>>;

impl GhzResource {
    pub fn new(strategy: Arc<Strategy>, rng: ChaCha8Rng) -> Self {
        GhzResource { state: NsBox::new(strategy), rng }
    }

    /// Measures party `party` (0-based) with input bit `input`.
    pub fn measure(&mut self, party: usize, input: Sym) -> Result<Sym, String> {
        self.state.measure(party, input, &mut self.rng).map_err(|e| e.to_string())
    }
}

/// Round-1 message from a black node: its color, the port it used, and a
/// handle to its box (none for color 1).
#[derive(Clone, Debug)]
pub struct Share {
    pub color: usize,
    pub port: usize,
    pub handle: Option<ResourceHandle>,
}

/// Black nodes send one `Share` per port in round 1 and stop. A white node
/// sets g_1 = 1 iff its color-1 share came from port 2, then measures its
/// color-`k` box with input g_{k-1} for k = 2..Δ.
pub struct QuantumSimGhz {
    delta: usize,
    strategy: Arc<Strategy>,
}

impl QuantumSimGhz {
    pub fn new(delta: usize) -> Self {
        QuantumSimGhz { delta, strategy: Arc::new(Strategy::uniform(&Game::ghz())) }
    }
}

impl NodeAlgorithm for QuantumSimGhz {
    type State = Node;
    type Msg = Share;
    type Out = String;

    fn init(&self, view: &View) -> Node {
        init(view)
    }

    fn step(&self, s: &mut Node, r: usize, inbox: &[Option<Share>], rng: &mut ChaCha8Rng) -> Result<Step<Share, String>, String> {
        match s {
            Node::Black { color, .. } => {
                let handle = (*color >= 2).then(|| Arc::new(Mutex::new(GhzResource::new(self.strategy.clone(), rng.clone()))));
                let send = (1..=3).map(|port| (port, Share { color: *color, port, handle: handle.clone() })).collect();
                Ok(Step { send, halt: Some(Vec::new()) })
            }
            Node::White { ports, g } => {
                let ports = ports.as_ref().map_err(Clone::clone)?;
                if r == 1 {
                    return Ok(Step::wait());
                }
                let share = |c: usize| inbox[ports[c - 1] - 1].as_ref().filter(|m| m.color == c).ok_or(format!("no share of color {c}"));
                g.push(Sym::from(share(1)?.port == 2));
                for k in 2..=self.delta {
                    let sh = share(k)?;
                    let h = sh.handle.as_ref().ok_or("share without a box")?;
                    let y = h.lock().unwrap().measure(sh.port - 1, g[k - 2])?;
                    g.push(y);
                }
                Ok(Step::halt(labels(ports, g)))
            }
        }
    }
}
