//! Port-numbered networks. Node `v` has ports `1..=degree`; `link(v, p)`
//! gives the port at the other end, and linking is an involution.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub role: Role,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, u32>,
}

/// Interchange form: `ports` lists each edge once as `[a, pa, b, pb]`.
#[derive(Serialize, Deserialize)]
struct NetworkJson {
    nodes: Vec<Node>,
    ports: Vec<[usize; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortNetwork {
    nodes: Vec<Node>,
    links: Vec<Vec<(usize, usize)>>,
}

impl PortNetwork {
    /// Builds a network from nodes (ids must be `0..n` in order) and edges
    /// `(a, pa, b, pb)`. Every port must be used exactly once and every edge
    /// must join a white and a black node.
    pub fn new(nodes: Vec<Node>, edges: &[[usize; 4]]) -> Result<Self, SimError> {
        let bad = |m: String| SimError::Network(m);
        if let Some((i, n)) = nodes.iter().enumerate().find(|(i, n)| n.id != *i) {
            return Err(bad(format!("node at position {i} has id {}", n.id)));
        }
        let mut links: Vec<Vec<Option<(usize, usize)>>> = nodes.iter().map(|n| vec![None; n.degree]).collect();
        for &[a, pa, b, pb] in edges {
            if a >= nodes.len() || b >= nodes.len() {
                return Err(bad(format!("edge {a}:{pa} - {b}:{pb} names a missing node")));
            }
            if nodes[a].role == nodes[b].role {
                return Err(bad(format!("edge {a} - {b} joins two nodes of one role")));
            }
            for (v, p, other) in [(a, pa, (b, pb)), (b, pb, (a, pa))] {
                let slot = links[v].get_mut(p.wrapping_sub(1)).ok_or_else(|| bad(format!("node {v} has no port {p}")))?;
                if slot.replace(other).is_some() {
                    return Err(bad(format!("port {v}:{p} used twice")));
                }
            }
        }
        let links = links
            .into_iter()
            .enumerate()
            .map(|(v, ps)| {
                ps.into_iter()
                    .enumerate()
                    .map(|(i, l)| l.ok_or_else(|| bad(format!("port {v}:{} is not connected", i + 1))))
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(PortNetwork { nodes, links })
    }

    pub fn empty() -> Self {
        PortNetwork { nodes: Vec::new(), links: Vec::new() }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &Node {
        &self.nodes[v]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The port at the other end of port `p` of node `v`.
    pub fn link(&self, v: usize, p: usize) -> (usize, usize) {
        self.links[v][p - 1]
    }

    pub fn port_count(&self) -> usize {
        self.links.iter().map(Vec::len).sum()
    }

    /// Each edge once, as `[white, white port, black, black port]`.
    pub fn edges(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for (v, n) in self.nodes.iter().enumerate() {
            if n.role == Role::White {
                for (i, &(u, q)) in self.links[v].iter().enumerate() {
                    out.push([v, i + 1, u, q]);
                }
            }
        }
        out
    }

    /// Inputs carried by the edge at port `p` of `v`: those of its black end.
    pub fn edge_inputs(&self, v: usize, p: usize) -> &BTreeMap<String, u32> {
        if self.nodes[v].role == Role::Black {
            &self.nodes[v].inputs
        } else {
            &self.nodes[self.link(v, p).0].inputs
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&NetworkJson { nodes: self.nodes.clone(), ports: self.edges() }).expect("network serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SimError> {
        let raw: NetworkJson = serde_json::from_str(text)?;
        PortNetwork::new(raw.nodes, &raw.ports)
    }
}

/// A Δ-colored (Δ, 3)-biregular network. For every color, the white nodes
/// are split uniformly at random into triples and each triple gets a fresh
/// black node carrying that color. White nodes come first, ids `0..n_white`.
pub fn gen_colored_biregular(delta: usize, n_white: usize, seed: u64) -> Result<PortNetwork, SimError> {
    if !n_white.is_multiple_of(3) {
        return Err(SimError::Network(format!("n_white = {n_white} is not a multiple of 3")));
    }
    if delta == 0 {
        return Err(SimError::Network("Δ must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<Node> =
        (0..n_white).map(|id| Node { id, role: Role::White, degree: delta, inputs: BTreeMap::new() }).collect();
    let port_of: Vec<Vec<usize>> = (0..n_white)
        .map(|_| {
            let mut p: Vec<usize> = (1..=delta).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    let mut edges = Vec::with_capacity(n_white * delta);
    for c in 1..=delta {
        let mut whites: Vec<usize> = (0..n_white).collect();
        whites.shuffle(&mut rng);
        for triple in whites.chunks(3) {
            let b = nodes.len();
            nodes.push(Node { id: b, role: Role::Black, degree: 3, inputs: BTreeMap::from([("color".into(), c as u32)]) });
            for (i, &w) in triple.iter().enumerate() {
                edges.push([w, port_of[w][c - 1], b, i + 1]);
            }
        }
    }
    PortNetwork::new(nodes, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_instance() {
        let n = gen_colored_biregular(3, 3, 1).unwrap();
        assert_eq!(n.len(), 6);
        let blacks: Vec<&Node> = n.nodes().iter().filter(|x| x.role == Role::Black).collect();
        assert_eq!(blacks.len(), 3);
        for b in blacks {
            let mut ws: Vec<usize> = (1..=3).map(|p| n.link(b.id, p).0).collect();
            ws.sort();
            assert_eq!(ws, vec![0, 1, 2]);
        }
    }

    #[test]
    fn links_are_an_involution() {
        let n = gen_colored_biregular(5, 30, 9).unwrap();
        for v in 0..n.len() {
            for p in 1..=n.node(v).degree {
                let (u, q) = n.link(v, p);
                assert_eq!(n.link(u, q), (v, p));
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(gen_colored_biregular(3, 4, 0).is_err());
        let w = Node { id: 0, role: Role::White, degree: 1, inputs: BTreeMap::new() };
        let w2 = Node { id: 1, ..w.clone() };
        assert!(PortNetwork::new(vec![w.clone(), w2], &[[0, 1, 1, 1]]).is_err());
        let b = Node { id: 1, role: Role::Black, degree: 2, inputs: BTreeMap::new() };
        assert!(PortNetwork::new(vec![w.clone(), b.clone()], &[[0, 1, 1, 1]]).is_err());
        assert!(PortNetwork::new(vec![w, b], &[[0, 1, 1, 1], [0, 1, 1, 2]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let n = gen_colored_biregular(4, 6, 2).unwrap();
        assert_eq!(PortNetwork::from_json(&n.to_json()).unwrap(), n);
        assert!(n.to_json().starts_with("{\"nodes\":[{\"id\":0,\"role\":\"white\",\"degree\":4}"));
    }
}
