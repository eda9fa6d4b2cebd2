//! LCL labeling checker over port networks.

use std::collections::{BTreeMap, HashSet};

use lcl_core::{constraint_contains, expand_constraint, Configuration, Constraint, Problem, Side};
use serde::Serialize;

use crate::error::SimError;
use crate::network::{PortNetwork, Role};

/// Edge label, keyed by (white node, white port).
pub type Labeling = BTreeMap<(usize, usize), String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelViolation {
    pub node: usize,
    pub reason: String,
}

/// Expansion size below which constraints are checked by hash lookup.
const LOOKUP_CAP: usize = 200_000;

struct Lookup {
    k: Constraint,
    set: Option<HashSet<Configuration>>,
}

impl Lookup {
    fn new(k: &Constraint) -> Self {
        let set = expand_constraint(k, LOOKUP_CAP).ok().map(|s| s.into_iter().collect());
        Lookup { k: k.clone(), set }
    }

    fn contains(&self, c: &Configuration) -> Result<bool, SimError> {
        match &self.set {
            Some(s) => Ok(s.contains(c)),
            None => Ok(constraint_contains(&self.k, c)?),
        }
    }
}

/// Reusable checker for one problem.
pub struct Checker<'a> {
    p: &'a Problem,
    white: Lookup,
    black: Lookup,
}

impl<'a> Checker<'a> {
    pub fn new(p: &'a Problem) -> Self {
        Checker { p, white: Lookup::new(p.white()), black: Lookup::new(p.black()) }
    }

    /// Checks every node whose degree matches its side's arity. Nodes of
    /// other degrees are unconstrained. A label whose color differs from
    /// the edge's `color` input is a violation.
    pub fn check(&self, net: &PortNetwork, labeling: &Labeling) -> Result<Vec<LabelViolation>, SimError> {
        let mut out = Vec::new();
        for node in net.nodes() {
            let v = node.id;
            let mut ids = Vec::with_capacity(node.degree);
            let mut complete = true;
            for p in 1..=node.degree {
                let key = if node.role == Role::White { (v, p) } else { net.link(v, p) };
                let Some(name) = labeling.get(&key) else {
                    out.push(LabelViolation { node: v, reason: format!("port {p} is unlabeled") });
                    complete = false;
                    continue;
                };
                let Some(id) = self.p.id_of(name) else {
                    out.push(LabelViolation { node: v, reason: format!("port {p}: unknown label {name}") });
                    complete = false;
                    continue;
                };
                if node.role == Role::White {
                    let want = net.edge_inputs(v, p).get("color");
                    if let (Some(c), Some(&w)) = (self.p.label(id).color, want) {
                        if c != w {
                            out.push(LabelViolation { node: v, reason: format!("port {p}: {name} on an edge of color {w}") });
                        }
                    }
                }
                ids.push(id);
            }
            let (side, k) = match node.role {
                Role::White => (Side::White, &self.white),
                Role::Black => (Side::Black, &self.black),
            };
            if !complete || node.degree != self.p.side(side).arity() {
                continue;
            }
            let c = Configuration::new(ids);
            if !k.contains(&c)? {
                let names = self.p.named_configuration(&c).join(" ");
                out.push(LabelViolation { node: v, reason: format!("{names} is not in the {side:?} constraint") });
            }
        }
        Ok(out)
    }
}

pub fn check_labeling(p: &Problem, net: &PortNetwork, labeling: &Labeling) -> Result<Vec<LabelViolation>, SimError> {
    Checker::new(p).check(net, labeling)
}

/// Edge list form: one `white port label` line per edge.
pub fn labeling_to_text(l: &Labeling) -> String {
    l.iter().map(|((w, p), s)| format!("{w} {p} {s}\n")).collect()
}

pub fn labeling_from_text(text: &str) -> Result<Labeling, SimError> {
    let mut out = Labeling::new();
    for (n, line) in text.lines().enumerate() {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.is_empty() {
            continue;
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| SimError::Network(format!("labeling line {}: bad number", n + 1)));
        if t.len() != 3 {
            return Err(SimError::Network(format!("labeling line {}: expected `white port label`", n + 1)));
        }
        out.insert((parse(t[0])?, parse(t[1])?), t[2].to_string());
    }
    Ok(out)
}
