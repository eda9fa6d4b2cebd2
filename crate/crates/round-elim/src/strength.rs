//! Strength relations and diagrams.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use lcl_core::{expand_constraint, Configuration, Constraint, LabelId, Problem, Side, StrengthRelation};
use serde::{Deserialize, Serialize};

use crate::error::ReError;
use crate::sets::{bits, box_covered, BoxForm, Mask};

fn color_fn(p: &Problem) -> impl Fn(LabelId) -> Option<u32> + '_ {
    move |l| p.label(l).color
}

/// True iff replacing one occurrence of `a` by `b` in any configuration of `k`
/// that contains `a` yields a configuration of `k`.
pub fn strength_leq(a: LabelId, b: LabelId, k: &Constraint, cap: usize) -> Result<bool, ReError> {
    if a == b {
        return Ok(true);
    }
    let all = expand_constraint(k, cap)?;
    Ok(all.iter().all(|c| {
        let ls = c.labels();
        match ls.iter().position(|&x| x == a) {
            None => true,
            Some(p) => {
                let mut v = ls.to_vec();
                v[p] = b;
                all.contains(&Configuration::new(v))
            }
        }
    }))
}

/// The full strength relation of one side of `p`, over the whole alphabet.
pub fn strength_relation(p: &Problem, side: Side, cap: usize) -> Result<StrengthRelation, ReError> {
    let k = p.side(side);
    let n = p.alphabet_size();
    let present: HashSet<LabelId> = k.labels().into_iter().collect();
    let mut pairs = Vec::new();
    let color = color_fn(p);
    // Labels absent from this side are vacuously weaker than every label they
    // could share an edge color with.
    let compatible = |a: LabelId, b: LabelId| match (color(a), color(b)) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    };
    for a in 0..n as LabelId {
        if !present.contains(&a) {
            pairs.extend((0..n as LabelId).filter(|&b| compatible(a, b)).map(|b| (a, b)));
        }
    }
    if let Some(bf) = BoxForm::detect(k, &color)? {
        pairs.extend(box_pairs(&bf));
    } else {
        pairs.extend(generic_pairs(k, cap)?);
    }
    Ok(StrengthRelation::new((0..n as LabelId).collect(), pairs))
}

fn generic_pairs(k: &Constraint, cap: usize) -> Result<Vec<(LabelId, LabelId)>, ReError> {
    let labels = k.labels();
    let all = expand_constraint(k, cap)?;
    let idx = |l: LabelId| labels.binary_search(&l).expect("present");
    let m = labels.len();
    let mut ok = vec![vec![true; m]; m];
    for c in &all {
        let ls = c.labels();
        for (p, &a) in ls.iter().enumerate() {
            if p > 0 && ls[p - 1] == a {
                continue;
            }
            let ia = idx(a);
            for (ib, &b) in labels.iter().enumerate() {
                if b == a || !ok[ia][ib] {
                    continue;
                }
                let mut v = ls.to_vec();
                v[p] = b;
                if !all.contains(&Configuration::new(v)) {
                    ok[ia][ib] = false;
                }
            }
        }
    }
    let mut out = Vec::new();
    for (ia, row) in ok.iter().enumerate() {
        for (ib, &v) in row.iter().enumerate() {
            if v {
                out.push((labels[ia], labels[ib]));
            }
        }
    }
    Ok(out)
}

/// Strength within each coordinate of a box-shaped constraint: `a ≤ b` iff the
/// completions of `a` are covered by the completions of `b`.
fn box_pairs(bf: &BoxForm) -> Vec<(LabelId, LabelId)> {
    let mut out = Vec::new();
    for (j, labels) in bf.coord_labels.iter().enumerate() {
        let slice = |e: usize| -> Vec<Vec<Mask>> {
            bf.boxes
                .iter()
                .filter(|b| b[j] >> e & 1 == 1)
                .map(|b| b.iter().enumerate().map(|(t, &m)| if t == j { 1 } else { m }).collect())
                .collect()
        };
        let slices: Vec<Vec<Vec<Mask>>> = (0..labels.len()).map(slice).collect();
        for a in 0..labels.len() {
            for b in 0..labels.len() {
                if a == b || slices[a].iter().all(|bx| box_covered(bx, &slices[b]).is_none()) {
                    out.push((labels[a], labels[b]));
                }
            }
        }
    }
    out
}

/// The diagram of one side: transitive reduction of the strict strength order
/// after merging labels of equal strength.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub v: u32,
    /// Node names; each node represents one class of equally strong labels.
    pub nodes: Vec<String>,
    /// Edges `(weaker, stronger)`.
    pub edges: Vec<(String, String)>,
    /// Classes of equally strong labels with more than one member, representative first.
    pub merge_candidates: Vec<Vec<String>>,
}

impl Diagram {
    pub fn successors(&self, n: &str) -> Vec<&str> {
        self.edges.iter().filter(|(a, _)| a == n).map(|(_, b)| b.as_str()).collect()
    }

    pub fn indegree(&self, n: &str) -> usize {
        self.edges.iter().filter(|(_, b)| b == n).count()
    }

    pub fn outdegree(&self, n: &str) -> usize {
        self.edges.iter().filter(|(a, _)| a == n).count()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph diagram {\n");
        for n in &self.nodes {
            let _ = writeln!(s, "  \"{n}\";");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  \"{a}\" -> \"{b}\";");
        }
        s.push_str("}\n");
        s
    }
}

/// Diagram over the labels occurring on `side` of `p`.
pub fn diagram(p: &Problem, side: Side, cap: usize) -> Result<Diagram, ReError> {
    let rel = strength_relation(p, side, cap)?;
    Ok(diagram_from_relation(p, &p.side(side).labels(), &rel))
}

pub fn diagram_from_relation(p: &Problem, labels: &[LabelId], rel: &StrengthRelation) -> Diagram {
    // Equivalence classes under mutual strength; representative = first in canonical order.
    let mut rep: BTreeMap<LabelId, LabelId> = BTreeMap::new();
    for &a in labels {
        let r = labels.iter().copied().find(|&b| rel.leq(a, b) && rel.leq(b, a)).unwrap_or(a);
        rep.insert(a, r);
    }
    let reps: Vec<LabelId> = labels.iter().copied().filter(|a| rep[a] == *a).collect();
    let mut merge_candidates = Vec::new();
    for &r in &reps {
        let class: Vec<LabelId> = labels.iter().copied().filter(|a| rep[a] == r).collect();
        if class.len() > 1 {
            log::info!("equally strong labels merged in diagram: {:?}", class.iter().map(|&l| p.name_of(l)).collect::<Vec<_>>());
            merge_candidates.push(class.iter().map(|&l| p.name_of(l).to_string()).collect());
        }
    }
    let strict = |a: LabelId, b: LabelId| a != b && rel.leq(a, b) && !rel.leq(b, a);
    let mut edges = Vec::new();
    for &a in &reps {
        for &b in &reps {
            if strict(a, b) && !reps.iter().any(|&c| strict(a, c) && strict(c, b)) {
                edges.push((p.name_of(a).to_string(), p.name_of(b).to_string()));
            }
        }
    }
    Diagram {
        v: 1,
        nodes: reps.iter().map(|&l| p.name_of(l).to_string()).collect(),
        edges,
        merge_candidates,
    }
}

/// Bit helper used by tests and callers holding masks.
pub fn mask_names(p: &Problem, labels: &[LabelId], m: Mask) -> Vec<String> {
    bits(m).map(|i| p.name_of(labels[i]).to_string()).collect()
}
