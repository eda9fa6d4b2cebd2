//! The operators re and rere, existential lifts, merging and the heuristic rule.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use lcl_core::{name_cmp, Condensed, Constraint, Group, LabelId, Problem, ProblemBuilder, Side};

use crate::error::ReError;
use crate::maximize::{maximize_universal, MaximizeOptions};
use crate::strength::diagram;

/// A set of source labels used as a label of a derived problem.
pub type SetLabel = Vec<LabelId>;

/// Replaces every group `G` of `k` by the set-labels intersecting it.
/// Configurations with a group that no set-label meets are dropped.
pub fn existential_lift(k: &Constraint, sets: &[SetLabel]) -> Result<Constraint, ReError> {
    let mut out = Vec::with_capacity(k.len());
    'cfg: for c in k.configs() {
        let mut groups = Vec::with_capacity(c.arity());
        for g in c.groups() {
            let hit: Vec<LabelId> = sets
                .iter()
                .enumerate()
                .filter(|(_, s)| s.iter().any(|&l| g.contains(l)))
                .map(|(i, _)| i as LabelId)
                .collect();
            if hit.is_empty() {
                continue 'cfg;
            }
            groups.push(Group::new(hit)?);
        }
        out.push(Condensed::new(groups));
    }
    Ok(Constraint::new(k.arity(), out)?)
}

fn set_color(p: &Problem, s: &[LabelId]) -> Option<u32> {
    let c = p.label(s[0]).color?;
    s.iter().all(|&l| p.label(l).color == Some(c)).then_some(c)
}

/// Deterministic names for set-labels over `p`'s alphabet.
///
/// Singletons keep their member's name; small sets join member bases with
/// `x`; larger sets become `S<k>`. Single-colored sets keep the color suffix.
pub fn name_sets(p: &Problem, sets: &[SetLabel]) -> Vec<String> {
    let mut taken: HashSet<String> = HashSet::new();
    let mut names = vec![String::new(); sets.len()];
    for (i, s) in sets.iter().enumerate() {
        if s.len() == 1 {
            names[i] = p.name_of(s[0]).to_string();
            taken.insert(names[i].clone());
        }
    }
    let mut counter: BTreeMap<Option<u32>, usize> = BTreeMap::new();
    for (i, s) in sets.iter().enumerate() {
        if s.len() == 1 {
            continue;
        }
        let color = set_color(p, s);
        let suffix = color.map(|c| format!("_{c}")).unwrap_or_default();
        let base = if s.len() <= 3 {
            s.iter().map(|&l| p.label(l).base().to_string()).collect::<Vec<_>>().join("x")
        } else {
            let k = counter.entry(color).or_insert(0);
            *k += 1;
            format!("S{k}")
        };
        let mut name = format!("{base}{suffix}");
        let mut n = 2;
        while taken.contains(&name) {
            name = format!("{base}v{n}{suffix}");
            n += 1;
        }
        taken.insert(name.clone());
        names[i] = name;
    }
    names
}

/// Canonical order of set-labels: by color, then member names.
fn sort_sets(p: &Problem, sets: &mut [SetLabel]) {
    sets.sort_by(|a, b| {
        set_color(p, a).unwrap_or(0).cmp(&set_color(p, b).unwrap_or(0)).then_with(|| {
            let an: Vec<&str> = a.iter().map(|&l| p.name_of(l)).collect();
            let bn: Vec<&str> = b.iter().map(|&l| p.name_of(l)).collect();
            an.len().cmp(&bn.len()).then_with(|| {
                an.iter().zip(&bn).map(|(x, y)| name_cmp(x, y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
            })
        })
    });
}

/// Builds a derived problem whose labels are the given sets over `p`'s
/// alphabet. `maxed` is over `p`'s ids with groups being the sets; the other
/// side is the existential lift of `p`'s other side.
pub fn derived_problem(p: &Problem, maxed_side: Side, maxed: &Constraint, name: &str) -> Result<Problem, ReError> {
    let mut sets: Vec<SetLabel> = maxed
        .configs()
        .iter()
        .flat_map(|c| c.groups().iter().map(|g| g.labels().to_vec()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    sort_sets(p, &mut sets);
    let names = name_sets(p, &sets);
    let index: BTreeMap<&SetLabel, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut b = ProblemBuilder::new(name);
    for (s, n) in sets.iter().zip(&names) {
        b.members(n, s.iter().map(|&l| p.name_of(l).to_string()).collect());
    }
    let other = maxed_side.other();
    b.arity(maxed_side, maxed.arity()).arity(other, p.side(other).arity());
    for c in maxed.configs() {
        b.push(maxed_side, c.groups().iter().map(|g| vec![names[index[&g.labels().to_vec()]].clone()]).collect());
    }
    let lifted = existential_lift(p.side(other), &sets)?;
    for c in lifted.configs() {
        b.push(
            other,
            c.groups().iter().map(|g| g.labels().iter().map(|&i| names[i as usize].clone()).collect()).collect(),
        );
    }
    Ok(b.build()?)
}

/// Members of each label of `p`, as ids of `source`. Labels without members
/// are treated as singletons of the same name.
pub fn member_sets(p: &Problem, source: &Problem) -> Result<Vec<SetLabel>, ReError> {
    p.labels()
        .iter()
        .map(|l| {
            let names: Vec<&str> = match &l.members {
                Some(m) => m.iter().map(|s| s.as_str()).collect(),
                None => vec![l.name.as_str()],
            };
            let mut ids = names.iter().map(|n| source.require(n)).collect::<Result<Vec<_>, _>>()?;
            ids.sort_unstable();
            Ok(ids)
        })
        .collect()
}

fn derive(p: &Problem, side: Side, opts: MaximizeOptions, op: &str) -> Result<Problem, ReError> {
    let color = |l: LabelId| p.label(l).color;
    let maxed = maximize_universal(p.side(side), &color, opts)?;
    let name = if p.name.is_empty() { op.to_string() } else { format!("{op}({})", p.name) };
    derived_problem(p, side, &maxed, &name)
}

/// Black side maximized under the universal quantifier; white side lifted.
pub fn re(p: &Problem, opts: MaximizeOptions) -> Result<Problem, ReError> {
    derive(p, Side::Black, opts, "re")
}

/// White side maximized under the universal quantifier; black side lifted.
pub fn rere(p: &Problem, opts: MaximizeOptions) -> Result<Problem, ReError> {
    derive(p, Side::White, opts, "rere")
}

/// Relaxes `p` so that `b` may be used wherever `a` could; `a` disappears.
pub fn merge_labels(p: &Problem, a: &str, b: &str) -> Result<Problem, ReError> {
    p.require(a)?;
    p.require(b)?;
    if a == b {
        return Err(ReError::Invalid("cannot merge a label with itself".into()));
    }
    let mut builder = ProblemBuilder::new(p.name.clone());
    for l in p.labels() {
        if let (Some(m), true) = (&l.members, l.name != a) {
            builder.members(&l.name, m.clone());
        }
    }
    for side in [Side::White, Side::Black] {
        builder.arity(side, p.side(side).arity());
        for c in p.named(side) {
            let mapped = c
                .into_iter()
                .map(|g| g.into_iter().map(|n| if n == a { b.to_string() } else { n }).collect())
                .collect();
            builder.push(side, mapped);
        }
    }
    Ok(builder.build()?)
}

/// Labels whose member set has at least two elements.
pub fn new_labels(p: &Problem) -> BTreeSet<String> {
    p.labels()
        .iter()
        .filter(|l| l.members.as_ref().is_some_and(|m| m.len() >= 2))
        .map(|l| l.name.clone())
        .collect()
}

/// Finds the lexicographically smallest pair `(a, b)` such that `a` is new with
/// nonzero indegree, `b` is its only successor, and `b` is a sink or new.
pub fn heuristic_relax_step(
    p: &Problem,
    newness: &BTreeSet<String>,
    side: Side,
    cap: usize,
) -> Result<Option<(String, String)>, ReError> {
    let d = diagram(p, side, cap)?;
    let mut best: Option<(String, String)> = None;
    for a in &d.nodes {
        if !newness.contains(a) || d.indegree(a) == 0 {
            continue;
        }
        let succ = d.successors(a);
        if succ.len() != 1 {
            continue;
        }
        let b = succ[0];
        if d.outdegree(b) == 0 || newness.contains(b) {
            let cand = (a.clone(), b.to_string());
            if best.as_ref().is_none_or(|x| cand < *x) {
                best = Some(cand);
            }
        }
    }
    Ok(best)
}

/// Applies the heuristic rule until no pair qualifies. Returns the final
/// problem and the merges performed.
pub fn heuristic_exhaust(p: &Problem, side: Side, cap: usize) -> Result<(Problem, Vec<(String, String)>), ReError> {
    let mut cur = p.clone();
    let mut newness = new_labels(p);
    let mut merges = Vec::new();
    while let Some((a, b)) = heuristic_relax_step(&cur, &newness, side, cap)? {
        cur = merge_labels(&cur, &a, &b)?;
        newness.remove(&a);
        merges.push((a, b));
    }
    Ok((cur, merges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcl_core::{parse_problem, serialize};

    #[test]
    fn re_of_single_label_is_fixed_point() {
        let p = parse_problem("white\nA A A\nblack\nA A A").unwrap();
        let r = re(&p, MaximizeOptions::default()).unwrap();
        assert_eq!(r.alphabet_size(), 1);
        assert_eq!(r.labels()[0].members, Some(vec!["A".to_string()]));
        assert_eq!(r.white().len(), 1);
        let rr = rere(&p, MaximizeOptions::default()).unwrap();
        assert_eq!(rr.alphabet_size(), 1);
    }

    #[test]
    fn merging_two_labels() {
        let p = parse_problem("white\nA B\nblack\nA A\nB B").unwrap();
        let m = merge_labels(&p, "A", "B").unwrap();
        assert_eq!(serialize(&m), "white\nB^2\nblack\nB^2\n");
        assert!(merge_labels(&p, "A", "Z").is_err());
    }

    #[test]
    fn heuristic_on_chain() {
        // Diagram O -> N -> T with N new and T a sink.
        let p = parse_problem(
            "label NxT = N T\nwhite\nO T\nNxT T\nT T\nNxT NxT\nblack\nO O\nNxT NxT\nT T",
        )
        .unwrap();
        let d = diagram(&p, Side::White, 1000).unwrap();
        assert_eq!(d.edges.len(), 2);
        let newness = new_labels(&p);
        let step = heuristic_relax_step(&p, &newness, Side::White, 1000).unwrap();
        assert_eq!(step, Some(("NxT".to_string(), "T".to_string())));
        assert_eq!(heuristic_relax_step(&p, &BTreeSet::new(), Side::White, 1000).unwrap(), None);
    }

    #[test]
    fn lift_drops_unreachable() {
        let p = parse_problem("white\nA B\nC C\nblack\nA A").unwrap();
        let sets = vec![vec![p.id_of("A").unwrap()], vec![p.id_of("A").unwrap(), p.id_of("B").unwrap()]];
        let l = existential_lift(p.white(), &sets).unwrap();
        assert_eq!(l.len(), 1);
    }
}
