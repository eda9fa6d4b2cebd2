//! Picking and domination, all reduced to perfect bipartite matching.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::{Condensed, Configuration, Constraint, LabelId};
use crate::error::CoreError;

/// Whether the bipartite graph `adj[i][j]` (left i, right j, square) has a perfect matching.
pub fn has_perfect_matching(n: usize, adj: impl Fn(usize, usize) -> bool) -> bool {
    let mut edges = vec![0u32; n];
    for (i, row) in edges.iter_mut().enumerate() {
        for j in 0..n {
            if adj(i, j) {
                *row |= 1 << j;
            }
        }
        if *row == 0 {
            return false;
        }
    }
    let mut owner = vec![usize::MAX; n];
    fn augment(i: usize, edges: &[u32], owner: &mut [usize], seen: &mut u32) -> bool {
        let mut m = edges[i] & !*seen;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            *seen |= 1 << j;
            if owner[j] == usize::MAX || augment(owner[j], edges, owner, seen) {
                owner[j] = i;
                return true;
            }
        }
        false
    }
    (0..n).all(|i| {
        let mut seen = 0u32;
        augment(i, &edges, &mut owner, &mut seen)
    })
}

fn check_arity(a: usize, b: usize) -> Result<(), CoreError> {
    if a != b {
        return Err(CoreError::ArityMismatch { expected: a, found: b });
    }
    if a > crate::MAX_ARITY {
        return Err(CoreError::ArityTooLarge(a));
    }
    Ok(())
}

/// True iff `q` can be picked from `c`: some bijection puts each label of `q`
/// into a distinct group containing it.
pub fn pick_check(c: &Condensed, q: &Configuration) -> Result<bool, CoreError> {
    check_arity(c.arity(), q.arity())?;
    let (g, l) = (c.groups(), q.labels());
    Ok(has_perfect_matching(l.len(), |i, j| g[j].contains(l[i])))
}

/// True iff some condensed configuration of `k` picks `q`.
pub fn constraint_contains(k: &Constraint, q: &Configuration) -> Result<bool, CoreError> {
    check_arity(k.arity(), q.arity())?;
    for c in k.configs() {
        if pick_check(c, q)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff `c1` dominates `c2`: a bijection pairs each group of `c2` with a
/// superset group of `c1`.
pub fn dominates_config(c1: &Condensed, c2: &Condensed) -> Result<bool, CoreError> {
    check_arity(c1.arity(), c2.arity())?;
    let (a, b) = (c1.groups(), c2.groups());
    Ok(has_perfect_matching(b.len(), |i, j| b[i].is_subset(&a[j])))
}

/// A reflexive, transitive "at least as strong as" relation over label ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthRelation {
    domain: Vec<LabelId>,
    leq: BTreeSet<(LabelId, LabelId)>,
}

impl StrengthRelation {
    /// Builds the relation from pairs `(a, b)` meaning `b` is at least as strong as `a`.
    /// Reflexive pairs are added.
    pub fn new(mut domain: Vec<LabelId>, pairs: impl IntoIterator<Item = (LabelId, LabelId)>) -> Self {
        domain.sort_unstable();
        domain.dedup();
        let mut leq: BTreeSet<_> = pairs.into_iter().collect();
        leq.extend(domain.iter().map(|&a| (a, a)));
        StrengthRelation { domain, leq }
    }

    pub fn domain(&self) -> &[LabelId] {
        &self.domain
    }

    pub fn contains(&self, l: LabelId) -> bool {
        self.domain.binary_search(&l).is_ok()
    }

    pub fn leq(&self, a: LabelId, b: LabelId) -> bool {
        self.leq.contains(&(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (LabelId, LabelId)> + '_ {
        self.leq.iter().copied()
    }

    /// Labels at least as strong as some label of `set` (the generated set).
    pub fn up_closure(&self, set: &[LabelId]) -> Vec<LabelId> {
        let mut out: Vec<LabelId> =
            self.domain.iter().copied().filter(|&b| set.iter().any(|&a| self.leq(a, b))).collect();
        out.sort_unstable();
        out
    }

    pub fn is_right_closed(&self, set: &[LabelId]) -> bool {
        self.up_closure(set).len() == {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        }
    }
}

/// True iff `l1` dominates `l2`: a bijection pairs each label of `l1` with a
/// label of `l2` that it is at least as strong as.
pub fn dominates_labels(l1: &Configuration, l2: &Configuration, order: &StrengthRelation) -> Result<bool, CoreError> {
    check_arity(l1.arity(), l2.arity())?;
    for &l in l1.labels().iter().chain(l2.labels()) {
        if !order.contains(l) {
            return Err(CoreError::UnknownLabel(format!("#{l}")));
        }
    }
    let (a, b) = (l1.labels(), l2.labels());
    Ok(has_perfect_matching(a.len(), |i, j| order.leq(b[j], a[i])))
}
