//! Zero-round solvability.

use std::collections::BTreeMap;

use lcl_core::{constraint_contains, has_perfect_matching, Configuration, LabelId, Problem};
use serde::{Deserialize, Serialize};

/// A zero-round solution: the labels every white node outputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRoundWitness {
    /// For colored instances, the label put on the edge of each color.
    pub by_color: Option<BTreeMap<u32, String>>,
    /// The white configuration used.
    pub configuration: Vec<String>,
}

fn repeated(l: LabelId, k: usize) -> Configuration {
    Configuration::new(vec![l; k])
}

/// Searches for a zero-round algorithm.
///
/// Colored: every white node has one edge of each color `1..=Δ_w` and black
/// nodes carry a single color; a solution is a map `λ` from colors to labels
/// with `{λ(1), …, λ(Δ_w)}` white-valid and `λ(c)^Δ_b` black-valid. Labels
/// with a color suffix may only be used on edges of that color.
///
/// Uncolored: ports are arbitrary, so a white configuration works iff every
/// multiset of `Δ_b` labels drawn from it is black-valid.
pub fn zero_round_solvable(p: &Problem, colored: bool) -> Option<ZeroRoundWitness> {
    let (dw, db) = (p.white().arity(), p.black().arity());
    if colored {
        let colors: Vec<u32> = (1..=dw as u32).collect();
        let allowed: Vec<Vec<LabelId>> = colors
            .iter()
            .map(|&c| {
                (0..p.alphabet_size() as LabelId)
                    .filter(|&l| p.label(l).color.is_none_or(|lc| lc == c))
                    .filter(|&l| constraint_contains(p.black(), &repeated(l, db)).unwrap_or(false))
                    .collect()
            })
            .collect();
        for c in p.white().configs() {
            let groups = c.groups();
            let ok = has_perfect_matching(dw, |ci, gi| allowed[ci].iter().any(|&l| groups[gi].contains(l)));
            if !ok {
                continue;
            }
            // Recover an explicit assignment by backtracking over colors.
            let mut used = vec![false; dw];
            let mut pick = vec![0; dw];
            if assign(0, groups, &allowed, &mut used, &mut pick) {
                let by_color: BTreeMap<u32, String> =
                    colors.iter().zip(&pick).map(|(&c, &l)| (c, p.name_of(l).to_string())).collect();
                let mut configuration: Vec<String> = by_color.values().cloned().collect();
                configuration.sort();
                return Some(ZeroRoundWitness { by_color: Some(by_color), configuration });
            }
        }
        None
    } else {
        for c in p.white().configs() {
            for q in lcl_core::expand_condensed(c, lcl_core::DEFAULT_EXPANSION_CAP).ok()? {
                let mut set = q.labels().to_vec();
                set.dedup();
                if all_multisets_valid(p, &set, db) {
                    return Some(ZeroRoundWitness { by_color: None, configuration: p.named_configuration(&q) });
                }
            }
        }
        None
    }
}

fn assign(
    ci: usize,
    groups: &[lcl_core::Group],
    allowed: &[Vec<LabelId>],
    used: &mut [bool],
    pick: &mut [LabelId],
) -> bool {
    if ci == allowed.len() {
        return true;
    }
    for (gi, g) in groups.iter().enumerate() {
        if used[gi] {
            continue;
        }
        if let Some(&l) = allowed[ci].iter().find(|&&l| g.contains(l)) {
            used[gi] = true;
            pick[ci] = l;
            if assign(ci + 1, groups, allowed, used, pick) {
                return true;
            }
            used[gi] = false;
        }
    }
    false
}

fn all_multisets_valid(p: &Problem, set: &[LabelId], k: usize) -> bool {
    fn rec(p: &Problem, set: &[LabelId], from: usize, cur: &mut Vec<LabelId>, k: usize) -> bool {
        if cur.len() == k {
            return constraint_contains(p.black(), &Configuration::new(cur.clone())).unwrap_or(false);
        }
        for i in from..set.len() {
            cur.push(set[i]);
            let ok = rec(p, set, i, cur, k);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(p, set, 0, &mut Vec::new(), k)
}
