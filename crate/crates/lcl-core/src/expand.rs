//! On-demand expansion of condensed configurations into plain configurations.

use std::collections::BTreeSet;

use crate::config::{Condensed, Configuration, Constraint};
use crate::error::CoreError;

pub const DEFAULT_EXPANSION_CAP: usize = 1_000_000;

/// All configurations pickable from `c`, deduplicated. Errors once more than
/// `cap` distinct configurations (or candidate tuples) would be produced.
pub fn expand_condensed(c: &Condensed, cap: usize) -> Result<BTreeSet<Configuration>, CoreError> {
    let mut out = BTreeSet::new();
    expand_into(c, cap, &mut out)?;
    Ok(out)
}

fn expand_into(c: &Condensed, cap: usize, out: &mut BTreeSet<Configuration>) -> Result<(), CoreError> {
    let groups = c.groups();
    if c.product_size() > (cap as u128).saturating_mul(64) {
        return Err(CoreError::ExpansionCap(cap));
    }
    let mut cur = Vec::with_capacity(groups.len());
    fn rec(
        groups: &[crate::config::Group],
        i: usize,
        cur: &mut Vec<u32>,
        cap: usize,
        out: &mut BTreeSet<Configuration>,
    ) -> Result<(), CoreError> {
        if i == groups.len() {
            out.insert(Configuration::new(cur.clone()));
            if out.len() > cap {
                return Err(CoreError::ExpansionCap(cap));
            }
            return Ok(());
        }
        for &l in groups[i].labels() {
            // Equal consecutive groups only need non-decreasing picks.
            if i > 0 && groups[i] == groups[i - 1] && l < cur[i - 1] {
                continue;
            }
            cur.push(l);
            rec(groups, i + 1, cur, cap, out)?;
            cur.pop();
        }
        Ok(())
    }
    rec(groups, 0, &mut cur, cap, out)
}

/// The set of configurations represented by a constraint.
pub fn expand_constraint(k: &Constraint, cap: usize) -> Result<BTreeSet<Configuration>, CoreError> {
    let mut out = BTreeSet::new();
    for c in k.configs() {
        expand_into(c, cap, &mut out)?;
    }
    Ok(out)
}
