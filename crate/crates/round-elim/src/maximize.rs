//! Maximal configurations of label sets satisfying the universal quantifier.
//!
//! A configuration of sets `S_1 .. S_k` is valid for a constraint `K` when every
//! choice of one label per set is a configuration of `K`. The output is the set
//! of valid configurations not dominated by another valid one.

use std::collections::{BTreeSet, HashMap, HashSet};

use lcl_core::{expand_constraint, Condensed, Constraint, Group, LabelId};
use serde::{Deserialize, Serialize};

use crate::error::ReError;
use crate::sets::{bits, components, is_subset, BoxForm, Mask, MASK_BITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Combination,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(Method::Direct),
            "combination" => Ok(Method::Combination),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}

/// Options for [`maximize_universal`].
#[derive(Clone, Copy, Debug)]
pub struct MaximizeOptions {
    pub method: Method,
    /// Cap on expanded configurations and on intermediate antichain size.
    pub cap: usize,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions { method: Method::Combination, cap: lcl_core::DEFAULT_EXPANSION_CAP }
    }
}

/// Computes the maximal valid configurations of sets for `k`.
///
/// The result is returned as a constraint over the same label ids whose groups
/// are the sets. `color_of` enables the per-color box algorithm when every
/// configuration holds one label of each color.
pub fn maximize_universal(
    k: &Constraint,
    color_of: &dyn Fn(LabelId) -> Option<u32>,
    opts: MaximizeOptions,
) -> Result<Constraint, ReError> {
    let arity = k.arity();
    if k.is_empty() {
        return Ok(Constraint::new(arity, vec![])?);
    }
    if arity == 1 {
        let all = Group::new(k.labels())?;
        return Ok(Constraint::new(1, vec![Condensed::new(vec![all])])?);
    }
    if opts.method == Method::Combination {
        if let Some(bf) = BoxForm::detect(k, color_of)? {
            let maxed = box_consensus(&bf.boxes, opts.cap)?;
            return box_to_constraint(&bf, &maxed, arity);
        }
    }
    let mut out = Vec::new();
    for comp in components(k) {
        let slice = Slice::new(k, &comp)?;
        let configs = match opts.method {
            Method::Combination => slice.combination(opts.cap)?,
            Method::Direct => slice.direct(opts.cap)?,
        };
        for c in configs {
            out.push(slice.to_condensed(&c));
        }
    }
    Ok(Constraint::new(arity, out)?)
}

pub(crate) fn box_to_constraint(bf: &BoxForm, boxes: &[Vec<Mask>], arity: usize) -> Result<Constraint, ReError> {
    let out = boxes
        .iter()
        .map(|b| {
            Condensed::new(
                b.iter()
                    .enumerate()
                    .map(|(j, &m)| Group::new(bits(m).map(|i| bf.coord_labels[j][i]).collect()).expect("non-empty"))
                    .collect(),
            )
        })
        .collect();
    Ok(Constraint::new(arity, out)?)
}

/// An antichain under a domination order, kept maximal.
struct Antichain<T> {
    items: Vec<Option<T>>,
    live: usize,
}

impl<T: Clone + Eq + std::hash::Hash> Antichain<T> {
    fn new() -> Self {
        Antichain { items: Vec::new(), live: 0 }
    }

    /// Inserts `x` unless dominated; evicts members dominated by `x`.
    /// `dom(a, b)` means `a` dominates `b`. Returns the new index.
    fn insert(&mut self, x: T, dom: &impl Fn(&T, &T) -> bool) -> Option<usize> {
        if self.items.iter().flatten().any(|y| dom(y, &x)) {
            return None;
        }
        for slot in self.items.iter_mut() {
            if slot.as_ref().is_some_and(|y| dom(&x, y)) {
                *slot = None;
                self.live -= 1;
            }
        }
        self.items.push(Some(x));
        self.live += 1;
        Some(self.items.len() - 1)
    }

    fn into_vec(self) -> Vec<T> {
        self.items.into_iter().flatten().collect()
    }
}

/// Coordinatewise consensus closure over a union of boxes: the combination
/// method with the position pairing fixed by color.
pub fn box_consensus(boxes: &[Vec<Mask>], cap: usize) -> Result<Vec<Vec<Mask>>, ReError> {
    let dom = |a: &Vec<Mask>, b: &Vec<Mask>| a.iter().zip(b).all(|(x, y)| is_subset(*y, *x));
    let mut ac: Antichain<Vec<Mask>> = Antichain::new();
    let mut work = Vec::new();
    for b in boxes {
        if let Some(i) = ac.insert(b.clone(), &dom) {
            work.push(i);
        }
    }
    let n = boxes.first().map_or(0, |b| b.len());
    let mut next = 0;
    while next < work.len() {
        let xi = work[next];
        next += 1;
        let Some(x) = ac.items[xi].clone() else { continue };
        let mut j = 0;
        while j < ac.items.len() {
            let Some(y) = ac.items[j].clone() else {
                j += 1;
                continue;
            };
            j += 1;
            'coord: for u in 0..n {
                let un = x[u] | y[u];
                if is_subset(x[u], y[u]) || is_subset(y[u], x[u]) {
                    continue;
                }
                let mut z = Vec::with_capacity(n);
                for t in 0..n {
                    let m = if t == u { un } else { x[t] & y[t] };
                    if m == 0 {
                        continue 'coord;
                    }
                    z.push(m);
                }
                if let Some(i) = ac.insert(z, &dom) {
                    work.push(i);
                    if ac.live > cap {
                        return Err(ReError::Cap(format!("more than {cap} intermediate configurations")));
                    }
                }
            }
            if ac.items[xi].is_none() {
                break;
            }
        }
    }
    let mut out = ac.into_vec();
    out.sort();
    Ok(out)
}

/// One connected component of a constraint, with labels re-indexed to bits.
struct Slice {
    labels: Vec<LabelId>,
    arity: usize,
    configs: Vec<Vec<Mask>>,
}

fn sort_cfg(mut c: Vec<Mask>) -> Vec<Mask> {
    c.sort_unstable();
    c
}

/// Whether `a` dominates `b` as multisets of sets.
fn dominates(a: &[Mask], b: &[Mask]) -> bool {
    lcl_core::has_perfect_matching(a.len(), |i, j| is_subset(b[i], a[j]))
}

impl Slice {
    fn new(k: &Constraint, comp: &[LabelId]) -> Result<Slice, ReError> {
        if comp.len() > MASK_BITS {
            return Err(ReError::Cap(format!("component with {} labels exceeds {MASK_BITS}", comp.len())));
        }
        let local = |l: LabelId| comp.binary_search(&l).ok();
        let mut configs = Vec::new();
        for c in k.configs() {
            let first = c.groups()[0].labels()[0];
            if local(first).is_none() {
                continue;
            }
            configs.push(sort_cfg(
                c.groups()
                    .iter()
                    .map(|g| g.labels().iter().fold(0 as Mask, |m, &l| m | 1 << local(l).expect("same component")))
                    .collect(),
            ));
        }
        Ok(Slice { labels: comp.to_vec(), arity: k.arity(), configs })
    }

    fn to_condensed(&self, c: &[Mask]) -> Condensed {
        Condensed::new(
            c.iter()
                .map(|&m| Group::new(bits(m).map(|i| self.labels[i]).collect()).expect("non-empty"))
                .collect(),
        )
    }

    /// Closure under pairwise combination with eager pruning of dominated members.
    fn combination(&self, cap: usize) -> Result<Vec<Vec<Mask>>, ReError> {
        let dom = |a: &Vec<Mask>, b: &Vec<Mask>| dominates(a, b);
        let mut ac: Antichain<Vec<Mask>> = Antichain::new();
        let mut work = Vec::new();
        let mut seen: HashSet<Vec<Mask>> = HashSet::new();
        for c in &self.configs {
            if seen.insert(c.clone()) {
                if let Some(i) = ac.insert(c.clone(), &dom) {
                    work.push(i);
                }
            }
        }
        let mut next = 0;
        let mut buf = Vec::new();
        while next < work.len() {
            let xi = work[next];
            next += 1;
            let Some(x) = ac.items[xi].clone() else { continue };
            let mut j = 0;
            while j < ac.items.len() {
                let Some(y) = ac.items[j].clone() else {
                    j += 1;
                    continue;
                };
                j += 1;
                buf.clear();
                combinations(&x, &y, &mut buf);
                for z in buf.drain(..) {
                    if !seen.insert(z.clone()) {
                        continue;
                    }
                    if let Some(i) = ac.insert(z, &dom) {
                        work.push(i);
                        if ac.live > cap {
                            return Err(ReError::Cap(format!("more than {cap} intermediate configurations")));
                        }
                    }
                }
                if ac.items[xi].is_none() {
                    break;
                }
            }
        }
        let mut out = ac.into_vec();
        out.sort();
        Ok(out)
    }

    /// Enumerates configurations of right-closed sets directly from the definition.
    fn direct(&self, cap: usize) -> Result<Vec<Vec<Mask>>, ReError> {
        let n = self.labels.len();
        if n > 24 {
            return Err(ReError::Cap(format!("direct method limited to 24 labels per component, got {n}")));
        }
        let k = self.arity;
        let mut valid: HashSet<Vec<u8>> = HashSet::new();
        for c in &self.configs {
            expand_masks(c, &mut |v| {
                valid.insert(v);
            });
            if valid.len() > cap {
                return Err(ReError::Cap(format!("expansion exceeds {cap}")));
            }
        }
        // Completion mask of each (k-1)-multiset, and all proper sub-multisets.
        let mut completion: HashMap<Vec<u8>, Mask> = HashMap::new();
        let mut partial: HashSet<Vec<u8>> = HashSet::new();
        for v in &valid {
            for skip in 0..k {
                let mut rest = v.clone();
                let l = rest.remove(skip);
                *completion.entry(rest).or_insert(0) |= 1 << l;
            }
            sub_multisets(v, &mut partial);
        }
        let leq = |a: usize, b: usize| -> bool {
            valid.iter().all(|v| match v.iter().position(|&x| x as usize == a) {
                None => true,
                Some(p) => {
                    let mut w = v.clone();
                    w[p] = b as u8;
                    w.sort_unstable();
                    valid.contains(&w)
                }
            })
        };
        let mut up: Vec<Mask> = vec![0; n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if leq(a, b) {
                    *row |= 1 << b;
                }
            }
        }
        let full: Mask = if n == MASK_BITS { Mask::MAX } else { (1 << n) - 1 };
        let mut upsets = Vec::new();
        let mut m: Mask = 1;
        while m <= full {
            if bits(m).all(|a| is_subset(up[a], m)) {
                upsets.push(m);
            }
            m += 1;
        }
        let mut found: BTreeSet<Vec<Mask>> = BTreeSet::new();
        let mut prefix: Vec<Mask> = Vec::new();
        let picks: Vec<Vec<u8>> = vec![vec![]];
        direct_rec(&upsets, 0, k, &mut prefix, &picks, &partial, &completion, &mut found);
        let out: Vec<Vec<Mask>> = found
            .into_iter()
            .filter(|c| {
                (0..k).all(|j| {
                    let mut rest = c.clone();
                    let g = rest.remove(j);
                    forced_last(&rest, &completion) == g
                })
            })
            .collect();
        Ok(out)
    }
}

fn sub_multisets(v: &[u8], out: &mut HashSet<Vec<u8>>) {
    let k = v.len();
    for mask in 0u32..(1 << k) {
        let s: Vec<u8> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect();
        out.insert(s);
    }
}

fn expand_masks(c: &[Mask], f: &mut dyn FnMut(Vec<u8>)) {
    let mut cur = Vec::with_capacity(c.len());
    fn rec(c: &[Mask], i: usize, cur: &mut Vec<u8>, f: &mut dyn FnMut(Vec<u8>)) {
        if i == c.len() {
            let mut v = cur.clone();
            v.sort_unstable();
            f(v);
            return;
        }
        for b in bits(c[i]) {
            cur.push(b as u8);
            rec(c, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(c, 0, &mut cur, f);
}

fn picks_of(groups: &[Mask]) -> Vec<Vec<u8>> {
    let mut out = HashSet::new();
    expand_masks(groups, &mut |v| {
        out.insert(v);
    });
    out.into_iter().collect()
}

/// Largest set `S` such that every pick of `rest` plus any label of `S` is valid.
fn forced_last(rest: &[Mask], completion: &HashMap<Vec<u8>, Mask>) -> Mask {
    let mut m = Mask::MAX;
    for p in picks_of(rest) {
        m &= completion.get(&p).copied().unwrap_or(0);
        if m == 0 {
            break;
        }
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn direct_rec(
    upsets: &[Mask],
    from: usize,
    k: usize,
    prefix: &mut Vec<Mask>,
    picks: &[Vec<u8>],
    partial: &HashSet<Vec<u8>>,
    completion: &HashMap<Vec<u8>, Mask>,
    found: &mut BTreeSet<Vec<Mask>>,
) {
    if prefix.len() == k - 1 {
        let mut m = Mask::MAX;
        for p in picks {
            m &= completion.get(p).copied().unwrap_or(0);
            if m == 0 {
                return;
            }
        }
        let mut c = prefix.clone();
        c.push(m);
        found.insert(sort_cfg(c));
        return;
    }
    for (idx, &g) in upsets.iter().enumerate().skip(from) {
        let mut next: HashSet<Vec<u8>> = HashSet::new();
        let mut ok = true;
        'outer: for p in picks {
            for b in bits(g) {
                let mut q = p.clone();
                q.push(b as u8);
                q.sort_unstable();
                if !partial.contains(&q) {
                    ok = false;
                    break 'outer;
                }
                next.insert(q);
            }
        }
        if !ok {
            continue;
        }
        let next: Vec<Vec<u8>> = next.into_iter().collect();
        prefix.push(g);
        direct_rec(upsets, idx, k, prefix, &next, partial, completion, found);
        prefix.pop();
    }
}

/// All combinations of `x` and `y`: one union position, intersections elsewhere,
/// skipping unions of comparable sets.
fn combinations(x: &[Mask], y: &[Mask], out: &mut Vec<Vec<Mask>>) {
    let k = x.len();
    for u in 0..k {
        for v in 0..k {
            if v > 0 && y[v] == y[v - 1] {
                continue;
            }
            if is_subset(x[u], y[v]) || is_subset(y[v], x[u]) {
                continue;
            }
            let mut used = 1u32 << v;
            let mut cur = vec![x[u] | y[v]];
            pair_rest(x, y, u, 0, &mut used, &mut cur, out);
        }
    }
}

fn pair_rest(x: &[Mask], y: &[Mask], u: usize, t: usize, used: &mut u32, cur: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
    if t == x.len() {
        out.push(sort_cfg(cur.clone()));
        return;
    }
    if t == u {
        return pair_rest(x, y, u, t + 1, used, cur, out);
    }
    let mut tried: Vec<Mask> = Vec::new();
    for s in 0..y.len() {
        if *used >> s & 1 == 1 {
            continue;
        }
        let m = x[t] & y[s];
        if m == 0 || tried.contains(&y[s]) {
            continue;
        }
        tried.push(y[s]);
        *used |= 1 << s;
        cur.push(m);
        pair_rest(x, y, u, t + 1, used, cur, out);
        cur.pop();
        *used &= !(1 << s);
    }
}

/// Whether every pick of `c` lies in `k` (the universal quantifier), by expansion.
pub fn satisfies_universal(k: &Constraint, c: &Condensed, cap: usize) -> Result<bool, ReError> {
    let allowed = expand_constraint(k, cap)?;
    let picks = lcl_core::expand_condensed(c, cap)?;
    Ok(picks.iter().all(|p| allowed.contains(p)))
}
