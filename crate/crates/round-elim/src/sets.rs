//! Bitmask views of constraints and union-of-boxes containment.

use std::collections::HashMap;

use lcl_core::{Constraint, LabelId};

use crate::error::ReError;

pub type Mask = u128;

pub const MASK_BITS: usize = 128;

pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// A constraint whose configurations carry exactly one label of each color,
/// so that positions are identified by color.
#[derive(Clone, Debug)]
pub struct BoxForm {
    /// Color of each coordinate, ascending.
    pub colors: Vec<u32>,
    /// Global ids of the labels of each coordinate; bit `i` of a mask is `coord_labels[j][i]`.
    pub coord_labels: Vec<Vec<LabelId>>,
    pub boxes: Vec<Vec<Mask>>,
}

impl BoxForm {
    /// Detects the colored-box shape. `None` when the constraint is empty or
    /// does not have it.
    pub fn detect(k: &Constraint, color_of: &dyn Fn(LabelId) -> Option<u32>) -> Result<Option<BoxForm>, ReError> {
        Ok(Self::detect_joint(&[k], color_of)?.map(|mut v| v.remove(0)))
    }

    /// Detects the colored-box shape for several constraints over the same
    /// label ids, with shared coordinates. Empty constraints are allowed as
    /// long as one is non-empty.
    pub fn detect_joint(
        ks: &[&Constraint],
        color_of: &dyn Fn(LabelId) -> Option<u32>,
    ) -> Result<Option<Vec<BoxForm>>, ReError> {
        let Some(first) = ks.iter().find_map(|k| k.configs().first()) else { return Ok(None) };
        let group_color = |g: &lcl_core::Group| -> Option<u32> {
            let c = color_of(g.labels()[0])?;
            g.labels().iter().all(|&l| color_of(l) == Some(c)).then_some(c)
        };
        let mut colors = Vec::new();
        for g in first.groups() {
            match group_color(g) {
                Some(c) => colors.push(c),
                None => return Ok(None),
            }
        }
        colors.sort_unstable();
        if colors.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        let coord_of: HashMap<u32, usize> = colors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut coord_labels: Vec<Vec<LabelId>> = vec![Vec::new(); colors.len()];
        let mut raws = Vec::with_capacity(ks.len());
        for k in ks {
            if k.arity() != colors.len() {
                return Ok(None);
            }
            let mut raw = Vec::with_capacity(k.len());
            for c in k.configs() {
                let mut row: Vec<Option<&lcl_core::Group>> = vec![None; colors.len()];
                for g in c.groups() {
                    let Some(col) = group_color(g) else { return Ok(None) };
                    let Some(&j) = coord_of.get(&col) else { return Ok(None) };
                    if row[j].is_some() {
                        return Ok(None);
                    }
                    row[j] = Some(g);
                    coord_labels[j].extend_from_slice(g.labels());
                }
                raw.push(row);
            }
            raws.push(raw);
        }
        for (j, v) in coord_labels.iter_mut().enumerate() {
            v.sort_unstable();
            v.dedup();
            if v.len() > MASK_BITS {
                return Err(ReError::Cap(format!("{} labels of color {} exceed {MASK_BITS}", v.len(), colors[j])));
            }
        }
        let forms = raws
            .into_iter()
            .map(|raw| {
                let boxes = raw
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .enumerate()
                            .map(|(j, g)| {
                                g.expect("complete row").labels().iter().fold(0 as Mask, |m, l| {
                                    m | 1 << coord_labels[j].binary_search(l).expect("indexed")
                                })
                            })
                            .collect()
                    })
                    .collect();
                BoxForm { colors: colors.clone(), coord_labels: coord_labels.clone(), boxes }
            })
            .collect();
        Ok(Some(forms))
    }

    pub fn local(&self, j: usize, l: LabelId) -> Option<usize> {
        self.coord_labels[j].binary_search(&l).ok()
    }

    pub fn coord_of_color(&self, c: u32) -> Option<usize> {
        self.colors.binary_search(&c).ok()
    }
}

/// Labels of a constraint that co-occur in some configuration, grouped into
/// connected components. For arity ≥ 2 every valid configuration of sets
/// lives inside one component.
pub fn components(k: &Constraint) -> Vec<Vec<LabelId>> {
    let labels = k.labels();
    let pos: HashMap<LabelId, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let n = p[x];
            p[x] = r;
            x = n;
        }
        r
    }
    for c in k.configs() {
        let mut it = c.groups().iter().flat_map(|g| g.labels().iter());
        if let Some(&f) = it.next() {
            let a = pos[&f];
            for &l in it {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, pos[&l]));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<LabelId>> = HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(l);
    }
    let mut out: Vec<Vec<LabelId>> = groups.into_values().collect();
    out.sort();
    out
}

/// A set of variable-length bit signatures used as memo keys.
type Sig = Vec<u64>;

fn sig_with(n: usize) -> Sig {
    vec![0; n.div_ceil(64)]
}

/// Checks whether `a` is contained in the union of `boxes`; returns an
/// uncovered point (one local index per coordinate) otherwise.
pub fn box_covered(a: &[Mask], boxes: &[Vec<Mask>]) -> Option<Vec<usize>> {
    let n = boxes.len();
    let mut alive = sig_with(n);
    let mut any = false;
    for (i, b) in boxes.iter().enumerate() {
        if a.iter().zip(b).all(|(x, y)| x & y != 0) {
            alive[i / 64] |= 1 << (i % 64);
            any = true;
        }
    }
    if !any {
        return Some(a.iter().map(|&m| m.trailing_zeros() as usize).collect());
    }
    let mut memo: HashMap<(usize, Sig), bool> = HashMap::new();
    let mut witness = Vec::new();
    if cover_rec(a, boxes, 0, &alive, &mut memo, &mut witness) {
        None
    } else {
        witness.reverse();
        Some(witness)
    }
}

fn cover_rec(
    a: &[Mask],
    boxes: &[Vec<Mask>],
    j: usize,
    alive: &Sig,
    memo: &mut HashMap<(usize, Sig), bool>,
    witness: &mut Vec<usize>,
) -> bool {
    let members = || {
        alive.iter().enumerate().flat_map(|(w, &word)| bits(word as Mask).map(move |b| w * 64 + b))
    };
    if members().next().is_none() {
        for m in a[j..].iter().rev() {
            witness.push(m.trailing_zeros() as usize);
        }
        return false;
    }
    if j == a.len() {
        return true;
    }
    if members().any(|i| a[j..].iter().zip(&boxes[i][j..]).all(|(x, y)| is_subset(*x, *y))) {
        return true;
    }
    if let Some(&r) = memo.get(&(j, alive.clone())) {
        if r {
            return true;
        }
    }
    let mut classes: HashMap<Sig, usize> = HashMap::new();
    for e in bits(a[j]) {
        let mut s = sig_with(boxes.len());
        for i in members() {
            if boxes[i][j] >> e & 1 == 1 {
                s[i / 64] |= 1 << (i % 64);
            }
        }
        classes.entry(s).or_insert(e);
    }
    let mut classes: Vec<(Sig, usize)> = classes.into_iter().collect();
    classes.sort_by_key(|(_, e)| *e);
    for (s, e) in classes {
        if !cover_rec(a, boxes, j + 1, &s, memo, witness) {
            witness.push(e);
            memo.insert((j, alive.clone()), false);
            return false;
        }
    }
    memo.insert((j, alive.clone()), true);
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_covers_split_box() {
        let boxes = vec![vec![0b01, 0b11], vec![0b10, 0b11]];
        assert_eq!(box_covered(&[0b11, 0b11], &boxes), None);
        let partial = vec![vec![0b01, 0b11], vec![0b10, 0b01]];
        assert_eq!(box_covered(&[0b11, 0b11], &partial), Some(vec![1, 1]));
    }

    #[test]
    fn needs_two_boxes_per_coordinate() {
        // {0,1}x{0,1}: covered by {0}x{0,1} u {1}x{0} u {1}x{1}.
        let boxes = vec![vec![0b01, 0b11], vec![0b10, 0b01], vec![0b10, 0b10]];
        assert_eq!(box_covered(&[0b11, 0b11], &boxes), None);
        assert!(box_covered(&[0b111, 0b11], &boxes).is_some());
    }
}
