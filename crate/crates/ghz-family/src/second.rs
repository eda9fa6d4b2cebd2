//! The second round-elimination step: Π″, Π‴, Π⁗ and the renaming onto Π_{i+1,Δ}.

use std::collections::{BTreeMap, BTreeSet};

use lcl_core::{LabelId, NamedCondensed, Problem, Side, StrengthRelation};
use round_elim::{existential_lift, merge_labels, strength_relation};

use crate::color::{e, ee, q, xm, xy};
use crate::error::GhzError;
use crate::prime::{generated, minimal, set_name, FirstStep, SetRegistry, CAP};

/// The first step together with Π″_{i,Δ} and its relaxations Π‴ and Π⁗.
#[derive(Clone, Debug)]
pub struct SecondStep {
    pub first: FirstStep,
    pub prime_white: StrengthRelation,
    pub second: Problem,
    pub third: Problem,
    pub fourth: Problem,
}

fn rebuild(
    name: &str,
    p: &Problem,
    white: Vec<NamedCondensed>,
    black: Vec<NamedCondensed>,
    members: impl Fn(&str) -> Option<Vec<String>>,
) -> Result<Problem, GhzError> {
    let mut b = Problem::builder(name);
    b.arity(Side::White, p.white().arity()).arity(Side::Black, p.black().arity());
    let used: BTreeSet<&String> = white.iter().chain(&black).flatten().flatten().collect();
    for n in used {
        if let Some(m) = members(n) {
            b.members(n, m);
        }
    }
    for c in white {
        b.push(Side::White, c);
    }
    for c in black {
        b.push(Side::Black, c);
    }
    Ok(b.build()?)
}

/// Name of the special-color label generated by both halves.
fn union_name(s: usize) -> String {
    format!("HX00X01oX10X11_{s}")
}

impl SecondStep {
    pub fn new(i: usize, delta: usize) -> Result<Self, GhzError> {
        Self::from_first(FirstStep::new(i, delta)?)
    }

    pub fn from_first(first: FirstStep) -> Result<Self, GhzError> {
        let (i, delta) = (first.i, first.delta);
        let s = delta - i;
        let prime = &first.prime;
        let rel = strength_relation(prime, Side::White, CAP)?;
        let mut reg = SetRegistry::default();
        let mut white: Vec<NamedCondensed> = Vec::new();
        for row in &first.n_plus {
            let mut out = Vec::new();
            for disj in row {
                let ids = disj.iter().map(|n| prime.require(n)).collect::<Result<Vec<_>, _>>()?;
                let set = generated(prime, Side::White, &rel, &ids);
                let name = reg.intern(set.clone(), || set_name(prime, &minimal(&rel, &set), "H", "G", "o"));
                out.push(vec![name]);
            }
            white.push(out);
        }
        let sets: Vec<(Vec<LabelId>, String)> = reg.iter().map(|(s, n)| (s.clone(), n.clone())).collect();
        let ids: Vec<Vec<LabelId>> = sets.iter().map(|(s, _)| s.clone()).collect();
        let lifted = existential_lift(prime.black(), &ids)?;
        let black: Vec<NamedCondensed> = lifted
            .configs()
            .iter()
            .map(|c| c.groups().iter().map(|g| g.labels().iter().map(|&k| sets[k as usize].1.clone()).collect()).collect())
            .collect();
        let members: BTreeMap<String, Vec<String>> = sets
            .iter()
            .map(|(set, n)| (n.clone(), set.iter().map(|&l| prime.name_of(l).to_string()).collect()))
            .collect();
        let second = rebuild(&format!("pi2_{i}_{delta}"), prime, white, black, |n| members.get(n).cloned())?;

        let u = union_name(s);
        let mut third = second.clone();
        for half in [format!("HX00X01_{s}"), format!("HX10X11_{s}")] {
            if third.id_of(&half).is_some() {
                third = merge_labels(&third, &half, &u)?;
            }
        }
        third.name = format!("pi3_{i}_{delta}");

        // Configurations using an XM or EE label at the new special color are
        // dominated by ones using an X label there, so they are dropped.
        let t = s - 1;
        let pruned: BTreeSet<String> = [xm(t, 0), xm(t, 1), ee(t)].iter().map(|l| format!("H{}", l)).collect();
        let white4: Vec<NamedCondensed> =
            third.named(Side::White).into_iter().filter(|c| !c.iter().flatten().any(|l| pruned.contains(l))).collect();
        let keep: BTreeSet<&String> = white4.iter().flatten().flatten().collect();
        let black4: Vec<NamedCondensed> = third
            .named(Side::Black)
            .into_iter()
            .map(|c| c.into_iter().map(|g| g.into_iter().filter(|l| keep.contains(l)).collect::<Vec<_>>()).collect::<Vec<_>>())
            .filter(|c: &NamedCondensed| c.iter().all(|g| !g.is_empty()))
            .collect();
        let third_ref = &third;
        let fourth = rebuild(&format!("pi4_{i}_{delta}"), third_ref, white4, black4, |n| {
            third_ref.id_of(n).and_then(|id| third_ref.label(id).members.clone())
        })?;
        Ok(SecondStep { first, prime_white: rel, second, third, fourth })
    }

    /// Applies the renaming onto Π_{i+1,Δ} to `p`, whose labels are sets of Π′ labels.
    pub fn rename(&self, p: &Problem) -> Result<Problem, GhzError> {
        let map = self.renaming(p)?;
        rebuild(&format!("pi_{}_{}", self.first.i + 1, self.first.delta), p,
            rename_side(p, Side::White, &map), rename_side(p, Side::Black, &map), |_| None)
    }

    /// The renaming of every label of `p`, decided from its generators.
    pub fn renaming(&self, p: &Problem) -> Result<BTreeMap<String, String>, GhzError> {
        let (prime, pi) = (&self.first.prime, &self.first.pi);
        let s = self.first.delta - self.first.i;
        let mut map = BTreeMap::new();
        for l in p.labels() {
            let bad = || GhzError::Renaming(l.name.clone());
            let members = l.members.as_ref().ok_or_else(bad)?;
            let ids = members.iter().map(|m| prime.id_of(m).ok_or_else(bad)).collect::<Result<Vec<_>, _>>()?;
            let mut shape: Vec<Vec<String>> = Vec::new();
            for g in minimal(&self.prime_white, &ids) {
                let inner = prime.label(g).members.as_ref().ok_or_else(bad)?;
                let inner_ids = inner.iter().map(|m| pi.id_of(m).ok_or_else(bad)).collect::<Result<Vec<_>, _>>()?;
                let mut names: Vec<String> =
                    minimal(&self.first.pi_black, &inner_ids).iter().map(|&x| pi.name_of(x).to_string()).collect();
                names.sort();
                shape.push(names);
            }
            shape.sort();
            let color = l.color.ok_or_else(bad)? as usize;
            let target = if color != s {
                match shape.as_slice() {
                    [one] if one.len() == 1 => one[0].clone(),
                    _ => return Err(bad()),
                }
            } else if shape == vec![vec![xy(s, 0, 0), xy(s, 0, 1)], vec![xy(s, 1, 0), xy(s, 1, 1)]] {
                q(s)
            } else if shape == vec![vec![format!("MY0_{s}"), format!("MY1_{s}")]] {
                e(s)
            } else {
                return Err(bad());
            };
            map.insert(l.name.clone(), target);
        }
        Ok(map)
    }
}

fn rename_side(p: &Problem, side: Side, map: &BTreeMap<String, String>) -> Vec<NamedCondensed> {
    p.named(side)
        .into_iter()
        .map(|c| c.into_iter().map(|g| g.into_iter().map(|l| map[&l].clone()).collect()).collect())
        .collect()
}

/// Renames a Π⁗-shaped problem built for `(i, Δ)` onto the labels of Π_{i+1,Δ}.
pub fn rename_after_second_step(p: &Problem, i: usize, delta: usize) -> Result<Problem, GhzError> {
    SecondStep::new(i, delta)?.rename(p)
}
