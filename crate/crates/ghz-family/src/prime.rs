//! Generated sets and the problem Π′_{i,Δ}.

use std::collections::BTreeMap;

use lcl_core::{name_cmp, parse_condensed_line, LabelId, NamedCondensed, Problem, Side, StrengthRelation};
use round_elim::strength_relation;

use crate::color::{check_range, e, ee, mm, my, q, xm, xy};
use crate::error::GhzError;
use crate::pi::pi;

/// Expansion cap used when computing strength relations of the family.
pub(crate) const CAP: usize = 1_000_000;

/// Black generator lists of a present color; `#` stands for the color.
const PRESENT_GENERATORS: [&str; 23] = [
    "[MM_#] [EE_#]^2",
    "[MY0_#,XM1_#] [X00_#]^2",
    "[MY1_#,XM1_#] [X00_#] [X01_#]",
    "[MY0_#,XM1_#] [X01_#]^2",
    "[MY1_#,XM0_#] [X00_#] [X10_#]",
    "[MY0_#,XM0_#] [X00_#] [X11_#]",
    "[MY0_#,XM0_#] [X01_#] [X10_#]",
    "[MY1_#,XM0_#] [X01_#] [X11_#]",
    "[MY1_#,XM1_#] [X10_#]^2",
    "[MY0_#,XM1_#] [X10_#] [X11_#]",
    "[MY1_#,XM1_#] [X11_#]^2",
    "[MY0_#] [X00_#] [X00_#,X11_#]",
    "[MY1_#] [X00_#] [X01_#,X10_#]",
    "[MY0_#] [X01_#] [X01_#,X10_#]",
    "[MY1_#] [X00_#,X11_#] [X01_#]",
    "[MY0_#] [MY1_#] [X10_#]",
    "[X11_#] [MY0_#]^2",
    "[X10_#] [X01_#,X10_#]^2",
    "[X10_#] [X00_#,X11_#]^2",
    "[X00_#,X11_#] [X01_#,X10_#] [X11_#]",
    "[X11_#] [MY1_#]^2",
    "[XM1_#] [XM0_#]^2",
    "[XM1_#]^3",
];

const SPECIAL_GENERATORS: [&str; 2] = ["[X00_#,X01_#] [MY0_#,MY1_#]^2", "[X10_#,X11_#] [MY0_#,MY1_#]^2"];

const GONE_GENERATORS: [&str; 1] = ["[E_#]^2 [Q_#]"];

const FIRST_GENERATORS: [&str; 2] = ["[EE_1] [MM_1] [MY0_1]", "[MY0_1]^2 [MY1_1]"];

fn instantiate(templates: &[&str], j: usize) -> Vec<NamedCondensed> {
    templates
        .iter()
        .map(|t| parse_condensed_line(&t.replace('#', &j.to_string()), 1).expect("valid template"))
        .collect()
}

/// Black generator lists of Π′_{i,Δ}: each group lists the generators of one set.
pub fn black_generators(i: usize, delta: usize) -> Result<Vec<NamedCondensed>, GhzError> {
    check_range(i, delta)?;
    let s = delta - i;
    let mut out = Vec::new();
    for j in s + 1..=delta {
        out.extend(instantiate(&GONE_GENERATORS, j));
    }
    out.extend(instantiate(&FIRST_GENERATORS, 1));
    for j in 2..s {
        out.extend(instantiate(&PRESENT_GENERATORS, j));
    }
    out.extend(instantiate(&SPECIAL_GENERATORS, s));
    Ok(out)
}

/// Minimal elements of `set` under `rel`.
pub fn minimal(rel: &StrengthRelation, set: &[LabelId]) -> Vec<LabelId> {
    set.iter()
        .copied()
        .filter(|&m| !set.iter().any(|&o| o != m && rel.leq(o, m) && !rel.leq(m, o)))
        .collect()
}

/// The set generated by `gens`: the generators and everything at least as
/// strong, restricted to labels occurring on `side`.
pub fn generated(p: &Problem, side: Side, rel: &StrengthRelation, gens: &[LabelId]) -> Vec<LabelId> {
    let on_side = p.side(side).labels();
    rel.up_closure(gens).into_iter().filter(|l| on_side.binary_search(l).is_ok()).collect()
}

/// Name of a generated set: `prefix`, the stripped names of its minimal
/// elements joined by `sep`, and the common color.
pub(crate) fn set_name(p: &Problem, minimal: &[LabelId], prefix: &str, strip: &str, sep: &str) -> String {
    let mut names: Vec<&str> = minimal.iter().map(|&l| p.name_of(l)).collect();
    names.sort_by(|a, b| name_cmp(a, b));
    let color = p.label(minimal[0]).color.expect("colored label");
    let bases: Vec<&str> =
        names.iter().map(|n| n.rsplit_once('_').map_or(*n, |(b, _)| b).trim_start_matches(strip)).collect();
    format!("{prefix}{}_{color}", bases.join(sep))
}

/// Labels of a derived problem given as sets over a source, deduplicated by content.
#[derive(Clone, Debug, Default)]
pub(crate) struct SetRegistry {
    by_set: BTreeMap<Vec<LabelId>, String>,
}

impl SetRegistry {
    pub fn intern(&mut self, set: Vec<LabelId>, name: impl FnOnce() -> String) -> String {
        self.by_set.entry(set).or_insert_with(name).clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<LabelId>, &String)> {
        self.by_set.iter()
    }
}

/// One disjunction of an 𝒩⁺ configuration: sets, each named by its generators.
pub type GenDisjunction = Vec<Vec<String>>;

/// The 𝒩⁺ configurations of Π′_{i,Δ}, one disjunction per color.
pub fn n_plus(i: usize, delta: usize) -> Result<Vec<Vec<GenDisjunction>>, GhzError> {
    check_range(i, delta)?;
    let s = delta - i;
    let one = |l: String| vec![vec![l]];
    let both = vec![vec![xy(s, 0, 0), xy(s, 0, 1)], vec![xy(s, 1, 0), xy(s, 1, 1)]];
    let gone = |j: usize, grab: Option<usize>| if grab == Some(j) { one(e(j)) } else { one(q(j)) };
    let mut out = Vec::new();
    for a in 1..s {
        for b in a + 1..=s {
            for m in 0u32..1 << (b - a) {
                let y = |j: usize| ((m >> (j - a)) & 1) as u8;
                let row: Vec<GenDisjunction> = (1..=delta)
                    .map(|j| {
                        if j > s {
                            gone(j, None)
                        } else if j == s {
                            if b == s {
                                vec![vec![xy(s, y(b - 1), 0), xy(s, y(b - 1), 1)]]
                            } else {
                                both.clone()
                            }
                        } else if j < a {
                            one(mm(j))
                        } else if j == a {
                            one(my(a, y(a)))
                        } else if j < b {
                            one(xy(j, y(j - 1), y(j)))
                        } else if j == b {
                            one(xm(b, y(b - 1)))
                        } else {
                            one(mm(j))
                        }
                    })
                    .collect();
                out.push(row);
            }
        }
    }
    let grab_row = |grab: usize| -> Vec<GenDisjunction> {
        (1..=delta)
            .map(|j| {
                if j > s {
                    gone(j, Some(grab))
                } else if j == s {
                    both.clone()
                } else if j == grab {
                    one(ee(j))
                } else {
                    one(mm(j))
                }
            })
            .collect()
    };
    for a in (1..s).chain(s + 1..=delta) {
        out.push(grab_row(a));
    }
    out.push(
        (1..=delta)
            .map(|j| if j > s { one(q(j)) } else if j == s { vec![vec![my(s, 0), my(s, 1)]] } else { one(mm(j)) })
            .collect(),
    );
    Ok(out)
}

/// Π_{i,Δ} with its black strength relation and the problem Π′_{i,Δ}.
#[derive(Clone, Debug)]
pub struct FirstStep {
    pub i: usize,
    pub delta: usize,
    pub pi: Problem,
    pub pi_black: StrengthRelation,
    pub prime: Problem,
    /// 𝒩⁺ with each set replaced by the name of the Π′ label it equals.
    pub n_plus: Vec<Vec<Vec<String>>>,
}

impl FirstStep {
    pub fn new(i: usize, delta: usize) -> Result<Self, GhzError> {
        if i + 3 > delta {
            return Err(GhzError::Range(format!("Π′ needs i ≤ Δ − 3, got i = {i}, Δ = {delta}")));
        }
        let pi = pi(i, delta)?;
        let rel = strength_relation(&pi, Side::Black, CAP)?;
        let mut reg = SetRegistry::default();
        let set_of = |gens: &[String], reg: &mut SetRegistry| -> Result<(Vec<LabelId>, String), GhzError> {
            let ids = gens.iter().map(|g| pi.require(g)).collect::<Result<Vec<_>, _>>()?;
            let set = generated(&pi, Side::Black, &rel, &ids);
            let name = reg.intern(set.clone(), || set_name(&pi, &minimal(&rel, &set), "G", "", ""));
            Ok((set, name))
        };
        let mut black: Vec<NamedCondensed> = Vec::new();
        for c in black_generators(i, delta)? {
            let mut row = Vec::new();
            for g in &c {
                row.push(vec![set_of(g, &mut reg)?.1]);
            }
            black.push(row);
        }
        // Σ′ is exactly the set of labels on the black side.
        let sigma: Vec<(Vec<LabelId>, String)> = reg.iter().map(|(s, n)| (s.clone(), n.clone())).collect();
        let mut named_plus = Vec::new();
        let mut white: Vec<NamedCondensed> = Vec::new();
        for c in n_plus(i, delta)? {
            let mut plus_row = Vec::new();
            let mut star_row = Vec::new();
            for disj in &c {
                let mut names = Vec::new();
                let mut sets = Vec::new();
                for gens in disj {
                    let ids = gens.iter().map(|g| pi.require(g)).collect::<Result<Vec<_>, _>>()?;
                    let set = generated(&pi, Side::Black, &rel, &ids);
                    let (_, name) = sigma
                        .iter()
                        .find(|(s, _)| *s == set)
                        .ok_or_else(|| GhzError::MissingSet(format!("⟨{}⟩", gens.join(","))))?;
                    names.push(name.clone());
                    sets.push(set);
                }
                let star: Vec<String> = sigma
                    .iter()
                    .filter(|(s, _)| sets.iter().any(|t| t.iter().all(|l| s.binary_search(l).is_ok())))
                    .map(|(_, n)| n.clone())
                    .collect();
                plus_row.push(names);
                star_row.push(star);
            }
            named_plus.push(plus_row);
            white.push(star_row);
        }
        let mut b = Problem::builder(format!("pi_prime_{i}_{delta}"));
        b.arity(Side::White, delta).arity(Side::Black, 3);
        for (set, name) in &sigma {
            b.members(name, set.iter().map(|&l| pi.name_of(l).to_string()).collect());
        }
        for c in white {
            b.push(Side::White, c);
        }
        for c in black {
            b.push(Side::Black, c);
        }
        let prime = b.build()?;
        Ok(FirstStep { i, delta, pi, pi_black: rel, prime, n_plus: named_plus })
    }
}

/// Π′_{i,Δ} for `0 ≤ i ≤ Δ − 3`.
pub fn pi_prime(i: usize, delta: usize) -> Result<Problem, GhzError> {
    Ok(FirstStep::new(i, delta)?.prime)
}
