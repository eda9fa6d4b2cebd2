//! Problems in the black-white formalism.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::config::{Condensed, Configuration, Constraint, Group, LabelId};
use crate::error::CoreError;
use crate::label::{name_cmp, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    White,
    Black,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::White => Side::Black,
            Side::Black => Side::White,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "white" => Ok(Side::White),
            "black" => Ok(Side::Black),
            _ => Err(format!("unknown side `{s}`")),
        }
    }
}

/// A condensed configuration written with label names.
pub type NamedCondensed = Vec<Vec<String>>;

/// A problem: alphabet plus white and black constraints.
///
/// The alphabet is exactly the set of labels occurring in some constraint,
/// in canonical order; ids in the constraints index it.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "ProblemRepr", from = "ProblemRepr")]
pub struct Problem {
    pub name: String,
    labels: Vec<Label>,
    white: Constraint,
    black: Constraint,
    index: HashMap<String, LabelId>,
}

#[derive(Clone, Serialize, Deserialize)]
struct ProblemRepr {
    name: String,
    labels: Vec<Label>,
    white: Constraint,
    black: Constraint,
}

impl From<Problem> for ProblemRepr {
    fn from(p: Problem) -> Self {
        ProblemRepr { name: p.name, labels: p.labels, white: p.white, black: p.black }
    }
}

impl From<ProblemRepr> for Problem {
    fn from(r: ProblemRepr) -> Self {
        let index = r.labels.iter().enumerate().map(|(i, l)| (l.name.clone(), i as LabelId)).collect();
        Problem { name: r.name, labels: r.labels, white: r.white, black: r.black, index }
    }
}

impl PartialEq for Problem {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.labels == other.labels
            && self.white == other.white
            && self.black == other.black
    }
}

impl Eq for Problem {}

/// Accumulates named configurations and produces a normalized [`Problem`].
#[derive(Clone, Debug, Default)]
pub struct ProblemBuilder {
    name: String,
    members: BTreeMap<String, Vec<String>>,
    white: Vec<NamedCondensed>,
    black: Vec<NamedCondensed>,
    white_arity: Option<usize>,
    black_arity: Option<usize>,
}

impl ProblemBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        ProblemBuilder { name: name.into(), ..Default::default() }
    }

    /// Records the source labels a derived label stands for.
    pub fn members(&mut self, label: &str, members: Vec<String>) -> &mut Self {
        self.members.insert(label.to_string(), members);
        self
    }

    pub fn arity(&mut self, side: Side, arity: usize) -> &mut Self {
        match side {
            Side::White => self.white_arity = Some(arity),
            Side::Black => self.black_arity = Some(arity),
        }
        self
    }

    pub fn push(&mut self, side: Side, config: NamedCondensed) -> &mut Self {
        match side {
            Side::White => self.white.push(config),
            Side::Black => self.black.push(config),
        }
        self
    }

    /// Convenience for configurations given as `&str` groups.
    pub fn push_strs(&mut self, side: Side, config: &[&[&str]]) -> &mut Self {
        let named = config.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect();
        self.push(side, named)
    }

    pub fn build(&self) -> Result<Problem, CoreError> {
        let mut names: Vec<&str> = self
            .white
            .iter()
            .chain(self.black.iter())
            .flat_map(|c| c.iter().flat_map(|g| g.iter().map(|s| s.as_str())))
            .collect();
        names.sort_by(|a, b| name_cmp(a, b));
        names.dedup();
        let mut labels = Vec::with_capacity(names.len());
        for n in &names {
            labels.push(match self.members.get(*n) {
                Some(m) => Label::with_members(n, m.clone())?,
                None => Label::new(n)?,
            });
        }
        let index: HashMap<String, LabelId> =
            names.iter().enumerate().map(|(i, n)| (n.to_string(), i as LabelId)).collect();
        let side = |cfgs: &[NamedCondensed], declared: Option<usize>| -> Result<Constraint, CoreError> {
            let arity = declared.or_else(|| cfgs.first().map(|c| c.len())).unwrap_or(0);
            let mut out = Vec::with_capacity(cfgs.len());
            for c in cfgs {
                let mut groups = Vec::with_capacity(c.len());
                for g in c {
                    groups.push(Group::new(g.iter().map(|n| index[n.as_str()]).collect())?);
                }
                out.push(Condensed::new(groups));
            }
            Constraint::new(arity, out)
        };
        let white = side(&self.white, self.white_arity)?;
        let black = side(&self.black, self.black_arity)?;
        Ok(Problem { name: self.name.clone(), labels, white, black, index })
    }
}

impl Problem {
    pub fn builder(name: impl Into<String>) -> ProblemBuilder {
        ProblemBuilder::new(name)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, id: LabelId) -> &Label {
        &self.labels[id as usize]
    }

    pub fn name_of(&self, id: LabelId) -> &str {
        &self.labels[id as usize].name
    }

    pub fn id_of(&self, name: &str) -> Option<LabelId> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<LabelId, CoreError> {
        self.id_of(name).ok_or_else(|| CoreError::UnknownLabel(name.to_string()))
    }

    pub fn white(&self) -> &Constraint {
        &self.white
    }

    pub fn black(&self) -> &Constraint {
        &self.black
    }

    pub fn side(&self, side: Side) -> &Constraint {
        match side {
            Side::White => &self.white,
            Side::Black => &self.black,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.labels.len()
    }

    /// Named form of one side, for rebuilding or cross-problem comparison.
    pub fn named(&self, side: Side) -> Vec<NamedCondensed> {
        self.side(side).configs().iter().map(|c| self.named_condensed(c)).collect()
    }

    pub fn named_condensed(&self, c: &Condensed) -> NamedCondensed {
        c.groups()
            .iter()
            .map(|g| g.labels().iter().map(|&l| self.name_of(l).to_string()).collect())
            .collect()
    }

    pub fn named_configuration(&self, c: &Configuration) -> Vec<String> {
        c.labels().iter().map(|&l| self.name_of(l).to_string()).collect()
    }

    /// Parses whitespace-separated label names into a configuration.
    pub fn configuration(&self, names: &[&str]) -> Result<Configuration, CoreError> {
        names.iter().map(|n| self.require(n)).collect::<Result<Vec<_>, _>>().map(Configuration::new)
    }

    /// Parses a condensed configuration given as groups of names.
    pub fn condensed(&self, groups: &[&[&str]]) -> Result<Condensed, CoreError> {
        let mut gs = Vec::with_capacity(groups.len());
        for g in groups {
            gs.push(Group::new(g.iter().map(|n| self.require(n)).collect::<Result<Vec<_>, _>>()?)?);
        }
        Ok(Condensed::new(gs))
    }

    /// A builder pre-filled with this problem's content.
    pub fn to_builder(&self) -> ProblemBuilder {
        let mut b = ProblemBuilder::new(self.name.clone());
        for l in &self.labels {
            if let Some(m) = &l.members {
                b.members(&l.name, m.clone());
            }
        }
        b.arity(Side::White, self.white.arity()).arity(Side::Black, self.black.arity());
        for side in [Side::White, Side::Black] {
            for c in self.named(side) {
                b.push(side, c);
            }
        }
        b
    }

    /// Distinct colors of the alphabet, sorted.
    pub fn colors(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.labels.iter().filter_map(|l| l.color).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_normalizes() {
        let mut b = Problem::builder("t");
        b.push_strs(Side::White, &[&["B"], &["A", "B"]]);
        b.push_strs(Side::Black, &[&["A"], &["A"]]);
        b.push_strs(Side::White, &[&["A", "B"], &["B"]]);
        let p = b.build().unwrap();
        assert_eq!(p.alphabet_size(), 2);
        assert_eq!(p.white().len(), 1);
        assert_eq!(p.id_of("A"), Some(0));
        assert_eq!(p.white().arity(), 2);
    }

    #[test]
    fn builder_rejects_mixed_arity() {
        let mut b = Problem::builder("t");
        b.push_strs(Side::White, &[&["A"], &["A"]]);
        b.push_strs(Side::White, &[&["A"]]);
        assert!(matches!(b.build(), Err(CoreError::ArityMismatch { .. })));
    }
}
