//! Configurations, condensed configurations and constraints over label ids.
//!
//! Label ids index a problem's alphabet, which is kept in canonical order, so
//! sorting ids sorts by label name.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::MAX_ARITY;

pub type LabelId = u32;

/// A multiset of labels, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Configuration(Vec<LabelId>);

impl Configuration {
    pub fn new(mut labels: Vec<LabelId>) -> Self {
        labels.sort_unstable();
        Configuration(labels)
    }

    pub fn labels(&self) -> &[LabelId] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

/// A non-empty disjunction of labels, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Group(Vec<LabelId>);

impl Group {
    pub fn new(mut labels: Vec<LabelId>) -> Result<Self, CoreError> {
        if labels.is_empty() {
            return Err(CoreError::EmptyGroup);
        }
        labels.sort_unstable();
        labels.dedup();
        Ok(Group(labels))
    }

    pub fn single(l: LabelId) -> Self {
        Group(vec![l])
    }

    pub fn labels(&self) -> &[LabelId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: LabelId) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn is_subset(&self, other: &Group) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() {
            if j == b.len() {
                return false;
            }
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        true
    }
}

/// A multiset of groups, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Condensed(Vec<Group>);

impl Condensed {
    pub fn new(mut groups: Vec<Group>) -> Self {
        groups.sort();
        Condensed(groups)
    }

    pub fn from_configuration(c: &Configuration) -> Self {
        Condensed(c.labels().iter().map(|&l| Group::single(l)).collect())
    }

    pub fn groups(&self) -> &[Group] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Number of configurations obtained by choosing one label per group,
    /// counted with order (an upper bound on distinct picks).
    pub fn product_size(&self) -> u128 {
        self.0.iter().fold(1u128, |acc, g| acc.saturating_mul(g.len() as u128))
    }

    /// Maps every label through `f` and re-canonicalizes.
    pub fn map_labels(&self, f: impl Fn(LabelId) -> LabelId) -> Self {
        Condensed::new(
            self.0
                .iter()
                .map(|g| Group::new(g.labels().iter().map(|&l| f(l)).collect()).expect("non-empty"))
                .collect(),
        )
    }
}

/// One side of a problem: a deduplicated sorted list of condensed configurations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    arity: usize,
    configs: Vec<Condensed>,
}

impl Constraint {
    pub fn new(arity: usize, mut configs: Vec<Condensed>) -> Result<Self, CoreError> {
        if arity > MAX_ARITY {
            return Err(CoreError::ArityTooLarge(arity));
        }
        for c in &configs {
            if c.arity() != arity {
                return Err(CoreError::ArityMismatch { expected: arity, found: c.arity() });
            }
        }
        configs.sort();
        configs.dedup();
        Ok(Constraint { arity, configs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn configs(&self) -> &[Condensed] {
        &self.configs
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    /// Sorted, deduplicated ids of all labels occurring in the constraint.
    pub fn labels(&self) -> Vec<LabelId> {
        let mut v: Vec<LabelId> = self
            .configs
            .iter()
            .flat_map(|c| c.groups().iter().flat_map(|g| g.labels().iter().copied()))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}
