//! Comparing the configuration sets represented by constraints.
//!
//! Condensed forms of the same set differ, so equality is decided on the
//! represented configurations: by union-of-boxes containment for colored
//! constraints, by expansion otherwise.

use lcl_core::{expand_constraint, Constraint, LabelId, Problem, ProblemBuilder, Side};

use crate::error::ReError;
use crate::sets::{box_covered, BoxForm};

/// A configuration (label ids) in the first constraint but not in the second.
pub type Witness = Vec<LabelId>;

/// Containment both ways over a shared id space: `(a ⊄ b witness, b ⊄ a witness)`.
pub fn compare_constraints(
    a: &Constraint,
    b: &Constraint,
    color_of: &dyn Fn(LabelId) -> Option<u32>,
    cap: usize,
) -> Result<(Option<Witness>, Option<Witness>), ReError> {
    if a.arity() != b.arity() && !(a.is_empty() && b.is_empty()) {
        let w = |k: &Constraint| k.configs().first().map(|c| c.groups().iter().map(|g| g.labels()[0]).collect());
        return Ok((w(a), w(b)));
    }
    if let Some(forms) = BoxForm::detect_joint(&[a, b], color_of)? {
        let miss = |x: &BoxForm, y: &BoxForm| -> Option<Witness> {
            x.boxes.iter().find_map(|bx| {
                box_covered(bx, &y.boxes).map(|pt| pt.iter().enumerate().map(|(j, &i)| x.coord_labels[j][i]).collect())
            })
        };
        return Ok((miss(&forms[0], &forms[1]), miss(&forms[1], &forms[0])));
    }
    let (ea, eb) = (expand_constraint(a, cap)?, expand_constraint(b, cap)?);
    let miss = |x: &std::collections::BTreeSet<lcl_core::Configuration>,
                y: &std::collections::BTreeSet<lcl_core::Configuration>| {
        x.iter().find(|c| !y.contains(c)).map(|c| c.labels().to_vec())
    };
    Ok((miss(&ea, &eb), miss(&eb, &ea)))
}

/// Result of comparing one side of two problems by label name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideComparison {
    /// A configuration of the first side missing from the second.
    pub only_in_first: Option<Vec<String>>,
    /// A configuration of the second side missing from the first.
    pub only_in_second: Option<Vec<String>>,
}

impl SideComparison {
    pub fn equal(&self) -> bool {
        self.only_in_first.is_none() && self.only_in_second.is_none()
    }

    /// First ⊊ second.
    pub fn strict_subset(&self) -> bool {
        self.only_in_first.is_none() && self.only_in_second.is_some()
    }
}

/// Compares side `sa` of `pa` with side `sb` of `pb`, matching labels by name.
pub fn compare_sides(pa: &Problem, sa: Side, pb: &Problem, sb: Side, cap: usize) -> Result<SideComparison, ReError> {
    let mut b = ProblemBuilder::new("joint");
    b.arity(Side::White, pa.side(sa).arity()).arity(Side::Black, pb.side(sb).arity());
    for c in pa.named(sa) {
        b.push(Side::White, c);
    }
    for c in pb.named(sb) {
        b.push(Side::Black, c);
    }
    let joint = b.build()?;
    let color = |l: LabelId| joint.label(l).color;
    let (x, y) = compare_constraints(joint.white(), joint.black(), &color, cap)?;
    let names = |w: Option<Witness>| w.map(|v| v.iter().map(|&l| joint.name_of(l).to_string()).collect());
    Ok(SideComparison { only_in_first: names(x), only_in_second: names(y) })
}

/// Whether two problems represent the same constraints on both sides.
pub fn same_problem(pa: &Problem, pb: &Problem, cap: usize) -> Result<(SideComparison, SideComparison), ReError> {
    Ok((
        compare_sides(pa, Side::White, pb, Side::White, cap)?,
        compare_sides(pa, Side::Black, pb, Side::Black, cap)?,
    ))
}
