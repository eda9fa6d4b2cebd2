//! Label names and their canonical order.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// A label of a problem alphabet.
///
/// Names match `[A-Za-z][A-Za-z0-9]*(_<color>)?`. A label produced by round
/// elimination additionally records the source labels it stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub name: String,
    pub color: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
}

impl Label {
    pub fn new(name: &str) -> Result<Self, CoreError> {
        let (_, color) = split_name(name)?;
        Ok(Label { name: name.to_string(), color, members: None })
    }

    pub fn with_members(name: &str, mut members: Vec<String>) -> Result<Self, CoreError> {
        let mut l = Label::new(name)?;
        members.sort_by(|a, b| name_cmp(a, b));
        members.dedup();
        l.members = Some(members);
        Ok(l)
    }

    /// Name without the color suffix.
    pub fn base(&self) -> &str {
        base_of(&self.name)
    }
}

/// Splits a label name into its base and optional color.
pub fn split_name(name: &str) -> Result<(&str, Option<u32>), CoreError> {
    let bad = || CoreError::InvalidLabel(name.to_string());
    let (base, color) = match name.rfind('_') {
        Some(pos) => {
            let digits = &name[pos + 1..];
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let c: u32 = digits.parse().map_err(|_| bad())?;
            if c == 0 {
                return Err(bad());
            }
            (&name[..pos], Some(c))
        }
        None => (name, None),
    };
    let mut bytes = base.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() => {}
        _ => return Err(bad()),
    }
    if !bytes.all(|b| b.is_ascii_alphanumeric()) {
        return Err(bad());
    }
    Ok((base, color))
}

fn base_of(name: &str) -> &str {
    match name.rfind('_') {
        Some(pos) => &name[..pos],
        None => name,
    }
}

fn color_of(name: &str) -> u32 {
    name.rfind('_').and_then(|p| name[p + 1..].parse().ok()).unwrap_or(0)
}

/// Canonical label order: uncolored labels first, then by color, then by base name.
pub fn name_cmp(a: &str, b: &str) -> Ordering {
    color_of(a)
        .cmp(&color_of(b))
        .then_with(|| base_of(a).cmp(base_of(b)))
        .then_with(|| a.cmp(b))
}
