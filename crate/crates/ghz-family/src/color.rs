//! Color classes of Π_{i,Δ} and canonical label names.

use serde::{Deserialize, Serialize};

use crate::error::GhzError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Present,
    Special,
    Gone,
}

/// A color `j ∈ [1, Δ]` classified for fixed `(i, Δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorClass {
    pub j: usize,
    pub kind: Kind,
}

impl ColorClass {
    pub fn new(j: usize, i: usize, delta: usize) -> Result<Self, GhzError> {
        check_range(i, delta)?;
        if j == 0 || j > delta {
            return Err(GhzError::Range(format!("color {j} outside [1, {delta}]")));
        }
        let s = delta - i;
        let kind = if j > s {
            Kind::Gone
        } else if j == s {
            Kind::Special
        } else if j == 1 {
            Kind::First
        } else {
            Kind::Present
        };
        Ok(ColorClass { j, kind })
    }

    /// All colors `1..=Δ` in order.
    pub fn all(i: usize, delta: usize) -> Result<Vec<ColorClass>, GhzError> {
        (1..=delta).map(|j| ColorClass::new(j, i, delta)).collect()
    }
}

pub(crate) fn check_range(i: usize, delta: usize) -> Result<(), GhzError> {
    if delta < 3 {
        return Err(GhzError::Range(format!("Δ = {delta} < 3")));
    }
    if i + 2 > delta {
        return Err(GhzError::Range(format!("i = {i} > Δ − 2 = {}", delta - 2)));
    }
    Ok(())
}

pub fn mm(j: usize) -> String {
    format!("MM_{j}")
}

pub fn ee(j: usize) -> String {
    format!("EE_{j}")
}

pub fn e(j: usize) -> String {
    format!("E_{j}")
}

pub fn q(j: usize) -> String {
    format!("Q_{j}")
}

pub fn my(j: usize, y: u8) -> String {
    format!("MY{y}_{j}")
}

pub fn xm(j: usize, x: u8) -> String {
    format!("XM{x}_{j}")
}

pub fn xy(j: usize, x: u8, y: u8) -> String {
    format!("X{x}{y}_{j}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_is_exhaustive() {
        let kinds: Vec<Kind> = ColorClass::all(2, 7).unwrap().iter().map(|c| c.kind).collect();
        assert_eq!(
            kinds,
            vec![Kind::First, Kind::Present, Kind::Present, Kind::Present, Kind::Special, Kind::Gone, Kind::Gone]
        );
        let k0: Vec<Kind> = ColorClass::all(0, 3).unwrap().iter().map(|c| c.kind).collect();
        assert_eq!(k0, vec![Kind::First, Kind::Present, Kind::Special]);
        assert!(ColorClass::new(1, 2, 3).is_err());
    }
}
