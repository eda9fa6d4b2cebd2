//! The problem family Π_{i,Δ}.

use lcl_core::{parse_condensed_line, NamedCondensed, Problem, Side};

use crate::color::{check_range, e, ee, mm, my, q, xm, xy};
use crate::error::GhzError;
use crate::ghz::bit_vectors;

/// Black configurations of a present color; `#` stands for the color.
pub(crate) const PRESENT_BLACK: [&str; 23] = [
    "MM_# [EE_#,MM_#,MY0_#,MY1_#,XM0_#,X00_#,X01_#,XM1_#,X10_#,X11_#]^2",
    "[MM_#,MY0_#,X00_#,XM1_#,X10_#,X11_#] [MM_#,X00_#]^2",
    "[MM_#,MY1_#,X01_#,XM1_#,X10_#,X11_#] [MM_#,X00_#] [MM_#,X01_#]",
    "[MM_#,MY0_#,X00_#,XM1_#,X10_#,X11_#] [MM_#,X01_#]^2",
    "[MM_#,MY1_#,XM0_#,X00_#,X01_#,X11_#] [MM_#,X00_#] [MM_#,X10_#]",
    "[MM_#,MY0_#,XM0_#,X00_#,X01_#,X10_#] [MM_#,X00_#] [MM_#,X11_#]",
    "[MM_#,MY0_#,XM0_#,X00_#,X01_#,X10_#] [MM_#,X01_#] [MM_#,X10_#]",
    "[MM_#,MY1_#,XM0_#,X00_#,X01_#,X11_#] [MM_#,X01_#] [MM_#,X11_#]",
    "[MM_#,MY1_#,X01_#,XM1_#,X10_#,X11_#] [MM_#,X10_#]^2",
    "[MM_#,MY0_#,X00_#,XM1_#,X10_#,X11_#] [MM_#,X10_#] [MM_#,X11_#]",
    "[MM_#,MY1_#,X01_#,XM1_#,X10_#,X11_#] [MM_#,X11_#]^2",
    "[MM_#,MY0_#,X00_#,X10_#] [MM_#,X00_#] [MM_#,X00_#,X11_#]",
    "[MM_#,MY1_#,X01_#,X11_#] [MM_#,X00_#] [MM_#,X01_#,X10_#]",
    "[MM_#,MY0_#,X00_#,X10_#] [MM_#,X01_#] [MM_#,X01_#,X10_#]",
    "[MM_#,MY1_#,X01_#,X11_#] [MM_#,X00_#,X11_#] [MM_#,X01_#]",
    "[MM_#,MY0_#,X00_#,X10_#] [MM_#,MY1_#,X01_#,X11_#] [MM_#,X10_#]",
    "[MM_#,X11_#] [MM_#,MY0_#,X00_#,X10_#]^2",
    "[MM_#,X10_#] [MM_#,X01_#,X10_#]^2",
    "[MM_#,X10_#] [MM_#,X00_#,X11_#]^2",
    "[MM_#,X00_#,X11_#] [MM_#,X01_#,X10_#] [MM_#,X11_#]",
    "[MM_#,X11_#] [MM_#,MY1_#,X01_#,X11_#]^2",
    "[MM_#,XM1_#,X10_#,X11_#] [MM_#,XM0_#,X00_#,X01_#]^2",
    "[MM_#,XM1_#,X10_#,X11_#]^3",
];

/// The condensed list of [`PRESENT_BLACK`] instantiated at color `j`.
pub fn present_black(j: usize) -> Vec<NamedCondensed> {
    PRESENT_BLACK
        .iter()
        .map(|t| parse_condensed_line(&t.replace('#', &j.to_string()), 1).expect("valid template"))
        .collect()
}

/// The special-color list: the present list without EE, XM0 and XM1.
pub fn special_black(j: usize) -> Vec<NamedCondensed> {
    let drop = [ee(j), xm(j, 0), xm(j, 1)];
    present_black(j)
        .into_iter()
        .map(|c| c.into_iter().map(|g| g.into_iter().filter(|l| !drop.contains(l)).collect()).collect())
        .collect()
}

/// White configuration of the first kind for bits `y_a..y_{b-1}` (`bits[k] = y_{a+k}`).
pub(crate) fn first_kind(i: usize, delta: usize, a: usize, b: usize, bits: &[u8]) -> Vec<String> {
    let s = delta - i;
    let y = |j: usize| bits[j - a];
    (1..=delta)
        .map(|j| {
            if j > s {
                q(j)
            } else if j < a {
                mm(j)
            } else if j == a {
                my(a, y(a))
            } else if j < b {
                xy(j, y(j - 1), y(j))
            } else if j == b {
                xm(b, y(b - 1))
            } else {
                mm(j)
            }
        })
        .collect()
}

fn grabbing(i: usize, delta: usize, a: usize) -> Vec<String> {
    let s = delta - i;
    (1..=delta)
        .map(|j| match (j == a, j <= s) {
            (true, true) => ee(j),
            (true, false) => e(j),
            (false, true) => mm(j),
            (false, false) => q(j),
        })
        .collect()
}

fn single(names: Vec<String>) -> NamedCondensed {
    names.into_iter().map(|n| vec![n]).collect()
}

/// The white configurations of Π_{i,Δ}, each listed by color.
pub fn pi_white(i: usize, delta: usize) -> Result<Vec<Vec<String>>, GhzError> {
    check_range(i, delta)?;
    let s = delta - i;
    let mut out = Vec::new();
    for a in 1..=s {
        for b in a + 1..=s + 1 {
            if b == s {
                continue;
            }
            for bits in bit_vectors(b - a) {
                out.push(first_kind(i, delta, a, b, &bits));
            }
        }
    }
    for a in (1..s).chain(s + 1..=delta) {
        out.push(grabbing(i, delta, a));
    }
    Ok(out)
}

/// The white configurations obtained from the bit string `bits` (length Δ−i)
/// by canceling a prefix, a suffix other than the last bit alone, or both,
/// followed by the configurations obtained by canceling everything.
pub fn strikethrough_from_bits(i: usize, delta: usize, bits: &[u8]) -> Result<Vec<Vec<String>>, GhzError> {
    check_range(i, delta)?;
    let s = delta - i;
    if bits.len() != s {
        return Err(GhzError::Range(format!("expected {s} bits, got {}", bits.len())));
    }
    let mut out = Vec::new();
    for pre in 0..s {
        for suf in (0..s).filter(|&k| k != 1) {
            if pre + suf >= s {
                continue;
            }
            let (a, b) = (pre + 1, s + 1 - suf);
            out.push(first_kind(i, delta, a, b, &bits[pre..s - suf]));
        }
    }
    for a in (1..s).chain(s + 1..=delta) {
        out.push(grabbing(i, delta, a));
    }
    Ok(out)
}

/// Π_{i,Δ} for `0 ≤ i ≤ Δ − 2`.
pub fn pi(i: usize, delta: usize) -> Result<Problem, GhzError> {
    check_range(i, delta)?;
    let s = delta - i;
    let mut b = Problem::builder(format!("pi_{i}_{delta}"));
    b.arity(Side::White, delta).arity(Side::Black, 3);
    for c in pi_white(i, delta)? {
        b.push(Side::White, single(c));
    }
    for j in s + 1..=delta {
        b.push(Side::Black, vec![vec![e(j), q(j)], vec![e(j), q(j)], vec![q(j)]]);
    }
    b.push(Side::Black, vec![vec![ee(1), mm(1), my(1, 0), my(1, 1)], vec![mm(1)], vec![mm(1), my(1, 0)]]);
    b.push(Side::Black, vec![vec![mm(1), my(1, 0)], vec![mm(1), my(1, 0)], vec![mm(1), my(1, 1)]]);
    for j in 2..s {
        for c in present_black(j) {
            b.push(Side::Black, c);
        }
    }
    for c in special_black(s) {
        b.push(Side::Black, c);
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcl_core::constraint_contains;

    #[test]
    fn alphabet_at_one_three() {
        let p = pi(1, 3).unwrap();
        let names: Vec<&str> = p.labels().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(p.alphabet_size(), 13, "{names:?}");
        for n in ["EE_1", "E_3", "MM_1", "MM_2", "MY0_1", "MY1_2", "X00_2", "X11_2", "Q_3"] {
            assert!(names.contains(&n), "{n}");
        }
    }

    #[test]
    fn i_zero_has_no_gone_colors() {
        let p = pi(0, 4).unwrap();
        assert!(p.labels().iter().all(|l| !l.name.starts_with('Q') && !l.name.starts_with("E_")));
        assert!(p.id_of("MY0_4").is_some());
        assert!(p.id_of("XM0_4").is_none());
        assert!(p.id_of("EE_4").is_none());
    }

    #[test]
    fn worked_example_configuration() {
        let p = pi(2, 7).unwrap();
        let c = p.configuration(&["MY0_1", "X01_2", "X11_3", "X10_4", "X00_5", "Q_6", "Q_7"]).unwrap();
        assert!(constraint_contains(p.white(), &c).unwrap());
    }

    #[test]
    fn parameter_range() {
        assert!(pi(2, 4).is_ok());
        assert!(pi(3, 4).is_err());
        assert!(pi(0, 2).is_err());
    }

    #[test]
    fn special_list_drops_missing_labels() {
        for c in special_black(3) {
            for g in c {
                assert!(!g.is_empty());
                assert!(g.iter().all(|l| !l.starts_with("XM") && !l.starts_with("EE")));
            }
        }
    }
}
