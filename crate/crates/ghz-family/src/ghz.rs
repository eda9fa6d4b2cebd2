//! The iterated GHZ problem and the iterated CHSH toy problem.

use lcl_core::{NamedCondensed, Problem, Side};

use crate::color::{my, xy};
use crate::error::GhzError;

fn single(names: Vec<String>) -> NamedCondensed {
    names.into_iter().map(|n| vec![n]).collect()
}

/// All bit vectors of length `n`, least significant entry first.
pub(crate) fn bit_vectors(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << n).map(move |m| (0..n).map(|k| (m >> k & 1) as u8).collect())
}

/// Input/output bit triples allowed at a GHZ game: when the input sum is even
/// the output XOR equals the input OR, otherwise anything goes.
pub fn ghz_allows(x: [u8; 3], y: [u8; 3]) -> bool {
    let sum = x.iter().sum::<u8>();
    sum % 2 == 1 || (y[0] ^ y[1] ^ y[2]) == (x[0] | x[1] | x[2])
}

/// The 15 bit configurations of color `j`, as multisets of `X{x}{y}_j`.
pub fn bit_configurations(j: usize) -> Vec<Vec<String>> {
    let pairs: Vec<(u8, u8)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a..4 {
            for c in b..4 {
                let (p, q, r) = (pairs[a], pairs[b], pairs[c]);
                if ghz_allows([p.0, q.0, r.0], [p.1, q.1, r.1]) {
                    out.push(vec![xy(j, p.0, p.1), xy(j, q.0, q.1), xy(j, r.0, r.1)]);
                }
            }
        }
    }
    out
}

/// The iterated GHZ problem for white degree `Δ` and black degree 3.
pub fn iterated_ghz(delta: usize) -> Result<Problem, GhzError> {
    if delta < 2 {
        return Err(GhzError::Range(format!("Δ = {delta} < 2")));
    }
    let mut b = Problem::builder(format!("ghz{delta}"));
    b.arity(Side::White, delta).arity(Side::Black, 3);
    for y in bit_vectors(delta) {
        let mut row = vec![my(1, y[0])];
        row.extend((2..=delta).map(|c| xy(c, y[c - 2], y[c - 1])));
        b.push(Side::White, single(row));
    }
    b.push(Side::Black, single(vec![my(1, 0), my(1, 0), my(1, 1)]));
    for j in 2..=delta {
        for c in bit_configurations(j) {
            b.push(Side::Black, single(c));
        }
    }
    Ok(b.build()?)
}

/// The iterated CHSH problem: white degree `Δ`, black degree 2, color-1 input fixed to 1.
pub fn iterated_chsh(delta: usize) -> Result<Problem, GhzError> {
    if delta < 1 {
        return Err(GhzError::Range("Δ = 0".into()));
    }
    let mut b = Problem::builder(format!("chsh{delta}"));
    b.arity(Side::White, delta).arity(Side::Black, 2);
    for y in bit_vectors(delta) {
        let mut row = vec![xy(1, 1, y[0])];
        row.extend((2..=delta).map(|c| xy(c, y[c - 2], y[c - 1])));
        b.push(Side::White, single(row));
    }
    for c in 1..=delta {
        let xs: &[u8] = if c == 1 { &[1] } else { &[0, 1] };
        let mut seen = Vec::new();
        for &x1 in xs {
            for y1 in 0..2u8 {
                for &x2 in xs {
                    for y2 in 0..2u8 {
                        if y1 ^ y2 != x1 & x2 {
                            continue;
                        }
                        let mut pair = vec![xy(c, x1, y1), xy(c, x2, y2)];
                        pair.sort();
                        if !seen.contains(&pair) {
                            seen.push(pair.clone());
                            b.push(Side::Black, single(pair));
                        }
                    }
                }
            }
        }
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcl_core::constraint_contains;

    #[test]
    fn ghz_sizes() {
        let p = iterated_ghz(3).unwrap();
        assert_eq!(p.alphabet_size(), 10);
        for d in 2..=6 {
            let p = iterated_ghz(d).unwrap();
            assert_eq!(p.alphabet_size(), 2 + 4 * (d - 1));
            assert_eq!(p.white().len(), 1 << d);
            assert_eq!(p.black().len(), 1 + 15 * (d - 1));
        }
        assert!(iterated_ghz(1).is_err());
    }

    #[test]
    fn fifteen_bit_configurations() {
        assert_eq!(bit_configurations(4).len(), 15);
    }

    #[test]
    fn ghz_color_one_is_symmetry_breaking() {
        let p = iterated_ghz(4).unwrap();
        let color_one: Vec<Vec<String>> = p
            .named(Side::Black)
            .into_iter()
            .filter(|c| c[0][0].ends_with("_1"))
            .map(|c| c.into_iter().map(|g| g[0].clone()).collect())
            .collect();
        assert_eq!(color_one, vec![vec!["MY0_1", "MY0_1", "MY1_1"]]);
    }

    #[test]
    fn chsh_color_one_forces_different_outputs() {
        let p = iterated_chsh(3).unwrap();
        let ok = |a: &str, b: &str| constraint_contains(p.black(), &p.configuration(&[a, b]).unwrap()).unwrap();
        assert!(ok("X10_1", "X11_1"));
        assert!(!ok("X10_1", "X10_1"));
        assert!(!ok("X11_1", "X11_1"));
        let p1 = iterated_chsh(1).unwrap();
        assert_eq!(p1.white().arity(), 1);
        assert_eq!(p1.white().len(), 2);
    }

    #[test]
    fn chsh_matches_relation() {
        let p = iterated_chsh(2).unwrap();
        for x1 in 0..2u8 {
            for x2 in 0..2u8 {
                for y1 in 0..2u8 {
                    for y2 in 0..2u8 {
                        let (a, b) = (xy(2, x1, y1), xy(2, x2, y2));
                        let q = p.configuration(&[&a, &b]).unwrap();
                        assert_eq!(constraint_contains(p.black(), &q).unwrap(), y1 ^ y2 == x1 & x2);
                    }
                }
            }
        }
    }
}
