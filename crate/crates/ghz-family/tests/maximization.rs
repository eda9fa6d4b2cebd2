use std::collections::BTreeSet;

use ghz_family::{bit_configurations, present_black};
use lcl_core::{name_cmp, NamedCondensed, Problem, Side};
use round_elim::{maximize_universal, MaximizeOptions, Method};

type Canon = BTreeSet<Vec<Vec<String>>>;

fn canon(cs: impl IntoIterator<Item = NamedCondensed>) -> Canon {
    cs.into_iter()
        .map(|c| {
            let mut c: Vec<Vec<String>> = c
                .into_iter()
                .map(|mut g| {
                    g.sort_by(|a, b| name_cmp(a, b));
                    g.dedup();
                    g
                })
                .collect();
            c.sort();
            c
        })
        .collect()
}

fn maximized(configs: Vec<NamedCondensed>, method: Method) -> Canon {
    let mut b = Problem::builder("bits");
    b.arity(Side::Black, 3);
    for c in configs {
        b.push(Side::Black, c);
    }
    let p = b.build().unwrap();
    let color = |l| p.label(l).color;
    let opts = MaximizeOptions { method, ..MaximizeOptions::default() };
    let k = maximize_universal(p.black(), &color, opts).unwrap();
    canon(k.configs().iter().map(|c| p.named_condensed(c)))
}

/// The 22 maximal configurations over the bit labels, as (input, output) pairs.
const S: [&[&[(u8, u8)]]; 22] = [
    &[&[(0, 0), (1, 0), (1, 1)], &[(0, 0)], &[(0, 0)]],
    &[&[(0, 1), (1, 0), (1, 1)], &[(0, 0)], &[(0, 1)]],
    &[&[(0, 0), (1, 0), (1, 1)], &[(0, 1)], &[(0, 1)]],
    &[&[(0, 0), (0, 1), (1, 1)], &[(0, 0)], &[(1, 0)]],
    &[&[(0, 0), (0, 1), (1, 0)], &[(0, 0)], &[(1, 1)]],
    &[&[(0, 0), (0, 1), (1, 0)], &[(0, 1)], &[(1, 0)]],
    &[&[(0, 0), (0, 1), (1, 1)], &[(0, 1)], &[(1, 1)]],
    &[&[(0, 1), (1, 0), (1, 1)], &[(1, 0)], &[(1, 0)]],
    &[&[(0, 0), (1, 0), (1, 1)], &[(1, 0)], &[(1, 1)]],
    &[&[(0, 1), (1, 0), (1, 1)], &[(1, 1)], &[(1, 1)]],
    &[&[(0, 0), (1, 0)], &[(0, 0)], &[(0, 0), (1, 1)]],
    &[&[(0, 1), (1, 1)], &[(0, 0)], &[(0, 1), (1, 0)]],
    &[&[(0, 0), (1, 0)], &[(0, 1)], &[(0, 1), (1, 0)]],
    &[&[(0, 1), (1, 1)], &[(0, 0), (1, 1)], &[(0, 1)]],
    &[&[(0, 0), (1, 0)], &[(0, 1), (1, 1)], &[(1, 0)]],
    &[&[(1, 1)], &[(0, 0), (1, 0)], &[(0, 0), (1, 0)]],
    &[&[(1, 0)], &[(0, 1), (1, 0)], &[(0, 1), (1, 0)]],
    &[&[(1, 0)], &[(0, 0), (1, 1)], &[(0, 0), (1, 1)]],
    &[&[(0, 0), (1, 1)], &[(0, 1), (1, 0)], &[(1, 1)]],
    &[&[(1, 1)], &[(0, 1), (1, 1)], &[(0, 1), (1, 1)]],
    &[&[(1, 0), (1, 1)], &[(0, 0), (0, 1)], &[(0, 0), (0, 1)]],
    &[&[(1, 0), (1, 1)], &[(1, 0), (1, 1)], &[(1, 0), (1, 1)]],
];

fn s_j(j: usize) -> Vec<NamedCondensed> {
    S.iter()
        .map(|c| c.iter().map(|g| g.iter().map(|(x, y)| format!("X{x}{y}_{j}")).collect()).collect())
        .collect()
}

/// The extension rules turning S_j into S′_j, plus the extra configuration.
fn s_prime_j(j: usize) -> Vec<NamedCondensed> {
    let l = |b: &str| format!("{b}_{j}");
    let mut out: Vec<NamedCondensed> = s_j(j)
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|mut g| {
                    let has = |b: &str| g.contains(&l(b));
                    let mut add = vec![l("MM")];
                    for (a, b, extra) in
                        [("X00", "X01", "XM0"), ("X10", "X11", "XM1"), ("X00", "X10", "MY0"), ("X01", "X11", "MY1")]
                    {
                        if has(a) && has(b) {
                            add.push(l(extra));
                        }
                    }
                    g.extend(add);
                    g
                })
                .collect()
        })
        .collect();
    let all: Vec<String> =
        ["EE", "MM", "MY0", "MY1", "XM0", "X00", "X01", "XM1", "X10", "X11"].iter().map(|b| l(b)).collect();
    out.push(vec![vec![l("MM")], all.clone(), all]);
    out
}

fn bits_condensed(j: usize) -> Vec<NamedCondensed> {
    bit_configurations(j).into_iter().map(|c| c.into_iter().map(|l| vec![l]).collect()).collect()
}

#[test]
fn bit_configurations_maximize_to_the_22() {
    let expected = canon(s_j(3));
    assert_eq!(expected.len(), 22);
    for method in [Method::Direct, Method::Combination] {
        assert_eq!(maximized(bits_condensed(3), method), expected, "{method:?}");
    }
}

#[test]
fn extension_rules_give_the_present_list() {
    for j in 2..=5 {
        assert_eq!(canon(s_prime_j(j)), canon(present_black(j)));
    }
}

#[test]
fn present_lists_are_already_maximal_at_delta_six() {
    for j in 2..=5 {
        let expected = canon(present_black(j));
        assert_eq!(maximized(present_black(j), Method::Combination), expected, "color {j}");
    }
}

#[test]
fn direct_method_agrees_on_a_present_list() {
    assert_eq!(maximized(present_black(2), Method::Direct), canon(present_black(2)));
}
