use lcl_core::*;
use proptest::prelude::*;

const NAMES: [&str; 5] = ["A", "B_1", "C_1", "D_2", "E"];

fn arb_condensed(arity: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0..NAMES.len(), 1..=3), arity)
        .prop_map(|gs| gs.into_iter().map(|g| g.into_iter().collect()).collect())
}

fn arb_problem() -> impl Strategy<Value = Problem> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(aw, ab)| {
        (prop::collection::vec(arb_condensed(aw), 1..5), prop::collection::vec(arb_condensed(ab), 1..5)).prop_map(
            |(w, b)| {
                let mut pb = Problem::builder("prop");
                for (side, cfgs) in [(Side::White, w), (Side::Black, b)] {
                    for c in cfgs {
                        pb.push(side, c.iter().map(|g| g.iter().map(|&i| NAMES[i].to_string()).collect()).collect());
                    }
                }
                pb.build().unwrap()
            },
        )
    })
}

fn to_condensed(raw: &[Vec<usize>]) -> Condensed {
    Condensed::new(raw.iter().map(|g| Group::new(g.iter().map(|&i| i as u32).collect()).unwrap()).collect())
}

/// Independent membership oracle: enumerate every ordered pick and compare sorted.
fn brute_contains(k: &Constraint, q: &Configuration) -> bool {
    k.configs().iter().any(|c| {
        let mut tuples: Vec<Vec<u32>> = vec![vec![]];
        for g in c.groups() {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    g.labels().iter().map(move |&l| {
                        let mut t2 = t.clone();
                        t2.push(l);
                        t2
                    })
                })
                .collect();
        }
        tuples.into_iter().any(|mut t| {
            t.sort_unstable();
            t == q.labels()
        })
    })
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(p in arb_problem()) {
        let text = serialize(&p);
        let q = parse_problem(&text).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(serialize(&q), text);
    }

    #[test]
    fn pick_is_permutation_invariant(raw in arb_condensed(4), picks in prop::collection::vec(0u32..5, 4), rot in 0usize..4) {
        let c = to_condensed(&raw);
        let mut rotated = raw.clone();
        rotated.rotate_left(rot);
        let c2 = to_condensed(&rotated);
        let mut q2 = picks.clone();
        q2.reverse();
        let r1 = pick_check(&c, &Configuration::new(picks.clone())).unwrap();
        prop_assert_eq!(r1, pick_check(&c2, &Configuration::new(q2)).unwrap());
    }

    #[test]
    fn domination_reflexive_transitive(a in arb_condensed(3), b in arb_condensed(3), c in arb_condensed(3)) {
        let (a, b, c) = (to_condensed(&a), to_condensed(&b), to_condensed(&c));
        prop_assert!(dominates_config(&a, &a).unwrap());
        if dominates_config(&a, &b).unwrap() && dominates_config(&b, &c).unwrap() {
            prop_assert!(dominates_config(&a, &c).unwrap());
        }
    }

    #[test]
    fn label_domination_reflexive_transitive(
        pairs in prop::collection::vec((0u32..5, 0u32..5), 0..8),
        a in prop::collection::vec(0u32..5, 3),
        b in prop::collection::vec(0u32..5, 3),
        c in prop::collection::vec(0u32..5, 3),
    ) {
        // Transitive closure of random pairs.
        let mut rel = [[false; 5]; 5];
        for (x, y) in pairs { rel[x as usize][y as usize] = true; }
        for k in 0..5 { for i in 0..5 { for j in 0..5 { if rel[i][k] && rel[k][j] { rel[i][j] = true; } } } }
        let order = StrengthRelation::new((0..5).collect(), (0..5u32).flat_map(|i| (0..5u32).map(move |j| (i, j))).filter(|&(i, j)| rel[i as usize][j as usize]));
        let (a, b, c) = (Configuration::new(a), Configuration::new(b), Configuration::new(c));
        prop_assert!(dominates_labels(&a, &a, &order).unwrap());
        if dominates_labels(&a, &b, &order).unwrap() && dominates_labels(&b, &c, &order).unwrap() {
            prop_assert!(dominates_labels(&a, &c, &order).unwrap());
        }
    }

    #[test]
    fn contains_matches_expansion(p in arb_problem(), q in prop::collection::vec(0u32..5, 1..=3)) {
        let k = p.white();
        prop_assume!(q.len() == k.arity());
        prop_assume!(q.iter().all(|&l| (l as usize) < p.alphabet_size()));
        let q = Configuration::new(q);
        let expanded = expand_constraint(k, 100_000).unwrap();
        let fast = constraint_contains(k, &q).unwrap();
        prop_assert_eq!(fast, expanded.contains(&q));
        prop_assert_eq!(fast, brute_contains(k, &q));
    }
}

#[test]
fn worked_pick_example() {
    let p = parse_problem("white\nMM_1 MM_1 MY0_1\nblack\n[EE_1,MM_1,MY0_1,MY1_1] [MM_1] [MM_1,MY0_1]\n").unwrap();
    let c = &p.black().configs()[0];
    let q = p.configuration(&["MY0_1", "MM_1", "MM_1"]).unwrap();
    assert!(pick_check(c, &q).unwrap());
    assert!(constraint_contains(p.black(), &q).unwrap());
}
