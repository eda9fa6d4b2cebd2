use std::collections::BTreeMap;

use games_net::Sym;
use ghz_family::{ghz_allows, iterated_ghz};
use local_sim::*;
use proptest::prelude::*;
use rand::SeedableRng;

fn classical(delta: usize, n: usize, seed: u64) -> (PortNetwork, RunTrace<String>) {
    let net = gen_colored_biregular(delta, n, seed).unwrap();
    let t = run_sync(&net, &ClassicalGhz::new(delta), 2 * delta, seed).unwrap();
    (net, t)
}

fn quantum(delta: usize, n: usize, seed: u64) -> (PortNetwork, RunTrace<String>) {
    let net = gen_colored_biregular(delta, n, seed).unwrap();
    let t = run_sync(&net, &QuantumSimGhz::new(delta), 1, seed).unwrap();
    (net, t)
}

fn colors(net: &PortNetwork, w: usize) -> Vec<usize> {
    (1..=net.node(w).degree).map(|p| net.edge_inputs(w, p)["color"] as usize).collect()
}

/// Labels built by hand: the color-1 black picks its port-1 neighbor, then
/// each color-`c` black takes the first output triple the GHZ rule allows.
fn hand_labeling(net: &PortNetwork, delta: usize) -> Labeling {
    let nw = net.nodes().iter().filter(|n| n.role == Role::White).count();
    let mut g = vec![vec![0u8; delta + 1]; nw];
    for c in 1..=delta {
        for b in net.nodes().iter().filter(|n| n.role == Role::Black && n.inputs["color"] as usize == c) {
            let ws: Vec<usize> = (1..=3).map(|p| net.link(b.id, p).0).collect();
            if c == 1 {
                for (i, &w) in ws.iter().enumerate() {
                    g[w][1] = u8::from(i == 0);
                }
                continue;
            }
            let x = [g[ws[0]][c - 1], g[ws[1]][c - 1], g[ws[2]][c - 1]];
            let y = (0..8u8).map(|v| [v >> 2 & 1, v >> 1 & 1, v & 1]).find(|y| ghz_allows(x, *y)).unwrap();
            for (i, &w) in ws.iter().enumerate() {
                g[w][c] = y[i];
            }
        }
    }
    let mut lab = Labeling::new();
    for w in 0..nw {
        for (p, c) in colors(net, w).into_iter().enumerate() {
            let l = if c == 1 { format!("MY{}_1", g[w][1]) } else { format!("X{}{}_{c}", g[w][c - 1], g[w][c]) };
            lab.insert((w, p + 1), l);
        }
    }
    lab
}

#[test]
fn hand_built_labeling_is_valid() {
    let net = gen_colored_biregular(3, 3, 5).unwrap();
    let p = iterated_ghz(3).unwrap();
    let lab = hand_labeling(&net, 3);
    assert_eq!(check_labeling(&p, &net, &lab).unwrap(), vec![]);
}

#[test]
fn all_zero_outputs_are_rejected() {
    let net = gen_colored_biregular(3, 3, 5).unwrap();
    let p = iterated_ghz(3).unwrap();
    let mut lab = Labeling::new();
    for w in 0..3 {
        for (i, c) in colors(&net, w).into_iter().enumerate() {
            lab.insert((w, i + 1), if c == 1 { "MY0_1".into() } else { format!("X00_{c}") });
        }
    }
    let v = check_labeling(&p, &net, &lab).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(net.node(v[0].node).inputs["color"], 1);
}

#[test]
fn empty_network_is_valid() {
    let p = iterated_ghz(3).unwrap();
    assert!(check_labeling(&p, &PortNetwork::empty(), &Labeling::new()).unwrap().is_empty());
}

#[test]
fn checker_reports_missing_and_miscolored_labels() {
    let net = gen_colored_biregular(3, 3, 5).unwrap();
    let p = iterated_ghz(3).unwrap();
    let mut lab = hand_labeling(&net, 3);
    let key = *lab.keys().next().unwrap();
    lab.remove(&key);
    assert!(check_labeling(&p, &net, &lab).unwrap().iter().any(|v| v.reason.contains("unlabeled")));
    let mut lab = hand_labeling(&net, 3);
    let c = colors(&net, 0);
    let (p2, p3) = (c.iter().position(|&x| x == 2).unwrap() + 1, c.iter().position(|&x| x == 3).unwrap() + 1);
    let (a, b) = (lab[&(0, p2)].clone(), lab[&(0, p3)].clone());
    lab.insert((0, p2), b);
    lab.insert((0, p3), a);
    assert!(check_labeling(&p, &net, &lab).unwrap().iter().any(|v| v.reason.contains("edge of color")));
    assert_eq!(labeling_from_text(&labeling_to_text(&lab)).unwrap(), lab);
}

#[test]
fn classical_runs_take_two_delta_rounds() {
    for delta in 3..=6 {
        let (net, t) = classical(delta, 30, delta as u64);
        let p = iterated_ghz(delta).unwrap();
        assert!(check_labeling(&p, &net, &t.labeling).unwrap().is_empty());
        assert_eq!(t.rounds, 2 * delta);
        assert!(t.message_rounds().len() >= delta);
        assert!(!t.budget_exceeded);
    }
}

#[test]
fn smallest_classical_run_elects_one_white() {
    let (_, t) = classical(3, 3, 0);
    let ones = t.labeling.values().filter(|l| *l == "MY1_1").count();
    let zeros = t.labeling.values().filter(|l| *l == "MY0_1").count();
    assert_eq!((ones, zeros), (1, 2));
}

#[test]
fn quantum_runs_talk_only_in_round_one() {
    for delta in 3..=6 {
        let (net, t) = quantum(delta, 30, 7 + delta as u64);
        let p = iterated_ghz(delta).unwrap();
        assert!(check_labeling(&p, &net, &t.labeling).unwrap().is_empty());
        assert_eq!(t.rounds, 1);
        assert_eq!(t.message_rounds(), vec![1]);
        // One message per edge: only the black ends speak.
        assert_eq!(t.messages, vec![net.port_count() / 2]);
    }
}

#[test]
fn runs_are_deterministic() {
    let a = serde_json::to_string(&quantum(5, 60, 3).1).unwrap();
    let b = serde_json::to_string(&quantum(5, 60, 3).1).unwrap();
    assert_eq!(a, b);
    let c = serde_json::to_string(&quantum(5, 60, 4).1).unwrap();
    assert_ne!(a, c);
    assert_eq!(classical(5, 60, 3).1, classical(5, 60, 3).1);
}

#[test]
fn box_marginals_are_uniform() {
    let strategy = std::sync::Arc::new(games_net::Strategy::uniform(&games_net::Game::ghz()));
    let mut ones = [0usize; 3];
    let n = 10_000 / 3 + 1;
    for i in 0..n {
        let rng = rand_chacha::ChaCha8Rng::seed_from_u64(i as u64);
        let mut r = GhzResource::new(strategy.clone(), rng);
        let order = [[0, 1, 2], [2, 0, 1], [1, 2, 0]][i % 3];
        let inputs: [Sym; 3] = [(i % 2) as u8, (i / 2 % 2) as u8, (i / 4 % 2) as u8];
        let mut y = [0u8; 3];
        for p in order {
            y[p] = r.measure(p, inputs[p]).unwrap();
            ones[p] += y[p] as usize;
        }
        assert!(ghz_allows(inputs, y));
    }
    for o in ones {
        let f = o as f64 / n as f64;
        assert!((0.47..=0.53).contains(&f), "{f}");
    }
}

#[test]
fn games_view_matches_the_classical_algorithm() {
    for (delta, seed) in [(3, 1), (4, 2), (6, 3)] {
        let net = gen_colored_biregular(delta, 30, seed).unwrap();
        let inst = std::sync::Arc::new(ghz_as_games(&net, delta).unwrap());
        let t = run_sync(&net, &GamesAlg::new(inst.clone()), 2 * delta, seed).unwrap();
        assert_eq!(t.rounds, 2 * delta);
        assert!(games_net::check_games_labeling(&inst, &games_labeling(&inst, &t)).is_empty());
        let p = iterated_ghz(delta).unwrap();
        let via_games = check_labeling(&p, &net, &ghz_labels(&net, &t)).unwrap();
        let (_, tc) = classical(delta, 30, seed);
        let direct = check_labeling(&p, &net, &tc.labeling).unwrap();
        assert_eq!(via_games.is_empty(), direct.is_empty());
        assert!(direct.is_empty());
    }
}

#[test]
fn run_summaries() {
    for kind in [SimKind::ClassicalGhz, SimKind::QuantumGhz] {
        let s = run_once(kind, 4, 12, 9, "").unwrap();
        assert!(s.valid, "{s:?}");
    }
    let s = run_once(SimKind::GamesNet, 3, 6, 9, "symm-ghz").unwrap();
    assert!(s.valid && s.rounds == 6, "{s:?}");
    assert!(run_once(SimKind::GamesNet, 3, 6, 9, "nope").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn both_algorithms_are_valid(delta in 3usize..=8, triples in 1usize..=20, seed in any::<u64>()) {
        let p = iterated_ghz(delta).unwrap();
        let (net, t) = classical(delta, 3 * triples, seed);
        prop_assert!(check_labeling(&p, &net, &t.labeling).unwrap().is_empty());
        prop_assert_eq!(t.rounds, 2 * delta);
        let (net, t) = quantum(delta, 3 * triples, seed);
        prop_assert!(check_labeling(&p, &net, &t.labeling).unwrap().is_empty());
        prop_assert_eq!(t.message_rounds(), vec![1]);
    }

    #[test]
    fn generator_shape(delta in 1usize..=8, triples in 1usize..=20, seed in any::<u64>()) {
        let net = gen_colored_biregular(delta, 3 * triples, seed).unwrap();
        prop_assert_eq!(net.len(), 3 * triples + delta * triples);
        let mut per_color: BTreeMap<u32, usize> = BTreeMap::new();
        for n in net.nodes() {
            match n.role {
                Role::White => {
                    prop_assert_eq!(n.degree, delta);
                    let mut cs = colors(&net, n.id);
                    cs.sort();
                    prop_assert_eq!(cs, (1..=delta).collect::<Vec<_>>());
                }
                Role::Black => {
                    prop_assert_eq!(n.degree, 3);
                    *per_color.entry(n.inputs["color"]).or_default() += 1;
                }
            }
        }
        prop_assert!(per_color.values().all(|&k| k == triples));
        prop_assert_eq!(net, gen_colored_biregular(delta, 3 * triples, seed).unwrap());
    }
}
