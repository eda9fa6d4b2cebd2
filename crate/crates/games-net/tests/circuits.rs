use std::collections::HashMap;

use games_net::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Gate-by-gate simulation of the whole circuit: sweep the gate list until
/// every wire has a value, feeding every half-game output from `ys`.
fn simulate(c: &HalfGameCircuit, xi: Sym, ys: &[Sym]) -> Vec<Sym> {
    let mut val: HashMap<&str, Sym> = HashMap::new();
    val.insert(c.xi_wire(), xi);
    for (h, &y) in c.halfgames().iter().zip(ys) {
        val.insert(&h.output, y);
    }
    loop {
        let mut progress = false;
        for g in c.gates() {
            if g.outputs.iter().all(|o| val.contains_key(o.as_str())) {
                continue;
            }
            let Some(args) = g.inputs.iter().map(|i| val.get(i.as_str()).copied()).collect::<Option<Vec<Sym>>>() else {
                continue;
            };
            let t = &c.tables()[&g.table];
            let idx = args.iter().fold(0usize, |a, &s| a * c.k() + s as usize);
            for (o, w) in g.outputs.iter().enumerate() {
                val.insert(w, t.rows[idx][o]);
            }
            progress = true;
        }
        if !progress {
            break;
        }
    }
    c.halfgames().iter().map(|h| val[h.input.as_str()]).collect()
}

/// Centralized run of the half-game rounds: in round i every white node
/// evaluates its prefix and every black node answers arrivals in port order
/// with `safe_pick`.
fn solve(inst: &GamesInstance) -> Vec<Option<(Sym, Sym)>> {
    let mut lab = vec![None; inst.edges().len()];
    let mut committed: Vec<Vec<Move>> = vec![Vec::new(); inst.blacks.len()];
    let mut ys: Vec<Vec<Sym>> = vec![Vec::new(); inst.whites.len()];
    for i in 1..=inst.d {
        let mut arrivals: Vec<(usize, usize, Sym, usize)> = Vec::new();
        for (w, s) in inst.whites.iter().enumerate() {
            let x = inst.circuits[s.circuit].eval_prefix(i, s.xi, &ys[w]).unwrap()[i - 1];
            let e = inst.white_edge(w, s.sigma[i - 1]);
            let edge = inst.edges()[e];
            arrivals.push((edge.black, edge.black_port, x, e));
        }
        arrivals.sort();
        for (b, port, x, e) in arrivals {
            let spec = &inst.blacks[b];
            let player = spec.sigma.iter().position(|&p| p == port).unwrap();
            let y = safe_pick(&inst.games[spec.game], &committed[b], (player, x)).unwrap();
            committed[b].push((player, x, y));
            lab[e] = Some((x, y));
        }
        for (w, s) in inst.whites.iter().enumerate() {
            ys[w].push(lab[inst.white_edge(w, s.sigma[i - 1])].unwrap().1);
        }
    }
    lab
}

#[test]
fn chain_circuit_prefix() {
    let c = HalfGameCircuit::chain(2, 4).unwrap();
    assert_eq!(c.eval_prefix(2, 0, &[1]).unwrap(), vec![0, 1]);
    assert_eq!(c.eval_prefix(1, 1, &[]).unwrap(), vec![1]);
}

#[test]
fn sequential_solution_passes_and_a_flip_is_caught() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (games, d, n) in [(vec![Game::symm(), Game::ghz()], 4, 6), (vec![Game::chsh()], 3, 4)] {
        let inst = random_instance(&games, d, n, &mut rng).unwrap();
        let mut lab = solve(&inst);
        assert!(check_games_labeling(&inst, &lab).is_empty());
        let e = 5;
        let (x, y) = lab[e].unwrap();
        lab[e] = Some((x, 1 - y));
        let v = check_games_labeling(&inst, &lab);
        let edge = inst.edges()[e];
        assert!(v.iter().any(|v| v.node == NodeRef::Black(edge.black)), "{v:?}");
        lab[e] = None;
        assert!(!check_games_labeling(&inst, &lab).is_empty());
    }
}

#[test]
fn circuit_file_example() {
    let text = "\
circuit sigma=2 d=3
table xor 2 1 : 0 1 1 0
input xi=xi
gate g1 id xi -> x1
gate g2 xor xi,y1 -> x2
gate g3 xor x2,y2 -> x3
halfgame 1 in=x1 out=y1
halfgame 2 in=x2 out=y2
halfgame 3 in=x3 out=y3
";
    let c = HalfGameCircuit::parse(text).unwrap();
    assert_eq!(c.eval(1, &[1, 1, 0]).unwrap(), vec![1, 0, 1]);
    assert_eq!(c.eval_prefix(3, 1, &[1, 1]).unwrap(), simulate(&c, 1, &[1, 1, 0]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn prefix_agrees_with_full_simulation(
        seed in any::<u64>(),
        d in 1usize..=6,
        k in 2usize..=3,
        xi in 0u8..2,
        ys in prop::collection::vec(0u8..2, 6),
    ) {
        let c = random_circuit(k, d, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let full = simulate(&c, xi, &ys[..d]);
        for j in 1..=d {
            prop_assert_eq!(c.eval_prefix(j, xi, &ys[..j - 1]).unwrap(), full[..j].to_vec());
        }
    }

    #[test]
    fn prefix_ignores_later_outputs(seed in any::<u64>(), d in 2usize..=6, a in prop::collection::vec(0u8..2, 6), b in prop::collection::vec(0u8..2, 6)) {
        let c = random_circuit(2, d, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let mut mixed = a[..d].to_vec();
        mixed[1..].copy_from_slice(&b[1..d]);
        prop_assert_eq!(simulate(&c, 0, &a[..d])[..2].to_vec(), simulate(&c, 0, &mixed)[..2].to_vec());
        prop_assert_eq!(c.eval_prefix(1, 0, &[]).unwrap()[0], simulate(&c, 0, &b[..d])[0]);
    }
}
