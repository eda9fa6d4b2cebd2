use std::sync::Arc;

use games_net::{check_games_labeling, random_instance, BlackSpec, Edge, Game, GamesInstance, HalfGameCircuit, WhiteSpec};
use local_sim::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run(inst: GamesInstance, seed: u64) -> (Arc<GamesInstance>, RunTrace<(u8, u8)>) {
    let inst = Arc::new(inst);
    let net = games_network(&inst).unwrap();
    let t = run_sync(&net, &GamesAlg::new(inst.clone()), 2 * inst.d, seed).unwrap();
    (inst, t)
}

#[test]
fn symm_with_one_half_game_elects_one_player() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let inst = random_instance(&[Game::symm()], 1, 30, &mut rng).unwrap();
    let (inst, t) = run(inst, 4);
    assert_eq!(t.rounds, 2);
    let lab = games_labeling(&inst, &t);
    assert!(check_games_labeling(&inst, &lab).is_empty());
    for b in 0..inst.blacks.len() {
        let ones = (1..=3).filter(|&p| lab[inst.black_edge(b, p)].unwrap().1 == 1).count();
        assert_eq!(ones, 1);
    }
}

#[test]
fn hand_built_chsh_instance() {
    // Two whites, two CHSH games, the chain circuit.
    let edges = vec![
        Edge { white: 0, white_port: 1, black: 0, black_port: 1 },
        Edge { white: 1, white_port: 1, black: 0, black_port: 2 },
        Edge { white: 0, white_port: 2, black: 1, black_port: 2 },
        Edge { white: 1, white_port: 2, black: 1, black_port: 1 },
    ];
    let whites = vec![WhiteSpec { xi: 1, circuit: 0, sigma: vec![1, 2] }, WhiteSpec { xi: 1, circuit: 0, sigma: vec![2, 1] }];
    let blacks = vec![BlackSpec { game: 0, sigma: vec![1, 2] }, BlackSpec { game: 0, sigma: vec![2, 1] }];
    let inst =
        GamesInstance::new(2, vec![Game::chsh()], vec![HalfGameCircuit::chain(2, 2).unwrap()], whites, blacks, edges).unwrap();
    let (inst, t) = run(inst, 0);
    assert_eq!(t.rounds, 4);
    assert!(check_games_labeling(&inst, &games_labeling(&inst, &t)).is_empty());
}

#[test]
fn flipped_output_is_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let inst = random_instance(&[Game::symm(), Game::ghz()], 3, 9, &mut rng).unwrap();
    let (inst, t) = run(inst, 8);
    let mut lab = games_labeling(&inst, &t);
    assert!(check_games_labeling(&inst, &lab).is_empty());
    let (x, y) = lab[0].unwrap();
    lab[0] = Some((x, 1 - y));
    let v = check_games_labeling(&inst, &lab);
    assert!(v.iter().any(|v| v.node == games_net::NodeRef::Black(inst.edges()[0].black)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn algorithm_a_is_correct(seed in any::<u64>(), d in 1usize..=6, chsh in any::<bool>(), size in 1usize..=8) {
        let (family, n) = if chsh { (vec![Game::chsh()], 2 * size) } else { (vec![Game::symm(), Game::ghz()], 3 * size) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&family, d, n, &mut rng).unwrap();
        let (inst, t) = run(inst, seed);
        prop_assert_eq!(t.rounds, 2 * d);
        prop_assert!(!t.budget_exceeded);
        prop_assert!(check_games_labeling(&inst, &games_labeling(&inst, &t)).is_empty());
    }
}
