//! Games over a finite alphabet: relations between input and output words.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::GameError;

/// Index into a game's alphabet.
pub type Sym = u8;
pub type Word = Vec<Sym>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    name: String,
    sigma: Vec<String>,
    m: usize,
    moves: BTreeMap<Word, BTreeSet<Word>>,
}

/// All words of length `m` over `k` symbols, in lexicographic order.
pub fn words(k: usize, m: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|w: Word| {
                (0..k as Sym).map(move |s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    out
}

fn bits() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

impl Game {
    pub fn new(name: impl Into<String>, sigma: Vec<String>, m: usize) -> Result<Self, GameError> {
        if sigma.is_empty() || sigma.len() > Sym::MAX as usize {
            return Err(GameError::Game(format!("alphabet size {} out of range", sigma.len())));
        }
        if BTreeSet::from_iter(&sigma).len() != sigma.len() {
            return Err(GameError::Game("duplicate alphabet symbol".into()));
        }
        if m == 0 {
            return Err(GameError::Game("a game needs at least one player".into()));
        }
        Ok(Game { name: name.into(), sigma, m, moves: BTreeMap::new() })
    }

    /// Builds a game over `{0, 1}` from a predicate on (input, output).
    pub fn binary(name: &str, m: usize, valid: impl Fn(&[Sym], &[Sym]) -> bool) -> Self {
        let mut g = Game::new(name, bits(), m).expect("binary alphabet is valid");
        for x in words(2, m) {
            for y in words(2, m) {
                if valid(&x, &y) {
                    g.moves.entry(x.clone()).or_default().insert(y);
                }
            }
        }
        g
    }

    /// 3-player GHZ game with the promise relaxed: on even input parity the
    /// output parity equals the OR of the inputs, otherwise anything goes.
    pub fn ghz() -> Self {
        Game::binary("ghz", 3, |x, y| {
            x.iter().fold(0, |a, b| a ^ b) == 1 || y.iter().fold(0, |a, b| a ^ b) == x.iter().fold(0, |a, b| a | b)
        })
    }

    /// 2-player CHSH game: a XOR b = x AND y.
    pub fn chsh() -> Self {
        Game::binary("chsh", 2, |x, y| y[0] ^ y[1] == x[0] & x[1])
    }

    /// 3-player symmetry breaking: exactly one player outputs 1.
    pub fn symm() -> Self {
        Game::binary("symm", 3, |_, y| y.iter().filter(|&&b| b == 1).count() == 1)
    }

    /// 2-player game where player 1 must output player 2's input.
    pub fn copy() -> Self {
        Game::binary("copy", 2, |x, y| y[0] == x[1])
    }

    /// Every player echoes its own input.
    pub fn identity(m: usize) -> Self {
        Game::binary("identity", m, |x, y| x == y)
    }

    pub fn full(m: usize) -> Self {
        Game::binary("full", m, |_, _| true)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sigma(&self) -> &[String] {
        &self.sigma
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn symbol(&self, name: &str) -> Option<Sym> {
        self.sigma.iter().position(|s| s == name).map(|i| i as Sym)
    }

    pub fn show(&self, w: &[Sym]) -> String {
        let sep = if self.sigma.iter().all(|s| s.chars().count() == 1) { "" } else { " " };
        w.iter().map(|&s| self.sigma[s as usize].as_str()).collect::<Vec<_>>().join(sep)
    }

    pub fn insert(&mut self, x: Word, y: Word) -> Result<(), GameError> {
        for w in [&x, &y] {
            if w.len() != self.m || w.iter().any(|&s| s as usize >= self.k()) {
                return Err(GameError::Game(format!("word {w:?} is not in Σ^{}", self.m)));
            }
        }
        self.moves.entry(x).or_default().insert(y);
        Ok(())
    }

    pub fn valid(&self, x: &[Sym], y: &[Sym]) -> bool {
        self.moves.get(x).is_some_and(|ys| ys.contains(y))
    }

    /// Valid output words for input `x`, in lexicographic order.
    pub fn outputs(&self, x: &[Sym]) -> impl Iterator<Item = &Word> {
        self.moves.get(x).into_iter().flatten()
    }

    pub fn moves(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.moves.iter().flat_map(|(x, ys)| ys.iter().map(move |y| (x, y)))
    }

    pub fn len(&self) -> usize {
        self.moves.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn inputs(&self) -> Vec<Word> {
        words(self.k(), self.m)
    }
}

/// True iff every input word has at least one valid output.
pub fn is_solvable(g: &Game) -> bool {
    g.inputs().iter().all(|x| g.outputs(x).next().is_some())
}

/// Best number of `inputs` won by a deterministic strategy where each player's
/// output is a function of its own input. Exhaustive over all such functions.
pub fn max_deterministic_wins(g: &Game, inputs: &[Word]) -> Result<usize, GameError> {
    let k = g.k();
    let per_player = k.checked_pow(k as u32).ok_or_else(|| GameError::Cap("|Σ|^|Σ| overflows".into()))?;
    let total = per_player.checked_pow(g.m() as u32).filter(|&t| t <= 1 << 24);
    let total = total.ok_or_else(|| GameError::Cap("more than 2^24 deterministic strategies".into()))?;
    let funcs = words(k, k);
    let mut best = 0;
    for code in 0..total {
        let mut c = code;
        let f: Vec<&Word> = (0..g.m())
            .map(|_| {
                let i = c % per_player;
                c /= per_player;
                &funcs[i]
            })
            .collect();
        let wins = inputs
            .iter()
            .filter(|x| {
                let y: Word = x.iter().zip(&f).map(|(&xi, fi)| fi[xi as usize]).collect();
                g.valid(x, &y)
            })
            .count();
        best = best.max(wins);
    }
    Ok(best)
}
