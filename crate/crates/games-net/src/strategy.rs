//! Strategies with exact rational probabilities, the non-signaling check and
//! the sequential conditional sampler.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::complete::Move;
use crate::error::GameError;
use crate::game::{words, Game, Sym, Word};

pub type Prob = BigRational;

pub fn ratio(n: i64, d: i64) -> Prob {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Maps each input word to a distribution over output words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    k: usize,
    m: usize,
    dist: BTreeMap<Word, BTreeMap<Word, Prob>>,
}

impl Strategy {
    pub fn new(k: usize, m: usize) -> Self {
        Strategy { k, m, dist: BTreeMap::new() }
    }

    /// Uniform over the valid outputs of each input.
    pub fn uniform(g: &Game) -> Self {
        let mut s = Strategy::new(g.k(), g.m());
        for x in g.inputs() {
            let ys: Vec<&Word> = g.outputs(&x).collect();
            for y in &ys {
                s.set(x.clone(), (*y).clone(), ratio(1, ys.len() as i64));
            }
        }
        s
    }

    /// Plays `f(x)` with probability 1.
    pub fn deterministic(k: usize, m: usize, f: impl Fn(&[Sym]) -> Word) -> Self {
        let mut s = Strategy::new(k, m);
        for x in words(k, m) {
            let y = f(&x);
            s.set(x, y, Prob::one());
        }
        s
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn set(&mut self, x: Word, y: Word, p: Prob) {
        self.dist.entry(x).or_default().insert(y, p);
    }

    pub fn get(&self, x: &[Sym]) -> Option<&BTreeMap<Word, Prob>> {
        self.dist.get(x)
    }

    /// Distribution of the outputs of `players` on input `x`.
    pub fn marginal(&self, x: &[Sym], players: &[usize]) -> BTreeMap<Word, Prob> {
        let mut out: BTreeMap<Word, Prob> = BTreeMap::new();
        for (y, p) in self.dist.get(x).into_iter().flatten() {
            if p.is_zero() {
                continue;
            }
            let key: Word = players.iter().map(|&i| y[i]).collect();
            *out.entry(key).or_insert_with(Prob::zero) += p;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Missing { input: Word },
    NotDistribution { input: Word, sum: Prob },
    Negative { input: Word, output: Word },
    OutsideGame { input: Word, output: Word },
    /// Two inputs agree on `players` but give different marginals there.
    Signaling { players: Vec<usize>, first: Word, second: Word },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |w: &Word| w.iter().map(|s| s.to_string()).collect::<String>();
        match self {
            Violation::Missing { input } => write!(f, "no distribution for input {}", w(input)),
            Violation::NotDistribution { input, sum } => write!(f, "input {} sums to {sum}", w(input)),
            Violation::Negative { input, output } => write!(f, "negative probability at {} -> {}", w(input), w(output)),
            Violation::OutsideGame { input, output } => write!(f, "{} -> {} is not a valid move", w(input), w(output)),
            Violation::Signaling { players, first, second } => {
                let ps: Vec<String> = players.iter().map(|p| (p + 1).to_string()).collect();
                write!(f, "players {{{}}} see different outputs on {} and {}", ps.join(","), w(first), w(second))
            }
        }
    }
}

/// Checks that `s` wins `g` with probability 1 and that the output
/// distribution of every player subset depends only on that subset's inputs.
pub fn verify_ns_strategy(g: &Game, s: &Strategy) -> Result<(), Violation> {
    if s.k != g.k() || s.m != g.m() {
        return Err(Violation::Missing { input: Vec::new() });
    }
    let inputs = g.inputs();
    for x in &inputs {
        let d = s.get(x).ok_or_else(|| Violation::Missing { input: x.clone() })?;
        let mut sum = Prob::zero();
        for (y, p) in d {
            if p.is_negative() {
                return Err(Violation::Negative { input: x.clone(), output: y.clone() });
            }
            if !p.is_zero() && !g.valid(x, y) {
                return Err(Violation::OutsideGame { input: x.clone(), output: y.clone() });
            }
            sum += p;
        }
        if !sum.is_one() {
            return Err(Violation::NotDistribution { input: x.clone(), sum });
        }
    }
    let m = g.m();
    for mask in 1..(1u32 << m) - 1 {
        let players: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let mut seen: BTreeMap<Word, (&Word, BTreeMap<Word, Prob>)> = BTreeMap::new();
        for x in &inputs {
            let key: Word = players.iter().map(|&i| x[i]).collect();
            let marg = s.marginal(x, &players);
            match seen.get(&key) {
                Some((first, prev)) if *prev != marg => {
                    return Err(Violation::Signaling { players, first: (*first).clone(), second: x.clone() });
                }
                Some(_) => {}
                None => {
                    seen.insert(key, (x, marg));
                }
            }
        }
    }
    Ok(())
}

/// Conditional distribution of the next player's output given committed
/// moves: ρ over the committed players plus `next`, divided by ρ over the
/// committed players alone. Unset inputs of other players are read as 0,
/// which is sound only for a non-signaling strategy.
pub fn conditional(s: &Strategy, committed: &[Move], next: (usize, Sym)) -> Result<BTreeMap<Sym, Prob>, GameError> {
    let mut x = vec![0; s.m];
    let mut players = Vec::with_capacity(committed.len() + 1);
    let mut ys = Vec::with_capacity(committed.len() + 1);
    for &(p, xi, yi) in committed.iter().chain([(next.0, next.1, 0)].iter()) {
        if p >= s.m || players.contains(&p) {
            return Err(GameError::Strategy(format!("player {} repeated or out of range", p + 1)));
        }
        x[p] = xi;
        players.push(p);
        ys.push(yi);
    }
    ys.pop();
    let before = s.marginal(&x, &players[..players.len() - 1]).get(&ys).cloned().unwrap_or_else(Prob::zero);
    if before.is_zero() {
        return Err(GameError::Strategy("committed outputs have probability 0".into()));
    }
    let joint = s.marginal(&x, &players);
    let mut out = BTreeMap::new();
    for (w, p) in joint {
        if w[..ys.len()] == ys[..] {
            out.insert(*w.last().unwrap(), p / &before);
        }
    }
    Ok(out)
}

/// Draws from a finite distribution with exact integer arithmetic.
pub fn draw<R: Rng + ?Sized>(d: &BTreeMap<Sym, Prob>, rng: &mut R) -> Result<Sym, GameError> {
    let den = d.values().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let n = den.to_u64().ok_or_else(|| GameError::Cap("common denominator exceeds 64 bits".into()))?;
    let mut r = BigInt::from(rng.gen_range(0..n));
    for (&y, p) in d {
        let w = p.numer() * (&den / p.denom());
        if r < w {
            return Ok(y);
        }
        r -= w;
    }
    Err(GameError::Strategy("distribution sums to less than 1".into()))
}

/// A shared non-signaling box: parties measure one at a time and each
/// outcome is drawn conditioned on the outcomes already produced.
#[derive(Clone, Debug)]
pub struct NsBox {
    strategy: Arc<Strategy>,
    committed: Vec<Move>,
}

impl NsBox {
    pub fn new(strategy: Arc<Strategy>) -> Self {
        NsBox { strategy, committed: Vec::new() }
    }

    pub fn committed(&self) -> &[Move] {
        &self.committed
    }

    pub fn measure<R: Rng + ?Sized>(&mut self, party: usize, input: Sym, rng: &mut R) -> Result<Sym, GameError> {
        let d = conditional(&self.strategy, &self.committed, (party, input))?;
        let y = draw(&d, rng)?;
        self.committed.push((party, input, y));
        Ok(y)
    }
}
