//! Strong completability and the deterministic safe output rule.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::GameError;
use crate::game::{Game, Sym};

/// Largest number of partial assignments the searches will memoize.
const STATE_CAP: u64 = 1 << 25;

/// A committed move: player (0-based), its input and its output.
pub type Move = (usize, Sym, Sym);

/// Why a game is not strongly completable: under `order`, the first player
/// of the order has no output that survives when given `input`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incompletable {
    pub order: Vec<usize>,
    pub player: usize,
    pub input: Sym,
}

impl fmt::Display for Incompletable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.order.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "order ({}): player {} on input {} has no safe output", order.join(","), self.player + 1, self.input)
    }
}

struct Search<'a> {
    g: &'a Game,
    memo: HashMap<u64, bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Game) -> Result<Self, GameError> {
        let k = g.k() as u64;
        let states = (k * k + 1).checked_pow(g.m() as u32).filter(|&s| s <= STATE_CAP);
        if states.is_none() {
            return Err(GameError::Cap(format!("|Σ| = {}, m = {} exceeds the search cap", g.k(), g.m())));
        }
        Ok(Search { g, memo: HashMap::new() })
    }

    fn key(&self, s: &[Option<(Sym, Sym)>]) -> u64 {
        let k = self.g.k() as u64;
        s.iter().fold(0, |acc, slot| acc * (k * k + 1) + slot.map_or(0, |(x, y)| 1 + x as u64 * k + y as u64))
    }

    fn leaf(&self, s: &[Option<(Sym, Sym)>]) -> Option<bool> {
        if s.iter().any(Option::is_none) {
            return None;
        }
        let (x, y): (Vec<Sym>, Vec<Sym>) = s.iter().map(|slot| slot.unwrap()).unzip();
        Some(self.g.valid(&x, &y))
    }

    /// ∀x ∃y along the fixed `order`, starting at depth `t`.
    fn ordered(&mut self, s: &mut Vec<Option<(Sym, Sym)>>, order: &[usize], t: usize) -> bool {
        if let Some(v) = self.leaf(s) {
            return v;
        }
        let key = self.key(s);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let p = order[t];
        let k = self.g.k() as Sym;
        let v = (0..k).all(|x| {
            (0..k).any(|y| {
                s[p] = Some((x, y));
                let r = self.ordered(s, order, t + 1);
                s[p] = None;
                r
            })
        });
        self.memo.insert(key, v);
        v
    }

    /// ∀p ∀x ∃y over every unassigned player `p`, so the order may adapt.
    fn any_order(&mut self, s: &mut Vec<Option<(Sym, Sym)>>) -> bool {
        if let Some(v) = self.leaf(s) {
            return v;
        }
        let key = self.key(s);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let k = self.g.k() as Sym;
        let v = (0..s.len()).filter(|&p| s[p].is_none()).collect::<Vec<_>>().into_iter().all(|p| {
            (0..k).all(|x| {
                (0..k).any(|y| {
                    s[p] = Some((x, y));
                    let r = self.any_order(s);
                    s[p] = None;
                    r
                })
            })
        });
        self.memo.insert(key, v);
        v
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(m - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, m - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Checks the alternating quantifier string for every order of the players,
/// in lexicographic order. Returns the first failing order on failure.
pub fn is_strongly_completable(g: &Game) -> Result<Result<(), Incompletable>, GameError> {
    for order in permutations(g.m()) {
        let mut search = Search::new(g)?;
        let mut s = vec![None; g.m()];
        if search.ordered(&mut s, &order, 0) {
            continue;
        }
        let p = order[0];
        let k = g.k() as Sym;
        let input = (0..k)
            .find(|&x| {
                !(0..k).any(|y| {
                    s[p] = Some((x, y));
                    let r = search.ordered(&mut s, &order, 1);
                    s[p] = None;
                    r
                })
            })
            .expect("a failing root has a failing first input");
        return Ok(Err(Incompletable { order, player: p, input }));
    }
    Ok(Ok(()))
}

fn state(g: &Game, committed: &[Move]) -> Result<Vec<Option<(Sym, Sym)>>, GameError> {
    let mut s = vec![None; g.m()];
    for &(p, x, y) in committed {
        if p >= g.m() || x as usize >= g.k() || y as usize >= g.k() {
            return Err(GameError::Game(format!("move ({p}, {x}, {y}) out of range")));
        }
        if s[p].replace((x, y)).is_some() {
            return Err(GameError::Game(format!("player {} committed twice", p + 1)));
        }
    }
    Ok(s)
}

/// True iff from `committed`, whatever player moves next and whatever its
/// input, some output keeps the game completable.
pub fn completable_in_any_order(g: &Game, committed: &[Move]) -> Result<bool, GameError> {
    let mut s = state(g, committed)?;
    Ok(Search::new(g)?.any_order(&mut s))
}

/// The lexicographically smallest output for `next` after which the game
/// stays completable in every order and for every future input.
pub fn safe_pick(g: &Game, committed: &[Move], next: (usize, Sym)) -> Result<Sym, GameError> {
    let mut s = state(g, &[committed, &[(next.0, next.1, 0)]].concat())?;
    let mut search = Search::new(g)?;
    let (p, x) = next;
    (0..g.k() as Sym)
        .find(|&y| {
            s[p] = Some((x, y));
            search.any_order(&mut s)
        })
        .ok_or_else(|| GameError::NoSafeOutput { player: p + 1, input: g.sigma()[x as usize].clone() })
}

/// Sorted committed moves and the next (player, input).
type PickKey = (Vec<Move>, usize, Sym);

/// `safe_pick` with answers cached across calls, for callers that pick
/// repeatedly in one game.
#[derive(Debug)]
pub struct SafePicker {
    game: Game,
    cache: Mutex<HashMap<PickKey, Sym>>,
}

impl SafePicker {
    pub fn new(game: Game) -> Self {
        SafePicker { game, cache: Mutex::new(HashMap::new()) }
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn pick(&self, committed: &[Move], next: (usize, Sym)) -> Result<Sym, GameError> {
        let mut key = committed.to_vec();
        key.sort();
        let key = (key, next.0, next.1);
        if let Some(&y) = self.cache.lock().unwrap().get(&key) {
            return Ok(y);
        }
        let y = safe_pick(&self.game, committed, next)?;
        self.cache.lock().unwrap().insert(key, y);
        Ok(y)
    }
}
