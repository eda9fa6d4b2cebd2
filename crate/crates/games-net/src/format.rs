//! Text formats for games and strategies.
//!
//! ```text
//! game m=2 sigma=0,1
//! 00 -> 00
//! 00 -> 11
//! ```
//! Words are written as one token when every symbol is one character,
//! otherwise as space-separated symbols. Strategy files use the header
//! `strategy m=<m> sigma=<list>` and lines `x -> y p` with `p` rational.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::GameError;
use crate::game::{Game, Word};
use crate::strategy::{Prob, Strategy};

fn header(t: &str, kind: &str, line: usize) -> Result<(usize, Vec<String>, Option<String>), GameError> {
    let err = |msg: &str| GameError::Parse { line, msg: msg.into() };
    let mut toks = t.split_whitespace();
    if toks.next() != Some(kind) {
        return Err(err(&format!("expected `{kind} m=<m> sigma=<list>`")));
    }
    let (mut m, mut sigma, mut name) = (None, None, None);
    for kv in toks {
        match kv.split_once('=') {
            Some(("m", v)) => m = Some(v.parse::<usize>().map_err(|_| err("bad m"))?),
            Some(("sigma", v)) => sigma = Some(v.split(',').map(String::from).collect::<Vec<_>>()),
            Some(("name", v)) => name = Some(v.to_string()),
            _ => return Err(err(&format!("unknown header field {kv}"))),
        }
    }
    Ok((m.ok_or_else(|| err("missing m"))?, sigma.ok_or_else(|| err("missing sigma"))?, name))
}

fn word(g: &Game, s: &str, line: usize) -> Result<Word, GameError> {
    let toks: Vec<String> = if s.split_whitespace().count() == 1 && s.trim().chars().count() == g.m() {
        s.trim().chars().map(String::from).collect()
    } else {
        s.split_whitespace().map(String::from).collect()
    };
    if toks.len() != g.m() {
        return Err(GameError::Parse { line, msg: format!("word `{}` does not have {} symbols", s.trim(), g.m()) });
    }
    toks.iter()
        .map(|t| g.symbol(t).ok_or_else(|| GameError::Parse { line, msg: format!("unknown symbol {t}") }))
        .collect()
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_game(text: &str) -> Result<Game, GameError> {
    let mut it = lines(text);
    let (line, head) = it.next().ok_or(GameError::Parse { line: 1, msg: "empty game file".into() })?;
    let (m, sigma, name) = header(head, "game", line)?;
    let mut g = Game::new(name.unwrap_or_else(|| "game".into()), sigma, m)?;
    for (line, l) in it {
        let (x, y) = l.split_once("->").ok_or(GameError::Parse { line, msg: "expected `x -> y`".into() })?;
        g.insert(word(&g, x, line)?, word(&g, y, line)?)?;
    }
    Ok(g)
}

pub fn write_game(g: &Game) -> String {
    let mut s = format!("game m={} sigma={} name={}\n", g.m(), g.sigma().join(","), g.name());
    for (x, y) in g.moves() {
        writeln!(s, "{} -> {}", g.show(x), g.show(y)).unwrap();
    }
    s
}

/// Parses a strategy for `g`.
pub fn parse_strategy(g: &Game, text: &str) -> Result<Strategy, GameError> {
    let mut it = lines(text);
    let (line, head) = it.next().ok_or(GameError::Parse { line: 1, msg: "empty strategy file".into() })?;
    let (m, sigma, _) = header(head, "strategy", line)?;
    if m != g.m() || sigma != g.sigma() {
        return Err(GameError::Parse { line, msg: "strategy header does not match the game".into() });
    }
    let mut s = Strategy::new(g.k(), g.m());
    for (line, l) in it {
        let err = |msg: &str| GameError::Parse { line, msg: msg.into() };
        let (x, rest) = l.split_once("->").ok_or_else(|| err("expected `x -> y p`"))?;
        let (y, p) = rest.trim().rsplit_once(char::is_whitespace).ok_or_else(|| err("missing probability"))?;
        let p: Prob = match p.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
                let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
                if d == BigInt::from(0) {
                    return Err(err("zero denominator"));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(p.parse().map_err(|_| err("bad probability"))?),
        };
        s.set(word(g, x, line)?, word(g, y, line)?, p);
    }
    Ok(s)
}

pub fn write_strategy(g: &Game, s: &Strategy) -> String {
    let mut out = format!("strategy m={} sigma={}\n", g.m(), g.sigma().join(","));
    for x in g.inputs() {
        for (y, p) in s.get(&x).into_iter().flatten() {
            writeln!(out, "{} -> {} {p}", g.show(&x), g.show(y)).unwrap();
        }
    }
    out
}
