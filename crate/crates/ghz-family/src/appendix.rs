//! Checker for transcribed strength non-relations.
//!
//! Each claim states `L1 ⋢ L2` for labels of one color class, optionally
//! with a witness: a configuration containing `L1` that is allowed, and the
//! same configuration with `L1` replaced by `L2` that is not. Claims of
//! appendix `A` live on the black side of Π, claims of appendix `B` on the
//! white side of Π′, whose labels are written as generator lists.

use lcl_core::{constraint_contains, Configuration, LabelId, Side};
use round_elim::strength_leq;

use crate::color::{ColorClass, Kind};
use crate::error::GhzError;
use crate::prime::{generated, FirstStep, CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    /// Black configurations of Π, as label bases.
    Black { allowed: Vec<String>, rejected: Vec<String> },
    /// White pattern of Π′: generator lists for position 1, 2..j−1,
    /// j+1..s−1, s and s+1..Δ. `*` is the slot of color j, `.` an empty range.
    White([String; 5]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub line: usize,
    pub appendix: char,
    pub kind: Kind,
    pub l1: String,
    pub l2: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub line: usize,
    pub color: usize,
    pub text: String,
    pub ok: bool,
    pub detail: Option<String>,
}

fn bad(line: usize, msg: &str) -> GhzError {
    GhzError::Range(format!("appendix line {line}: {msg}"))
}

pub fn parse_claims(text: &str) -> Result<Vec<Claim>, GhzError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = t.split('|').map(str::trim).collect();
        let head: Vec<&str> = parts[0].split_whitespace().collect();
        if head.len() != 4 {
            return Err(bad(line, "expected <appendix> <kind> <L1> <L2>"));
        }
        let appendix = match head[0] {
            "A" => 'A',
            "B" => 'B',
            _ => return Err(bad(line, "appendix must be A or B")),
        };
        let kind = match head[1] {
            "first" => Kind::First,
            "present" => Kind::Present,
            "special" => Kind::Special,
            "gone" => Kind::Gone,
            _ => return Err(bad(line, "unknown color kind")),
        };
        let witness = match (appendix, &parts[1..]) {
            (_, ["-"]) => Witness::None,
            ('A', [a, r]) => {
                let split = |s: &str| s.split(',').map(|x| x.trim().to_string()).collect::<Vec<_>>();
                Witness::Black { allowed: split(a), rejected: split(r) }
            }
            ('B', [p]) => {
                let f: Vec<String> = p.split_whitespace().map(String::from).collect();
                let f: [String; 5] = f.try_into().map_err(|_| bad(line, "white pattern needs 5 fields"))?;
                Witness::White(f)
            }
            _ => return Err(bad(line, "malformed witness")),
        };
        out.push(Claim { line, appendix, kind, l1: head[2].into(), l2: head[3].into(), witness });
    }
    Ok(out)
}

struct Ctx<'a> {
    first: &'a FirstStep,
}

impl Ctx<'_> {
    fn pi_label(&self, base: &str, j: usize) -> Result<LabelId, String> {
        let name = format!("{base}_{j}");
        self.first.pi.id_of(&name).ok_or_else(|| format!("{name} is not a label of Π"))
    }

    /// The Π′ label generated by `gens` (bases joined by `+`) at color `j`.
    fn prime_label(&self, gens: &str, j: usize) -> Result<LabelId, String> {
        let ids = gens.split('+').map(|b| self.pi_label(b, j)).collect::<Result<Vec<_>, _>>()?;
        let set = generated(&self.first.pi, Side::Black, &self.first.pi_black, &ids);
        let names: Vec<&str> = set.iter().map(|&l| self.first.pi.name_of(l)).collect();
        self.first
            .prime
            .labels()
            .iter()
            .position(|l| l.members.as_ref().is_some_and(|m| m.iter().map(String::as_str).eq(names.iter().copied())))
            .map(|i| i as LabelId)
            .ok_or_else(|| format!("⟨{gens}⟩_{j} is not a label of Π′"))
    }

    fn white_pattern(&self, f: &[String; 5], j: usize, slot: &str) -> Result<Configuration, String> {
        let delta = self.first.delta;
        let s = delta - self.first.i;
        let mut ids = Vec::with_capacity(delta);
        for k in 1..=delta {
            let g = if k == j {
                slot
            } else if k == 1 {
                &f[0]
            } else if k == s {
                &f[3]
            } else if k > s {
                &f[4]
            } else if k < j {
                &f[1]
            } else {
                &f[2]
            };
            if g == "*" || g == "." {
                return Err(format!("pattern leaves color {k} unassigned"));
            }
            ids.push(self.prime_label(g, k)?);
        }
        Ok(Configuration::new(ids))
    }

    fn check(&self, c: &Claim, j: usize) -> Result<(), String> {
        let (p, side, a, b) = match c.appendix {
            'A' => (&self.first.pi, Side::Black, self.pi_label(&c.l1, j)?, self.pi_label(&c.l2, j)?),
            _ => (&self.first.prime, Side::White, self.prime_label(&c.l1, j)?, self.prime_label(&c.l2, j)?),
        };
        let k = p.side(side);
        if strength_leq(a, b, k, CAP).map_err(|e| e.to_string())? {
            return Err("relation holds".into());
        }
        let (allowed, rejected) = match &c.witness {
            Witness::None => return Ok(()),
            Witness::Black { allowed, rejected } => {
                let conf = |bases: &[String]| {
                    bases.iter().map(|b| self.pi_label(b, j)).collect::<Result<Vec<_>, _>>().map(Configuration::new)
                };
                (conf(allowed)?, conf(rejected)?)
            }
            Witness::White(f) => (self.white_pattern(f, j, &c.l1)?, self.white_pattern(f, j, &c.l2)?),
        };
        if !allowed.labels().contains(&a) {
            return Err("allowed witness does not contain L1".into());
        }
        let show = |q: &Configuration| p.named_configuration(q).join(" ");
        if !constraint_contains(k, &allowed).map_err(|e| e.to_string())? {
            return Err(format!("witness {} is not allowed", show(&allowed)));
        }
        if constraint_contains(k, &rejected).map_err(|e| e.to_string())? {
            return Err(format!("witness {} is allowed", show(&rejected)));
        }
        Ok(())
    }
}

/// Checks every claim at every color of its kind in Π_{i,Δ} and Π′_{i,Δ}.
pub fn check_claims(claims: &[Claim], first: &FirstStep) -> Result<Vec<ClaimOutcome>, GhzError> {
    let colors = ColorClass::all(first.i, first.delta)?;
    let ctx = Ctx { first };
    let mut out = Vec::new();
    for c in claims {
        for cc in colors.iter().filter(|cc| cc.kind == c.kind) {
            let r = ctx.check(c, cc.j);
            out.push(ClaimOutcome {
                line: c.line,
                color: cc.j,
                text: format!("{} {} ⋢ {}", c.appendix, c.l1, c.l2),
                ok: r.is_ok(),
                detail: r.err(),
            });
        }
    }
    Ok(out)
}
