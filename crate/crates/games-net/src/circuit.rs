//! Circuits of half-games: a gate DAG with one external input ξ and `d`
//! detached game ports. Half-game `i` takes wire `x_i` out of the circuit
//! and feeds wire `y_i` back in.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::GameError;
use crate::game::{words, Sym, Word};

/// A finite function Σ^inputs → Σ^outputs, rows listed in lexicographic
/// order of the input word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub inputs: usize,
    pub outputs: usize,
    pub rows: Vec<Word>,
}

impl Table {
    pub fn identity(k: usize) -> Self {
        Table { inputs: 1, outputs: 1, rows: (0..k as Sym).map(|s| vec![s]).collect() }
    }

    fn apply(&self, k: usize, args: &[Sym]) -> &Word {
        let idx = args.iter().fold(0usize, |acc, &a| acc * k + a as usize);
        &self.rows[idx]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub id: String,
    pub table: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGame {
    /// Wire carrying x_i from the circuit into the game.
    pub input: String,
    /// Wire carrying y_i from the game back into the circuit.
    pub output: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Driver {
    Xi,
    Game(usize),
    Gate(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGameCircuit {
    k: usize,
    xi: String,
    tables: BTreeMap<String, Table>,
    gates: Vec<Gate>,
    halfgames: Vec<HalfGame>,
    drivers: HashMap<String, Driver>,
}

fn bad(msg: impl Into<String>) -> GameError {
    GameError::Circuit(msg.into())
}

impl HalfGameCircuit {
    /// Validates wiring: every wire has one driver, tables fit, the gate graph
    /// is acyclic and `x_i` depends only on ξ and `y_j` for `j < i`.
    pub fn new(
        k: usize,
        xi: String,
        tables: BTreeMap<String, Table>,
        gates: Vec<Gate>,
        halfgames: Vec<HalfGame>,
    ) -> Result<Self, GameError> {
        if k == 0 || k > Sym::MAX as usize {
            return Err(bad(format!("alphabet size {k} out of range")));
        }
        if halfgames.is_empty() || halfgames.len() > 64 {
            return Err(bad(format!("{} half-games, expected 1..=64", halfgames.len())));
        }
        for (name, t) in &tables {
            let n = k.checked_pow(t.inputs as u32).ok_or_else(|| bad(format!("table {name} too large")))?;
            if t.rows.len() != n || t.rows.iter().any(|r| r.len() != t.outputs || r.iter().any(|&s| s as usize >= k)) {
                return Err(bad(format!("table {name} must have {n} rows of {} symbols below {k}", t.outputs)));
            }
        }
        let mut drivers = HashMap::new();
        let mut drive = |w: &String, d: Driver| {
            if drivers.insert(w.clone(), d).is_some() {
                Err(bad(format!("wire {w} has two drivers")))
            } else {
                Ok(())
            }
        };
        drive(&xi, Driver::Xi)?;
        for (i, h) in halfgames.iter().enumerate() {
            drive(&h.output, Driver::Game(i))?;
        }
        for (gi, g) in gates.iter().enumerate() {
            let t = tables.get(&g.table).ok_or_else(|| bad(format!("gate {} uses unknown table {}", g.id, g.table)))?;
            if t.inputs != g.inputs.len() || t.outputs != g.outputs.len() {
                return Err(bad(format!("gate {} does not match the shape of table {}", g.id, g.table)));
            }
            for (o, w) in g.outputs.iter().enumerate() {
                drive(w, Driver::Gate(gi, o))?;
            }
        }
        let c = HalfGameCircuit { k, xi, tables, gates, halfgames, drivers };
        let mut deps: HashMap<String, Option<u64>> = HashMap::new();
        for (i, h) in c.halfgames.iter().enumerate() {
            let mask = c.depends(&h.input, &mut deps)?;
            if mask >> i != 0 {
                let j = 63 - mask.leading_zeros() as usize;
                return Err(bad(format!("x_{} depends on y_{}", i + 1, j + 1)));
            }
        }
        Ok(c)
    }

    /// Bit mask of the half-games whose outputs `w` depends on.
    fn depends(&self, w: &String, memo: &mut HashMap<String, Option<u64>>) -> Result<u64, GameError> {
        match memo.get(w) {
            Some(Some(m)) => return Ok(*m),
            Some(None) => return Err(bad(format!("cycle through wire {w}"))),
            None => {}
        }
        let d = *self.drivers.get(w).ok_or_else(|| bad(format!("wire {w} is never driven")))?;
        memo.insert(w.clone(), None);
        let m = match d {
            Driver::Xi => 0,
            Driver::Game(i) => 1 << i,
            Driver::Gate(gi, _) => {
                let mut m = 0;
                for a in &self.gates[gi].inputs {
                    m |= self.depends(a, memo)?;
                }
                m
            }
        };
        memo.insert(w.clone(), Some(m));
        Ok(m)
    }

    /// x_1 = ξ and x_{i+1} = y_i.
    pub fn chain(k: usize, d: usize) -> Result<Self, GameError> {
        let mut tables = BTreeMap::new();
        tables.insert("id".to_string(), Table::identity(k));
        let halfgames: Vec<HalfGame> =
            (1..=d).map(|i| HalfGame { input: format!("x{i}"), output: format!("y{i}") }).collect();
        let mut gates = vec![Gate { id: "g1".into(), table: "id".into(), inputs: vec!["xi".into()], outputs: vec!["x1".into()] }];
        for i in 2..=d {
            gates.push(Gate {
                id: format!("g{i}"),
                table: "id".into(),
                inputs: vec![format!("y{}", i - 1)],
                outputs: vec![format!("x{i}")],
            });
        }
        HalfGameCircuit::new(k, "xi".into(), tables, gates, halfgames)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.halfgames.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn halfgames(&self) -> &[HalfGame] {
        &self.halfgames
    }

    pub fn tables(&self) -> &BTreeMap<String, Table> {
        &self.tables
    }

    pub fn xi_wire(&self) -> &str {
        &self.xi
    }

    fn value(&self, w: &str, xi: Sym, ys: &[Sym], memo: &mut HashMap<String, Sym>) -> Sym {
        if let Some(&v) = memo.get(w) {
            return v;
        }
        let v = match self.drivers[w] {
            Driver::Xi => xi,
            Driver::Game(i) => ys[i],
            Driver::Gate(gi, o) => {
                let g = &self.gates[gi];
                let args: Vec<Sym> = g.inputs.iter().map(|a| self.value(a, xi, ys, memo)).collect();
                self.tables[&g.table].apply(self.k, &args)[o]
            }
        };
        memo.insert(w.to_string(), v);
        v
    }

    /// Evaluates the prefix C^k: returns x_1..x_k from ξ and y_1..y_{k-1}.
    /// Only gates connected to the first `k` half-games are touched.
    pub fn eval_prefix(&self, k: usize, xi: Sym, ys: &[Sym]) -> Result<Word, GameError> {
        if k == 0 || k > self.d() {
            return Err(bad(format!("prefix length {k} outside 1..={}", self.d())));
        }
        if ys.len() != k - 1 {
            return Err(bad(format!("prefix {k} needs {} outputs, got {}", k - 1, ys.len())));
        }
        if xi as usize >= self.k || ys.iter().any(|&y| y as usize >= self.k) {
            return Err(bad("symbol outside the alphabet"));
        }
        let mut memo = HashMap::new();
        Ok(self.halfgames[..k].iter().map(|h| self.value(&h.input, xi, ys, &mut memo)).collect())
    }

    /// Full evaluation C(ξ, y) = x.
    pub fn eval(&self, xi: Sym, ys: &[Sym]) -> Result<Word, GameError> {
        if ys.len() != self.d() {
            return Err(bad(format!("expected {} outputs, got {}", self.d(), ys.len())));
        }
        self.eval_prefix(self.d(), xi, &ys[..self.d() - 1])
    }

    pub fn to_text(&self) -> String {
        let list = |ws: &[String]| if ws.is_empty() { "-".to_string() } else { ws.join(",") };
        let mut s = format!("circuit sigma={} d={}\n", self.k, self.d());
        for (name, t) in &self.tables {
            let rows: Vec<String> = t.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            writeln!(s, "table {name} {} {} : {}", t.inputs, t.outputs, rows.join(" ")).unwrap();
        }
        writeln!(s, "input xi={}", self.xi).unwrap();
        for g in &self.gates {
            writeln!(s, "gate {} {} {} -> {}", g.id, g.table, list(&g.inputs), list(&g.outputs)).unwrap();
        }
        for (i, h) in self.halfgames.iter().enumerate() {
            writeln!(s, "halfgame {} in={} out={}", i + 1, h.input, h.output).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GameError> {
        let err = |line: usize, msg: &str| GameError::Parse { line, msg: msg.into() };
        let mut k = None;
        let mut xi = None;
        let mut tables = BTreeMap::new();
        let mut gates = Vec::new();
        let mut hgs: BTreeMap<usize, HalfGame> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let t = raw.split('#').next().unwrap().trim();
            if t.is_empty() {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            match toks[0] {
                "circuit" => {
                    for kv in &toks[1..] {
                        if let Some(v) = kv.strip_prefix("sigma=") {
                            k = Some(v.parse::<usize>().map_err(|_| err(line, "bad sigma"))?);
                        }
                    }
                }
                "table" => {
                    let (head, rows) = t.split_once(':').ok_or_else(|| err(line, "table needs ':'"))?;
                    let h: Vec<&str> = head.split_whitespace().collect();
                    if h.len() != 4 {
                        return Err(err(line, "expected table <name> <in> <out> : rows"));
                    }
                    let num = |s: &str| s.parse::<usize>().map_err(|_| err(line, "bad arity"));
                    let rows = rows
                        .split_whitespace()
                        .map(|r| r.chars().map(|c| c.to_digit(36).map(|d| d as Sym).ok_or_else(|| err(line, "bad row"))).collect())
                        .collect::<Result<Vec<Word>, _>>()?;
                    tables.insert(h[1].to_string(), Table { inputs: num(h[2])?, outputs: num(h[3])?, rows });
                }
                "input" => {
                    let w = toks.get(1).and_then(|s| s.strip_prefix("xi=")).ok_or_else(|| err(line, "expected input xi=<wire>"))?;
                    xi = Some(w.to_string());
                }
                "gate" => {
                    if toks.len() != 6 || toks[4] != "->" {
                        return Err(err(line, "expected gate <id> <table> <in-wires> -> <out-wires>"));
                    }
                    let list = |s: &str| if s == "-" { Vec::new() } else { s.split(',').map(String::from).collect() };
                    gates.push(Gate { id: toks[1].into(), table: toks[2].into(), inputs: list(toks[3]), outputs: list(toks[5]) });
                }
                "halfgame" => {
                    let i: usize = toks.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| err(line, "bad half-game index"))?;
                    let field = |p: &str| toks.iter().find_map(|t| t.strip_prefix(p)).map(String::from);
                    let (input, output) = field("in=").zip(field("out=")).ok_or_else(|| err(line, "half-game needs in= and out="))?;
                    if hgs.insert(i, HalfGame { input, output }).is_some() {
                        return Err(err(line, "duplicate half-game index"));
                    }
                }
                _ => return Err(err(line, "unknown directive")),
            }
        }
        let k = k.ok_or_else(|| err(1, "missing circuit header"))?;
        if gates.iter().any(|g| g.table == "id") {
            tables.entry("id".to_string()).or_insert_with(|| Table::identity(k));
        }
        if hgs.keys().copied().ne(1..=hgs.len()) {
            return Err(bad("half-games must be indexed 1..d"));
        }
        HalfGameCircuit::new(k, xi.ok_or_else(|| bad("missing input line"))?, tables, gates, hgs.into_values().collect())
    }
}

/// A random circuit: before half-game `i`, one gate with up to three inputs
/// drawn from ξ, earlier outputs and earlier gate wires computes `x_i` with a
/// random table.
pub fn random_circuit<R: Rng + ?Sized>(k: usize, d: usize, rng: &mut R) -> Result<HalfGameCircuit, GameError> {
    let mut avail = vec!["xi".to_string()];
    let mut tables = BTreeMap::new();
    let mut gates = Vec::new();
    let mut halfgames = Vec::new();
    for i in 1..=d {
        let a = rng.gen_range(1..=avail.len().min(3));
        let inputs: Vec<String> = avail.choose_multiple(rng, a).cloned().collect();
        let rows = (0..words(k, a).len()).map(|_| vec![rng.gen_range(0..k as Sym)]).collect();
        tables.insert(format!("t{i}"), Table { inputs: a, outputs: 1, rows });
        gates.push(Gate { id: format!("g{i}"), table: format!("t{i}"), inputs, outputs: vec![format!("x{i}")] });
        halfgames.push(HalfGame { input: format!("x{i}"), output: format!("y{i}") });
        avail.push(format!("x{i}"));
        avail.push(format!("y{i}"));
    }
    HalfGameCircuit::new(k, "xi".into(), tables, gates, halfgames)
}
