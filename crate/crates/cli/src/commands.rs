//! Command-line interface.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use games_net::{is_solvable, is_strongly_completable, parse_game, parse_strategy, verify_ns_strategy};
use ghz_family::verify_sequence;
use lcl_core::{serialize, Problem, Side};
use local_sim::{check_labeling, labeling_from_text, PortNetwork, SimKind};
use round_elim::{diagram, zero_round_solvable, Method};

use crate::ops::{self, parse_side, parse_sim_kind, Family, OpError, Operation};

#[derive(Debug, Parser)]
#[command(name = "lcl", about = "Round elimination, GHZ problem family and LOCAL simulation tools")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a generated problem.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply round elimination once.
    Re {
        file: PathBuf,
        #[arg(long, default_value = "combination")]
        method: Method,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply round elimination with the roles of the sides swapped.
    Rere {
        file: PathBuf,
        #[arg(long, default_value = "combination")]
        method: Method,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the strength diagram of one side as DOT.
    Diagram {
        file: PathBuf,
        #[arg(long, value_parser = parse_side, default_value = "black")]
        side: Side,
    },
    /// Merge label A into label B.
    Merge {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply the heuristic relaxation rule; merges are reported on stderr.
    Heuristic {
        file: PathBuf,
        #[arg(long, value_parser = parse_side, default_value = "black")]
        side: Side,
        /// Perform a single merge instead of running to exhaustion.
        #[arg(long)]
        step: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide zero-round solvability.
    ZeroRound {
        file: PathBuf,
        /// Assume a proper edge coloring of the white edges.
        #[arg(long)]
        colored: bool,
    },
    /// Check the lower-bound sequence at degree Δ and print the certificate.
    VerifySequence {
        #[arg(long)]
        delta: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run and check a simulated algorithm.
    Sim {
        #[arg(value_parser = parse_sim_kind)]
        kind: SimKind,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// Game family for games-net runs.
        #[arg(long, default_value = "symm-ghz")]
        games: String,
    },
    /// Check an edge labeling of a network against a problem.
    Check {
        file: PathBuf,
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// Checks on a game file.
    Game {
        #[arg(value_enum)]
        check: GameCheck,
        file: PathBuf,
        /// Strategy file, required by verify-ns.
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
    /// Start the HTTP service.
    Serve {
        #[arg(long, env = "LCL_PORT", default_value_t = 8080)]
        port: u16,
        /// Directory for write-through persistence.
        #[arg(long, env = "LCL_DATA_DIR")]
        data_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GameCheck {
    Completable,
    VerifyNs,
    Solvable,
}

/// A failed command and its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }

    fn check(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_CHECK, msg: msg.into() }
    }

    fn internal(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INTERNAL, msg: msg.into() }
    }
}

impl From<OpError> for Failure {
    fn from(e: OpError) -> Self {
        match e {
            OpError::Bad(_) | OpError::TooLarge(_) => Failure::usage(e.to_string()),
            OpError::Conflict(_) => Failure::check(e.to_string()),
            OpError::Internal(_) => Failure::internal(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Problem, Failure> {
    ops::load(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, dest: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match dest {
        Some(p) => fs::write(p, text).map_err(|e| Failure::internal(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::internal(e.to_string())),
    }
}

fn derived(
    out: &mut dyn Write,
    err: &mut dyn Write,
    file: &Path,
    op: Operation,
    dest: &Option<PathBuf>,
) -> Result<(), Failure> {
    let src = load(file)?;
    let (p, merges) = ops::apply(&op, Some(&src))?;
    for (a, b) in merges {
        let _ = writeln!(err, "merged {a} -> {b}");
    }
    emit(out, dest, &serialize(&p))
}

/// Runs one command other than `serve`. Returns the exit code.
pub fn run(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cmd, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let w = |out: &mut dyn Write, s: String| out.write_all(s.as_bytes()).map_err(|e| Failure::internal(e.to_string()));
    match cmd {
        Command::Gen { family, delta, i, output } => {
            let (p, _) = ops::apply(&Operation::Generator { name: family, delta, i }, None)?;
            emit(out, &output, &serialize(&p))
        }
        Command::Re { file, method, output } => derived(out, err, &file, Operation::Re { method }, &output),
        Command::Rere { file, method, output } => derived(out, err, &file, Operation::Rere { method }, &output),
        Command::Merge { file, a, b, output } => derived(out, err, &file, Operation::Merge { a, b }, &output),
        Command::Heuristic { file, side, step, output } => {
            derived(out, err, &file, Operation::Heuristic { side, exhaust: !step }, &output)
        }
        Command::Diagram { file, side } => {
            let p = load(&file)?;
            let d = diagram(&p, side, lcl_core::DEFAULT_EXPANSION_CAP).map_err(OpError::from)?;
            for c in &d.merge_candidates {
                let _ = writeln!(err, "equally strong: {}", c.join(" "));
            }
            w(out, d.to_dot())
        }
        Command::ZeroRound { file, colored } => {
            let p = load(&file)?;
            match zero_round_solvable(&p, colored) {
                None => w(out, "UNSOLVABLE\n".into()),
                Some(wit) => {
                    let mut s = format!("SOLVABLE\nconfiguration {}\n", wit.configuration.join(" "));
                    for (c, l) in wit.by_color.iter().flatten() {
                        s.push_str(&format!("color {c} {l}\n"));
                    }
                    w(out, s)
                }
            }
        }
        Command::VerifySequence { delta, output } => {
            let cert = verify_sequence(delta).map_err(|e| match e {
                ghz_family::GhzError::Range(_) => Failure::usage(e.to_string()),
                _ => Failure::internal(e.to_string()),
            })?;
            emit(out, &output, &(cert.to_json() + "\n"))?;
            let _ = writeln!(err, "Δ = {delta}: {} ({} ms)", if cert.valid { "valid" } else { "INVALID" }, cert.wall_ms);
            if cert.valid {
                Ok(())
            } else {
                Err(Failure::check(format!("certificate invalid: {}", cert.errors.join("; "))))
            }
        }
        Command::Sim { kind, delta, n, seed, trials, games } => {
            if trials == 0 {
                return Err(Failure::usage("--trials must be positive"));
            }
            let (mut passed, mut rmin, mut rmax) = (0u64, usize::MAX, 0usize);
            let mut first_bad = None;
            for t in 0..trials {
                let r = ops::simulate(kind, delta, n, seed.wrapping_add(t), &games)?;
                rmin = rmin.min(r.rounds);
                rmax = rmax.max(r.rounds);
                if r.valid {
                    passed += 1;
                } else if first_bad.is_none() {
                    first_bad = Some((r.seed, r.violations.first().cloned().unwrap_or_default()));
                }
            }
            w(out, format!("pass rate {passed}/{trials}\nrounds {rmin}..{rmax}\n"))?;
            match first_bad {
                None => Ok(()),
                Some((s, v)) => Err(Failure::check(format!("seed {s}: {v}"))),
            }
        }
        Command::Check { file, net, labeling } => {
            let p = load(&file)?;
            let net = PortNetwork::from_json(&read(&net)?).map_err(|e| Failure::usage(e.to_string()))?;
            let lab = labeling_from_text(&read(&labeling)?).map_err(|e| Failure::usage(e.to_string()))?;
            let v = check_labeling(&p, &net, &lab).map_err(|e| Failure::usage(e.to_string()))?;
            if v.is_empty() {
                return w(out, "OK\n".into());
            }
            for x in &v {
                w(out, format!("node {}: {}\n", x.node, x.reason))?;
            }
            Err(Failure::check(format!("{} violations", v.len())))
        }
        Command::Game { check, file, strategy } => {
            let g = parse_game(&read(&file)?).map_err(|e| Failure::usage(e.to_string()))?;
            match check {
                GameCheck::Solvable => {
                    if is_solvable(&g) {
                        w(out, "solvable\n".into())
                    } else {
                        w(out, "unsolvable\n".into())?;
                        Err(Failure::check("some input has no valid output"))
                    }
                }
                GameCheck::Completable => match is_strongly_completable(&g).map_err(|e| Failure::usage(e.to_string()))? {
                    Ok(()) => w(out, "strongly completable\n".into()),
                    Err(why) => {
                        w(out, format!("not strongly completable: {why}\n"))?;
                        Err(Failure::check(why.to_string()))
                    }
                },
                GameCheck::VerifyNs => {
                    let path = strategy.ok_or_else(|| Failure::usage("verify-ns needs --strategy"))?;
                    let s = parse_strategy(&g, &read(&path)?).map_err(|e| Failure::usage(e.to_string()))?;
                    match verify_ns_strategy(&g, &s) {
                        Ok(()) => w(out, "non-signaling\n".into()),
                        Err(v) => {
                            w(out, format!("violation: {v}\n"))?;
                            Err(Failure::check(v.to_string()))
                        }
                    }
                }
            }
        }
        Command::Serve { .. } => Err(Failure::internal("serve is handled by the binary")),
    }
}
