//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use games_net::{is_strongly_completable, max_deterministic_wins, words, Game};
use ghz_family::{bit_configurations, check_claims, parse_claims, present_black, verify_sequence, FirstStep, APPENDIX_CLAIMS};
use lcl_core::{name_cmp, NamedCondensed, Problem, Side};
use local_sim::{run_once, SimKind};
use round_elim::{maximize_universal, MaximizeOptions, Method};

type Canon = BTreeSet<Vec<Vec<String>>>;

fn canon(cs: impl IntoIterator<Item = NamedCondensed>) -> Canon {
    cs.into_iter()
        .map(|c| {
            let mut c: Vec<Vec<String>> = c
                .into_iter()
                .map(|mut g| {
                    g.sort_by(|a, b| name_cmp(a, b));
                    g.dedup();
                    g
                })
                .collect();
            c.sort();
            c
        })
        .collect()
}

fn maximized(configs: Vec<NamedCondensed>, method: Method) -> Result<Canon, String> {
    let mut b = Problem::builder("acceptance");
    b.arity(Side::Black, 3);
    for c in configs {
        b.push(Side::Black, c);
    }
    let p = b.build().map_err(|e| e.to_string())?;
    let color = |l| p.label(l).color;
    let opts = MaximizeOptions { method, ..MaximizeOptions::default() };
    let k = maximize_universal(p.black(), &color, opts).map_err(|e| e.to_string())?;
    Ok(canon(k.configs().iter().map(|c| p.named_condensed(c))))
}

/// The maximal configurations over the bit labels of one color, as (input, output) pairs.
const MAXIMAL: [&[&[(u8, u8)]]; 22] = [
    &[&[(0, 0), (1, 0), (1, 1)], &[(0, 0)], &[(0, 0)]],
    &[&[(0, 1), (1, 0), (1, 1)], &[(0, 0)], &[(0, 1)]],
    &[&[(0, 0), (1, 0), (1, 1)], &[(0, 1)], &[(0, 1)]],
    &[&[(0, 0), (0, 1), (1, 1)], &[(0, 0)], &[(1, 0)]],
    &[&[(0, 0), (0, 1), (1, 0)], &[(0, 0)], &[(1, 1)]],
    &[&[(0, 0), (0, 1), (1, 0)], &[(0, 1)], &[(1, 0)]],
    &[&[(0, 0), (0, 1), (1, 1)], &[(0, 1)], &[(1, 1)]],
    &[&[(0, 1), (1, 0), (1, 1)], &[(1, 0)], &[(1, 0)]],
    &[&[(0, 0), (1, 0), (1, 1)], &[(1, 0)], &[(1, 1)]],
    &[&[(0, 1), (1, 0), (1, 1)], &[(1, 1)], &[(1, 1)]],
    &[&[(0, 0), (1, 0)], &[(0, 0)], &[(0, 0), (1, 1)]],
    &[&[(0, 1), (1, 1)], &[(0, 0)], &[(0, 1), (1, 0)]],
    &[&[(0, 0), (1, 0)], &[(0, 1)], &[(0, 1), (1, 0)]],
    &[&[(0, 1), (1, 1)], &[(0, 0), (1, 1)], &[(0, 1)]],
    &[&[(0, 0), (1, 0)], &[(0, 1), (1, 1)], &[(1, 0)]],
    &[&[(1, 1)], &[(0, 0), (1, 0)], &[(0, 0), (1, 0)]],
    &[&[(1, 0)], &[(0, 1), (1, 0)], &[(0, 1), (1, 0)]],
    &[&[(1, 0)], &[(0, 0), (1, 1)], &[(0, 0), (1, 1)]],
    &[&[(0, 0), (1, 1)], &[(0, 1), (1, 0)], &[(1, 1)]],
    &[&[(1, 1)], &[(0, 1), (1, 1)], &[(0, 1), (1, 1)]],
    &[&[(1, 0), (1, 1)], &[(0, 0), (0, 1)], &[(0, 0), (0, 1)]],
    &[&[(1, 0), (1, 1)], &[(1, 0), (1, 1)], &[(1, 0), (1, 1)]],
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {t:.2?}, budget {budget:?}"))
}

fn maximization() -> Outcome {
    let start = Instant::now();
    let j = 3;
    let expected = canon(MAXIMAL.iter().map(|c| {
        c.iter().map(|g| g.iter().map(|(x, y)| format!("X{x}{y}_{j}")).collect()).collect()
    }));
    let bits: Vec<NamedCondensed> =
        bit_configurations(j).into_iter().map(|c| c.into_iter().map(|l| vec![l]).collect()).collect();
    ensure(bits.len() == 15, || format!("{} bit configurations", bits.len()))?;
    for method in [Method::Direct, Method::Combination] {
        let got = maximized(bits.clone(), method)?;
        ensure(got == expected, || format!("{method:?}: {} configurations, not the 22", got.len()))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("22 configurations, both methods, {:.2?}", start.elapsed()))
}

fn sequence() -> Outcome {
    let mut notes = Vec::new();
    for (delta, budget) in [(3, 10), (4, 600), (5, 600)] {
        let start = Instant::now();
        let cert = verify_sequence(delta).map_err(|e| format!("Δ={delta}: {e}"))?;
        ensure(cert.valid, || format!("Δ={delta}: {}", cert.errors.join("; ")))?;
        ensure(cert.final_zero_round == "unsolvable", || format!("Δ={delta}: final problem solvable"))?;
        ensure(cert.natural_first.white_strict_subset && cert.natural_first.black_strict_subset, || {
            format!("Δ={delta}: first problem not a strict restriction")
        })?;
        for s in &cert.steps {
            ensure(s.all_step_1.ok && s.all_step_22.ok && s.renaming.ok, || format!("Δ={delta}, i={}: step failed", s.i))?;
        }
        within(start, Duration::from_secs(budget))?;
        notes.push(format!("Δ={delta} {:.2?}", start.elapsed()));
    }
    let start = Instant::now();
    let stretch = match verify_sequence(6) {
        Ok(c) if c.valid => format!("Δ=6 valid {:.2?}", start.elapsed()),
        Ok(_) => "Δ=6 invalid".into(),
        Err(e) => format!("Δ=6 error {e}"),
    };
    notes.push(format!("stretch: {stretch}"));
    Ok(notes.join(", "))
}

fn already_maximized() -> Outcome {
    let delta = 6;
    let present = 2..delta;
    for j in present.clone() {
        let expected = canon(present_black(j));
        for method in [Method::Combination, Method::Direct] {
            let got = maximized(present_black(j), method)?;
            ensure(got == expected, || format!("color {j}, {method:?}: {} configurations", got.len()))?;
        }
    }
    Ok(format!("present colors {present:?} at Δ={delta}"))
}

fn right_closed() -> Outcome {
    let mut labels = 0;
    for delta in 3..=5 {
        let cert = verify_sequence(delta).map_err(|e| e.to_string())?;
        for s in &cert.steps {
            let rc = &s.right_closed;
            ensure(rc.violations.is_empty(), || format!("Δ={delta}, i={}: {}", s.i, rc.violations.join(", ")))?;
            labels += rc.re_labels + rc.rere_labels;
        }
    }
    Ok(format!("{labels} derived labels, zero violations"))
}

fn appendix() -> Outcome {
    let claims = parse_claims(APPENDIX_CLAIMS).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (delta, i) in [(5, 1), (6, 2)] {
        let first = FirstStep::new(i, delta).map_err(|e| e.to_string())?;
        let out = check_claims(&claims, &first).map_err(|e| e.to_string())?;
        if let Some(bad) = out.iter().find(|o| !o.ok) {
            return Err(format!(
                "(Δ={delta}, i={i}) line {} color {}: {} ({})",
                bad.line,
                bad.color,
                bad.text,
                bad.detail.clone().unwrap_or_default()
            ));
        }
        checked += out.len();
    }
    Ok(format!("{} claims, {checked} instances", claims.len()))
}

/// Runs `f` over `0..n` on all cores; returns the first failure.
fn parallel(n: u64, f: impl Fn(u64) -> Result<(), String> + Sync) -> Result<(), String> {
    let threads = thread::available_parallelism().map_or(1, |t| t.get()) as u64;
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| s.spawn(move || (0..n).skip(t as usize).step_by(threads as usize).try_for_each(f)))
            .collect();
        handles.into_iter().try_for_each(|h| h.join().expect("worker panicked"))
    })
}

fn simulator() -> Outcome {
    let mut notes = Vec::new();
    for delta in 3..=8usize {
        let start = Instant::now();
        parallel(1000, |seed| {
            let n = 3 * (1 + (seed as usize * 37) % 100);
            let c = run_once(SimKind::ClassicalGhz, delta, n, seed, "").map_err(|e| e.to_string())?;
            ensure(c.valid, || format!("classical Δ={delta} seed {seed}: {:?}", c.violations.first()))?;
            ensure(c.rounds == 2 * delta, || format!("classical Δ={delta} seed {seed}: {} rounds", c.rounds))?;
            let q = run_once(SimKind::QuantumGhz, delta, n, seed, "").map_err(|e| e.to_string())?;
            ensure(q.valid, || format!("quantum Δ={delta} seed {seed}: {:?}", q.violations.first()))?;
            ensure(q.message_rounds == [1], || format!("quantum Δ={delta} seed {seed}: rounds {:?}", q.message_rounds))
        })?;
        within(start, Duration::from_secs(120))?;
        notes.push(format!("Δ={delta} {:.1?}", start.elapsed()));
    }
    Ok(notes.join(", "))
}

fn games_d() -> Outcome {
    let start = Instant::now();
    parallel(500, |seed| {
        let d = 1 + seed as usize % 6;
        let family = if seed % 2 == 0 { "symm-ghz" } else { "chsh" };
        let n = 6 * (1 + (seed as usize * 13) % 20);
        let r = run_once(SimKind::GamesNet, d, n, seed, family).map_err(|e| e.to_string())?;
        ensure(r.valid, || format!("seed {seed} d={d} {family}: {:?}", r.violations.first()))?;
        ensure(r.rounds == 2 * d, || format!("seed {seed} d={d}: {} rounds", r.rounds))
    })?;
    Ok(format!("500 instances, d in 1..=6, {:.2?}", start.elapsed()))
}

fn classical_bounds() -> Outcome {
    let start = Instant::now();
    let chsh = max_deterministic_wins(&Game::chsh(), &words(2, 2)).map_err(|e| e.to_string())?;
    let promise: Vec<_> = words(2, 3).into_iter().filter(|x| x.iter().fold(0, |a, b| a ^ b) == 0).collect();
    let ghz = max_deterministic_wins(&Game::ghz(), &promise).map_err(|e| e.to_string())?;
    ensure(chsh == 3, || format!("CHSH {chsh}/4"))?;
    ensure(promise.len() == 4 && ghz == 3, || format!("GHZ {ghz}/{}", promise.len()))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("CHSH 3/4, GHZ 3/4, {:.2?}", start.elapsed()))
}

fn strong_completability() -> Outcome {
    let start = Instant::now();
    for g in [Game::ghz(), Game::symm()] {
        let r = is_strongly_completable(&g).map_err(|e| e.to_string())?;
        ensure(r.is_ok(), || format!("{}: {}", g.name(), r.unwrap_err()))?;
    }
    let copy = is_strongly_completable(&Game::copy()).map_err(|e| e.to_string())?;
    let why = copy.err().ok_or("copy game reported completable")?;
    ensure(why.order == [0, 1], || format!("copy failed on {why}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("GHZ, SYMM completable; copy: {why}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("maximization oracle equality", maximization),
        ("sequence certificate", sequence),
        ("already maximized", already_maximized),
        ("right-closedness", right_closed),
        ("appendix fixtures", appendix),
        ("simulator validity", simulator),
        ("GAMES_d correctness", games_d),
        ("classical game bounds", classical_bounds),
        ("strong completability", strong_completability),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(note) => println!("PASS  {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
