//! Text format for problems.
//!
//! ```text
//! # comment
//! problem <name>
//! label <NAME> = <member> <member> ...
//! white [arity]
//! <condensed configuration per line>
//! black [arity]
//! <condensed configuration per line>
//! ```
//!
//! A group is a bare label or `[a,b,...]`, optionally followed by `^k`.
//! `label` lines record the source labels a derived label stands for. The
//! arity after `white`/`black` is only needed for empty sides.

use std::fmt::Write as _;

use crate::error::CoreError;
use crate::label::split_name;
use crate::problem::{NamedCondensed, Problem, Side};

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> CoreError {
    CoreError::Syntax { line, col, msg: msg.into() }
}

/// Parses one condensed configuration line. `line` is 1-based; columns are 1-based.
pub fn parse_condensed_line(text: &str, line: usize) -> Result<NamedCondensed, CoreError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut groups: NamedCondensed = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_name = |pos: &mut usize| -> Result<String, CoreError> {
        let start = *pos;
        while *pos < chars.len() && (chars[*pos].is_ascii_alphanumeric() || chars[*pos] == '_') {
            *pos += 1;
        }
        if start == *pos {
            let msg = match chars.get(*pos) {
                Some('\\') => "unknown escape".to_string(),
                Some(c) => format!("unexpected character `{c}`"),
                None => "expected a label".to_string(),
            };
            return Err(syntax(line, *pos + 1, msg));
        }
        let name: String = chars[start..*pos].iter().collect();
        split_name(&name).map_err(|_| syntax(line, start + 1, format!("invalid label name `{name}`")))?;
        Ok(name)
    };
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() || chars[pos] == '#' {
            break;
        }
        let group_col = pos + 1;
        let group = if chars[pos] == '[' {
            pos += 1;
            let mut g = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos < chars.len() && chars[pos] == ']' {
                    if g.is_empty() {
                        return Err(syntax(line, group_col, "empty disjunction"));
                    }
                    pos += 1;
                    break;
                }
                g.push(read_name(&mut pos)?);
                skip_ws(&mut pos);
                match chars.get(pos) {
                    Some(',') => pos += 1,
                    Some(']') => {}
                    Some('\\') => return Err(syntax(line, pos + 1, "unknown escape")),
                    Some(c) => return Err(syntax(line, pos + 1, format!("expected `,` or `]`, found `{c}`"))),
                    None => return Err(syntax(line, pos + 1, "unterminated `[`")),
                }
            }
            g
        } else {
            vec![read_name(&mut pos)?]
        };
        let mut reps = 1usize;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            reps = digits
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| syntax(line, start + 1, "expected a positive repetition count"))?;
            if reps > crate::MAX_ARITY {
                return Err(CoreError::ArityTooLarge(reps));
            }
        }
        if pos < chars.len() && !chars[pos].is_whitespace() && chars[pos] != '#' {
            let msg = if chars[pos] == '\\' { "unknown escape".to_string() } else { format!("unexpected character `{}`", chars[pos]) };
            return Err(syntax(line, pos + 1, msg));
        }
        for _ in 0..reps {
            groups.push(group.clone());
        }
    }
    Ok(groups)
}

/// Parses a problem from the text format.
pub fn parse_problem(text: &str) -> Result<Problem, CoreError> {
    let mut builder = Problem::builder("");
    let mut name = String::new();
    let mut side: Option<Side> = None;
    let mut arity: [Option<usize>; 2] = [None, None];
    let mut seen = [false, false];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut words = trimmed.split_whitespace();
        let head = words.next().unwrap_or("");
        let indent = raw.len() - raw.trim_start().len();
        match head {
            "problem" if side.is_none() => {
                name = words.collect::<Vec<_>>().join(" ");
                continue;
            }
            "label" if side.is_none() => {
                let rest: Vec<&str> = words.collect();
                if rest.len() < 3 || rest[1] != "=" {
                    return Err(syntax(line, indent + 1, "expected `label NAME = MEMBER ...`"));
                }
                for n in std::iter::once(&rest[0]).chain(rest[2..].iter()) {
                    split_name(n).map_err(|_| syntax(line, indent + 1, format!("invalid label name `{n}`")))?;
                }
                builder.members(rest[0], rest[2..].iter().map(|s| s.to_string()).collect());
                continue;
            }
            "white" | "black" => {
                let s = if head == "white" { Side::White } else { Side::Black };
                let k = s as usize;
                if seen[k] {
                    return Err(syntax(line, indent + 1, format!("duplicate `{head}` section")));
                }
                seen[k] = true;
                if let Some(a) = words.next() {
                    let a: usize = a.parse().map_err(|_| syntax(line, indent + 7, "expected an arity"))?;
                    if a > crate::MAX_ARITY {
                        return Err(CoreError::ArityTooLarge(a));
                    }
                    arity[k] = Some(a);
                    builder.arity(s, a);
                }
                side = Some(s);
                continue;
            }
            _ => {}
        }
        let Some(s) = side else {
            return Err(syntax(line, indent + 1, "expected `white`, `black`, `problem` or `label`"));
        };
        let cfg = parse_condensed_line(raw, line)?;
        if cfg.len() > crate::MAX_ARITY {
            return Err(CoreError::ArityTooLarge(cfg.len()));
        }
        let k = s as usize;
        match arity[k] {
            None => {
                arity[k] = Some(cfg.len());
                builder.arity(s, cfg.len());
            }
            Some(a) if a != cfg.len() => {
                return Err(CoreError::ArityMismatch { expected: a, found: cfg.len() });
            }
            _ => {}
        }
        builder.push(s, cfg);
    }
    let mut p = builder.build()?;
    p.name = name;
    Ok(p)
}

fn write_group(out: &mut String, g: &[String]) {
    if g.len() == 1 {
        out.push_str(&g[0]);
    } else {
        out.push('[');
        out.push_str(&g.join(","));
        out.push(']');
    }
}

/// Formats a named condensed configuration, folding runs of equal groups into `^k`.
pub fn format_condensed(c: &NamedCondensed) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < c.len() {
        let mut j = i + 1;
        while j < c.len() && c[j] == c[i] {
            j += 1;
        }
        if i > 0 {
            out.push(' ');
        }
        write_group(&mut out, &c[i]);
        if j - i > 1 {
            let _ = write!(out, "^{}", j - i);
        }
        i = j;
    }
    out
}

/// Serializes a problem in canonical form.
pub fn serialize(p: &Problem) -> String {
    let mut out = String::new();
    if !p.name.is_empty() {
        let _ = writeln!(out, "problem {}", p.name);
    }
    for l in p.labels() {
        if let Some(m) = &l.members {
            let _ = writeln!(out, "label {} = {}", l.name, m.join(" "));
        }
    }
    for side in [Side::White, Side::Black] {
        let k = p.side(side);
        let head = if side == Side::White { "white" } else { "black" };
        if k.is_empty() {
            let _ = writeln!(out, "{head} {}", k.arity());
        } else {
            let _ = writeln!(out, "{head}");
        }
        for c in p.named(side) {
            let _ = writeln!(out, "{}", format_condensed(&c));
        }
    }
    out
}
