//! Line-oriented text format for systems.
//!
//! ```text
//! # comment
//! alphabet a b c
//! process nil
//! s -a-> { s1: 1 }
//! t -a-> { t1: 3/4, t2: 1/4 }
//! ```
//!
//! Processes are declared by their first appearance, in a `process` line,
//! as a source or as a target. Repeated transitions collapse. Process and
//! action names use letters, digits, `_`, `'` and `.`.

use std::fmt::Write as _;

use mimicry_core::rational::is_probability;
use mimicry_core::{Distribution, ProcessId, Pts, PtsBuilder, Rational};
use num_traits::One;

use crate::cursor::{Cursor, ParseError};

/// Why a document was rejected.
#[derive(Debug, thiserror::Error)]
pub enum PtsFormatError {
    /// Malformed text.
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    /// Well-formed text describing an invalid system.
    #[error("line {line}: {message}")]
    Semantic {
        /// 1-based line of the offending transition.
        line: usize,
        /// What is wrong with it.
        message: String,
    },
}

struct Line {
    number: usize,
    source: ProcessId,
    action: String,
    targets: Vec<(ProcessId, String, Rational)>,
}

/// Parses a system description.
pub fn parse_pts(text: &str) -> Result<Pts, PtsFormatError> {
    let mut builder = PtsBuilder::new();
    let mut alphabet = Vec::new();
    let mut lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(raw, i + 1);
        cur.skip_ws();
        if cur.at_end_or_comment() {
            continue;
        }
        let word = cur.ident("a keyword or process name")?;
        cur.skip_ws();
        let keyword = cur.peek() != Some('-');
        if keyword && word == "alphabet" {
            for name in names(&mut cur, "an action name")? {
                alphabet.push(name);
            }
        } else if keyword && word == "process" {
            for name in names(&mut cur, "a process name")? {
                builder.process(&name).expect("identifiers are nonempty");
            }
        } else {
            let source = builder.process(&word).expect("identifiers are nonempty");
            let (action, entries) = transition_rest(&mut cur)?;
            let targets = entries
                .into_iter()
                .map(|(name, w)| (builder.process(&name).expect("identifiers are nonempty"), name, w))
                .collect();
            lines.push(Line { number: i + 1, source, action, targets });
        }
    }

    for a in &alphabet {
        builder.action(a).expect("identifiers are nonempty");
    }
    for line in lines {
        let semantic = |message: String| PtsFormatError::Semantic { line: line.number, message };
        if !alphabet.contains(&line.action) {
            return Err(semantic(format!("action `{}` is not in the alphabet", line.action)));
        }
        let mut total = Rational::default();
        for (i, (s, name, w)) in line.targets.iter().enumerate() {
            if !is_probability(w) {
                return Err(semantic(format!("weight {w} of `{name}` is not in (0,1]")));
            }
            if line.targets[..i].iter().any(|(t, ..)| t == s) {
                return Err(semantic(format!("target `{name}` listed twice")));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(semantic(format!("weights sum to {total}, not 1")));
        }
        let dist = Distribution::new(line.targets.into_iter().map(|(s, _, w)| (s, w)))
            .map_err(|e| semantic(e.to_string()))?;
        builder
            .transition(line.source, &line.action, dist)
            .map_err(|e| semantic(e.to_string()))?;
    }
    builder.build().map_err(|e| PtsFormatError::Semantic { line: 0, message: e.to_string() })
}

/// Whitespace-separated identifiers up to the end of the line.
fn names(cur: &mut Cursor<'_>, what: &str) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        if cur.at_end_or_comment() {
            return Ok(out);
        }
        out.push(cur.ident(what)?);
    }
}

/// `-a-> { s1: 3/4, s2: 1/4 }` after the source name.
#[allow(clippy::type_complexity)]
fn transition_rest(cur: &mut Cursor<'_>) -> Result<(String, Vec<(String, Rational)>), ParseError> {
    cur.expect('-')?;
    let action = cur.ident("an action name")?;
    cur.expect('-')?;
    cur.expect('>')?;
    cur.skip_ws();
    cur.expect('{')?;
    let mut entries = Vec::new();
    loop {
        cur.skip_ws();
        let name = cur.ident("a process name")?;
        cur.skip_ws();
        cur.expect(':')?;
        cur.skip_ws();
        let w = cur.rational()?;
        entries.push((name, w));
        cur.skip_ws();
        if cur.eat('}') {
            break;
        }
        if !cur.eat(',') {
            return Err(cur.unexpected("`,` or `}`"));
        }
    }
    cur.skip_ws();
    if !cur.at_end_or_comment() {
        return Err(cur.unexpected("end of line"));
    }
    Ok((action, entries))
}

/// Prints a system so that [`parse_pts`] rebuilds it with the same process
/// numbering.
pub fn serialize_pts(pts: &Pts) -> String {
    let mut out = String::new();
    if !pts.alphabet().is_empty() {
        out.push_str("alphabet");
        for a in pts.alphabet() {
            write!(out, " {a}").unwrap();
        }
        out.push('\n');
    }
    if !pts.is_empty() {
        out.push_str("process");
        for s in pts.processes() {
            write!(out, " {}", pts.name(s)).unwrap();
        }
        out.push('\n');
    }
    for s in pts.processes() {
        for (a, dist) in pts.transitions(s) {
            writeln!(out, "{} -{a}-> {}", pts.name(s), format_distribution(pts, dist)).unwrap();
        }
    }
    out
}

/// `{ s1: 3/4, s2: 1/4 }` with process names.
pub fn format_distribution(pts: &Pts, dist: &Distribution) -> String {
    let mut out = String::from("{ ");
    for (i, (t, w)) in dist.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{}: {w}", pts.name(t)).unwrap();
    }
    out.push_str(" }");
    out
}
