//! Line-based textual DFA format.
//!
//! ```text
//! # comment
//! alphabet: a b
//! states: 2
//! initial: 0
//! accepting: 0 1
//! 0 a 1
//! 0 b 0
//! 1 a 0
//! 1 b 1
//! ```
//!
//! Every (state, letter) pair must appear exactly once.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

use super::Dfa;

/// Parse the textual DFA format. Errors report the offending line.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            (i + 1, content.trim())
        })
        .filter(|(_, content)| !content.is_empty());

    let (line_no, alphabet_line) = lines
        .next()
        .ok_or_else(|| Error::parse("end of input", "missing 'alphabet:' line"))?;
    let alphabet = parse_alphabet_line(line_no, alphabet_line)?;

    let (line_no, states_line) = lines
        .next()
        .ok_or_else(|| Error::parse("end of input", "missing 'states:' line"))?;
    let state_count = parse_keyed_number(line_no, states_line, "states")?;
    if state_count == 0 {
        return Err(Error::parse(
            format!("line {line_no}"),
            "state count must be positive",
        ));
    }

    let (line_no, initial_line) = lines
        .next()
        .ok_or_else(|| Error::parse("end of input", "missing 'initial:' line"))?;
    let initial = parse_keyed_number(line_no, initial_line, "initial")?;
    if initial >= state_count {
        return Err(Error::parse(
            format!("line {line_no}"),
            format!("dangling state reference: initial state {initial} (states: {state_count})"),
        ));
    }

    let (line_no, accepting_line) = lines
        .next()
        .ok_or_else(|| Error::parse("end of input", "missing 'accepting:' line"))?;
    let accepting = parse_accepting_line(line_no, accepting_line, state_count)?;

    let k = alphabet.len();
    let mut delta: Vec<Option<usize>> = vec![None; state_count * k];
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                format!("line {line_no}"),
                format!("expected 'state letter state', got '{line}'"),
            ));
        }
        let from = parse_state(line_no, fields[0], state_count)?;
        let letter = {
            let mut chars = fields[1].chars();
            let c = chars.next().unwrap();
            if chars.next().is_some() {
                return Err(Error::parse(
                    format!("line {line_no}"),
                    format!("letter must be a single character, got '{}'", fields[1]),
                ));
            }
            alphabet.index_of(c).ok_or_else(|| {
                Error::parse(
                    format!("line {line_no}"),
                    format!("letter '{c}' not in alphabet {alphabet}"),
                )
            })?
        };
        let to = parse_state(line_no, fields[2], state_count)?;
        let slot = &mut delta[from * k + letter];
        if slot.is_some() {
            return Err(Error::parse(
                format!("line {line_no}"),
                format!(
                    "duplicate transition for state {from} on '{}'",
                    alphabet.symbol(letter)
                ),
            ));
        }
        *slot = Some(to);
    }

    let mut table = Vec::with_capacity(delta.len());
    for (i, entry) in delta.iter().enumerate() {
        match entry {
            Some(t) => table.push(*t),
            None => {
                let (q, a) = (i / k, i % k);
                return Err(Error::parse(
                    "end of input".to_string(),
                    format!(
                        "partial transition table: missing (state {q}, letter '{}')",
                        alphabet.symbol(a)
                    ),
                ));
            }
        }
    }

    Dfa::new(alphabet, state_count, initial, accepting, table)
}

/// Render a DFA in the same textual format, deterministically.
pub fn serialize_dfa(d: &Dfa) -> String {
    let mut out = String::new();
    out.push_str("alphabet:");
    for c in d.alphabet().symbols() {
        out.push(' ');
        out.push(*c);
    }
    out.push('\n');
    out.push_str(&format!("states: {}\n", d.state_count()));
    out.push_str(&format!("initial: {}\n", d.initial()));
    out.push_str("accepting:");
    for q in d.accepting() {
        out.push_str(&format!(" {q}"));
    }
    out.push('\n');
    for q in 0..d.state_count() {
        for a in 0..d.alphabet().len() {
            out.push_str(&format!(
                "{q} {} {}\n",
                d.alphabet().symbol(a),
                d.step(q, a)
            ));
        }
    }
    out
}

fn parse_alphabet_line(line_no: usize, line: &str) -> Result<Alphabet> {
    let rest = line
        .strip_prefix("alphabet:")
        .ok_or_else(|| Error::parse(format!("line {line_no}"), "expected 'alphabet: ...'"))?;
    let mut symbols = Vec::new();
    for field in rest.split_whitespace() {
        let mut chars = field.chars();
        let c = chars.next().unwrap();
        if chars.next().is_some() {
            return Err(Error::parse(
                format!("line {line_no}"),
                format!("alphabet symbols must be single characters, got '{field}'"),
            ));
        }
        symbols.push(c);
    }
    Alphabet::new(symbols).map_err(|e| Error::parse(format!("line {line_no}"), e.to_string()))
}

fn parse_keyed_number(line_no: usize, line: &str, key: &str) -> Result<usize> {
    let rest = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::parse(format!("line {line_no}"), format!("expected '{key}: N'")))?;
    rest.trim()
        .parse::<usize>()
        .map_err(|_| Error::parse(format!("line {line_no}"), format!("expected '{key}: N'")))
}

fn parse_accepting_line(line_no: usize, line: &str, state_count: usize) -> Result<BTreeSet<usize>> {
    let rest = line
        .strip_prefix("accepting:")
        .ok_or_else(|| Error::parse(format!("line {line_no}"), "expected 'accepting: ...'"))?;
    let mut accepting = BTreeSet::new();
    for field in rest.split_whitespace() {
        accepting.insert(parse_state(line_no, field, state_count)?);
    }
    Ok(accepting)
}

fn parse_state(line_no: usize, field: &str, state_count: usize) -> Result<usize> {
    let q = field.parse::<usize>().map_err(|_| {
        Error::parse(
            format!("line {line_no}"),
            format!("expected a state index, got '{field}'"),
        )
    })?;
    if q >= state_count {
        return Err(Error::parse(
            format!("line {line_no}"),
            format!("dangling state reference: {q} (states: {state_count})"),
        ));
    }
    Ok(q)
}
