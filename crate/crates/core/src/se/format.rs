//! Text and JSON forms of SE-model sets.
//!
//! Text: one pair per line, `({x1,x2},{y1,y2})`. On input the compact style
//! `(p,pq)` (single-letter atoms, `∅` or nothing for the empty set) is also
//! accepted, as are `%` comments and an `#alphabet a, b.` line fixing the
//! alphabet. JSON: either a bare array of `[[here...],[there...]]` or an
//! object `{"alphabet": [...], "se_models": [...]}`.

use serde::{Deserialize, Serialize};

use super::{Interpretation, SePair, SeModelSet};
use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Atom};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeSetJson {
    pub alphabet: Vec<String>,
    pub se_models: Vec<[Vec<String>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub program: Option<String>,
}

impl SeSetJson {
    pub fn new(s: &SeModelSet, program: Option<String>) -> SeSetJson {
        let names = |i: Interpretation| i.atoms(s.alphabet()).map(|a| a.to_string()).collect();
        SeSetJson {
            alphabet: s.alphabet().atoms().iter().map(|a| a.to_string()).collect(),
            se_models: s.listing().into_iter().map(|p| [names(p.here()), names(p.there())]).collect(),
            program,
        }
    }
}

pub fn se_set_to_text(s: &SeModelSet) -> String {
    s.listing().into_iter().map(|p| format!("{}\n", p.display(s.alphabet()))).collect()
}

pub fn se_set_to_json(s: &SeModelSet, program: Option<String>) -> String {
    serde_json::to_string(&SeSetJson::new(s, program)).expect("plain data serializes")
}

type RawPair = (Vec<String>, Vec<String>);

/// Reads an SE set. Without an explicit alphabet (argument, `#alphabet`
/// line or JSON field) the alphabet is the set of atoms that occur.
pub fn parse_se_set(text: &str, alphabet: Option<&Alphabet>) -> Result<SeModelSet> {
    let trimmed = text.trim_start();
    let (declared, raw) = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        parse_json(trimmed)?
    } else {
        parse_text(text)?
    };
    let alphabet = match (alphabet, declared) {
        (Some(a), _) => a.clone(),
        (None, Some(names)) => Alphabet::new(names.iter().map(|n| atom(n)).collect::<Result<Vec<_>>>()?),
        (None, None) => Alphabet::new(
            raw.iter()
                .flat_map(|(x, y)| x.iter().chain(y))
                .map(|n| atom(n))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let mut pairs = Vec::with_capacity(raw.len());
    for (x, y) in &raw {
        let to_interp = |names: &Vec<String>| -> Result<Interpretation> {
            let atoms = names.iter().map(|n| atom(n)).collect::<Result<Vec<_>>>()?;
            Interpretation::from_atoms(&alphabet, &atoms)
        };
        let (here, there) = (to_interp(x)?, to_interp(y)?);
        let pair = SePair::new(here, there).ok_or_else(|| {
            Error::Parse {
                line: 0,
                column: 0,
                message: format!(
                    "here-part {} is not a subset of there-part {}",
                    here.display(&alphabet),
                    there.display(&alphabet)
                ),
            }
        })?;
        pairs.push(pair);
    }
    SeModelSet::from_pairs(&alphabet, pairs)
}

fn atom(name: &str) -> Result<Atom> {
    Atom::new(name)
}

fn parse_json(text: &str) -> Result<(Option<Vec<String>>, Vec<RawPair>)> {
    let bad = |e: serde_json::Error| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    if text.starts_with('{') {
        #[derive(Deserialize)]
        struct Obj {
            alphabet: Option<Vec<String>>,
            se_models: Vec<(Vec<String>, Vec<String>)>,
        }
        let obj: Obj = serde_json::from_str(text).map_err(bad)?;
        Ok((obj.alphabet, obj.se_models))
    } else {
        let arr: Vec<(Vec<String>, Vec<String>)> = serde_json::from_str(text).map_err(bad)?;
        Ok((None, arr))
    }
}

fn parse_text(text: &str) -> Result<(Option<Vec<String>>, Vec<RawPair>)> {
    let mut declared: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    for (n, raw_line) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw_line.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            column: 1,
            message,
        };
        if let Some(rest) = line.strip_prefix("#alphabet") {
            let rest = rest.trim().trim_end_matches('.');
            let names = declared.get_or_insert_with(Vec::new);
            names.extend(rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()));
            continue;
        }
        // several pairs may share a line, separated by commas or spaces
        let mut rest = line;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| err(format!("expected `(` in `{line}`")))?;
            let (pair, tail) = split_pair(body).ok_or_else(|| err(format!("malformed SE pair in `{line}`")))?;
            pairs.push(pair);
            rest = tail;
        }
    }
    Ok((declared, pairs))
}

/// Parses the inside of `(...)` and returns the pair plus what follows `)`.
fn split_pair(body: &str) -> Option<(RawPair, &str)> {
    if body.starts_with('{') {
        let close1 = body.find('}')?;
        let first = &body[1..close1];
        let after = body[close1 + 1..].trim_start().strip_prefix(',')?.trim_start();
        let after = after.strip_prefix('{')?;
        let close2 = after.find('}')?;
        let second = &after[..close2];
        let tail = after[close2 + 1..].trim_start().strip_prefix(')')?;
        Some(((names(first), names(second)), tail))
    } else {
        let close = body.find(')')?;
        let inner = &body[..close];
        let (a, b) = inner.split_once(',')?;
        Some(((compact(a.trim()), compact(b.trim())), &body[close + 1..]))
    }
}

fn names(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn compact(s: &str) -> Vec<String> {
    if s == "∅" || s == "{}" {
        return Vec::new();
    }
    s.chars().map(|c| c.to_string()).collect()
}
