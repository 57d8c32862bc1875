//! Browser bindings: three operations on program text, each answering with
//! a JSON string. Errors come back as plain messages.

use sechange::change::{revise_with, Revision};
use sechange::merge::{arbitrate, merge_basic};
use sechange::se::{answer_sets, se_models, SeModelSet};
use sechange::syntax::{effective_alphabet, parse_program, render_program, Alphabet, BeliefProfile, Program};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Enumeration is exponential, so the page refuses wider alphabets.
pub const MAX_ATOMS: usize = 8;

fn parse(label: &str, text: &str) -> Result<Program, String> {
    parse_program(text).map_err(|e| format!("{label}: {e}"))
}

fn alphabet(programs: &[&Program]) -> Result<Alphabet, String> {
    let a = effective_alphabet(programs, None).map_err(|e| e.to_string())?;
    if a.len() > MAX_ATOMS {
        return Err(format!("{} atoms is more than the demo allows ({MAX_ATOMS})", a.len()));
    }
    Ok(a)
}

fn pairs(s: &SeModelSet) -> Vec<String> {
    s.listing().into_iter().map(|p| p.display(s.alphabet())).collect()
}

fn names(a: &Alphabet) -> Vec<String> {
    a.atoms().iter().map(|x| x.to_string()).collect()
}

/// SE models and answer sets of a single program.
#[wasm_bindgen]
pub fn models(program: &str) -> Result<String, String> {
    let p = parse("program", program)?;
    let a = alphabet(&[&p])?;
    let se = se_models(&p, &a).map_err(|e| e.to_string())?;
    let answers: Vec<String> = answer_sets(&p, &a)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|i| i.display(&a))
        .collect();
    Ok(json!({ "alphabet": names(&a), "se_models": pairs(&se), "answer_sets": answers }).to_string())
}

/// `kind` is `set`, `weak` or `card`.
#[wasm_bindgen]
pub fn revise(p: &str, q: &str, kind: &str) -> Result<String, String> {
    let kind = match kind {
        "set" => Revision::Set,
        "weak" => Revision::Weak,
        "card" => Revision::Card,
        other => return Err(format!("unknown revision kind `{other}`")),
    };
    let (p, q) = (parse("P", p)?, parse("Q", q)?);
    let a = alphabet(&[&p, &q])?;
    let r = revise_with(&p, &q, &a, kind).map_err(|e| e.to_string())?;
    Ok(json!({
        "alphabet": names(&a),
        "se_models": pairs(&r.se),
        "program": render_program(&r.program.program),
    })
    .to_string())
}

/// Programs are separated by lines holding only `---`. For `basic` the
/// first block is the constraints program; for `arbitration` every block is
/// a profile member.
#[wasm_bindgen]
pub fn merge(programs: &str, mode: &str) -> Result<String, String> {
    let blocks = split_blocks(programs);
    let parsed = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| parse(&format!("block {}", i + 1), b))
        .collect::<Result<Vec<_>, _>>()?;
    let a = alphabet(&parsed.iter().collect::<Vec<_>>())?;
    let result = match mode {
        "arbitration" => arbitrate(&BeliefProfile::new(parsed), &a),
        "basic" => {
            let mut members = parsed.into_iter();
            let constraints = members.next().ok_or("no programs given")?;
            merge_basic(&BeliefProfile::with_constraints(constraints, members.collect()), &a)
        }
        other => return Err(format!("unknown merging mode `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    Ok(json!({
        "alphabet": names(&a),
        "se_models": pairs(&result.se),
        "program": render_program(&result.program.program),
        "dropped": result.dropped,
        "warning": result.warning.map_or(Value::Null, Value::from),
    })
    .to_string())
}

fn split_blocks(text: &str) -> Vec<String> {
    let mut blocks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            blocks.push(String::new());
        } else {
            let last = blocks.last_mut().expect("starts non-empty");
            last.push_str(line);
            last.push('\n');
        }
    }
    blocks
}
