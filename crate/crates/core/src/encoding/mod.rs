//! Meta-level ASP encodings: the relational representation of a profile,
//! the fixed non-ground programs for each change task, and decoding of the
//! solver's answer sets back into SE models.

pub mod modules;
mod solver;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::se::{Interpretation, SeModelSet, SePair};
use crate::syntax::{Alphabet, Atom, BeliefProfile};

pub use solver::{crosscheck, native_result, parse_answer_sets, solve, CrossCheck, SolverConfig, SOLVER_ENV};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    CardRevision,
    SetRevision,
    BasicMerge,
    Arbitration,
}

impl Task {
    pub const ALL: [Task; 4] = [Task::CardRevision, Task::SetRevision, Task::BasicMerge, Task::Arbitration];

    pub fn name(self) -> &'static str {
        match self {
            Task::CardRevision => "card-revision",
            Task::SetRevision => "set-revision",
            Task::BasicMerge => "basic-merge",
            Task::Arbitration => "arbitration",
        }
    }

    /// Names of the modules making up the task's meta-program, in emission order.
    pub fn module_names(self) -> &'static [&'static str] {
        match self {
            Task::CardRevision => &["domain", "models", "result", "card"],
            Task::SetRevision => &["domain", "models", "order", "result", "witness", "incl", "violation", "eq"],
            Task::BasicMerge => &["domain", "models", "order", "result", "witness", "violation", "eq", "basic"],
            Task::Arbitration => &[
                "domain",
                "models",
                "order",
                "result_arbitration",
                "witness",
                "violation",
                "eq",
                "arbitration",
            ],
        }
    }

    /// Whether the profile's first program is the constraints program, numbered 0.
    pub fn has_constraints(self) -> bool {
        self == Task::BasicMerge
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Task, String> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown task `{s}`; expected one of card-revision, set-revision, basic-merge, arbitration"))
    }
}

fn module_text(name: &str) -> &'static str {
    match name {
        "domain" => modules::DOMAIN,
        "models" => modules::MODELS,
        "order" => modules::ORDER,
        "card" => modules::CARD,
        "result" => modules::RESULT,
        "witness" => modules::WITNESS,
        "incl" => modules::INCL,
        "violation" => modules::VIOLATION,
        "eq" => modules::EQ,
        "basic" => modules::BASIC,
        "arbitration" => modules::ARBITRATION,
        "result_arbitration" => modules::RESULT_ARBITRATION,
        other => unreachable!("no module named {other}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    /// `:-`, `;`, `not`, weak constraints without weights, `#maxint`.
    Dlv,
    /// gringo input: weighted weak constraints with explicit tuples and `#show` lines.
    Clingo,
}

impl FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Dialect, String> {
        match s {
            "dlv" => Ok(Dialect::Dlv),
            "clingo" | "gringo" => Ok(Dialect::Clingo),
            other => Err(format!("unknown solver dialect `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetaProgram {
    pub task: Task,
    pub dialect: Dialect,
    pub modules: Vec<&'static str>,
    pub text: String,
}

/// The meta-program for `task`, one module after another, each under a `% name` line.
pub fn emit_meta(task: Task, dialect: Dialect) -> MetaProgram {
    let mut text = String::new();
    let mut weak = 0;
    for (i, name) in task.module_names().iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        text.push_str("% ");
        text.push_str(name);
        text.push('\n');
        for line in module_text(name).lines() {
            match dialect {
                Dialect::Dlv => text.push_str(line),
                Dialect::Clingo => {
                    if line.starts_with(":~") {
                        weak += 1;
                        text.push_str(&weighted(line, weak));
                    } else {
                        text.push_str(&solve_for_unbound(line));
                    }
                }
            }
            text.push('\n');
        }
    }
    if dialect == Dialect::Clingo {
        text.push_str("\n#show resultH/1.\n#show resultT/1.\n");
    }
    MetaProgram {
        task,
        dialect,
        modules: task.module_names().to_vec(),
        text,
    }
}

fn variables(s: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut word = String::new();
    for c in s.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            word.push(c);
        } else {
            if word.starts_with(|c: char| c.is_ascii_uppercase()) && !out.contains(&word) {
                out.push(word.clone());
            }
            word.clear();
        }
    }
    out
}

/// `:~ body.` becomes `:~ body. [1@1,k,Vars]`, so that every ground
/// instance is paid for once and distinct constraints never share a tuple.
fn weighted(line: &str, k: usize) -> String {
    let body = line.trim_end_matches('.');
    let mut terms = vec!["1@1".to_string(), k.to_string()];
    terms.extend(variables(body));
    format!("{body}. [{}]", terms.join(","))
}

/// Splits a rule body at top-level commas.
fn body_literals(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(body[start..].trim());
    out
}

/// gringo does not invert arithmetic, so `P = Q + 1` with `Q` bound nowhere
/// else is rewritten to the equivalent assignment `Q = P - 1`.
fn solve_for_unbound(line: &str) -> String {
    let Some((head, body)) = line.split_once(" :- ") else {
        return line.to_string();
    };
    let body = body.trim_end_matches('.');
    let lits = body_literals(body);
    let rewritten: Vec<String> = lits
        .iter()
        .enumerate()
        .map(|(i, lit)| {
            let parts: Vec<&str> = lit.split_whitespace().collect();
            if let [lhs, "=", rhs, "+", "1"] = parts[..] {
                let bound_elsewhere = lits.iter().enumerate().any(|(j, other)| {
                    j != i && !other.starts_with("not ") && variables(other).iter().any(|v| v == rhs)
                });
                if !bound_elsewhere {
                    return format!("{rhs} = {lhs} - 1");
                }
            }
            lit.to_string()
        })
        .collect();
    format!("{head} :- {}.", rewritten.join(", "))
}

/// First program index: 0 when the profile carries a constraints program, else 1.
pub fn first_index(psi: &BeliefProfile) -> usize {
    usize::from(!psi.has_constraints)
}

/// The relational representation of `psi`, one fact per line, ordered by
/// program, rule, part (`phead`, `nhead`, `pbody`, `nbody`) and atom.
pub fn relational_facts(psi: &BeliefProfile) -> String {
    let alpha = first_index(psi);
    let mut facts: Vec<(usize, u32, usize, &Atom)> = Vec::new();
    for (offset, program) in psi.programs.iter().enumerate() {
        for rule in program.rules() {
            let parts = [&rule.head_pos, &rule.head_neg, &rule.body_pos, &rule.body_neg];
            for (k, part) in parts.into_iter().enumerate() {
                facts.extend(part.iter().map(|a| (alpha + offset, rule.id, k, a)));
            }
        }
    }
    facts.sort();
    let names = ["phead", "nhead", "pbody", "nbody"];
    facts
        .into_iter()
        .map(|(i, r, k, a)| format!("{}({i},{r},{a}).\n", names[k]))
        .collect()
}

/// `prog(i).` for every index of the profile, so that programs without
/// rules still take part in the encoding.
pub fn program_index_facts(psi: &BeliefProfile) -> String {
    let alpha = first_index(psi);
    (0..psi.programs.len()).map(|k| format!("prog({}).\n", alpha + k)).collect()
}

/// `#maxint=N.` with `N` the larger of the last program index and the largest rule id.
pub fn integer_bound(psi: &BeliefProfile) -> String {
    let last = (first_index(psi) + psi.programs.len()).saturating_sub(1);
    let max_id = psi
        .programs
        .iter()
        .flat_map(|p| p.rules().iter().map(|r| r.id as usize))
        .max()
        .unwrap_or(0);
    format!("#maxint={}.\n", last.max(max_id))
}

/// The complete instance input for a solver run: relational facts, program
/// indices and, for DLV, the integer bound.
pub fn instance_text(psi: &BeliefProfile, dialect: Dialect) -> String {
    let mut s = relational_facts(psi);
    s.push_str(&program_index_facts(psi));
    if dialect == Dialect::Dlv {
        s.push_str(&integer_bound(psi));
    }
    s
}

/// Splits a ground atom `name(arg)` into its name and single argument.
fn unary(atom: &str) -> Option<(&str, &str)> {
    let (name, rest) = atom.split_once('(')?;
    let arg = rest.strip_suffix(')')?;
    (!arg.contains(',')).then_some((name, arg))
}

/// Reads `({a | resultH(a)}, {b | resultT(b)})` out of an answer set.
pub fn extract_rho<S: AsRef<str>>(answer_set: &[S]) -> Result<(BTreeSet<String>, BTreeSet<String>)> {
    let (mut here, mut there) = (BTreeSet::new(), BTreeSet::new());
    for atom in answer_set {
        match unary(atom.as_ref()) {
            Some(("resultH", a)) => {
                here.insert(a.to_string());
            }
            Some(("resultT", a)) => {
                there.insert(a.to_string());
            }
            _ => {}
        }
    }
    if let Some(a) = here.difference(&there).next() {
        return Err(Error::CorruptAnswerSet(format!("resultH({a}) without resultT({a})")));
    }
    Ok((here, there))
}

/// Decodes every answer set into an SE pair over `alphabet`.
pub fn decode<S: AsRef<str>>(answer_sets: &[Vec<S>], alphabet: &Alphabet) -> Result<SeModelSet> {
    let interp = |names: &BTreeSet<String>| -> Result<Interpretation> {
        let atoms = names
            .iter()
            .map(|n| {
                Atom::new(n)
                    .ok()
                    .filter(|a| alphabet.contains(a))
                    .ok_or_else(|| Error::CorruptAnswerSet(format!("atom `{n}` is outside the alphabet")))
            })
            .collect::<Result<Vec<_>>>()?;
        Interpretation::from_atoms(alphabet, &atoms)
    };
    let mut pairs = Vec::new();
    for s in answer_sets {
        let (h, t) = extract_rho(s)?;
        pairs.push(SePair::new(interp(&h)?, interp(&t)?).expect("here is inside there"));
    }
    SeModelSet::from_pairs(alphabet, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn facts_of_revision_pair() {
        let psi = BeliefProfile::new(vec![
            parse_program(":- not p. :- not q.").unwrap(),
            parse_program("p ; q. :- p, q.").unwrap(),
        ]);
        assert_eq!(
            relational_facts(&psi),
            "nbody(1,1,p).\nnbody(1,2,q).\nphead(2,1,p).\nphead(2,1,q).\npbody(2,2,p).\npbody(2,2,q).\n"
        );
        assert_eq!(integer_bound(&psi), "#maxint=2.\n");
    }

    #[test]
    fn clingo_rewrites() {
        assert_eq!(
            solve_for_unbound("minprog(P) :- prog(P), P = Q + 1, not prog(Q)."),
            "minprog(P) :- prog(P), Q = P - 1, not prog(Q)."
        );
        let keep = "samediff_upto_prog(I,M) :- I = J + 1, samediff(I,J,M), samediff_upto_prog(J,M).";
        assert_eq!(solve_for_unbound(keep), keep);
        assert_eq!(weighted(":~ diff(1,2,A,h), diff(1,2,B,M).", 2), ":~ diff(1,2,A,h), diff(1,2,B,M). [1@1,2,A,B,M]");
    }

    #[test]
    fn rho() {
        let (h, t) = extract_rho(&["resultH(a)", "resultT(a)", "resultT(b)", "in(1,a,c)"]).unwrap();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), ["a"]);
        assert_eq!(t.into_iter().collect::<Vec<_>>(), ["a", "b"]);
        let none: [&str; 0] = [];
        assert_eq!(extract_rho(&none).unwrap(), (BTreeSet::new(), BTreeSet::new()));
        assert!(matches!(extract_rho(&["resultH(a)"]), Err(Error::CorruptAnswerSet(_))));
    }
}
