//! Expansion and revision. Each operator is defined on SE-model sets; the
//! program-level functions compute SE models first and attach a canonical
//! program for the result.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::canonical::{canonical_glp, CanonicalProgram};
use crate::distance::{sigma_card, sigma_subset};
use crate::error::Result;
use crate::se::{se_models, subsets, SeModelSet, SePair};
use crate::syntax::{Alphabet, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChangeOp {
    Expand,
    Revise,
    ReviseWeak,
    ReviseCard,
    Meet,
    Join,
}

impl fmt::Display for ChangeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChangeOp::Expand => "expand",
            ChangeOp::Revise => "revise",
            ChangeOp::ReviseWeak => "revise_weak",
            ChangeOp::ReviseCard => "revise_card",
            ChangeOp::Meet => "meet",
            ChangeOp::Join => "join",
        })
    }
}

/// The three revision operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Revision {
    /// Set-containment based.
    Set,
    /// Weak variant: every closest SE model plus its total pair.
    Weak,
    /// Cardinality based.
    Card,
}

impl Revision {
    pub const ALL: [Revision; 3] = [Revision::Set, Revision::Weak, Revision::Card];

    pub fn op(self) -> ChangeOp {
        match self {
            Revision::Set => ChangeOp::Revise,
            Revision::Weak => ChangeOp::ReviseWeak,
            Revision::Card => ChangeOp::ReviseCard,
        }
    }
}

impl std::str::FromStr for Revision {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Revision, String> {
        match s {
            "revise" | "set" => Ok(Revision::Set),
            "revise_weak" | "weak" => Ok(Revision::Weak),
            "revise_card" | "card" => Ok(Revision::Card),
            other => Err(format!("unknown revision operator `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeResult {
    pub se: SeModelSet,
    pub program: CanonicalProgram,
    pub operator: ChangeOp,
    pub alphabet: Alphabet,
}

impl ChangeResult {
    pub fn new(se: SeModelSet, operator: ChangeOp) -> Result<ChangeResult> {
        let program = canonical_glp(&se)?;
        Ok(ChangeResult {
            alphabet: se.alphabet().clone(),
            se,
            program,
            operator,
        })
    }
}

pub fn expand_se(p: &SeModelSet, q: &SeModelSet) -> Result<SeModelSet> {
    p.intersection(q)
}

/// Pairs `(X,Y)` with `Y` among `totals`, `X ⊆ Y`, and `(X,Y) ∈ here_there` when `X ⊂ Y`.
pub(crate) fn assemble(
    alphabet: &Alphabet,
    totals: &BTreeSet<crate::se::Interpretation>,
    here_there: &BTreeSet<SePair>,
) -> Result<SeModelSet> {
    let pairs = totals.iter().flat_map(|&y| {
        subsets(y)
            .map(move |x| SePair::new(x, y).expect("subset"))
            .filter(|&pair| pair.is_total() || here_there.contains(&pair))
    });
    SeModelSet::from_pairs(alphabet, pairs.collect::<Vec<_>>())
}

pub fn revise_se(p: &SeModelSet, q: &SeModelSet, kind: Revision) -> Result<SeModelSet> {
    if p.alphabet() != q.alphabet() {
        return Err(crate::error::Error::AlphabetMismatch);
    }
    if p.is_empty() {
        return Ok(q.clone());
    }
    let a = q.alphabet();
    match kind {
        Revision::Set => assemble(
            a,
            &sigma_subset(&q.totals(), &p.totals()),
            &sigma_subset(q.pairs(), p.pairs()),
        ),
        Revision::Card => assemble(a, &sigma_card(&q.totals(), &p.totals()), &sigma_card(q.pairs(), p.pairs())),
        Revision::Weak => {
            let closest = sigma_subset(q.pairs(), p.pairs());
            let totals: Vec<SePair> = closest.iter().map(|pair| SePair::total(pair.there())).collect();
            SeModelSet::from_pairs(a, closest.into_iter().chain(totals))
        }
    }
}

fn operands(p: &Program, q: &Program, a: &Alphabet) -> Result<(SeModelSet, SeModelSet)> {
    Ok((se_models(p, a)?, se_models(q, a)?))
}

/// `P + Q`: SE models common to both programs.
pub fn expand(p: &Program, q: &Program, a: &Alphabet) -> Result<ChangeResult> {
    let (sp, sq) = operands(p, q, a)?;
    ChangeResult::new(expand_se(&sp, &sq)?, ChangeOp::Expand)
}

pub fn revise_with(p: &Program, q: &Program, a: &Alphabet, kind: Revision) -> Result<ChangeResult> {
    let (sp, sq) = operands(p, q, a)?;
    ChangeResult::new(revise_se(&sp, &sq, kind)?, kind.op())
}

/// `P ∗ Q`.
pub fn revise(p: &Program, q: &Program, a: &Alphabet) -> Result<ChangeResult> {
    revise_with(p, q, a, Revision::Set)
}

pub fn revise_weak(p: &Program, q: &Program, a: &Alphabet) -> Result<ChangeResult> {
    revise_with(p, q, a, Revision::Weak)
}

pub fn revise_card(p: &Program, q: &Program, a: &Alphabet) -> Result<ChangeResult> {
    revise_with(p, q, a, Revision::Card)
}
