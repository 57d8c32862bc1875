//! Meet, join, arbitration and basic merging of belief profiles.

use std::fmt;

use serde::Serialize;

use crate::canonical::{canonical_glp, CanonicalProgram};
use crate::change::{assemble, ChangeOp, ChangeResult};
use crate::distance::{coord_zero_of_min_b, union_of_min_a};
use crate::error::{Error, Result};
use crate::se::{se_models, SeModelSet};
use crate::syntax::{Alphabet, BeliefProfile, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeOp {
    Arbitrate,
    MergeBasic,
}

impl fmt::Display for MergeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MergeOp::Arbitrate => "arbitrate",
            MergeOp::MergeBasic => "merge_basic",
        })
    }
}

/// Outcome of a merge on SE sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merged {
    pub se: SeModelSet,
    /// Profile indices of unsatisfiable members left out.
    pub dropped: Vec<usize>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeResult {
    pub se: SeModelSet,
    pub program: CanonicalProgram,
    pub operator: MergeOp,
    pub dropped: Vec<usize>,
    pub warning: Option<String>,
}

impl MergeResult {
    fn new(m: Merged, operator: MergeOp) -> Result<MergeResult> {
        Ok(MergeResult {
            program: canonical_glp(&m.se)?,
            se: m.se,
            operator,
            dropped: m.dropped,
            warning: m.warning,
        })
    }
}

pub fn meet(p: &Program, q: &Program, a: &Alphabet) -> Result<ChangeResult> {
    ChangeResult::new(se_models(p, a)?.intersection(&se_models(q, a)?)?, ChangeOp::Meet)
}

pub fn join(p: &Program, q: &Program, a: &Alphabet) -> Result<ChangeResult> {
    ChangeResult::new(se_models(p, a)?.union(&se_models(q, a)?)?, ChangeOp::Join)
}

fn same_alphabet(sets: &[SeModelSet]) -> Result<Alphabet> {
    let a = sets
        .first()
        .map(|s| s.alphabet().clone())
        .ok_or_else(|| Error::Profile("empty profile".into()))?;
    if sets.iter().any(|s| s.alphabet() != &a) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(a)
}

fn factors(sets: &[&SeModelSet]) -> (Vec<Vec<crate::se::Interpretation>>, Vec<Vec<crate::se::SePair>>) {
    (
        sets.iter().map(|s| s.totals().into_iter().collect()).collect(),
        sets.iter().map(|s| s.iter().collect()).collect(),
    )
}

/// Arbitration over SE sets of the profile members.
pub fn arbitrate_se(sets: &[SeModelSet]) -> Result<Merged> {
    let a = same_alphabet(sets)?;
    let max = a.limits().max_tuples;
    let dropped: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].is_empty()).collect();
    let kept: Vec<&SeModelSet> = sets.iter().filter(|s| !s.is_empty()).collect();
    if kept.is_empty() {
        return Ok(Merged {
            se: SeModelSet::empty(&a),
            dropped,
            warning: Some("every profile member is unsatisfiable; the result is unsatisfiable".into()),
        });
    }
    let (mods, pairs) = factors(&kept);
    let se = assemble(&a, &union_of_min_a(&mods, max)?, &union_of_min_a(&pairs, max)?)?;
    Ok(Merged {
        se,
        dropped,
        warning: None,
    })
}

/// Basic merging; `sets[0]` holds the constraints.
pub fn merge_basic_se(sets: &[SeModelSet]) -> Result<Merged> {
    let a = same_alphabet(sets)?;
    let max = a.limits().max_tuples;
    let dropped: Vec<usize> = (1..sets.len()).filter(|&i| sets[i].is_empty()).collect();
    if sets[0].is_empty() {
        return Ok(Merged {
            se: SeModelSet::empty(&a),
            dropped,
            warning: Some("the constraints program is unsatisfiable; the result is unsatisfiable".into()),
        });
    }
    let kept: Vec<&SeModelSet> = sets
        .iter()
        .enumerate()
        .filter(|(i, s)| *i == 0 || !s.is_empty())
        .map(|(_, s)| s)
        .collect();
    let (mods, pairs) = factors(&kept);
    let se = assemble(&a, &coord_zero_of_min_b(&mods, max)?, &coord_zero_of_min_b(&pairs, max)?)?;
    Ok(Merged {
        se,
        dropped,
        warning: None,
    })
}

fn profile_sets(psi: &BeliefProfile, a: &Alphabet) -> Result<Vec<SeModelSet>> {
    psi.programs.iter().map(|p| se_models(p, a)).collect()
}

/// `∇(Ψ)`.
pub fn arbitrate(psi: &BeliefProfile, a: &Alphabet) -> Result<MergeResult> {
    if psi.has_constraints {
        return Err(Error::Profile("arbitration takes no constraints program".into()));
    }
    if psi.is_empty() {
        return Err(Error::Profile("arbitration needs at least one program".into()));
    }
    MergeResult::new(arbitrate_se(&profile_sets(psi, a)?)?, MergeOp::Arbitrate)
}

/// `Δ(⟨P₀, P₁, …, Pₙ⟩)`.
pub fn merge_basic(psi: &BeliefProfile, a: &Alphabet) -> Result<MergeResult> {
    if !psi.has_constraints || psi.is_empty() {
        return Err(Error::Profile("basic merging needs a constraints program at index 0".into()));
    }
    MergeResult::new(merge_basic_se(&profile_sets(psi, a)?)?, MergeOp::MergeBasic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::change::revise;
    use crate::syntax::parse_program;

    fn prog(s: &str) -> Program {
        parse_program(s).unwrap()
    }

    fn puv() -> Alphabet {
        Alphabet::from_names(&["p", "u", "v"])
    }

    #[test]
    fn arbitration_example() {
        let a = puv();
        let psi = BeliefProfile::new(vec![prog("p. u."), prog(":- p. v.")]);
        let r = arbitrate(&psi, &a).unwrap();
        assert_eq!(r.se, SeModelSet::of(&a, &[(&["p", "u", "v"], &["p", "u", "v"]), (&["u", "v"], &["u", "v"])]));
        assert_eq!(r.se, se_models(&prog("p ; not p. u. v."), &a).unwrap());
        let j = join(&revise(&prog("p. u."), &prog(":- p. v."), &a).unwrap().program.program, &revise(&prog(":- p. v."), &prog("p. u."), &a).unwrap().program.program, &a).unwrap();
        assert_eq!(j.se, r.se);
    }

    #[test]
    fn basic_merge_example() {
        let a = puv();
        let psi = BeliefProfile::with_constraints(Program::new(), vec![prog("p. u."), prog(":- p. v.")]);
        let r = merge_basic(&psi, &a).unwrap();
        assert_eq!(
            r.se,
            SeModelSet::of(&a, &[(&["u", "v"], &["u", "v"]), (&["u", "v"], &["p", "u", "v"]), (&["p", "u", "v"], &["p", "u", "v"])])
        );
        assert_eq!(r.se, se_models(&prog("u. v."), &a).unwrap());
    }

    #[test]
    fn contrast_example() {
        let a = Alphabet::from_names(&["p", "q"]);
        let members = vec![prog("p. q."), prog("not p. not q.")];
        let arb = arbitrate(&BeliefProfile::new(members.clone()), &a).unwrap();
        assert_eq!(arb.se, SeModelSet::of(&a, &[(&["p", "q"], &["p", "q"]), (&[], &[])]));
        let basic = merge_basic(&BeliefProfile::with_constraints(Program::new(), members), &a).unwrap();
        assert_eq!(basic.se, SeModelSet::full(&a).unwrap());
    }

    #[test]
    fn unsatisfiable_members() {
        let a = Alphabet::from_names(&["p"]);
        let r = arbitrate(&BeliefProfile::new(vec![prog(":- ."), prog("p.")]), &a).unwrap();
        assert_eq!(r.dropped, vec![0]);
        assert_eq!(r.se, se_models(&prog("p."), &a).unwrap());
        let none = arbitrate(&BeliefProfile::new(vec![prog(":- ."), prog("p. :- p.")]), &a).unwrap();
        assert!(none.se.is_empty() && none.warning.is_some());
        let r = merge_basic(&BeliefProfile::with_constraints(prog(":- ."), vec![prog("p.")]), &a).unwrap();
        assert!(r.se.is_empty());
        let r = merge_basic(&BeliefProfile::with_constraints(prog("p ; not p."), vec![prog(":- .")]), &a).unwrap();
        assert_eq!(r.dropped, vec![1]);
        assert_eq!(r.se, se_models(&prog("p ; not p."), &a).unwrap());
    }

    #[test]
    fn profile_shape_is_checked() {
        let a = Alphabet::from_names(&["p"]);
        assert!(arbitrate(&BeliefProfile::with_constraints(Program::new(), vec![]), &a).is_err());
        assert!(merge_basic(&BeliefProfile::new(vec![prog("p.")]), &a).is_err());
    }
}
