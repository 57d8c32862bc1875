//! Programs reconstructed from SE-model sets. A well-defined set has a
//! generalized program with exactly those SE models; a complete set also
//! has a disjunctive one.

use serde::Serialize;

use crate::error::Result;
use crate::se::{subsets, Interpretation, SeModelSet};
use crate::syntax::{Alphabet, Atom, Program, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CanonicalKind {
    Glp,
    Dlp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalProgram {
    pub program: Program,
    pub source: SeModelSet,
    pub kind: CanonicalKind,
}

fn atoms_of(a: &Alphabet, i: Interpretation) -> Vec<Atom> {
    i.atoms(a).cloned().collect()
}

fn complement(a: &Alphabet, i: Interpretation) -> Interpretation {
    Interpretation(a.full_mask() & !i.bits())
}

/// Keys rules by there-set, then here-set: size first, then bits.
fn order_key(x: Interpretation, y: Interpretation) -> (u32, u32, u32, u32) {
    (y.len(), y.bits(), x.len(), x.bits())
}

fn build(s: &SeModelSet, kind: CanonicalKind) -> Program {
    let a = s.alphabet();
    let mut keyed: Vec<((u32, u32, u32, u32), Rule)> = Vec::new();
    for y in crate::se::interpretations(a) {
        let outside = atoms_of(a, complement(a, y));
        if !s.contains_total(y) {
            keyed.push((order_key(y, y), Rule::new([], [], atoms_of(a, y), outside)));
            continue;
        }
        for x in subsets(y).filter(|&x| x != y) {
            let pair = crate::se::SePair::new(x, y).expect("x is a subset of y");
            if s.contains(pair) {
                continue;
            }
            let gained = Interpretation(y.bits() & !x.bits());
            let head_neg = match kind {
                CanonicalKind::Glp => atoms_of(a, y),
                CanonicalKind::Dlp => Vec::new(),
            };
            keyed.push((
                order_key(x, y),
                Rule::new(atoms_of(a, gained), head_neg, atoms_of(a, x), outside.clone()),
            ));
        }
    }
    keyed.sort_by_key(|(k, _)| *k);
    Program::from_rules(keyed.into_iter().map(|(_, r)| r)).with_declared_alphabet(a.atoms().iter().cloned())
}

/// Generalized program whose SE models are exactly `s`.
pub fn canonical_glp(s: &SeModelSet) -> Result<CanonicalProgram> {
    s.require_well_defined()?;
    Ok(CanonicalProgram {
        program: build(s, CanonicalKind::Glp),
        source: s.clone(),
        kind: CanonicalKind::Glp,
    })
}

/// Disjunctive program (no negation in heads) whose SE models are exactly `s`.
pub fn canonical_dlp(s: &SeModelSet) -> Result<CanonicalProgram> {
    s.require_complete()?;
    Ok(CanonicalProgram {
        program: build(s, CanonicalKind::Dlp),
        source: s.clone(),
        kind: CanonicalKind::Dlp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::se::se_models;
    use crate::syntax::parse_program;

    fn example() -> SeModelSet {
        let a = Alphabet::from_names(&["p", "q"]);
        SeModelSet::of(
            &a,
            &[
                (&["p"], &["p"]),
                (&["q"], &["q"]),
                (&["p"], &["p", "q"]),
                (&["q"], &["p", "q"]),
                (&["p", "q"], &["p", "q"]),
                (&[], &["p"]),
            ],
        )
    }

    fn bodies(p: &Program) -> Vec<String> {
        p.rules().iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn glp_of_example() {
        let c = canonical_glp(&example()).unwrap();
        assert_eq!(
            bodies(&c.program),
            vec![
                ":- not p, not q.",
                "q ; not q :- not p.",
                "p ; q ; not p ; not q.",
            ]
        );
        assert_eq!(se_models(&c.program, example().alphabet()).unwrap(), example());
    }

    #[test]
    fn dlp_of_completed_example() {
        let mut s = example();
        let a = s.alphabet().clone();
        s.insert(crate::se::SePair::new(Interpretation::EMPTY, Interpretation::of(&a, &["p", "q"])).unwrap());
        let c = canonical_dlp(&s).unwrap();
        assert_eq!(bodies(&c.program), vec![":- not p, not q.", "q :- not p."]);
        assert!(c.program.is_disjunctive());
        assert_eq!(se_models(&c.program, &a).unwrap(), s);
    }

    #[test]
    fn extremes() {
        let a = Alphabet::from_names(&["p", "q"]);
        let full = SeModelSet::full(&a).unwrap();
        assert!(canonical_glp(&full).unwrap().program.is_empty());
        assert!(canonical_dlp(&full).unwrap().program.is_empty());
        let empty = SeModelSet::empty(&a);
        let c = canonical_glp(&empty).unwrap();
        assert_eq!(c.program.len(), 4);
        assert!(c.program.rules().iter().all(Rule::is_constraint));
        assert!(se_models(&c.program, &a).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_inputs() {
        let a = Alphabet::from_names(&["p"]);
        let bad = SeModelSet::of(&a, &[(&[], &["p"])]);
        assert!(matches!(canonical_glp(&bad), Err(Error::NotWellDefined(_))));
        let incomplete = example();
        assert!(matches!(canonical_dlp(&incomplete), Err(Error::NotComplete { .. })));
    }

    #[test]
    fn rendered_output_reparses_with_its_alphabet() {
        let a = Alphabet::from_names(&["p", "q", "r"]);
        let s = SeModelSet::of(&a, &[(&["p"], &["p"])]);
        let text = canonical_glp(&s).unwrap().program.to_string();
        let back = parse_program(&text).unwrap();
        let alpha = crate::syntax::effective_alphabet(&[&back], None).unwrap();
        assert_eq!(alpha, a);
        assert_eq!(se_models(&back, &alpha).unwrap(), s);
    }
}
