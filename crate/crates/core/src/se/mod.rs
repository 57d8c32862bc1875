//! Classical models, reducts, answer sets and SE models by exhaustive
//! enumeration over a finite alphabet.
//!
//! Interpretations are bit vectors keyed by the alphabet's lexicographic
//! order. Every enumeration checks the alphabet's atom cap first.

mod format;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{Alphabet, Atom, Program, Rule};

pub use format::{parse_se_set, se_set_to_json, se_set_to_text, SeSetJson};

/// A set of atoms of some alphabet, as a bit vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Interpretation(pub u32);

impl Interpretation {
    pub const EMPTY: Interpretation = Interpretation(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_subset(self, other: Interpretation) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Interpretation) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn union(self, other: Interpretation) -> Interpretation {
        Interpretation(self.0 | other.0)
    }

    pub fn symdiff(self, other: Interpretation) -> Interpretation {
        Interpretation(self.0 ^ other.0)
    }

    pub fn from_atoms<'a>(alphabet: &Alphabet, atoms: impl IntoIterator<Item = &'a Atom>) -> Result<Interpretation> {
        let mut bits = 0;
        for a in atoms {
            let i = alphabet.index_of(a).ok_or_else(|| Error::AtomNotInAlphabet(a.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Interpretation(bits))
    }

    /// Convenience for tests and examples; panics on unknown atoms.
    pub fn of(alphabet: &Alphabet, names: &[&str]) -> Interpretation {
        let atoms: Vec<Atom> = names.iter().map(|n| Atom::new(n).unwrap()).collect();
        Interpretation::from_atoms(alphabet, &atoms).expect("atom in alphabet")
    }

    pub fn atoms<'a>(self, alphabet: &'a Alphabet) -> impl Iterator<Item = &'a Atom> + 'a {
        alphabet
            .atoms()
            .iter()
            .enumerate()
            .filter(move |(i, _)| self.contains(*i))
            .map(|(_, a)| a)
    }

    /// `{p,q}` style rendering.
    pub fn display(self, alphabet: &Alphabet) -> String {
        let names: Vec<&str> = self.atoms(alphabet).map(Atom::as_str).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// All subsets of `set`, including `set` itself and the empty set.
pub fn subsets(set: Interpretation) -> impl Iterator<Item = Interpretation> {
    let mut next = Some(set.0);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & set.0) };
        Some(Interpretation(cur))
    })
}

/// All interpretations over the alphabet, in increasing bit order.
pub fn interpretations(alphabet: &Alphabet) -> impl Iterator<Item = Interpretation> {
    (0..=alphabet.full_mask() as u64).map(|b| Interpretation(b as u32))
}

/// An SE interpretation `(here, there)` with `here ⊆ there`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SePair {
    here: Interpretation,
    there: Interpretation,
}

impl SePair {
    pub fn new(here: Interpretation, there: Interpretation) -> Option<SePair> {
        here.is_subset(there).then_some(SePair { here, there })
    }

    pub fn total(y: Interpretation) -> SePair {
        SePair { here: y, there: y }
    }

    pub fn here(self) -> Interpretation {
        self.here
    }

    pub fn there(self) -> Interpretation {
        self.there
    }

    pub fn is_total(self) -> bool {
        self.here == self.there
    }

    pub fn display(self, alphabet: &Alphabet) -> String {
        format!("({},{})", self.here.display(alphabet), self.there.display(alphabet))
    }
}

// sorted by there-part first, then here-part
impl Ord for SePair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.there, self.here).cmp(&(other.there, other.here))
    }
}

impl PartialOrd for SePair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite set of SE interpretations over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeModelSet {
    alphabet: Alphabet,
    pairs: BTreeSet<SePair>,
}

impl SeModelSet {
    pub fn empty(alphabet: &Alphabet) -> SeModelSet {
        SeModelSet {
            alphabet: alphabet.clone(),
            pairs: BTreeSet::new(),
        }
    }

    /// Every SE interpretation over the alphabet: the models of the empty program.
    pub fn full(alphabet: &Alphabet) -> Result<SeModelSet> {
        alphabet.check_capacity()?;
        let pairs = interpretations(alphabet)
            .flat_map(|y| subsets(y).map(move |x| SePair { here: x, there: y }))
            .collect();
        Ok(SeModelSet {
            alphabet: alphabet.clone(),
            pairs,
        })
    }

    pub fn from_pairs(alphabet: &Alphabet, pairs: impl IntoIterator<Item = SePair>) -> Result<SeModelSet> {
        let full = alphabet.full_mask();
        let pairs: BTreeSet<SePair> = pairs.into_iter().collect();
        if let Some(bad) = pairs.iter().find(|p| p.there.0 & !full != 0) {
            return Err(Error::Profile(format!("pair with bits {:#b} lies outside the alphabet", bad.there.0)));
        }
        Ok(SeModelSet {
            alphabet: alphabet.clone(),
            pairs,
        })
    }

    /// Builds a set from `(here, there)` atom-name lists; panics on bad input.
    pub fn of(alphabet: &Alphabet, pairs: &[(&[&str], &[&str])]) -> SeModelSet {
        let pairs = pairs.iter().map(|(x, y)| {
            SePair::new(Interpretation::of(alphabet, x), Interpretation::of(alphabet, y)).expect("here ⊆ there")
        });
        SeModelSet::from_pairs(alphabet, pairs).expect("pairs within alphabet")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pairs(&self) -> &BTreeSet<SePair> {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = SePair> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: SePair) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn contains_total(&self, y: Interpretation) -> bool {
        self.pairs.contains(&SePair::total(y))
    }

    pub fn insert(&mut self, pair: SePair) -> bool {
        self.pairs.insert(pair)
    }

    /// The there-parts of total pairs, i.e. the classical models when the set
    /// is the SE set of a program.
    pub fn totals(&self) -> BTreeSet<Interpretation> {
        self.pairs.iter().filter(|p| p.is_total()).map(|p| p.there).collect()
    }

    fn same_alphabet(&self, other: &SeModelSet) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn intersection(&self, other: &SeModelSet) -> Result<SeModelSet> {
        self.same_alphabet(other)?;
        Ok(SeModelSet {
            alphabet: self.alphabet.clone(),
            pairs: self.pairs.intersection(&other.pairs).copied().collect(),
        })
    }

    pub fn union(&self, other: &SeModelSet) -> Result<SeModelSet> {
        self.same_alphabet(other)?;
        Ok(SeModelSet {
            alphabet: self.alphabet.clone(),
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    pub fn difference(&self, other: &SeModelSet) -> Result<SeModelSet> {
        self.same_alphabet(other)?;
        Ok(SeModelSet {
            alphabet: self.alphabet.clone(),
            pairs: self.pairs.difference(&other.pairs).copied().collect(),
        })
    }

    pub fn is_subset(&self, other: &SeModelSet) -> bool {
        self.alphabet == other.alphabet && self.pairs.is_subset(&other.pairs)
    }

    /// `(X,Y) ∈ S` implies `(Y,Y) ∈ S`.
    pub fn is_well_defined(&self) -> bool {
        self.first_undefined().is_none()
    }

    fn first_undefined(&self) -> Option<SePair> {
        self.pairs.iter().copied().find(|p| !self.contains_total(p.there))
    }

    pub fn require_well_defined(&self) -> Result<()> {
        match self.first_undefined() {
            Some(p) => Err(Error::NotWellDefined(p.display(&self.alphabet))),
            None => Ok(()),
        }
    }

    /// For a well-defined set: `(X,Y) ∈ S`, `Y ⊆ Z`, `(Z,Z) ∈ S` imply `(X,Z) ∈ S`.
    pub fn is_complete(&self) -> Result<bool> {
        self.require_well_defined()?;
        Ok(self.completeness_witness().is_none())
    }

    /// A triple `(X, Y, Z)` violating completeness, if any.
    pub fn completeness_witness(&self) -> Option<(Interpretation, Interpretation, Interpretation)> {
        let totals = self.totals();
        for p in &self.pairs {
            for &z in &totals {
                if p.there.is_subset(z) && !self.pairs.contains(&SePair { here: p.here, there: z }) {
                    return Some((p.here, p.there, z));
                }
            }
        }
        None
    }

    pub fn require_complete(&self) -> Result<()> {
        self.require_well_defined()?;
        match self.completeness_witness() {
            Some((x, y, z)) => Err(Error::NotComplete {
                here_there: format!("({},{})", x.display(&self.alphabet), y.display(&self.alphabet)),
                here: x.display(&self.alphabet),
                total: z.display(&self.alphabet),
            }),
            None => Ok(()),
        }
    }

    /// Least complete superset of a well-defined set.
    pub fn complete_closure(&self) -> Result<SeModelSet> {
        self.require_well_defined()?;
        // a single pass suffices: lifting never adds total pairs
        let totals = self.totals();
        let mut pairs = self.pairs.clone();
        for p in &self.pairs {
            for &z in &totals {
                if p.there.is_subset(z) {
                    pairs.insert(SePair { here: p.here, there: z });
                }
            }
        }
        Ok(SeModelSet {
            alphabet: self.alphabet.clone(),
            pairs,
        })
    }

    /// The same pairs re-keyed onto a larger alphabet (same atoms plus more).
    pub fn embed(&self, target: &Alphabet) -> Result<SeModelSet> {
        let map = bit_map(&self.alphabet, target)?;
        let pairs = self
            .pairs
            .iter()
            .map(|p| SePair {
                here: remap(p.here, &map),
                there: remap(p.there, &map),
            })
            .collect();
        Ok(SeModelSet {
            alphabet: target.clone(),
            pairs,
        })
    }

    /// Pairs in listing order: by there-part (size, then atoms), and within
    /// one there-part from the total pair down to the smallest here-parts.
    pub fn listing(&self) -> Vec<SePair> {
        let mut v: Vec<SePair> = self.iter().collect();
        v.sort_by_key(|p| (p.there().len(), p.there().bits(), std::cmp::Reverse(p.here().len()), p.here().bits()));
        v
    }

    /// One pair per line in `({x},{x,y})` form.
    pub fn to_text(&self) -> String {
        se_set_to_text(self)
    }
}

fn bit_map(from: &Alphabet, to: &Alphabet) -> Result<Vec<usize>> {
    from.atoms()
        .iter()
        .map(|a| to.index_of(a).ok_or_else(|| Error::AtomNotInAlphabet(a.to_string())))
        .collect()
}

fn remap(i: Interpretation, map: &[usize]) -> Interpretation {
    let mut bits = 0;
    for (from, &to) in map.iter().enumerate() {
        if i.contains(from) {
            bits |= 1 << to;
        }
    }
    Interpretation(bits)
}

impl fmt::Display for SeModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.listing().iter().map(|p| p.display(&self.alphabet)).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// A rule over bit masks of a fixed alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompiledRule {
    pub head_pos: u32,
    pub head_neg: u32,
    pub body_pos: u32,
    pub body_neg: u32,
}

impl CompiledRule {
    /// Classical truth, reading `not` as classical negation.
    pub fn holds_in(&self, i: Interpretation) -> bool {
        let body = self.body_pos & !i.0 == 0 && self.body_neg & i.0 == 0;
        let head = self.head_pos & i.0 != 0 || self.head_neg & !i.0 != 0;
        !body || head
    }

    /// Whether the rule survives in the reduct relative to `y`.
    pub fn in_reduct(&self, y: Interpretation) -> bool {
        self.head_neg & !y.0 == 0 && self.body_neg & y.0 == 0
    }

    /// Truth of the reduct rule `H+ <- B+` in `x`.
    pub fn positive_holds_in(&self, x: Interpretation) -> bool {
        self.body_pos & !x.0 != 0 || self.head_pos & x.0 != 0
    }
}

pub fn compile(p: &Program, a: &Alphabet) -> Result<Vec<CompiledRule>> {
    let mask = |atoms: &BTreeSet<Atom>| Interpretation::from_atoms(a, atoms).map(|i| i.0);
    p.rules()
        .iter()
        .map(|r: &Rule| {
            Ok(CompiledRule {
                head_pos: mask(&r.head_pos)?,
                head_neg: mask(&r.head_neg)?,
                body_pos: mask(&r.body_pos)?,
                body_neg: mask(&r.body_neg)?,
            })
        })
        .collect()
}

fn is_model(rules: &[CompiledRule], i: Interpretation) -> bool {
    rules.iter().all(|r| r.holds_in(i))
}

fn is_reduct_model(rules: &[CompiledRule], x: Interpretation, y: Interpretation) -> bool {
    rules.iter().all(|r| !r.in_reduct(y) || r.positive_holds_in(x))
}

pub fn classical_models(p: &Program, a: &Alphabet) -> Result<BTreeSet<Interpretation>> {
    a.check_capacity()?;
    let rules = compile(p, a)?;
    Ok(interpretations(a).filter(|&i| is_model(&rules, i)).collect())
}

/// `{H+ <- B+ | H- ⊆ Y, B- ∩ Y = ∅}`.
pub fn reduct(p: &Program, y: &BTreeSet<Atom>) -> Program {
    Program::from_rules(
        p.rules()
            .iter()
            .filter(|r| r.head_neg.is_subset(y) && r.body_neg.is_disjoint(y))
            .map(|r| Rule::new(r.head_pos.iter().cloned(), [], r.body_pos.iter().cloned(), [])),
    )
}

pub fn answer_sets(p: &Program, a: &Alphabet) -> Result<BTreeSet<Interpretation>> {
    a.check_capacity()?;
    let rules = compile(p, a)?;
    Ok(interpretations(a)
        .filter(|&y| {
            is_model(&rules, y)
                && !subsets(y)
                    .filter(|&x| x != y)
                    .any(|x| is_reduct_model(&rules, x, y))
        })
        .collect())
}

pub fn se_models(p: &Program, a: &Alphabet) -> Result<SeModelSet> {
    a.check_capacity()?;
    let rules = compile(p, a)?;
    let mut pairs = BTreeSet::new();
    for y in interpretations(a) {
        if !is_model(&rules, y) {
            continue;
        }
        for x in subsets(y) {
            if is_reduct_model(&rules, x, y) {
                pairs.insert(SePair { here: x, there: y });
            }
        }
    }
    Ok(SeModelSet {
        alphabet: a.clone(),
        pairs,
    })
}

/// `P ⊨_s Q`: every SE model of `p` is one of `q`.
pub fn entails_s(p: &Program, q: &Program, a: &Alphabet) -> Result<bool> {
    Ok(se_models(p, a)?.is_subset(&se_models(q, a)?))
}

pub fn strongly_equivalent(p: &Program, q: &Program, a: &Alphabet) -> Result<bool> {
    Ok(se_models(p, a)? == se_models(q, a)?)
}
