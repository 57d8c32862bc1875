//! Helpers shared by the integration tests, including a small brute-force
//! engine written straight from the definitions. It shares no code with the
//! library beyond the program and alphabet types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use sechange::encoding::Task;
use sechange::postulates::{GeneratorConfig, ProgramGenerator};
use sechange::se::{parse_se_set, se_models, SeModelSet, SePair};
use sechange::syntax::{parse_program, Alphabet, Atom, BeliefProfile, Program};

pub fn prog(text: &str) -> Program {
    parse_program(text).unwrap_or_else(|e| panic!("{text:?}: {e}"))
}

pub fn alpha(names: &[&str]) -> Alphabet {
    Alphabet::from_names(names)
}

/// Reads a listing such as `(p,pq) (∅,∅)`.
pub fn set(a: &Alphabet, listing: &str) -> SeModelSet {
    parse_se_set(listing, Some(a)).unwrap_or_else(|e| panic!("{listing:?}: {e}"))
}

/// Oracle SE pairs are `(here, there)` bitmasks over the alphabet order.
pub type Pair = (u32, u32);

pub fn to_pairs(s: &SeModelSet) -> BTreeSet<Pair> {
    s.iter().map(|p| (p.here().bits(), p.there().bits())).collect()
}

pub fn from_pairs(a: &Alphabet, pairs: &BTreeSet<Pair>) -> SeModelSet {
    use sechange::se::Interpretation;
    let pairs = pairs
        .iter()
        .map(|&(x, y)| SePair::new(Interpretation(x), Interpretation(y)).expect("here inside there"));
    SeModelSet::from_pairs(a, pairs).unwrap()
}

fn mask(a: &Alphabet, atoms: &BTreeSet<Atom>) -> u32 {
    atoms.iter().map(|at| 1u32 << a.index_of(at).expect("atom in alphabet")).sum()
}

struct Parts {
    hp: u32,
    hn: u32,
    bp: u32,
    bn: u32,
}

fn parts(p: &Program, a: &Alphabet) -> Vec<Parts> {
    p.rules()
        .iter()
        .map(|r| Parts {
            hp: mask(a, &r.head_pos),
            hn: mask(a, &r.head_neg),
            bp: mask(a, &r.body_pos),
            bn: mask(a, &r.body_neg),
        })
        .collect()
}

fn sub(x: u32, y: u32) -> bool {
    x & !y == 0
}

/// `I ⊨ r`: if the body holds then some head literal does.
fn satisfies(i: u32, r: &Parts) -> bool {
    let body = sub(r.bp, i) && r.bn & i == 0;
    !body || r.hp & i != 0 || !sub(r.hn, i)
}

/// `X ⊨ P^Y`, building the reduct rule by rule.
fn models_reduct(x: u32, y: u32, rules: &[Parts]) -> bool {
    rules
        .iter()
        .filter(|r| sub(r.hn, y) && r.bn & y == 0)
        .all(|r| !sub(r.bp, x) || r.hp & x != 0)
}

fn all(a: &Alphabet) -> impl Iterator<Item = u32> {
    0..(1u32 << a.len())
}

pub fn oracle_models(p: &Program, a: &Alphabet) -> BTreeSet<u32> {
    let rules = parts(p, a);
    all(a).filter(|&i| rules.iter().all(|r| satisfies(i, r))).collect()
}

pub fn oracle_se(p: &Program, a: &Alphabet) -> BTreeSet<Pair> {
    let rules = parts(p, a);
    let mut out = BTreeSet::new();
    for y in all(a) {
        if !rules.iter().all(|r| satisfies(y, r)) {
            continue;
        }
        for x in all(a).filter(|&x| sub(x, y)) {
            if models_reduct(x, y, &rules) {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Answer sets: `Y` is a minimal model of `P^Y`.
pub fn oracle_answer_sets(p: &Program, a: &Alphabet) -> BTreeSet<u32> {
    let rules = parts(p, a);
    all(a)
        .filter(|&y| {
            models_reduct(y, y, &rules)
                && rules.iter().all(|r| satisfies(y, r))
                && !all(a).any(|x| x != y && sub(x, y) && models_reduct(x, y, &rules))
        })
        .collect()
}

/// Interpretations and SE pairs with the symmetric difference and the two
/// orders on differences.
pub trait Pt: Copy + Ord {
    fn diff(self, o: Self) -> Self;
    fn contained(self, o: Self) -> bool;
    fn size(self) -> (u32, u32);
}

impl Pt for u32 {
    fn diff(self, o: u32) -> u32 {
        self ^ o
    }
    fn contained(self, o: u32) -> bool {
        sub(self, o)
    }
    fn size(self) -> (u32, u32) {
        (self.count_ones(), 0)
    }
}

impl Pt for Pair {
    fn diff(self, o: Pair) -> Pair {
        (self.0 ^ o.0, self.1 ^ o.1)
    }
    /// There-parts first, here-parts only on equal there-parts.
    fn contained(self, o: Pair) -> bool {
        sub(self.1, o.1) && (self.1 != o.1 || sub(self.0, o.0))
    }
    fn size(self) -> (u32, u32) {
        (self.1.count_ones(), self.0.count_ones())
    }
}

fn strictly<P: Pt>(a: P, b: P) -> bool {
    a.contained(b) && !b.contained(a)
}

/// Members of `e1` with a partner in `e2` whose difference no other
/// combination strictly undercuts.
pub fn oracle_sigma<P: Pt>(e1: &BTreeSet<P>, e2: &BTreeSet<P>, card: bool) -> BTreeSet<P> {
    let below = |a: P, b: P| if card { a.size() < b.size() } else { strictly(a, b) };
    e1.iter()
        .copied()
        .filter(|&a| {
            e2.iter().any(|&b| {
                let d = a.diff(b);
                !e1.iter().any(|&a2| e2.iter().any(|&b2| below(a2.diff(b2), d)))
            })
        })
        .collect()
}

fn totals(s: &BTreeSet<Pair>) -> BTreeSet<u32> {
    s.iter().filter(|p| p.0 == p.1).map(|p| p.1).collect()
}

fn assemble(models: &BTreeSet<u32>, pairs: &BTreeSet<Pair>) -> BTreeSet<Pair> {
    let mut out: BTreeSet<Pair> = models.iter().map(|&y| (y, y)).collect();
    out.extend(pairs.iter().filter(|p| p.0 != p.1 && models.contains(&p.1)));
    out
}

/// Revision on oracle SE sets of `P` and `Q`.
pub fn oracle_revise(p: &BTreeSet<Pair>, q: &BTreeSet<Pair>, card: bool) -> BTreeSet<Pair> {
    if p.is_empty() {
        return q.clone();
    }
    let ys = oracle_sigma(&totals(q), &totals(p), card);
    assemble(&ys, &oracle_sigma(q, p, card))
}

fn tuples<P: Copy>(factors: &[Vec<P>]) -> Vec<Vec<P>> {
    factors.iter().fold(vec![Vec::new()], |acc, f| {
        acc.iter()
            .flat_map(|t| {
                f.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect()
    })
}

/// Differences of every coordinate pair `i < j`.
fn signature_a<P: Pt>(s: &[P]) -> Vec<P> {
    (0..s.len()).flat_map(|i| (i + 1..s.len()).map(move |j| s[i].diff(s[j]))).collect()
}

/// Differences of coordinate 0 against every other coordinate.
fn signature_b<P: Pt>(s: &[P]) -> Vec<P> {
    (1..s.len()).map(|j| s[0].diff(s[j])).collect()
}

/// `s ≤ t` on signatures: coordinatewise containment.
fn leq<P: Pt>(s: &[P], t: &[P]) -> bool {
    s.iter().zip(t).all(|(x, y)| x.contained(*y))
}

/// Tuples whose signature no other signature strictly undercuts. Tuples
/// with equal signatures compare alike, so only distinct ones are compared.
fn minimal<P: Pt>(all: &[Vec<P>], signature: fn(&[P]) -> Vec<P>) -> Vec<Vec<P>> {
    let sigs: BTreeSet<Vec<P>> = all.iter().map(|t| signature(t)).collect();
    let best: BTreeSet<&Vec<P>> = sigs
        .iter()
        .filter(|s| sigs.iter().all(|t| !leq(t, s) || leq(s, t)))
        .collect();
    all.iter().filter(|t| best.contains(&signature(t))).cloned().collect()
}

/// Minimal tuples under `≤_a` (`arbitration`) or `≤_b`.
pub fn oracle_min<P: Pt>(tuples: &[Vec<P>], arbitration: bool) -> Vec<Vec<P>> {
    minimal(tuples, if arbitration { signature_a } else { signature_b })
}

fn factors_of(sets: &[&BTreeSet<Pair>]) -> (Vec<Vec<u32>>, Vec<Vec<Pair>>) {
    (
        sets.iter().map(|s| totals(s).into_iter().collect()).collect(),
        sets.iter().map(|s| s.iter().copied().collect()).collect(),
    )
}

pub fn oracle_arbitrate(sets: &[BTreeSet<Pair>]) -> BTreeSet<Pair> {
    let kept: Vec<&BTreeSet<Pair>> = sets.iter().filter(|s| !s.is_empty()).collect();
    if kept.is_empty() {
        return BTreeSet::new();
    }
    let (mods, pairs) = factors_of(&kept);
    let ys = minimal(&tuples(&mods), signature_a).into_iter().flatten().collect();
    let xs = minimal(&tuples(&pairs), signature_a).into_iter().flatten().collect();
    assemble(&ys, &xs)
}

/// `sets[0]` is the constraints program.
pub fn oracle_merge(sets: &[BTreeSet<Pair>]) -> BTreeSet<Pair> {
    if sets[0].is_empty() {
        return BTreeSet::new();
    }
    let kept: Vec<&BTreeSet<Pair>> = sets
        .iter()
        .enumerate()
        .filter(|(i, s)| *i == 0 || !s.is_empty())
        .map(|(_, s)| s)
        .collect();
    let (mods, pairs) = factors_of(&kept);
    let ys = minimal(&tuples(&mods), signature_b).iter().map(|t| t[0]).collect();
    let xs = minimal(&tuples(&pairs), signature_b).iter().map(|t| t[0]).collect();
    assemble(&ys, &xs)
}

/// Every SE interpretation over `a`.
pub fn every_pair(a: &Alphabet) -> BTreeSet<Pair> {
    all(a).flat_map(|y| all(a).filter(move |&x| sub(x, y)).map(move |x| (x, y))).collect()
}

/// Random profiles of satisfiable members over at most three atoms, with
/// no atom-free rules and at least one atom overall.
pub fn random_profile(task: Task, seed: u64, trial: u64) -> BeliefProfile {
    (0..)
        .map(|attempt| draw_profile(task, seed, trial * 1000 + attempt))
        .find(|psi| psi.programs.iter().any(|p| !p.is_empty()))
        .expect("some draw mentions an atom")
}

fn draw_profile(task: Task, seed: u64, trial: u64) -> BeliefProfile {
    let cfg = GeneratorConfig {
        atom_count: 3,
        max_rules: 3,
        seed,
        allow_empty_rules: false,
        ..GeneratorConfig::default()
    };
    let mut g = ProgramGenerator::for_trial(cfg, trial).unwrap();
    let a = g.alphabet();
    let mut satisfiable = || loop {
        let p = g.next_program();
        if !se_models(&p, &a).unwrap().is_empty() {
            return p;
        }
    };
    match task {
        Task::CardRevision | Task::SetRevision => BeliefProfile::new(vec![satisfiable(), satisfiable()]),
        Task::Arbitration => {
            let n = 2 + (trial % 2) as usize;
            BeliefProfile::new((0..n).map(|_| satisfiable()).collect())
        }
        Task::BasicMerge => {
            let p0 = satisfiable();
            BeliefProfile::with_constraints(p0, vec![satisfiable(), satisfiable()])
        }
    }
}
