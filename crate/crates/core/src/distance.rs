//! Symmetric differences and the orders built on them: the there-first
//! containment and cardinality orders on SE pairs, the closest-model
//! selectors used by revision, and tuple minimality for merging.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::se::{Interpretation, SePair};

/// Componentwise symmetric difference of two SE pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairDiff {
    pub here: Interpretation,
    pub there: Interpretation,
}

/// A distance value: the result of `⊖` on classical or SE interpretations.
pub trait Distance: Copy + Eq + Hash + Ord + Debug {
    /// Containment: plain `⊆` on sets, the there-first order on pairs.
    fn contained_in(self, other: Self) -> bool;

    fn strictly_contained_in(self, other: Self) -> bool {
        self.contained_in(other) && !other.contained_in(self)
    }

    /// Key of the cardinality order; smaller is closer.
    fn card_key(self) -> (u32, u32);

    /// Strictly monotone under `strictly_contained_in`.
    fn rank(self) -> u32;
}

impl Distance for Interpretation {
    fn contained_in(self, other: Self) -> bool {
        self.is_subset(other)
    }

    fn card_key(self) -> (u32, u32) {
        (self.len(), 0)
    }

    fn rank(self) -> u32 {
        self.len()
    }
}

impl Distance for PairDiff {
    fn contained_in(self, other: Self) -> bool {
        pairdiff_subset(self, other)
    }

    fn card_key(self) -> (u32, u32) {
        (self.there.len(), self.here.len())
    }

    fn rank(self) -> u32 {
        self.there.len() * 33 + self.here.len()
    }
}

/// Something `⊖` applies to.
pub trait Point: Copy + Ord + Hash + Debug {
    type Diff: Distance;
    fn symdiff(self, other: Self) -> Self::Diff;
}

impl Point for Interpretation {
    type Diff = Interpretation;

    fn symdiff(self, other: Self) -> Interpretation {
        Interpretation::symdiff(self, other)
    }
}

impl Point for SePair {
    type Diff = PairDiff;

    fn symdiff(self, other: Self) -> PairDiff {
        pair_symdiff(self, other)
    }
}

pub fn pair_symdiff(a: SePair, b: SePair) -> PairDiff {
    PairDiff {
        here: a.here().symdiff(b.here()),
        there: a.there().symdiff(b.there()),
    }
}

/// `(X1,X2) ⊆ (Y1,Y2)` iff `X2 ⊆ Y2`, and `X1 ⊆ Y1` when `X2 = Y2`.
pub fn pairdiff_subset(a: PairDiff, b: PairDiff) -> bool {
    a.there.is_subset(b.there) && (a.there != b.there || a.here.is_subset(b.here))
}

pub fn pairdiff_strict_subset(a: PairDiff, b: PairDiff) -> bool {
    pairdiff_subset(a, b) && !pairdiff_subset(b, a)
}

/// Strict part of the cardinality preorder: there-count first, then here-count.
pub fn pairdiff_card_lt(a: PairDiff, b: PairDiff) -> bool {
    a.card_key() < b.card_key()
}

/// Minimal elements of a finite set under a strict order, given a rank that
/// strictly increases along it.
fn skyline<T: Clone>(mut items: Vec<T>, rank: impl Fn(&T) -> u64, lt: impl Fn(&T, &T) -> bool) -> Vec<T> {
    items.sort_by_key(|t| rank(t));
    let mut minimal: Vec<T> = Vec::new();
    for item in items {
        if !minimal.iter().any(|m| lt(m, &item)) {
            minimal.push(item);
        }
    }
    minimal
}

/// The members of `e1` closest to `e2` under containment of differences:
/// `A ∈ e1` such that for some `B ∈ e2` no `A' ⊖ B'` is strictly below `A ⊖ B`.
pub fn sigma_subset<P: Point>(e1: &BTreeSet<P>, e2: &BTreeSet<P>) -> BTreeSet<P> {
    if e1.is_empty() || e2.is_empty() {
        return BTreeSet::new();
    }
    let diffs: HashSet<P::Diff> = e1.iter().flat_map(|&a| e2.iter().map(move |&b| a.symdiff(b))).collect();
    let minimal: HashSet<P::Diff> = skyline(
        diffs.into_iter().collect(),
        |d| d.rank() as u64,
        |a, b| a.strictly_contained_in(*b),
    )
    .into_iter()
    .collect();
    e1.iter()
        .copied()
        .filter(|&a| e2.iter().any(|&b| minimal.contains(&a.symdiff(b))))
        .collect()
}

/// The members of `e1` at minimal cardinality distance from `e2`.
pub fn sigma_card<P: Point>(e1: &BTreeSet<P>, e2: &BTreeSet<P>) -> BTreeSet<P> {
    let best = e1
        .iter()
        .flat_map(|&a| e2.iter().map(move |&b| a.symdiff(b).card_key()))
        .min();
    let Some(best) = best else {
        return BTreeSet::new();
    };
    e1.iter()
        .copied()
        .filter(|&a| e2.iter().any(|&b| a.symdiff(b).card_key() == best))
        .collect()
}

/// Tuple orders used by the two merging operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleOrder {
    /// Every pair of coordinates `i < j` (arbitration).
    Arbitration,
    /// Coordinate 0 against every other coordinate (basic merging).
    Basic,
}

fn signature<P: Point>(order: TupleOrder, t: &[P]) -> Vec<P::Diff> {
    match order {
        TupleOrder::Arbitration => (0..t.len())
            .flat_map(|i| (i + 1..t.len()).map(move |j| (i, j)))
            .map(|(i, j)| t[i].symdiff(t[j]))
            .collect(),
        TupleOrder::Basic => t.iter().skip(1).map(|&s| t[0].symdiff(s)).collect(),
    }
}

fn sig_rank<D: Distance>(sig: &[D]) -> u64 {
    sig.iter().map(|d| d.rank() as u64).sum()
}

fn sig_lt<D: Distance>(a: &[D], b: &[D]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x.contained_in(*y))
}

fn minimal_tuples<P: Point>(order: TupleOrder, tuples: &[Vec<P>]) -> Vec<Vec<P>> {
    let sigs: HashSet<Vec<P::Diff>> = tuples.iter().map(|t| signature(order, t)).collect();
    let minimal: HashSet<Vec<P::Diff>> = skyline(sigs.into_iter().collect(), |s| sig_rank(s), |a, b| sig_lt(a, b))
        .into_iter()
        .collect();
    let kept: BTreeSet<Vec<P>> = tuples
        .iter()
        .filter(|t| minimal.contains(&signature(order, t)))
        .cloned()
        .collect();
    kept.into_iter().collect()
}

/// Minimal tuples under the all-pairs order: `S ≤ T` iff `S_i ⊖ S_j ⊆ T_i ⊖ T_j` for all `i < j`.
pub fn min_a<P: Point>(tuples: &[Vec<P>]) -> Vec<Vec<P>> {
    minimal_tuples(TupleOrder::Arbitration, tuples)
}

/// Minimal tuples under `S ≤ T` iff `S_0 ⊖ S_j ⊆ T_0 ⊖ T_j` for all `j ≥ 1`.
pub fn min_b<P: Point>(tuples: &[Vec<P>]) -> Vec<Vec<P>> {
    minimal_tuples(TupleOrder::Basic, tuples)
}

/// Every coordinate of every tuple.
pub fn tuple_union<P: Point>(tuples: &[Vec<P>]) -> BTreeSet<P> {
    tuples.iter().flatten().copied().collect()
}

/// The 0-coordinates of the tuples.
pub fn coord_zero<P: Point>(tuples: &[Vec<P>]) -> BTreeSet<P> {
    tuples.iter().filter_map(|t| t.first().copied()).collect()
}

fn product_size<P>(factors: &[Vec<P>]) -> u128 {
    factors.iter().map(|f| f.len() as u128).product()
}

fn check_product<P>(factors: &[Vec<P>], max_tuples: u64) -> Result<()> {
    let size = product_size(factors);
    if size > max_tuples as u128 {
        return Err(Error::TupleCapacity {
            tuples: size,
            max: max_tuples,
        });
    }
    Ok(())
}

/// Calls `f` on every tuple of the cartesian product, in odometer order.
fn for_each_tuple<P: Copy>(factors: &[Vec<P>], mut f: impl FnMut(&[P])) {
    if factors.iter().any(|x| x.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; factors.len()];
    let mut tuple: Vec<P> = factors.iter().map(|x| x[0]).collect();
    loop {
        f(&tuple);
        let mut k = factors.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < factors[k].len() {
                tuple[k] = factors[k][idx[k]];
                break;
            }
            idx[k] = 0;
            tuple[k] = factors[k][0];
        }
    }
}

/// Materializes the cartesian product of the factors, subject to the cap.
pub fn product<P: Copy>(factors: &[Vec<P>], max_tuples: u64) -> Result<Vec<Vec<P>>> {
    check_product(factors, max_tuples)?;
    let mut out = Vec::with_capacity(product_size(factors) as usize);
    for_each_tuple(factors, |t| out.push(t.to_vec()));
    Ok(out)
}

/// `∪ Min_a(F_1 × … × F_n)` without materializing the product: one pass
/// collects distinct signatures, a second collects coordinates of tuples
/// whose signature is minimal.
pub fn union_of_min_a<P: Point>(factors: &[Vec<P>], max_tuples: u64) -> Result<BTreeSet<P>> {
    check_product(factors, max_tuples)?;
    let mut sigs: HashSet<Vec<P::Diff>> = HashSet::new();
    for_each_tuple(factors, |t| {
        sigs.insert(signature(TupleOrder::Arbitration, t));
    });
    let minimal: HashSet<Vec<P::Diff>> = skyline(sigs.into_iter().collect(), |s| sig_rank(s), |a, b| sig_lt(a, b))
        .into_iter()
        .collect();
    let mut out = BTreeSet::new();
    for_each_tuple(factors, |t| {
        if minimal.contains(&signature(TupleOrder::Arbitration, t)) {
            out.extend(t.iter().copied());
        }
    });
    Ok(out)
}

/// `Min_b(F_0 × … × F_n)_0`. The order compares coordinate 0 with each other
/// coordinate separately, so for a fixed first coordinate the minimal
/// signatures are the products of per-coordinate minimal distances; the
/// global minima are then found among those candidates only.
pub fn coord_zero_of_min_b<P: Point>(factors: &[Vec<P>], max_tuples: u64) -> Result<BTreeSet<P>> {
    let Some((first, rest)) = factors.split_first() else {
        return Ok(BTreeSet::new());
    };
    if factors.iter().any(|f| f.is_empty()) {
        return Ok(BTreeSet::new());
    }
    let mut candidates: Vec<(P, Vec<P::Diff>)> = Vec::new();
    let mut budget = max_tuples as u128;
    for &s0 in first {
        let per_coord: Vec<Vec<P::Diff>> = rest
            .iter()
            .map(|f| {
                let ds: BTreeSet<P::Diff> = f.iter().map(|&s| s0.symdiff(s)).collect();
                skyline(ds.into_iter().collect(), |d| d.rank() as u64, |a, b| a.strictly_contained_in(*b))
            })
            .collect();
        let count = product_size(&per_coord);
        if count > budget {
            return Err(Error::TupleCapacity {
                tuples: count,
                max: max_tuples,
            });
        }
        budget -= count;
        if per_coord.is_empty() {
            candidates.push((s0, Vec::new()));
        } else {
            for_each_tuple(&per_coord, |sig| candidates.push((s0, sig.to_vec())));
        }
    }
    let distinct: BTreeSet<Vec<P::Diff>> = candidates.iter().map(|(_, s)| s.clone()).collect();
    let minimal: HashSet<Vec<P::Diff>> = skyline(distinct.into_iter().collect(), |s| sig_rank(s), |a, b| sig_lt(a, b))
        .into_iter()
        .collect();
    Ok(candidates
        .into_iter()
        .filter(|(_, sig)| minimal.contains(sig))
        .map(|(s0, _)| s0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Alphabet;

    fn pq() -> Alphabet {
        Alphabet::from_names(&["p", "q"])
    }

    fn pair(a: &Alphabet, x: &[&str], y: &[&str]) -> SePair {
        SePair::new(Interpretation::of(a, x), Interpretation::of(a, y)).unwrap()
    }

    fn diff(a: &Alphabet, x: &[&str], y: &[&str]) -> PairDiff {
        PairDiff {
            here: Interpretation::of(a, x),
            there: Interpretation::of(a, y),
        }
    }

    #[test]
    fn symdiff_examples() {
        let a = pq();
        assert_eq!(pair_symdiff(pair(&a, &["p"], &["p", "q"]), pair(&a, &["p", "q"], &["p", "q"])), diff(&a, &["q"], &[]));
        let s = pair(&a, &[], &["p"]);
        assert_eq!(pair_symdiff(s, s), diff(&a, &[], &[]));
        assert_eq!(
            pair_symdiff(pair(&a, &[], &["p"]), pair(&a, &["p", "q"], &["p", "q"])),
            diff(&a, &["p", "q"], &["q"])
        );
    }

    #[test]
    fn containment_order() {
        let a = pq();
        assert!(pairdiff_strict_subset(diff(&a, &["q"], &["q"]), diff(&a, &["p", "q"], &["q"])));
        let (x, y) = (diff(&a, &["q"], &["q"]), diff(&a, &["p"], &["p"]));
        assert!(!pairdiff_subset(x, y) && !pairdiff_subset(y, x));
        assert!(pairdiff_subset(x, x));
        assert!(!pairdiff_strict_subset(x, x));
        // there-parts decide first
        assert!(pairdiff_strict_subset(diff(&a, &["p", "q"], &[]), diff(&a, &[], &["q"])));
    }

    #[test]
    fn cardinality_order() {
        let a = pq();
        assert!(pairdiff_card_lt(diff(&a, &[], &["p"]), diff(&a, &["p"], &["p"])));
        assert!(pairdiff_card_lt(diff(&a, &["p", "q"], &[]), diff(&a, &[], &["p"])));
        let d = diff(&a, &["p"], &["q"]);
        assert!(!pairdiff_card_lt(d, d));
    }

    #[test]
    fn sigma_classical_example() {
        let a = pq();
        let e1: BTreeSet<_> = [Interpretation::of(&a, &[]), Interpretation::of(&a, &["p"])].into();
        let e2: BTreeSet<_> = [Interpretation::of(&a, &["p", "q"])].into();
        assert_eq!(sigma_subset(&e1, &e2), [Interpretation::of(&a, &["p"])].into());
        assert_eq!(sigma_subset(&e1, &e1), e1);
        assert!(sigma_subset(&e1, &BTreeSet::new()).is_empty());
    }

    #[test]
    fn sigma_se_example() {
        // SE({:- p, q}) against SE({p. q.}) over {p,q}
        let a = pq();
        let e1: BTreeSet<SePair> = [
            pair(&a, &[], &[]),
            pair(&a, &[], &["p"]),
            pair(&a, &["p"], &["p"]),
            pair(&a, &[], &["q"]),
            pair(&a, &["q"], &["q"]),
        ]
        .into();
        let e2: BTreeSet<SePair> = [pair(&a, &["p", "q"], &["p", "q"])].into();
        assert_eq!(sigma_subset(&e1, &e2), [pair(&a, &["p"], &["p"]), pair(&a, &["q"], &["q"])].into());
    }

    #[test]
    fn sigma_card_examples() {
        let a = Alphabet::from_names(&["p", "q", "r"]);
        let e1: BTreeSet<_> = [Interpretation::of(&a, &["p"]), Interpretation::of(&a, &["q", "r"])].into();
        let e2: BTreeSet<_> = [Interpretation::of(&a, &["p", "q", "r"])].into();
        assert_eq!(sigma_card(&e1, &e2), [Interpretation::of(&a, &["q", "r"])].into());
        assert_eq!(sigma_subset(&e1, &e2), e1);
        assert_eq!(sigma_card(&e1, &e1), e1);
        let single: BTreeSet<_> = [Interpretation::of(&a, &["p"])].into();
        assert_eq!(sigma_card(&single, &e2), single);
    }

    #[test]
    fn arity_one_is_vacuous() {
        let a = pq();
        let tuples: Vec<Vec<Interpretation>> = vec![vec![Interpretation::of(&a, &[])], vec![Interpretation::of(&a, &["p"])]];
        assert_eq!(min_a(&tuples), tuples);
        assert_eq!(min_b(&tuples), tuples);
    }

    #[test]
    fn union_and_coord_zero() {
        let a = pq();
        let t = vec![vec![Interpretation::of(&a, &["p"]), Interpretation::of(&a, &["q"])]];
        assert_eq!(tuple_union(&t).len(), 2);
        assert_eq!(coord_zero(&t), [Interpretation::of(&a, &["p"])].into());
        assert!(tuple_union::<Interpretation>(&[]).is_empty());
    }

    #[test]
    fn product_cap() {
        let f = vec![vec![1u8; 10]; 3];
        assert!(matches!(product(&f, 999), Err(Error::TupleCapacity { tuples: 1000, max: 999 })));
        assert_eq!(product(&f, 1000).unwrap().len(), 1000);
    }
}
