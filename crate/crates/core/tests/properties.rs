mod common;

use common::*;
use proptest::prelude::*;
use sechange::canonical::canonical_glp;
use sechange::change::{expand, revise_with, Revision};
use sechange::distance::{min_a, min_b, pair_symdiff, sigma_card, sigma_subset, Distance};
use sechange::se::{se_models, strongly_equivalent, Interpretation, SePair};
use sechange::syntax::{effective_alphabet, parse_program, render_program, Atom, Program, Rule};

const NAMES: [&str; 3] = ["p", "q", "r"];

fn atoms(mask: u8) -> Vec<Atom> {
    (0..3).filter(|i| mask & (1 << i) != 0).map(|i| Atom::new(NAMES[i]).unwrap()).collect()
}

fn program() -> impl Strategy<Value = Program> {
    prop::collection::vec([0u8..8, 0u8..8, 0u8..8, 0u8..8], 0..6).prop_map(|rules| {
        Program::from_rules(
            rules
                .into_iter()
                .map(|[hp, hn, bp, bn]| Rule::new(atoms(hp), atoms(hn), atoms(bp), atoms(bn))),
        )
    })
}

fn se_pair() -> impl Strategy<Value = SePair> {
    (0u32..16, 0u32..16).prop_map(|(x, y)| SePair::new(Interpretation(x & y), Interpretation(y)).unwrap())
}

fn interp_set() -> impl Strategy<Value = std::collections::BTreeSet<Interpretation>> {
    prop::collection::btree_set((0u32..8).prop_map(Interpretation), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn render_then_parse_keeps_rules(p in program()) {
        let back = parse_program(&render_program(&p)).unwrap();
        prop_assert_eq!(back.len(), p.len());
        for (a, b) in back.rules().iter().zip(p.rules()) {
            prop_assert!(a.same_parts(b));
        }
        prop_assert_eq!(render_program(&back), render_program(&p));
    }

    #[test]
    fn canonical_program_is_strongly_equivalent(p in program()) {
        let a = alpha(&NAMES);
        let c = canonical_glp(&se_models(&p, &a).unwrap()).unwrap();
        prop_assert!(strongly_equivalent(&c.program, &p, &a).unwrap());
    }

    #[test]
    fn default_alphabet_grows_with_operands(p in program(), q in program()) {
        let one = effective_alphabet(&[&p], None).unwrap();
        let two = effective_alphabet(&[&p, &q], None).unwrap();
        prop_assert!(one.atoms().iter().all(|x| two.contains(x)));
    }

    #[test]
    fn closure_is_idempotent(p in program()) {
        let a = alpha(&NAMES);
        let closed = se_models(&p, &a).unwrap().complete_closure().unwrap();
        prop_assert!(closed.is_complete().unwrap());
        prop_assert_eq!(closed.complete_closure().unwrap(), closed);
    }

    #[test]
    fn expansion_is_symmetric_and_stronger(p in program(), q in program()) {
        let a = alpha(&NAMES);
        let pq = expand(&p, &q, &a).unwrap().se;
        prop_assert_eq!(&pq, &expand(&q, &p, &a).unwrap().se);
        prop_assert!(pq.is_subset(&se_models(&p, &a).unwrap()));
    }

    #[test]
    fn revision_results_are_well_defined(p in program(), q in program()) {
        let a = alpha(&NAMES);
        for kind in Revision::ALL {
            let r = revise_with(&p, &q, &a, kind).unwrap();
            prop_assert!(r.se.is_well_defined());
            prop_assert!(r.se.is_subset(&se_models(&q, &a).unwrap()));
        }
    }

    /// Containment on differences is a preorder; the cardinality order is total.
    #[test]
    fn difference_orders(a in se_pair(), b in se_pair(), c in se_pair(), d in se_pair(), e in se_pair(), f in se_pair()) {
        let (x, y, z) = (pair_symdiff(a, b), pair_symdiff(c, d), pair_symdiff(e, f));
        prop_assert!(x.contained_in(x));
        if x.contained_in(y) && y.contained_in(z) {
            prop_assert!(x.contained_in(z));
        }
        prop_assert!(!x.strictly_contained_in(x));
        prop_assert!(x.card_key() <= y.card_key() || y.card_key() <= x.card_key());
    }

    #[test]
    fn selections_keep_common_members(e1 in interp_set(), e2 in interp_set()) {
        for sel in [sigma_subset(&e1, &e2), sigma_card(&e1, &e2)] {
            prop_assert!(sel.is_subset(&e1));
            if !e2.is_empty() {
                prop_assert!(e1.intersection(&e2).all(|x| sel.contains(x)));
            }
        }
        prop_assert_eq!(sigma_subset(&e1, &e1), e1.clone());
        prop_assert_eq!(sigma_card(&e1, &e1), e1);
    }

    /// Tuple collections are sets, as products never repeat a tuple.
    #[test]
    fn tuple_minimisation_matches_pairwise_domination(
        tuples in prop::collection::vec(prop::collection::vec(0u32..16, 3), 1..200)
    ) {
        let tuples: Vec<Vec<Interpretation>> = tuples
            .into_iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|t| t.into_iter().map(Interpretation).collect())
            .collect();
        let raw: Vec<Vec<u32>> = tuples.iter().map(|t| t.iter().map(|i| i.bits()).collect()).collect();
        let sorted = |v: Vec<Vec<u32>>| { let mut v = v; v.sort(); v };
        let bits = |v: Vec<Vec<Interpretation>>| v.into_iter().map(|t| t.iter().map(|i| i.bits()).collect()).collect::<Vec<Vec<u32>>>();
        prop_assert_eq!(sorted(bits(min_a(&tuples))), sorted(oracle_min(&raw, true)));
        prop_assert_eq!(sorted(bits(min_b(&tuples))), sorted(oracle_min(&raw, false)));
    }

    #[test]
    fn pair_tuple_minimisation_matches_pairwise_domination(
        tuples in prop::collection::vec(prop::collection::vec(se_pair(), 2..4), 1..120)
    ) {
        let width = tuples[0].len();
        let tuples: Vec<Vec<SePair>> = tuples
            .into_iter()
            .filter(|t| t.len() == width)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let raw: Vec<Vec<Pair>> =
            tuples.iter().map(|t| t.iter().map(|p| (p.here().bits(), p.there().bits())).collect()).collect();
        let as_raw = |v: Vec<Vec<SePair>>| {
            let mut v: Vec<Vec<Pair>> = v.iter().map(|t| t.iter().map(|p| (p.here().bits(), p.there().bits())).collect()).collect();
            v.sort();
            v
        };
        let sorted = |mut v: Vec<Vec<Pair>>| { v.sort(); v };
        prop_assert_eq!(as_raw(min_a(&tuples)), sorted(oracle_min(&raw, true)));
        prop_assert_eq!(as_raw(min_b(&tuples)), sorted(oracle_min(&raw, false)));
    }
}
