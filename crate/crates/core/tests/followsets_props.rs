mod common;

use common::*;
use delaycode::bits::BitString;
use delaycode::followsets::{is_extendable, mem_pstar, pbar_set, pk_set, FollowSets};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pk_matches_enumeration(f in arb_tuple(3, 2, 2), k in 0usize..=3) {
        for i in 0..f.num_tables() {
            for n in 0..=3 {
                for b in BitString::all_of_length(n) {
                    prop_assert_eq!(pk_set(&f, i, k, &b).unwrap(), brute_pk(&f, i, k, &b, false), "P, table {}, b = {}", i, b);
                    prop_assert_eq!(pbar_set(&f, i, k, &b).unwrap(), brute_pk(&f, i, k, &b, true), "Pbar, table {}, b = {}", i, b);
                }
            }
        }
    }

    #[test]
    fn follow_sets_are_the_empty_prefix_case(f in arb_tuple(4, 3, 3), k in 0usize..=3) {
        let w = FollowSets::build(&f, k).unwrap();
        for i in 0..f.num_tables() {
            prop_assert_eq!(&pk_set(&f, i, k, &BitString::empty()).unwrap(), w.top(i));
            prop_assert_eq!(w.top(i), &brute_follow(&f, i, k));
        }
    }

    #[test]
    fn longer_lookahead_projects_down(f in arb_tuple(3, 3, 3), k in 0usize..=2, extra in 0usize..=2) {
        prop_assume!(is_extendable(&f));
        let k2 = k + extra;
        for i in 0..f.num_tables() {
            for n in 0..=2 {
                for b in BitString::all_of_length(n) {
                    for strict in [false, true] {
                        let get = |k| if strict { pbar_set(&f, i, k, &b).unwrap() } else { pk_set(&f, i, k, &b).unwrap() };
                        let short = get(k);
                        let projected: std::collections::BTreeSet<BitString> = get(k2).iter().map(|c| c.prefix(k)).collect();
                        prop_assert_eq!(short, projected);
                    }
                }
            }
        }
    }

    #[test]
    fn emptiness_does_not_depend_on_k(f in arb_tuple(3, 3, 3), k in 0usize..=3) {
        prop_assume!(is_extendable(&f));
        for i in 0..f.num_tables() {
            for n in 0..=3 {
                for b in BitString::all_of_length(n) {
                    prop_assert_eq!(pk_set(&f, i, k, &b).unwrap().is_empty(), pk_set(&f, i, 0, &b).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn containments(f in arb_tuple(4, 3, 3), k in 0usize..=3) {
        let w = FollowSets::build(&f, k).unwrap();
        for i in 0..f.num_tables() {
            let top = w.top(i);
            prop_assert!(pbar_set(&f, i, k, &BitString::empty()).unwrap().is_subset(top));
            for s in 0..f.alphabet_size() {
                if f.codeword(i, s).is_empty() {
                    prop_assert!(w.top(f.next(i, s)).is_subset(top));
                }
            }
        }
    }

    #[test]
    fn extendable_means_four_bits_from_every_table(f in arb_tuple(4, 3, 3)) {
        let deep = (0..f.num_tables()).all(|i| !brute_follow(&f, i, 4).is_empty());
        prop_assert_eq!(is_extendable(&f), deep);
    }

    #[test]
    fn membership_matches_enumeration(f in arb_tuple(3, 3, 3)) {
        for i in 0..f.num_tables() {
            for n in 0..=6 {
                for b in BitString::all_of_length(n) {
                    prop_assert_eq!(mem_pstar(&f, i, &b).unwrap(), brute_achievable(&f, i, &b), "table {}, b = {}", i, b);
                }
            }
        }
    }
}
