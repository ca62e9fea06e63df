mod common;

use common::*;
use delaycode::bits::BitString;
use delaycode::decodability::{
    classify_pair, is_k_delay_decodable, is_prefix_free, violations, witness_holds, PairClass,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn every_witness_is_genuine(f in arb_tuple(4, 3, 3), k in 0usize..=3) {
        let all = violations(&f, k).unwrap();
        let verdict = is_k_delay_decodable(&f, k).unwrap();
        prop_assert_eq!(verdict.decodable, all.is_empty());
        prop_assert_eq!(verdict.witness.as_ref(), all.first());
        for w in &all {
            prop_assert!(witness_holds(&f, k, w).unwrap(), "{}", w.describe(&f));
            prop_assert_eq!(w.lookahead.len(), k);
        }
    }

    #[test]
    fn pair_classification_agrees_with_the_decodability_test(f in arb_tuple(2, 2, 2), k in 0usize..=2) {
        let decodable = is_k_delay_decodable(&f, k).unwrap().decodable;
        let all_decided = (0..f.num_tables()).all(|i| {
            all_strings(2, 3).iter().all(|x| {
                BitString::all_of_length(k).all(|c| classify(&f, i, x, &c) != Class::Neither)
            })
        });
        prop_assert_eq!(decodable, all_decided);
    }

    #[test]
    fn library_classifier_matches_the_pruned_oracle(f in arb_tuple(2, 2, 2), k in 0usize..=2) {
        for i in 0..f.num_tables() {
            for x in all_strings(2, 2) {
                for c in BitString::all_of_length(k) {
                    let horizon = x.len() + f.num_tables() * (encode(&f, i, &x).0.len() + k + 1);
                    let lib = classify_pair(&f, i, &x, &c, horizon).unwrap();
                    let expected = match classify(&f, i, &x, &c) {
                        Class::Positive => PairClass::Positive,
                        Class::Negative => PairClass::Negative,
                        Class::Neither => PairClass::Neither,
                    };
                    prop_assert_eq!(lib, expected);
                }
            }
        }
    }
}

#[test]
fn zero_delay_means_prefix_free_tables() {
    for m in 1..=2 {
        for f in all_tuples(2, m, 2) {
            let pf = (0..m).all(|i| is_prefix_free(&f, i).unwrap());
            assert_eq!(is_k_delay_decodable(&f, 0).unwrap().decodable, pf, "{f}");
        }
    }
    for f in all_tuples(3, 1, 2) {
        let pf = is_prefix_free(&f, 0).unwrap();
        assert_eq!(is_k_delay_decodable(&f, 0).unwrap().decodable, pf, "{f}");
    }
}
