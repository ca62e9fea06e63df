mod common;

use std::collections::BTreeSet;

use common::*;
use delaycode::bits::BitString;
use delaycode::decodability::is_prefix_free;
use delaycode::optimality::{check_necessary_condition, prefix_dfa};
use delaycode::tuple::CodeTuple;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn automaton_accepts_exactly_the_achievable_strings(f in arb_tuple(3, 3, 2)) {
        for i in 0..f.num_tables() {
            let dfa = prefix_dfa(&f, i).unwrap();
            for n in 0..=8 {
                for b in BitString::all_of_length(n) {
                    prop_assert_eq!(dfa.accepts(&b), brute_achievable(&f, i, &b), "table {}, b = {}", i, b);
                }
            }
        }
    }

    #[test]
    fn deep_states_match_explicit_paths(f in arb_tuple(3, 3, 2), k in 0usize..=3) {
        let dfa = prefix_dfa(&f, 0).unwrap();
        // a state reachable by a path of length ≥ k is reachable by one of
        // length in [k, k + |Q|)
        // layer n holds the states reached by some path of exactly n bits
        let limit = k + dfa.num_states();
        let dfa = &dfa;
        let mut layer = BTreeSet::from([dfa.start()]);
        let mut expected = BTreeSet::new();
        for n in 0..limit {
            if n >= k {
                expected.extend(layer.iter().copied());
            }
            layer = layer
                .iter()
                .flat_map(|&q| [false, true].into_iter().filter_map(move |bit| dfa.step(q, bit)))
                .collect();
        }
        prop_assert_eq!(dfa.deep_states(k), expected);
    }
}

/// A prefix code is full when every internal node of its tree has two children.
fn is_full(code: &[BitString]) -> bool {
    let internal: BTreeSet<BitString> = code
        .iter()
        .flat_map(|c| (0..c.len()).map(move |n| c.prefix(n)))
        .collect();
    internal.iter().all(|p| {
        [false, true].iter().all(|&bit| {
            let mut child = p.clone();
            child.push(bit);
            internal.contains(&child) || code.contains(&child)
        })
    })
}

#[test]
fn single_prefix_codes_pass_iff_their_tree_is_full() {
    let pool: Vec<BitString> = (1..=3).flat_map(BitString::all_of_length).collect();
    let mut checked = 0;
    for a in &pool {
        for b in &pool {
            for c in &pool {
                let f = CodeTuple::single_table(&["a", "b", "c"], &[&a.to_string(), &b.to_string(), &c.to_string()])
                    .unwrap();
                if !is_prefix_free(&f, 0).unwrap() {
                    continue;
                }
                checked += 1;
                let v = check_necessary_condition(&f, 0).unwrap();
                assert_eq!(v.passes, is_full(&[a.clone(), b.clone(), c.clone()]), "{a} {b} {c}");
                if let Some(w) = v.witness {
                    assert!(!brute_achievable(&f, 0, &w.bits));
                }
            }
        }
    }
    assert!(checked > 100);
}
