mod common;

use common::*;
use delaycode::decodability::{is_k_delay_decodable, is_prefix_free};
use delaycode::followsets::is_extendable;
use delaycode::markov::is_regular;
use delaycode::optimality::check_necessary_condition;
use delaycode::search::{huffman_baseline, search_optimal, SearchBounds};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pruning_loses_nothing(seed in any::<u64>(), k in 0usize..=1) {
        let mu = random_dist(&mut rng(seed), 2);
        let pruned = search_optimal(&mu, k, &SearchBounds::new(1, 2, true)).unwrap();
        let mut bounds = SearchBounds::new(1, 2, true);
        bounds.pruning = false;
        let full = search_optimal(&mu, k, &bounds).unwrap();
        prop_assert_eq!(pruned.best_length, full.best_length);
        prop_assert!(pruned.explored <= full.explored);
    }

    #[test]
    fn exhaustive_single_table_is_huffman(seed in any::<u64>(), sigma in 2usize..=4) {
        let mu = random_dist(&mut rng(seed), sigma);
        let (huff, l) = huffman_baseline(&mu).unwrap();
        prop_assert!(is_prefix_free(&huff, 0).unwrap());
        let r = search_optimal(&mu, 0, &SearchBounds::new(1, sigma - 1, true)).unwrap();
        prop_assert_eq!(r.best_length, l);
    }

    #[test]
    fn winners_are_admissible_and_pass_the_necessary_condition(seed in any::<u64>(), k in 0usize..=1, sigma in 2usize..=3) {
        let mu = random_dist(&mut rng(seed), sigma);
        let r = search_optimal(&mu, k, &SearchBounds::new(1, 3, true)).unwrap();
        prop_assert!(r.complete);
        let f = &r.best;
        prop_assert!(is_regular(f) && is_extendable(f) && is_k_delay_decodable(f, k).unwrap().decodable);
        prop_assert!(check_necessary_condition(f, k).unwrap().passes, "{}", f);
    }
}

#[test]
fn two_table_search_at_zero_delay() {
    let mu = random_dist(&mut rng(7), 3);
    let r = search_optimal(&mu, 0, &SearchBounds::new(2, 2, true)).unwrap();
    let (_, l) = huffman_baseline(&mu).unwrap();
    assert_eq!(r.best_length, l);
    assert_eq!(r.best.num_tables(), 1);
    assert!(check_necessary_condition(&r.best, 0).unwrap().passes);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let mu = random_dist(&mut rng(11), 3);
    let bounds = SearchBounds::new(1, 3, true);
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| search_optimal(&mu, 1, &bounds).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
}
