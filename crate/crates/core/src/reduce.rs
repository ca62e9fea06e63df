//! Shrinking a code-tuple until its tables have pairwise distinct k-bit
//! follow sets, without increasing the average codeword length.
//!
//! Each round takes the irreducible part, finds a class `I` of tables with
//! identical `P^k` sets, picks the member `p` of `I` with the smallest bias,
//! and redirects every successor that lands in `I` to `p`. The redirection
//! keeps all codewords and all follow sets, cannot raise `L` (every
//! successor moves to a table of no larger bias), and leaves `I \ {p}`
//! unreachable, so the next irreducible part is strictly smaller.

use std::collections::BTreeSet;

use crate::cost::{average_length, bias_vector};
use crate::decodability::is_k_delay_decodable;
use crate::error::{Error, Result};
use crate::followsets::{is_extendable, FollowSets, WordSet};
use crate::markov::{irreducible_part, is_irreducible, is_regular};
use crate::rational::Rational;
use crate::tuple::{CodeTuple, SourceDistribution, TableIndex};

/// One merge round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// Tables of the round's input that were outside `R_F` and dropped first.
    pub dropped: Vec<TableIndex>,
    /// Indices (within the irreducible part) sharing one follow set.
    pub merged_class: Vec<TableIndex>,
    /// The class member every redirected successor now points to.
    pub representative: TableIndex,
    pub length_before: Rational,
    pub length_after: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// Tables dropped by the final irreducible-part extraction.
    pub final_dropped: Vec<TableIndex>,
}

/// Reduces `f` to a tuple with `|𝒫^k| = |F|`.
///
/// The input must be regular, extendable and k-bit delay decodable. The
/// output is irreducible, extendable and k-bit delay decodable, has
/// `L ≤ L(f)`, `𝒫^k ⊆ 𝒫^k_f` and pairwise distinct follow sets; all of this
/// is re-checked before returning.
pub fn reduce_to_distinct(f: &CodeTuple, mu: &SourceDistribution, k: usize) -> Result<(CodeTuple, ReductionTrace)> {
    mu.check_matches(f)?;
    check_preconditions(f, k)?;
    let original_family = FollowSets::build(f, k)?.family();
    let original_length = average_length(f, mu)?;

    let mut trace = ReductionTrace::default();
    let mut current = f.clone();
    let result = loop {
        let (part, phi) = irreducible_part(&current)?;
        let dropped: Vec<TableIndex> = (0..current.num_tables()).filter(|i| !phi.contains(i)).collect();
        let sets = FollowSets::build(&part, k)?;
        let Some(class) = duplicate_class(&part, &sets) else {
            trace.final_dropped = dropped;
            break part;
        };
        let h = bias_vector(&part, mu)?;
        let representative = *class
            .iter()
            .min_by(|&&a, &&b| h[a].cmp(&h[b]).then(a.cmp(&b)))
            .expect("class has at least two members");
        let merged = part.with_successors(|_, _, next| if class.contains(&next) { representative } else { next });

        let after_sets = FollowSets::build(&merged, k)?;
        if (0..merged.num_tables()).any(|i| after_sets.top(i) != sets.top(i)) {
            return Err(Error::Internal("redirection changed a follow set".into()));
        }
        let length_before = average_length(&part, mu)?;
        let length_after = average_length(&merged, mu)?;
        if length_after > length_before {
            return Err(Error::Internal("redirection increased the average length".into()));
        }
        trace.steps.push(ReductionStep {
            dropped,
            merged_class: class,
            representative,
            length_before,
            length_after,
        });
        current = merged;
    };

    verify_output(&result, mu, k, &original_family, &original_length)?;
    Ok((result, trace))
}

fn check_preconditions(f: &CodeTuple, k: usize) -> Result<()> {
    let mut failed = Vec::new();
    if !is_regular(f) {
        failed.push("regular");
    }
    if !is_extendable(f) {
        failed.push("extendable");
    }
    if !is_k_delay_decodable(f, k)?.decodable {
        failed.push("k-bit delay decodable");
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(failed.join(", ")))
    }
}

/// The class of tables sharing the follow set of the smallest colliding pair.
fn duplicate_class(f: &CodeTuple, sets: &FollowSets) -> Option<Vec<TableIndex>> {
    let m = f.num_tables();
    for j in 0..m {
        for i in 0..j {
            if sets.top(i) == sets.top(j) {
                let target = sets.top(i);
                return Some((0..m).filter(|&t| sets.top(t) == target).collect());
            }
        }
    }
    None
}

/// `2^(2^k)`, saturating.
pub fn table_bound(k: usize) -> u128 {
    if k >= 7 {
        u128::MAX
    } else {
        1u128 << (1u32 << k)
    }
}

fn verify_output(
    out: &CodeTuple,
    mu: &SourceDistribution,
    k: usize,
    original_family: &BTreeSet<WordSet>,
    original_length: &Rational,
) -> Result<()> {
    let fail = |what: &str| Err(Error::Internal(format!("reduced tuple violates {what}")));
    if !is_irreducible(out) || !is_extendable(out) || !is_k_delay_decodable(out, k)?.decodable {
        return fail("irreducible ∩ extendable ∩ k-bit delay decodable");
    }
    if average_length(out, mu)? > *original_length {
        return fail("L(F†) ≤ L(F)");
    }
    let family = FollowSets::build(out, k)?.family();
    if !family.is_subset(original_family) {
        return fail("𝒫^k(F†) ⊆ 𝒫^k(F)");
    }
    if family.len() != out.num_tables() {
        return fail("|𝒫^k(F†)| = |F†|");
    }
    if out.num_tables() as u128 > table_bound(k) {
        return fail("the 2^(2^k) table bound");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::followsets::pk_family;
    use crate::rational::ratio;
    use crate::samples;

    #[test]
    fn gamma_reduces_to_two_tables() {
        let g = samples::gamma();
        let mu = samples::mu_abcd();
        let (out, trace) = reduce_to_distinct(&g, &mu, 2).unwrap();
        assert_eq!(out.num_tables(), 2);
        assert_eq!(pk_family(&out, 2).unwrap(), pk_family(&g, 2).unwrap());
        assert!(average_length(&out, &mu).unwrap() <= average_length(&g, &mu).unwrap());
        assert!(!trace.steps.is_empty());
        for step in &trace.steps {
            assert!(step.length_after <= step.length_before);
            assert!(step.merged_class.contains(&step.representative));
        }
    }

    #[test]
    fn delta_is_a_fixed_point() {
        let d = samples::delta();
        let (out, trace) = reduce_to_distinct(&d, &samples::mu_abcd(), 2).unwrap();
        assert_eq!(out, d);
        assert!(trace.steps.is_empty());
        assert_eq!(average_length(&out, &samples::mu_abcd()).unwrap(), ratio(28, 15));
    }

    #[test]
    fn single_table_is_unchanged() {
        let f = samples::incomplete_prefix_code();
        let (out, trace) = reduce_to_distinct(&f, &samples::mu_abcd(), 1).unwrap();
        assert_eq!(out, f);
        assert!(trace.steps.is_empty() && trace.final_dropped.is_empty());
    }

    #[test]
    fn preconditions_are_enforced() {
        let err = reduce_to_distinct(&samples::beta(), &samples::mu_abcd(), 1).unwrap_err();
        assert_eq!(err, Error::PreconditionFailed("regular, extendable".into()));
        let err = reduce_to_distinct(&samples::alpha(), &samples::mu_abcd(), 1).unwrap_err();
        assert_eq!(err, Error::PreconditionFailed("k-bit delay decodable".into()));
    }

    #[test]
    fn table_bounds() {
        assert_eq!(table_bound(0), 2);
        assert_eq!(table_bound(1), 4);
        assert_eq!(table_bound(2), 16);
        assert_eq!(table_bound(6), 1u128 << 64);
        assert_eq!(table_bound(9), u128::MAX);
    }
}
