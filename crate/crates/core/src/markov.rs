//! The table-index Markov chain of a code-tuple.
//!
//! Encoding an i.i.d. source moves from table `i` to table `τ_i(s)` with
//! probability `μ(s)`. This module covers the transition matrix, stationary
//! distributions, the set `R_F` of tables reachable from every table, and the
//! homomorphisms used to cut a tuple down to its irreducible part.

use std::collections::{BTreeSet, VecDeque};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Solution};
use crate::rational::Rational;
use crate::tuple::{CodeTuple, Entry, SourceDistribution, TableIndex};

/// `Q_{i,j}(F)`: probability that table `j` follows table `i`.
pub fn transition_matrix(f: &CodeTuple, mu: &SourceDistribution) -> Result<Matrix> {
    mu.check_matches(f)?;
    let m = f.num_tables();
    let mut q = vec![vec![Rational::zero(); m]; m];
    for (i, row) in q.iter_mut().enumerate() {
        for s in 0..f.alphabet_size() {
            row[f.next(i, s)] += mu.prob(s);
        }
    }
    Ok(q)
}

/// Tables reachable from `start` (including `start` itself).
pub fn reachable_from(f: &CodeTuple, start: TableIndex) -> BTreeSet<TableIndex> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for e in f.table(i) {
            if seen.insert(e.next) {
                queue.push_back(e.next);
            }
        }
    }
    seen
}

/// `R_F`: tables reachable from every table.
pub fn r_set(f: &CodeTuple) -> BTreeSet<TableIndex> {
    let mut common: BTreeSet<TableIndex> = (0..f.num_tables()).collect();
    for j in 0..f.num_tables() {
        let reach = reachable_from(f, j);
        common.retain(|i| reach.contains(i));
        if common.is_empty() {
            break;
        }
    }
    common
}

/// Regular: the chain has a unique stationary distribution, i.e. `R_F ≠ ∅`.
pub fn is_regular(f: &CodeTuple) -> bool {
    !r_set(f).is_empty()
}

/// Irreducible: `R_F = [F]`.
pub fn is_irreducible(f: &CodeTuple) -> bool {
    r_set(f).len() == f.num_tables()
}

/// Closed: every successor of a table in `set` is in `set`.
pub fn is_closed(f: &CodeTuple, set: &BTreeSet<TableIndex>) -> bool {
    set.iter()
        .all(|&i| i < f.num_tables() && f.table(i).iter().all(|e| set.contains(&e.next)))
}

/// Rows of `[Qᵀ − I]` plus a normalization row; `π` is its solution with right-hand side `(0, …, 0, 1)`.
fn stationary_system(q: &Matrix) -> (Matrix, Vec<Rational>) {
    let m = q.len();
    let mut a: Matrix = (0..m)
        .map(|j| {
            (0..m)
                .map(|i| {
                    let mut v = q[i][j].clone();
                    if i == j {
                        v -= Rational::one();
                    }
                    v
                })
                .collect()
        })
        .collect();
    a.push(vec![Rational::one(); m]);
    let mut b = vec![Rational::zero(); m];
    b.push(Rational::one());
    (a, b)
}

/// The unique stationary distribution `π(F)`.
pub fn stationary_distribution(f: &CodeTuple, mu: &SourceDistribution) -> Result<Vec<Rational>> {
    if !is_regular(f) {
        return Err(Error::NonRegular);
    }
    let q = transition_matrix(f, mu)?;
    let (a, b) = stationary_system(&q);
    match linalg::solve(&a, &b) {
        Solution::Unique(pi) => Ok(pi),
        other => Err(Error::Internal(format!(
            "regular tuple produced a stationary system with {other:?}"
        ))),
    }
}

/// Some nonnegative stationary distribution, which exists for every tuple.
///
/// Takes a nonzero null vector `v` of `Qᵀ − I` and returns `|v| / Σ|v|`; the
/// result is checked to satisfy `πQ = π` before it is returned.
pub fn some_stationary_distribution(f: &CodeTuple, mu: &SourceDistribution) -> Result<Vec<Rational>> {
    let q = transition_matrix(f, mu)?;
    let m = q.len();
    let (mut a, _) = stationary_system(&q);
    a.pop();
    let v = linalg::null_vector(&a, m).ok_or_else(|| Error::Internal("Qᵀ − I has a trivial null space".into()))?;
    let abs: Vec<Rational> = v.iter().map(Signed::abs).collect();
    let total: Rational = abs.iter().sum();
    let pi: Vec<Rational> = abs.iter().map(|x| x / &total).collect();
    if !is_stationary(&q, &pi) {
        return Err(Error::Internal("normalized null vector is not stationary".into()));
    }
    Ok(pi)
}

/// `πQ = π`, `π ≥ 0`, `Σπ = 1`.
pub fn is_stationary(q: &Matrix, pi: &[Rational]) -> bool {
    let m = q.len();
    if pi.len() != m || pi.iter().any(Signed::is_negative) || !pi.iter().sum::<Rational>().is_one() {
        return false;
    }
    (0..m).all(|j| (0..m).map(|i| &pi[i] * &q[i][j]).sum::<Rational>() == pi[j])
}

/// Checks that `phi` maps `src` homomorphically into `dst`: codewords agree
/// and `φ(τ'_i(s)) = τ_{φ(i)}(s)`.
pub fn is_homomorphism(src: &CodeTuple, dst: &CodeTuple, phi: &[TableIndex]) -> bool {
    if phi.len() != src.num_tables()
        || src.alphabet_size() != dst.alphabet_size()
        || phi.iter().any(|&j| j >= dst.num_tables())
    {
        return false;
    }
    (0..src.num_tables()).all(|i| {
        (0..src.alphabet_size())
            .all(|s| src.codeword(i, s) == dst.codeword(phi[i], s) && phi[src.next(i, s)] == dst.next(phi[i], s))
    })
}

/// The sub-tuple on `R_F`, tables kept in ascending original order, together
/// with the embedding `φ` (new index → original index).
pub fn irreducible_part(f: &CodeTuple) -> Result<(CodeTuple, Vec<TableIndex>)> {
    let keep: Vec<TableIndex> = r_set(f).into_iter().collect();
    if keep.is_empty() {
        return Err(Error::NonRegular);
    }
    restrict(f, &keep).map(|g| (g, keep))
}

/// The sub-tuple induced on a closed set of tables, listed in ascending order.
pub fn restrict(f: &CodeTuple, keep: &[TableIndex]) -> Result<CodeTuple> {
    let mut index = vec![None; f.num_tables()];
    for (new, &old) in keep.iter().enumerate() {
        index[old] = Some(new);
    }
    let tables = keep
        .iter()
        .map(|&old| {
            f.table(old)
                .iter()
                .map(|e| {
                    index[e.next]
                        .map(|n| Entry::new(e.codeword.clone(), n))
                        .ok_or_else(|| Error::Internal(format!("table set is not closed at {old}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CodeTuple::new(f.alphabet().to_vec(), tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::samples;

    fn row(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn alpha_chain() {
        let f = samples::alpha();
        let mu = samples::mu_abcd();
        let q = transition_matrix(&f, &mu).unwrap();
        assert_eq!(q[0], row(&[(2, 5), (1, 5), (2, 5)]));
        assert_eq!(q[1], row(&[(1, 5), (2, 5), (2, 5)]));
        assert_eq!(q[2], row(&[(0, 1), (1, 10), (9, 10)]));
        assert_eq!(
            stationary_distribution(&f, &mu).unwrap(),
            row(&[(1, 20), (3, 20), (16, 20)])
        );
        assert_eq!(r_set(&f), BTreeSet::from([0, 1, 2]));
        assert!(is_regular(&f) && is_irreducible(&f));
    }

    #[test]
    fn delta_chain() {
        let f = samples::delta();
        let mu = samples::mu_abcd();
        let q = transition_matrix(&f, &mu).unwrap();
        assert_eq!(q, vec![row(&[(3, 5), (2, 5)]), row(&[(4, 5), (1, 5)])]);
        assert_eq!(stationary_distribution(&f, &mu).unwrap(), row(&[(2, 3), (1, 3)]));
    }

    #[test]
    fn single_table_chain() {
        let f = samples::incomplete_prefix_code();
        let mu = samples::mu_abcd();
        assert_eq!(transition_matrix(&f, &mu).unwrap(), vec![row(&[(1, 1)])]);
        assert_eq!(stationary_distribution(&f, &mu).unwrap(), row(&[(1, 1)]));
        assert_eq!(r_set(&f), BTreeSet::from([0]));
    }

    #[test]
    fn beta_is_not_regular() {
        let f = samples::beta();
        assert!(r_set(&f).is_empty());
        assert!(!is_regular(&f));
        assert_eq!(stationary_distribution(&f, &samples::mu_abcd()), Err(Error::NonRegular));
        assert!(is_closed(&f, &BTreeSet::from([1])));
        assert!(is_closed(&f, &BTreeSet::from([2])));
        assert!(!is_closed(&f, &BTreeSet::from([0])));
        let pi = some_stationary_distribution(&f, &samples::mu_abcd()).unwrap();
        assert!(is_stationary(&transition_matrix(&f, &samples::mu_abcd()).unwrap(), &pi));
        assert_eq!(irreducible_part(&f), Err(Error::NonRegular));
    }

    #[test]
    fn irreducible_part_drops_transient_tables() {
        let f = samples::alpha();
        let (g, phi) = irreducible_part(&f).unwrap();
        assert_eq!(g, f);
        assert_eq!(phi, vec![0, 1, 2]);

        let f = CodeTuple::from_rows(&["a", "b"], &[&[("0", 0), ("1", 0)], &[("00", 0), ("1", 0)]]).unwrap();
        let (g, phi) = irreducible_part(&f).unwrap();
        assert_eq!(phi, vec![0]);
        assert_eq!(g.num_tables(), 1);
        assert_eq!(g.codeword(0, 0), f.codeword(0, 0));
        assert!(is_homomorphism(&g, &f, &phi));
        assert!(is_irreducible(&g));
    }

    #[test]
    fn homomorphism_checks() {
        let f = samples::alpha();
        assert!(is_homomorphism(&f, &f, &[0, 1, 2]));
        assert!(!is_homomorphism(&f, &f, &[0, 2, 1]));
        assert!(!is_homomorphism(&f, &f, &[0, 1]));
        let g = samples::delta();
        assert!(!is_homomorphism(&g, &f, &[0, 1]));
    }
}
