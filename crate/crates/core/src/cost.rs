//! Expected codeword lengths and the bias (relative value) vector.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::markov::{is_irreducible, stationary_distribution, transition_matrix};
use crate::rational::Rational;
use crate::tuple::{CodeTuple, SourceDistribution, TableIndex};

/// `L_i(F) = Σ_s |f_i(s)| μ(s)`.
pub fn table_length(f: &CodeTuple, mu: &SourceDistribution, i: TableIndex) -> Result<Rational> {
    f.check_table(i)?;
    mu.check_matches(f)?;
    Ok(f.table(i)
        .iter()
        .zip(mu.probs())
        .map(|(e, p)| p * Rational::from_integer(e.codeword.len().into()))
        .sum())
}

pub fn table_lengths(f: &CodeTuple, mu: &SourceDistribution) -> Result<Vec<Rational>> {
    (0..f.num_tables()).map(|i| table_length(f, mu, i)).collect()
}

/// `L(F) = Σ_i π_i(F) L_i(F)`, the long-run bits per source symbol.
pub fn average_length(f: &CodeTuple, mu: &SourceDistribution) -> Result<Rational> {
    let pi = stationary_distribution(f, mu)?;
    let lengths = table_lengths(f, mu)?;
    Ok(pi.iter().zip(&lengths).map(|(p, l)| p * l).sum())
}

/// Bias vector `h` with `h_0 = 0` solving `L = L_i + Σ_j (h_j − h_i) Q_{i,j}` for every `i`.
///
/// Only defined here for irreducible tuples, where the solution is unique up
/// to the additive constant fixed by the pin.
pub fn bias_vector(f: &CodeTuple, mu: &SourceDistribution) -> Result<Vec<Rational>> {
    if !is_irreducible(f) {
        return Err(Error::NonIrreducible);
    }
    let q = transition_matrix(f, mu)?;
    let lengths = table_lengths(f, mu)?;
    let gain = average_length(f, mu)?;
    let m = f.num_tables();
    // (I − Q) h = L_i − L, plus the row h_0 = 0
    let mut a: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let id = if i == j { Rational::one() } else { Rational::zero() };
                    id - &q[i][j]
                })
                .collect()
        })
        .collect();
    let mut b: Vec<Rational> = lengths.iter().map(|l| l - &gain).collect();
    let mut pin = vec![Rational::zero(); m];
    pin[0] = Rational::one();
    a.push(pin);
    b.push(Rational::zero());
    let h = match linalg::solve(&a, &b) {
        Solution::Unique(h) => h,
        other => return Err(Error::Internal(format!("bias system has {other:?}"))),
    };
    if bias_residuals(f, mu, &gain, &h)?.iter().any(|r| !r.is_zero()) {
        return Err(Error::Internal("bias vector fails the gain-bias equations".into()));
    }
    Ok(h)
}

/// `L − L_i − Σ_j (h_j − h_i) Q_{i,j}` for every table.
pub fn bias_residuals(
    f: &CodeTuple,
    mu: &SourceDistribution,
    gain: &Rational,
    h: &[Rational],
) -> Result<Vec<Rational>> {
    let q = transition_matrix(f, mu)?;
    let lengths = table_lengths(f, mu)?;
    Ok((0..f.num_tables())
        .map(|i| {
            let drift: Rational = (0..f.num_tables()).map(|j| (&h[j] - &h[i]) * &q[i][j]).sum();
            gain - &lengths[i] - drift
        })
        .collect())
}

/// Everything the `analyze` report prints about lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostProfile {
    pub table_lengths: Vec<Rational>,
    pub average: Rational,
    /// Present for irreducible tuples.
    pub bias: Option<Vec<Rational>>,
}

pub fn cost_profile(f: &CodeTuple, mu: &SourceDistribution) -> Result<CostProfile> {
    let average = average_length(f, mu)?;
    let bias = if is_irreducible(f) {
        Some(bias_vector(f, mu)?)
    } else {
        None
    };
    Ok(CostProfile {
        table_lengths: table_lengths(f, mu)?,
        average,
        bias,
    })
}
