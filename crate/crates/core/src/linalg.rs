//! Gaussian elimination over exact rationals.

use num::{Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form of `a` in place; returns the pivot column of each
/// nonzero row. Rows are pivoted on the entry of largest numerator magnitude.
pub fn row_reduce(a: &mut Matrix, cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[i][col].is_zero())
            .max_by(|&i, &j| a[i][col].numer().abs().cmp(&a[j][col].numer().abs()).then(j.cmp(&i)));
        let Some(p) = best else { continue };
        a.swap(r, p);
        let lead = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v = &*v / &lead;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Outcome of solving `A x = b`.
#[derive(Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Infinite,
    Inconsistent,
}

/// Solves a possibly overdetermined system `A x = b` exactly.
pub fn solve(a: &Matrix, b: &[Rational]) -> Solution {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Infinite;
    }
    Solution::Unique((0..n).map(|i| aug[i][n].clone()).collect())
}

/// A nonzero vector `v` with `A v = 0`, if the null space is nontrivial.
pub fn null_vector(a: &Matrix, cols: usize) -> Option<Vec<Rational>> {
    let mut m = a.clone();
    let pivots = row_reduce(&mut m, cols);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::from_integer(1.into());
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][free].clone();
    }
    Some(v)
}
