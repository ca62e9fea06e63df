//! Achievable-prefix sets.
//!
//! `W_i^(j)` is the set of j-bit strings `c` such that some source string `x`
//! has `f*_i(x) ⪰ c`. Every other set in this module is assembled from these:
//!
//! * `P^k_{F,i}(b)` takes the first symbol's codeword `f_i(s) ⪰ b`, strips `b`,
//!   and continues from `τ_i(s)` with `W`,
//! * `P̄^k_{F,i}(b)` is the same with `f_i(s) ≻ b`,
//! * `P^k_{F,i}` (the case `b = λ`) is `W_i^(k)` itself.
//!
//! `W` is the least fixed point of
//! `W_i^(j) = ∪_s { prefix_j(f_i(s)) }` if `|f_i(s)| ≥ j`, else `f_i(s) · W_{τ_i(s)}^(j-|f_i(s)|)`.
//! Depths are solved in increasing order. λ codewords make a depth depend on
//! itself; those are resolved by Kleene iteration from the empty sets.

use std::collections::BTreeSet;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::tuple::{CodeTuple, TableIndex};

/// Largest depth for which full follow sets are materialized (`|W| ≤ 2^k`).
pub const MAX_DEPTH: usize = 16;

pub type WordSet = BTreeSet<BitString>;

/// `W_i^(j)` for every table `i` and depth `j ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FollowSets {
    depth: usize,
    /// `sets[i][j]`
    sets: Vec<Vec<WordSet>>,
}

impl FollowSets {
    pub fn build(f: &CodeTuple, k: usize) -> Result<Self> {
        if k > MAX_DEPTH {
            return Err(Error::DepthTooLarge(k));
        }
        let m = f.num_tables();
        let mut sets: Vec<Vec<WordSet>> = vec![Vec::with_capacity(k + 1); m];
        for row in sets.iter_mut() {
            row.push(WordSet::from([BitString::empty()]));
        }
        for j in 1..=k {
            for row in sets.iter_mut() {
                row.push(WordSet::new());
            }
            loop {
                let mut changed = false;
                for i in 0..m {
                    let mut next = WordSet::new();
                    for e in f.table(i) {
                        let len = e.codeword.len();
                        if len >= j {
                            next.insert(e.codeword.prefix(j));
                        } else {
                            for tail in &sets[e.next][j - len] {
                                next.insert(e.codeword.concat(tail));
                            }
                        }
                    }
                    if next != sets[i][j] {
                        sets[i][j] = next;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        Ok(Self { depth: k, sets })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn num_tables(&self) -> usize {
        self.sets.len()
    }

    /// `W_i^(j)`, i.e. `P^j_{F,i}`.
    pub fn get(&self, i: TableIndex, j: usize) -> &WordSet {
        assert!(j <= self.depth, "depth {j} beyond computed depth {}", self.depth);
        &self.sets[i][j]
    }

    /// `P^k_{F,i}` at the full computed depth.
    pub fn top(&self, i: TableIndex) -> &WordSet {
        &self.sets[i][self.depth]
    }

    /// `P^k_{F,i}(b)` (`strict = false`) or `P̄^k_{F,i}(b)` (`strict = true`).
    ///
    /// Only the first symbol's codeword is matched against `b`: when `b` is
    /// longer than every codeword of table `i` the result is empty even if a
    /// multi-symbol string would cover `b`.
    pub fn continuations(&self, f: &CodeTuple, i: TableIndex, k: usize, b: &BitString, strict: bool) -> WordSet {
        assert!(k <= self.depth, "depth {k} beyond computed depth {}", self.depth);
        let mut out = WordSet::new();
        for e in f.table(i) {
            let cw = &e.codeword;
            let matches = if strict {
                b.is_proper_prefix_of(cw)
            } else {
                b.is_prefix_of(cw)
            };
            if !matches {
                continue;
            }
            let rest = cw.suffix_from(b.len());
            if rest.len() >= k {
                out.insert(rest.prefix(k));
            } else {
                for tail in &self.sets[e.next][k - rest.len()] {
                    out.insert(rest.concat(tail));
                }
            }
        }
        out
    }

    /// `𝒫^k_F`: the distinct sets among `P^k_{F,i}`.
    pub fn family(&self) -> BTreeSet<WordSet> {
        self.sets.iter().map(|row| row[self.depth].clone()).collect()
    }
}

/// Follow sets `W_i^(j)` for all `j ≤ k`.
pub fn build_follow_sets(f: &CodeTuple, k: usize) -> Result<FollowSets> {
    FollowSets::build(f, k)
}

/// `P^k_{F,i}(b)`.
pub fn pk_set(f: &CodeTuple, i: TableIndex, k: usize, b: &BitString) -> Result<WordSet> {
    f.check_table(i)?;
    Ok(FollowSets::build(f, k)?.continuations(f, i, k, b, false))
}

/// `P̄^k_{F,i}(b)`.
pub fn pbar_set(f: &CodeTuple, i: TableIndex, k: usize, b: &BitString) -> Result<WordSet> {
    f.check_table(i)?;
    Ok(FollowSets::build(f, k)?.continuations(f, i, k, b, true))
}

/// `b ∈ P*_{F,i}`: some source string starting in table `i` has an encoding
/// extending `b`.
///
/// Decides `b ∈ W_i^(|b|)` without materializing the whole set: position `p`
/// paired with table `j` is good when `b[p..] ∈ W_j^(|b|-p)`, and the good pairs
/// are grown to a fixed point with the same recurrence that defines `W`.
pub fn mem_pstar(f: &CodeTuple, i: TableIndex, b: &BitString) -> Result<bool> {
    f.check_table(i)?;
    let n = b.len();
    let m = f.num_tables();
    let mut good = vec![vec![false; n + 1]; m];
    for row in good.iter_mut() {
        row[n] = true;
    }
    let tails: Vec<BitString> = (0..=n).map(|p| b.suffix_from(p)).collect();
    loop {
        let mut changed = false;
        for p in (0..n).rev() {
            let rest = &tails[p];
            for j in 0..m {
                if good[j][p] {
                    continue;
                }
                let hit = f.table(j).iter().any(|e| {
                    if e.codeword.len() >= rest.len() {
                        rest.is_prefix_of(&e.codeword)
                    } else {
                        e.codeword.is_prefix_of(rest) && good[e.next][p + e.codeword.len()]
                    }
                });
                if hit {
                    good[j][p] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(good[i][0])
}

/// Extendable: `P^1_{F,i} ≠ ∅` for every table.
pub fn is_extendable(f: &CodeTuple) -> bool {
    let w = FollowSets::build(f, 1).expect("depth 1 is within the cap");
    (0..f.num_tables()).all(|i| !w.get(i, 1).is_empty())
}

/// `𝒫^k_F`.
pub fn pk_family(f: &CodeTuple, k: usize) -> Result<BTreeSet<WordSet>> {
    Ok(FollowSets::build(f, k)?.family())
}

/// Renders `{00, 01}`, with λ for the empty string and `∅` for the empty set.
pub fn format_set(set: &WordSet) -> String {
    if set.is_empty() {
        return "∅".into();
    }
    let items: Vec<String> = set.iter().map(|b| b.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn format_family(family: &BTreeSet<WordSet>) -> String {
    let items: Vec<String> = family.iter().map(format_set).collect();
    format!("{{{}}}", items.join(", "))
}
