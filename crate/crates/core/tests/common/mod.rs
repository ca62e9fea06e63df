//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles work directly from the encoder (`f*`), never through follow
//! sets or the decodability test, so they are independent of the code under
//! test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use delaycode::bits::BitString;
use delaycode::rational::Rational;
use delaycode::tuple::{CodeTuple, Entry, SourceDistribution, Symbol, TableIndex};
use num::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn labels(sigma: usize) -> Vec<String> {
    (0..sigma).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_codeword(rng: &mut ChaCha8Rng, max_len: usize) -> BitString {
    let len = rng.gen_range(0..=max_len);
    BitString::from_u64(rng.gen_range(0..1u64 << len), len)
}

/// Any tuple: `sigma` symbols, `m` tables, codewords of at most `max_len` bits.
pub fn random_tuple_sized(rng: &mut ChaCha8Rng, sigma: usize, m: usize, max_len: usize) -> CodeTuple {
    let tables = (0..m)
        .map(|_| {
            (0..sigma)
                .map(|_| Entry::new(random_codeword(rng, max_len), rng.gen_range(0..m)))
                .collect()
        })
        .collect();
    CodeTuple::new(labels(sigma), tables).unwrap()
}

pub fn random_tuple(rng: &mut ChaCha8Rng, max_sigma: usize, max_m: usize, max_len: usize) -> CodeTuple {
    let sigma = rng.gen_range(2..=max_sigma);
    let m = rng.gen_range(1..=max_m);
    random_tuple_sized(rng, sigma, m, max_len)
}

/// Positive weights `1..=9`, normalized.
pub fn random_dist(rng: &mut ChaCha8Rng, sigma: usize) -> SourceDistribution {
    let w: Vec<i64> = (0..sigma).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = w.iter().sum();
    SourceDistribution::new(
        w.iter()
            .map(|&x| Rational::new(BigInt::from(x), BigInt::from(total)))
            .collect(),
    )
    .unwrap()
}

/// Proptest strategy over arbitrary tuples, driven by a seed so shrinking
/// stays cheap.
pub fn arb_tuple(max_sigma: usize, max_m: usize, max_len: usize) -> impl Strategy<Value = CodeTuple> {
    any::<u64>().prop_map(move |seed| random_tuple(&mut rng(seed), max_sigma, max_m, max_len))
}

pub fn arb_tuple_with_dist(
    max_sigma: usize,
    max_m: usize,
    max_len: usize,
) -> impl Strategy<Value = (CodeTuple, SourceDistribution)> {
    any::<u64>().prop_map(move |seed| {
        let mut r = rng(seed);
        let f = random_tuple(&mut r, max_sigma, max_m, max_len);
        let mu = random_dist(&mut r, f.alphabet_size());
        (f, mu)
    })
}

/// Draws tuples from `seed` until `keep` accepts one (at most `tries`).
pub fn find_tuple(
    seed: u64,
    tries: usize,
    mut gen: impl FnMut(&mut ChaCha8Rng) -> CodeTuple,
    mut keep: impl FnMut(&CodeTuple) -> bool,
) -> Option<CodeTuple> {
    let mut r = rng(seed);
    (0..tries).map(|_| gen(&mut r)).find(|f| keep(f))
}

/// Encoder written out longhand.
pub fn encode(f: &CodeTuple, i: TableIndex, x: &[Symbol]) -> (BitString, TableIndex) {
    let mut out = BitString::empty();
    let mut t = i;
    for &s in x {
        out = out.concat(f.codeword(t, s));
        t = f.next(t, s);
    }
    (out, t)
}

pub fn all_strings(sigma: usize, max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &layer {
            for s in 0..sigma {
                let mut y = x.clone();
                y.push(s);
                next.push(y);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `{ prefix_k(rest · f*_j(y)) : |rest · f*_j(y)| ≥ k }` over all source
/// strings `y`, by search over (table, bits emitted so far) states; a state
/// with fewer than `k` bits can only be extended finitely many ways.
fn continuations(f: &CodeTuple, j: TableIndex, rest: &BitString, k: usize, out: &mut BTreeSet<BitString>) {
    let mut seen = BTreeSet::from([(j, rest.clone())]);
    let mut stack = vec![(j, rest.clone())];
    while let Some((t, emitted)) = stack.pop() {
        if emitted.len() >= k {
            out.insert(emitted.prefix(k));
            continue;
        }
        for s in 0..f.alphabet_size() {
            let state = (f.next(t, s), emitted.concat(f.codeword(t, s)));
            if seen.insert(state.clone()) {
                stack.push(state);
            }
        }
    }
}

/// `P^k_{F,i}(b)` / `P̄^k_{F,i}(b)` by enumeration of source strings.
pub fn brute_pk(f: &CodeTuple, i: TableIndex, k: usize, b: &BitString, strict: bool) -> BTreeSet<BitString> {
    let mut out = BTreeSet::new();
    for s in 0..f.alphabet_size() {
        let cw = f.codeword(i, s);
        let ok = if strict {
            b.is_proper_prefix_of(cw)
        } else {
            b.is_prefix_of(cw)
        };
        if ok {
            continuations(f, f.next(i, s), &cw.suffix_from(b.len()), k, &mut out);
        }
    }
    out
}

/// `P^k_{F,i}` by enumeration.
pub fn brute_follow(f: &CodeTuple, i: TableIndex, k: usize) -> BTreeSet<BitString> {
    let mut out = BTreeSet::new();
    continuations(f, i, &BitString::empty(), k, &mut out);
    out
}

/// Whether `b ⪯ f*_i(x)` for some `x`: search over (table, bits of `b` matched).
pub fn brute_achievable(f: &CodeTuple, i: TableIndex, b: &BitString) -> bool {
    let mut seen = BTreeSet::from([(i, 0usize)]);
    let mut stack = vec![(i, 0usize)];
    while let Some((t, pos)) = stack.pop() {
        if pos == b.len() {
            return true;
        }
        let rest = b.suffix_from(pos);
        for s in 0..f.alphabet_size() {
            let w = f.codeword(t, s);
            let take = w.len().min(rest.len());
            if w.prefix(take) == rest.prefix(take) && seen.insert((f.next(t, s), pos + take)) {
                stack.push((f.next(t, s), pos + take));
            }
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Positive,
    Negative,
    Neither,
}

/// Where a source string `y` stands relative to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Relation {
    /// `y = x[..j]` with `j < |x|`.
    Inside(usize),
    /// `x ⪯ y`.
    Extends,
    /// Neither a prefix of `x` nor an extension of it.
    Diverged,
}

/// Classifies `(x, c)` for start table `i` by exhaustive search over `x'`.
///
/// Explores states (table, bits of `f*_i(x)c` matched so far, relation of
/// `x'` to `x`) reachable from the start; only encodings comparable with the
/// target are followed. The state space is finite, so no length bound is
/// needed.
pub fn classify(f: &CodeTuple, i: TableIndex, x: &[Symbol], c: &BitString) -> Class {
    let target = encode(f, i, x).0.concat(c);
    let tlen = target.len();
    let first = if x.is_empty() {
        Relation::Extends
    } else {
        Relation::Inside(0)
    };
    let mut seen = BTreeSet::from([(i, 0usize, first)]);
    let mut stack = vec![(i, 0usize, first)];
    let (mut extends, mut diverges) = (false, false);
    while let Some((t, pos, rel)) = stack.pop() {
        if pos == tlen {
            match rel {
                Relation::Extends => {
                    extends = true;
                    continue;
                }
                Relation::Diverged => {
                    diverges = true;
                    continue;
                }
                // a proper prefix of x covering the target still counts as
                // "x is not a prefix", and its extensions must be explored
                Relation::Inside(_) => diverges = true,
            }
        }
        for s in 0..f.alphabet_size() {
            let w = f.codeword(t, s);
            let take = w.len().min(tlen - pos);
            if w.prefix(take) != target.suffix_from(pos).prefix(take) {
                continue;
            }
            let next_rel = match rel {
                Relation::Inside(j) if x[j] == s => {
                    if j + 1 == x.len() {
                        Relation::Extends
                    } else {
                        Relation::Inside(j + 1)
                    }
                }
                Relation::Inside(_) => Relation::Diverged,
                other => other,
            };
            let state = (f.next(t, s), pos + take, next_rel);
            if seen.insert(state) {
                stack.push(state);
            }
        }
    }
    match (extends, diverges) {
        (true, true) => Class::Neither,
        (_, false) => Class::Positive,
        (false, true) => Class::Negative,
    }
}

/// Every tuple with `sigma` symbols, `m` tables and codewords up to `max_len` bits.
pub fn all_tuples(sigma: usize, m: usize, max_len: usize) -> Vec<CodeTuple> {
    let pool: Vec<BitString> = (0..=max_len).flat_map(BitString::all_of_length).collect();
    let entries: Vec<Entry> = pool
        .iter()
        .flat_map(|cw| (0..m).map(move |n| Entry::new(cw.clone(), n)))
        .collect();
    let cells = sigma * m;
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    loop {
        let tables = (0..m)
            .map(|t| (0..sigma).map(|s| entries[idx[t * sigma + s]].clone()).collect())
            .collect();
        out.push(CodeTuple::new(labels(sigma), tables).unwrap());
        let mut p = 0;
        loop {
            if p == cells {
                return out;
            }
            idx[p] += 1;
            if idx[p] < entries.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Every subset of `0..m`.
pub fn subsets(m: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u32..1 << m).map(move |mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
}
