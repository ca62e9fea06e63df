//! Searching for short code-tuples that are regular, extendable and k-bit
//! delay decodable.
//!
//! The exhaustive mode enumerates every tuple with at most `max_tables`
//! tables and codewords of at most `max_codeword_len` bits, and is optimal
//! *within those bounds* only. Shards are split by the first codeword of
//! table 0 and searched in parallel. Ties on `L` go to fewer tables, then to
//! the lexicographically smaller tables, so the result does not depend on
//! scheduling or on the number of workers.
//!
//! The heuristic mode starts from the Huffman code, caller-supplied seeds and
//! a fixed set of pseudo-random tuples, and improves each by steepest descent
//! over single-entry changes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num::{BigInt, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::BitString;
use crate::cost::average_length;
use crate::decodability::{is_prefix_free, verdict_with};
use crate::error::{Error, Result};
use crate::followsets::FollowSets;
use crate::markov::is_regular;
use crate::rational::Rational;
use crate::reduce::table_bound;
use crate::tuple::{CodeTuple, Entry, SourceDistribution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_tables: usize,
    pub max_codeword_len: usize,
    /// Complete enumeration instead of local search.
    pub exhaustive: bool,
    /// Branch-and-bound cuts in exhaustive mode. Turning them off enumerates
    /// every tuple, which is only practical on tiny spaces.
    pub pruning: bool,
}

impl SearchBounds {
    pub fn new(max_tables: usize, max_codeword_len: usize, exhaustive: bool) -> Self {
        Self {
            max_tables,
            max_codeword_len,
            exhaustive,
            pruning: true,
        }
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if self.max_tables == 0 {
            return Err(Error::InvalidBounds("max_tables must be at least 1".into()));
        }
        if self.max_codeword_len == 0 {
            return Err(Error::InvalidBounds("max_codeword_len must be at least 1".into()));
        }
        if self.max_codeword_len >= 63 {
            return Err(Error::InvalidBounds("max_codeword_len must be below 63".into()));
        }
        if self.max_tables as u128 > table_bound(k) {
            return Err(Error::InvalidBounds(format!(
                "max_tables {} exceeds 2^(2^{k}); larger tuples never need to be searched",
                self.max_tables
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best: CodeTuple,
    pub best_length: Rational,
    /// Complete candidates evaluated.
    pub explored: u64,
    /// True when the whole bounded space was covered.
    pub complete: bool,
}

/// Default labels `a, b, c, …` (or `s0, s1, …` past 26 symbols).
pub fn default_alphabet(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("s{i}")).collect()
    }
}

#[derive(PartialEq, Eq)]
struct Node {
    weight: Rational,
    /// Smallest symbol index in the subtree, for tie-breaking.
    key: usize,
    symbols: Vec<usize>,
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (weight, key)
        other.weight.cmp(&self.weight).then(other.key.cmp(&self.key))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Classical Huffman code as a single-table tuple, with its average length.
///
/// The two lightest subtrees are merged first (ties go to the subtree holding
/// the smaller symbol index) and the first one popped gets bit 0.
pub fn huffman_code(alphabet: &[String], mu: &SourceDistribution) -> Result<(CodeTuple, Rational)> {
    if alphabet.len() != mu.len() {
        return Err(Error::InvalidDistribution(
            "alphabet and distribution sizes differ".into(),
        ));
    }
    let n = mu.len();
    let mut codes = vec![BitString::empty(); n];
    let mut heap: BinaryHeap<Node> = (0..n)
        .map(|s| Node {
            weight: mu.prob(s).clone(),
            key: s,
            symbols: vec![s],
        })
        .collect();
    // Codewords are built leaf-to-root, so collect bits reversed.
    let mut rev: Vec<Vec<bool>> = vec![Vec::new(); n];
    while heap.len() > 1 {
        let a = heap.pop().expect("two nodes");
        let b = heap.pop().expect("two nodes");
        for &s in &a.symbols {
            rev[s].push(false);
        }
        for &s in &b.symbols {
            rev[s].push(true);
        }
        let mut symbols = a.symbols;
        symbols.extend(b.symbols);
        heap.push(Node {
            weight: a.weight + b.weight,
            key: a.key.min(b.key),
            symbols,
        });
    }
    for (s, bits) in rev.into_iter().enumerate() {
        codes[s] = bits.into_iter().rev().collect();
    }
    let table = codes.into_iter().map(|c| Entry::new(c, 0)).collect();
    let f = CodeTuple::new(alphabet.to_vec(), vec![table])?;
    let l = average_length(&f, mu)?;
    Ok((f, l))
}

pub fn huffman_baseline(mu: &SourceDistribution) -> Result<(CodeTuple, Rational)> {
    huffman_code(&default_alphabet(mu.len()), mu)
}

/// Regular, extendable and k-bit delay decodable.
pub fn is_admissible(f: &CodeTuple, k: usize) -> Result<bool> {
    if !is_regular(f) {
        return Ok(false);
    }
    let w = FollowSets::build(f, k.max(1))?;
    if (0..f.num_tables()).any(|i| w.get(i, 1).is_empty()) {
        return Ok(false);
    }
    if k == 0 {
        // With no delay, decodable means every table is prefix-free.
        return Ok((0..f.num_tables()).all(|i| is_prefix_free(f, i).unwrap_or(false)));
    }
    Ok(verdict_with(f, k, &w).decodable)
}

fn within_bounds(f: &CodeTuple, bounds: &SearchBounds) -> bool {
    f.num_tables() <= bounds.max_tables
        && f.tables()
            .iter()
            .flatten()
            .all(|e| e.codeword.len() <= bounds.max_codeword_len)
}

/// Candidates are ranked by `(L, number of tables, tables)`.
#[derive(Clone, Debug)]
struct Best {
    length: Rational,
    tables: Vec<Vec<Entry>>,
}

impl Best {
    fn key(&self) -> (&Rational, usize, &Vec<Vec<Entry>>) {
        (&self.length, self.tables.len(), &self.tables)
    }

    fn better_than(&self, other: &Option<Best>) -> bool {
        other.as_ref().is_none_or(|o| self.key() < o.key())
    }
}

fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(if x.key() < y.key() { x } else { y }),
    }
}

/// Finds a short admissible tuple over `alphabet` within `bounds`.
pub fn search_optimal_with(
    alphabet: &[String],
    mu: &SourceDistribution,
    k: usize,
    bounds: &SearchBounds,
    seeds: &[CodeTuple],
) -> Result<SearchResult> {
    bounds.validate(k)?;
    if alphabet.len() != mu.len() {
        return Err(Error::InvalidDistribution(
            "alphabet and distribution sizes differ".into(),
        ));
    }
    if bounds.exhaustive {
        exhaustive(alphabet, mu, k, bounds)
    } else {
        local_search(alphabet, mu, k, bounds, seeds)
    }
}

pub fn search_optimal(mu: &SourceDistribution, k: usize, bounds: &SearchBounds) -> Result<SearchResult> {
    search_optimal_with(&default_alphabet(mu.len()), mu, k, bounds, &[])
}

/// All codewords up to `max_len` bits in string order, so that depth-first
/// enumeration visits tuples in increasing order of their tables.
fn codeword_pool(max_len: usize) -> Vec<BitString> {
    let mut pool: Vec<BitString> = (0..=max_len).flat_map(BitString::all_of_length).collect();
    pool.sort();
    pool
}

/// Integer symbol weights `w_s = μ(s)·D` for the length bound, when they fit.
fn integer_weights(mu: &SourceDistribution) -> Option<(Vec<i128>, BigInt)> {
    let denom = mu
        .probs()
        .iter()
        .fold(BigInt::from(1), |acc, p| num::integer::lcm(acc, p.denom().clone()));
    let weights = mu
        .probs()
        .iter()
        .map(|p| (p.numer() * (&denom / p.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some((weights, denom))
}

struct Enumerator<'a> {
    alphabet: &'a [String],
    mu: &'a SourceDistribution,
    k: usize,
    m: usize,
    pruning: bool,
    pool: &'a [BitString],
    weights: Option<(Vec<i128>, BigInt)>,
    /// Cheapest codeword length any admissible table can use.
    min_len: i128,
    /// Lower bound on any complete admissible table, in units of `1/D`.
    table_floor: i128,
    tables: Vec<Vec<Entry>>,
    best: Option<Best>,
    explored: u64,
}

impl<'a> Enumerator<'a> {
    fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    fn cut(&self, t: usize, s: usize) -> bool {
        if !self.pruning {
            return false;
        }
        let row = &self.tables[t];
        let new = &row[s];
        // Identical (codeword, successor) rows make both symbols undecodable.
        if row[..s].iter().any(|e| e == new) {
            return true;
        }
        if self.k == 0
            && row[..s]
                .iter()
                .any(|e| e.codeword.is_prefix_of(&new.codeword) || new.codeword.is_prefix_of(&e.codeword))
        {
            return true;
        }
        // Tables sorted by their codeword columns.
        if t > 0 {
            let prev = self.tables[t - 1][..=s].iter().map(|e| &e.codeword);
            let cur = row[..=s].iter().map(|e| &e.codeword);
            if cur.cmp(prev) == Ordering::Less {
                return true;
            }
        }
        self.bound_exceeded()
    }

    /// `L(F) ≥ min_i L_i(F)`; each partial table is completed with the
    /// cheapest possible codewords. Reaching the incumbent is enough to cut:
    /// an equal `L` found later loses the tie-break, since enumeration runs in
    /// increasing `(tables)` order and earlier incumbents have fewer tables.
    fn bound_exceeded(&self) -> bool {
        let (Some((weights, denom)), Some(best)) = (&self.weights, &self.best) else {
            return false;
        };
        let mut lower: Option<i128> = None;
        for t in 0..self.m {
            let row = self.tables.get(t);
            let mut sum = 0i128;
            for (s, w) in weights.iter().enumerate() {
                let len = row
                    .and_then(|r| r.get(s))
                    .map_or(self.min_len, |e| e.codeword.len() as i128);
                sum += w * len;
            }
            let sum = sum.max(self.table_floor);
            lower = Some(lower.map_or(sum, |l| l.min(sum)));
        }
        let lower = Rational::new(BigInt::from(lower.unwrap_or(0)), denom.clone());
        lower >= best.length
    }

    fn leaf(&mut self) -> Result<()> {
        self.explored += 1;
        let f = CodeTuple::new(self.alphabet.to_vec(), self.tables.clone())?;
        if !is_admissible(&f, self.k)? {
            return Ok(());
        }
        let cand = Best {
            length: average_length(&f, self.mu)?,
            tables: self.tables.clone(),
        };
        if cand.better_than(&self.best) {
            self.best = Some(cand);
        }
        Ok(())
    }

    fn descend(&mut self, t: usize, s: usize) -> Result<()> {
        if t == self.m {
            return self.leaf();
        }
        let (nt, ns) = if s + 1 == self.sigma() { (t + 1, 0) } else { (t, s + 1) };
        if s == 0 {
            self.tables.push(Vec::with_capacity(self.sigma()));
        }
        for cw in self.pool {
            for next in 0..self.m {
                self.tables[t].push(Entry::new(cw.clone(), next));
                if !self.cut(t, s) {
                    self.descend(nt, ns)?;
                }
                self.tables[t].pop();
            }
        }
        if s == 0 {
            self.tables.pop();
        }
        Ok(())
    }

    /// Subtree with table 0's first entry fixed to `(first, next)`.
    fn run_shard(mut self, first: &BitString, next: usize) -> Result<(Option<Best>, u64)> {
        self.tables.push(vec![Entry::new(first.clone(), next)]);
        if !self.cut(0, 0) {
            if self.sigma() == 1 {
                self.descend(1, 0)?;
            } else {
                self.descend(0, 1)?;
            }
        }
        Ok((self.best, self.explored))
    }
}

fn exhaustive(alphabet: &[String], mu: &SourceDistribution, k: usize, bounds: &SearchBounds) -> Result<SearchResult> {
    let pool = codeword_pool(bounds.max_codeword_len);
    let weights = integer_weights(mu);
    let min_len = if k == 0 { 1 } else { 0 };
    // With no delay every table is a prefix code, hence no shorter than Huffman.
    let table_floor = match (&weights, k) {
        (Some((_, denom)), 0) => {
            let (_, huff) = huffman_code(alphabet, mu)?;
            (huff * Rational::from_integer(denom.clone()))
                .floor()
                .to_integer()
                .to_i128()
                .unwrap_or(0)
        }
        _ => 0,
    };
    let mut best: Option<Best> = None;
    let mut explored = 0u64;
    for m in 1..=bounds.max_tables {
        let shards: Vec<(usize, usize)> = (0..pool.len()).flat_map(|c| (0..m).map(move |n| (c, n))).collect();
        let incumbent = best.clone();
        let results: Vec<Result<(Option<Best>, u64)>> = shards
            .par_iter()
            .map(|&(c, n)| {
                let e = Enumerator {
                    alphabet,
                    mu,
                    k,
                    m,
                    pruning: bounds.pruning,
                    pool: &pool,
                    weights: weights.clone(),
                    min_len,
                    table_floor,
                    tables: Vec::with_capacity(m),
                    best: incumbent.clone(),
                    explored: 0,
                };
                e.run_shard(&pool[c], n)
            })
            .collect();
        for r in results {
            let (b, n) = r?;
            explored += n;
            best = merge(best, b);
        }
    }
    let best = best.ok_or(Error::InfeasibleBounds)?;
    finish(alphabet, mu, k, best, explored, true)
}

const RANDOM_STARTS: usize = 64;
const RNG_SEED: u64 = 0x5eed_c0de;

fn local_search(
    alphabet: &[String],
    mu: &SourceDistribution,
    k: usize,
    bounds: &SearchBounds,
    seeds: &[CodeTuple],
) -> Result<SearchResult> {
    let pool = codeword_pool(bounds.max_codeword_len);
    let mut starts: Vec<CodeTuple> = Vec::new();
    let (huff, _) = huffman_code(alphabet, mu)?;
    starts.push(huff);
    for seed in seeds {
        if seed.alphabet() != alphabet {
            return Err(Error::InvalidCodeTuple(
                "seed alphabet differs from the search alphabet".into(),
            ));
        }
        starts.push(seed.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    for _ in 0..RANDOM_STARTS {
        let m = rng.gen_range(1..=bounds.max_tables);
        let tables = (0..m)
            .map(|_| {
                (0..alphabet.len())
                    .map(|_| {
                        let len = rng.gen_range(1..=bounds.max_codeword_len);
                        let v = rng.gen_range(0..1u64 << len);
                        Entry::new(BitString::from_u64(v, len), rng.gen_range(0..m))
                    })
                    .collect()
            })
            .collect();
        starts.push(CodeTuple::new(alphabet.to_vec(), tables)?);
    }

    let mut explored = 0u64;
    let mut best: Option<Best> = None;
    for start in starts {
        if !within_bounds(&start, bounds) {
            continue;
        }
        explored += 1;
        if !is_admissible(&start, k)? {
            continue;
        }
        let mut current = start;
        let mut current_len = average_length(&current, mu)?;
        loop {
            let mut step: Option<(Rational, CodeTuple)> = None;
            for t in 0..current.num_tables() {
                for s in 0..alphabet.len() {
                    for cw in &pool {
                        for next in 0..current.num_tables() {
                            let e = &current.table(t)[s];
                            if e.codeword == *cw && e.next == next {
                                continue;
                            }
                            let mut tables = current.tables().to_vec();
                            tables[t][s] = Entry::new(cw.clone(), next);
                            let cand = CodeTuple::new(alphabet.to_vec(), tables)?;
                            explored += 1;
                            if !is_admissible(&cand, k)? {
                                continue;
                            }
                            let l = average_length(&cand, mu)?;
                            if l < current_len && step.as_ref().is_none_or(|(bl, _)| l < *bl) {
                                step = Some((l, cand));
                            }
                        }
                    }
                }
            }
            match step {
                Some((l, cand)) => {
                    current = cand;
                    current_len = l;
                }
                None => break,
            }
        }
        let cand = Best {
            length: current_len,
            tables: current.tables().to_vec(),
        };
        if cand.better_than(&best) {
            best = Some(cand);
        }
    }
    let best = best.ok_or(Error::InfeasibleBounds)?;
    finish(alphabet, mu, k, best, explored, false)
}

/// Re-validates the winner before handing it out.
fn finish(
    alphabet: &[String],
    mu: &SourceDistribution,
    k: usize,
    best: Best,
    explored: u64,
    complete: bool,
) -> Result<SearchResult> {
    let f = CodeTuple::new(alphabet.to_vec(), best.tables)?;
    if !is_admissible(&f, k)? || average_length(&f, mu)? != best.length {
        return Err(Error::Internal("search winner failed re-validation".into()));
    }
    Ok(SearchResult {
        best: f,
        best_length: best.length,
        explored,
        complete,
    })
}
