//! A deterministic automaton for the prefix language `P*_{F,i}` and a
//! necessary condition for optimality.
//!
//! # Automaton
//!
//! The nondeterministic automaton has one state per codeword boundary
//! (`Boundary(j)`: the next symbol is encoded with table `j`) and one state per
//! position strictly inside a codeword (`Inside(j, s, p)`: `p` bits of
//! `f_j(s)` emitted). A λ codeword is an ε-move between boundaries. Every
//! state is accepting since the language is prefix-closed. The subset
//! construction over ε-closed state sets yields a partial DFA whose
//! transitions exist exactly where the language continues.
//!
//! # The two-children condition
//!
//! An optimal k-bit delay decodable tuple must satisfy, for every `i ∈ R_F`
//! and every `b` with `|b| ≥ k`: if the first `k` bits of `b` are in `P^k_{F,i}`
//! then `b ∈ P*_{F,i}`. Since `P^k_{F,i}` is exactly the set of accepted strings of
//! length `k`, this is equivalent to: every DFA state reachable by a string of
//! length `≥ k` (a *deep* state) has both a 0- and a 1-transition.
//!
//! * If every deep state has both children, induct on `|b|`: for `|b| = k` the
//!   hypothesis says `b` is accepted; for `|b| > k`, `pref(b)` is accepted by
//!   induction and leads to a deep state, which has transitions for both
//!   bits, so `b` is accepted.
//! * If a deep state reached by `b'` lacks the child `c`, then `b = b'c` has an
//!   accepted k-bit prefix (a prefix of `b'`) while `b` itself is rejected.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::bits::BitString;
use crate::decodability::is_k_delay_decodable;
use crate::error::{Error, Result};
use crate::followsets::is_extendable;
use crate::markov::{is_regular, r_set};
use crate::tuple::{CodeTuple, Symbol, TableIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum NfaState {
    Boundary(TableIndex),
    Inside(TableIndex, Symbol, usize),
}

/// Partial DFA recognizing `P*_{F,i}`. State 0 is the start; all states accept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixDfa {
    /// `transitions[q][bit]`
    transitions: Vec<[Option<usize>; 2]>,
}

impl PrefixDfa {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn step(&self, q: usize, bit: bool) -> Option<usize> {
        self.transitions[q][bit as usize]
    }

    pub fn run(&self, b: &BitString) -> Option<usize> {
        b.iter().try_fold(self.start(), |q, bit| self.step(q, bit))
    }

    pub fn accepts(&self, b: &BitString) -> bool {
        self.run(b).is_some()
    }

    /// States reachable by some string of length at least `k`.
    pub fn deep_states(&self, k: usize) -> BTreeSet<usize> {
        self.deep_paths(k).into_keys().collect()
    }

    /// For each deep state, the shortest (then smallest) string of length
    /// `≥ k` reaching it. Breadth-first over (state, min(depth, k)).
    fn deep_paths(&self, k: usize) -> BTreeMap<usize, BitString> {
        let mut seen = BTreeSet::from([(self.start(), 0usize)]);
        let mut queue = VecDeque::from([(self.start(), 0usize, BitString::empty())]);
        let mut deep = BTreeMap::new();
        while let Some((q, d, path)) = queue.pop_front() {
            if d == k {
                deep.entry(q).or_insert_with(|| path.clone());
            }
            for bit in [false, true] {
                if let Some(r) = self.step(q, bit) {
                    let nd = (d + 1).min(k);
                    if seen.insert((r, nd)) {
                        let mut p = path.clone();
                        p.push(bit);
                        queue.push_back((r, nd, p));
                    }
                }
            }
        }
        deep
    }
}

fn closure(f: &CodeTuple, seed: impl IntoIterator<Item = NfaState>) -> BTreeSet<NfaState> {
    let mut set: BTreeSet<NfaState> = BTreeSet::new();
    let mut stack: Vec<NfaState> = seed.into_iter().collect();
    while let Some(st) = stack.pop() {
        if !set.insert(st) {
            continue;
        }
        if let NfaState::Boundary(j) = st {
            for e in f.table(j) {
                if e.codeword.is_empty() {
                    stack.push(NfaState::Boundary(e.next));
                }
            }
        }
    }
    set
}

fn nfa_step(f: &CodeTuple, set: &BTreeSet<NfaState>, bit: bool) -> BTreeSet<NfaState> {
    let mut out = Vec::new();
    let mut advance = |j: TableIndex, s: Symbol, p: usize| {
        let cw = f.codeword(j, s);
        if cw.get(p) != bit {
            return;
        }
        if p + 1 == cw.len() {
            out.push(NfaState::Boundary(f.next(j, s)));
        } else {
            out.push(NfaState::Inside(j, s, p + 1));
        }
    };
    for &st in set {
        match st {
            NfaState::Boundary(j) => {
                for s in 0..f.alphabet_size() {
                    if !f.codeword(j, s).is_empty() {
                        advance(j, s, 0);
                    }
                }
            }
            NfaState::Inside(j, s, p) => advance(j, s, p),
        }
    }
    closure(f, out)
}

/// Subset construction for `P*_{F,i}`.
pub fn prefix_dfa(f: &CodeTuple, i: TableIndex) -> Result<PrefixDfa> {
    f.check_table(i)?;
    let start = closure(f, [NfaState::Boundary(i)]);
    let mut ids: BTreeMap<BTreeSet<NfaState>, usize> = BTreeMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut transitions: Vec<[Option<usize>; 2]> = Vec::new();
    let mut q = 0;
    while q < subsets.len() {
        let mut row = [None, None];
        for bit in [false, true] {
            let next = nfa_step(f, &subsets[q], bit);
            if next.is_empty() {
                continue;
            }
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                subsets.len() - 1
            });
            row[bit as usize] = Some(id);
        }
        transitions.push(row);
        q += 1;
    }
    Ok(PrefixDfa { transitions })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalityWitness {
    pub table: TableIndex,
    /// A string whose first k bits are achievable from `table` but which is not.
    pub bits: BitString,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalityVerdict {
    pub passes: bool,
    pub witness: Option<OptimalityWitness>,
}

/// Checks the two-children condition on every table of `R_F`.
///
/// Failing proves the tuple is not an optimal k-bit delay decodable
/// code-tuple; passing proves nothing. The tuple must be regular,
/// extendable and k-bit delay decodable.
pub fn check_necessary_condition(f: &CodeTuple, k: usize) -> Result<OptimalityVerdict> {
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
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed.join(", ")));
    }
    for i in r_set(f) {
        let dfa = prefix_dfa(f, i)?;
        let mut best: Option<BitString> = None;
        for (q, path) in dfa.deep_paths(k) {
            for bit in [false, true] {
                if dfa.step(q, bit).is_none() {
                    let mut b = path.clone();
                    b.push(bit);
                    let shorter = best.as_ref().is_none_or(|cur| (b.len(), &b) < (cur.len(), cur));
                    if shorter {
                        best = Some(b);
                    }
                }
            }
        }
        if let Some(bits) = best {
            return Ok(OptimalityVerdict {
                passes: false,
                witness: Some(OptimalityWitness { table: i, bits }),
            });
        }
    }
    Ok(OptimalityVerdict {
        passes: true,
        witness: None,
    })
}
