//! k-bit delay decodability.
//!
//! A code-tuple is k-bit delay decodable when, for every table `i` and every
//! bit string `b` equal to some codeword `f_i(s)`, the k-bit lookahead sets
//! of the competing readings are pairwise disjoint:
//!
//! * (i)  `P^k_{F,τ_i(s)} ∩ P̄^k_{F,i}(f_i(s)) = ∅`: stopping at `s` versus a longer codeword,
//! * (ii) `P^k_{F,τ_i(s)} ∩ P^k_{F,τ_i(s')} = ∅` whenever `s ≠ s'` share a codeword.

use std::cmp::Ordering;
use std::fmt;

use crate::bits::BitString;
use crate::error::Result;
use crate::followsets::FollowSets;
use crate::semantics::encode_star;
use crate::tuple::{CodeTuple, Symbol, TableIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Two symbols with the same codeword have overlapping lookahead sets.
    SharedCodeword,
    /// A codeword's lookahead overlaps that of a strictly longer codeword.
    LongerCodeword,
}

/// A concrete violation of the decodability conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: Condition,
    pub table: TableIndex,
    pub symbol: Symbol,
    /// The other symbol for [`Condition::SharedCodeword`].
    pub other: Option<Symbol>,
    /// A k-bit string in both sets.
    pub lookahead: BitString,
}

impl Witness {
    /// Sort key `(i, s, s', c)`. Shared-codeword witnesses carry a concrete
    /// `s'` and sort before longer-codeword ones, mirroring the order in which
    /// a decoder weighs the readings `s_1, …, s_r` before "some longer codeword".
    fn key(&self) -> (TableIndex, Symbol, usize, &BitString) {
        (
            self.table,
            self.symbol,
            self.other.unwrap_or(usize::MAX),
            &self.lookahead,
        )
    }

    pub fn describe(&self, f: &CodeTuple) -> String {
        let name = |s: Symbol| f.alphabet()[s].as_str();
        match self.condition {
            Condition::SharedCodeword => format!(
                "condition (ii): table {}, symbols {} and {} share codeword {}; both may continue with {}",
                self.table,
                name(self.symbol),
                name(self.other.expect("shared-codeword witness has two symbols")),
                f.codeword(self.table, self.symbol),
                self.lookahead
            ),
            Condition::LongerCodeword => format!(
                "condition (i): table {}, symbol {} (codeword {}) and a longer codeword may both continue with {}",
                self.table,
                name(self.symbol),
                f.codeword(self.table, self.symbol),
                self.lookahead
            ),
        }
    }
}

impl Ord for Witness {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Witness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodabilityVerdict {
    pub decodable: bool,
    /// Smallest violation; present exactly when `decodable` is false.
    pub witness: Option<Witness>,
}

impl fmt::Display for DecodabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.decodable { "yes" } else { "no" })
    }
}

/// Every violation of the two conditions, in witness order. Each `(i, s[, s'])`
/// contributes one witness per element of the offending intersection.
pub fn violations(f: &CodeTuple, k: usize) -> Result<Vec<Witness>> {
    let w = FollowSets::build(f, k)?;
    violations_with(f, k, &w)
}

pub(crate) fn violations_with(f: &CodeTuple, k: usize, w: &FollowSets) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for i in 0..f.num_tables() {
        for s in 0..f.alphabet_size() {
            let here = w.get(f.next(i, s), k);
            for t in (s + 1)..f.alphabet_size() {
                if f.codeword(i, s) != f.codeword(i, t) {
                    continue;
                }
                for c in here.intersection(w.get(f.next(i, t), k)) {
                    out.push(Witness {
                        condition: Condition::SharedCodeword,
                        table: i,
                        symbol: s,
                        other: Some(t),
                        lookahead: c.clone(),
                    });
                }
            }
            let longer = w.continuations(f, i, k, f.codeword(i, s), true);
            for c in here.intersection(&longer) {
                out.push(Witness {
                    condition: Condition::LongerCodeword,
                    table: i,
                    symbol: s,
                    other: None,
                    lookahead: c.clone(),
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The k-bit delay decodability test, with the smallest witness on failure.
pub fn is_k_delay_decodable(f: &CodeTuple, k: usize) -> Result<DecodabilityVerdict> {
    let w = FollowSets::build(f, k)?;
    Ok(verdict_with(f, k, &w))
}

pub(crate) fn verdict_with(f: &CodeTuple, k: usize, w: &FollowSets) -> DecodabilityVerdict {
    let witness = violations_with(f, k, w)
        .expect("follow sets already built")
        .into_iter()
        .next();
    DecodabilityVerdict {
        decodable: witness.is_none(),
        witness,
    }
}

/// Re-evaluates a witness directly against the lookahead sets.
pub fn witness_holds(f: &CodeTuple, k: usize, wit: &Witness) -> Result<bool> {
    let w = FollowSets::build(f, k)?;
    let (i, s) = (wit.table, wit.symbol);
    let here = w.get(f.next(i, s), k);
    Ok(match wit.condition {
        Condition::SharedCodeword => {
            let t = match wit.other {
                Some(t) => t,
                None => return Ok(false),
            };
            t != s
                && f.codeword(i, s) == f.codeword(i, t)
                && here.contains(&wit.lookahead)
                && w.get(f.next(i, t), k).contains(&wit.lookahead)
        }
        Condition::LongerCodeword => {
            here.contains(&wit.lookahead)
                && w.continuations(f, i, k, f.codeword(i, s), true)
                    .contains(&wit.lookahead)
        }
    })
}

/// No codeword of table `i` is a prefix of another symbol's codeword.
pub fn is_prefix_free(f: &CodeTuple, i: TableIndex) -> Result<bool> {
    f.check_table(i)?;
    let t = f.table(i);
    Ok((0..t.len()).all(|s| (0..t.len()).all(|u| s == u || !t[s].codeword.is_prefix_of(&t[u].codeword))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    Positive,
    Negative,
    Neither,
}

/// Bounded-horizon classification of pairs `(x, c)` for a fixed start table.
///
/// `(x, c)` is positive when every `x'` with `f*_i(x) c ⪯ f*_i(x')` extends `x`,
/// and negative when none does. Only `x'` of length at most `horizon` are
/// examined, so this is a test oracle rather than a decision procedure: it is
/// exact for extendable, k-bit delay decodable tuples once
/// `horizon ≥ |F| · (|f*_i(x)| + |c| + 1)`, because longer `x'` then encode to
/// strings that already have a shorter witness. When no `x'` qualifies both
/// properties hold vacuously and the pair is reported `Positive`.
pub struct PairClassifier<'a> {
    f: &'a CodeTuple,
    start: TableIndex,
    /// Every source string up to the horizon with its encoding.
    encodings: Vec<(Vec<Symbol>, BitString)>,
}

impl<'a> PairClassifier<'a> {
    pub fn new(f: &'a CodeTuple, start: TableIndex, horizon: usize) -> Result<Self> {
        f.check_table(start)?;
        let mut encodings = vec![(Vec::new(), BitString::empty())];
        let mut frontier = vec![(Vec::new(), BitString::empty(), start)];
        for _ in 0..horizon {
            let mut next = Vec::with_capacity(frontier.len() * f.alphabet_size());
            for (x, code, table) in &frontier {
                for s in 0..f.alphabet_size() {
                    let mut y = x.clone();
                    y.push(s);
                    let c = code.concat(f.codeword(*table, s));
                    encodings.push((y.clone(), c.clone()));
                    next.push((y, c, f.next(*table, s)));
                }
            }
            frontier = next;
        }
        Ok(Self { f, start, encodings })
    }

    pub fn classify(&self, x: &[Symbol], c: &BitString) -> Result<PairClass> {
        let target = encode_star(self.f, self.start, x)?.codeword.concat(c);
        let (mut extends, mut diverges) = (false, false);
        for (y, code) in &self.encodings {
            if !target.is_prefix_of(code) {
                continue;
            }
            if y.starts_with(x) {
                extends = true;
            } else {
                diverges = true;
            }
            if extends && diverges {
                return Ok(PairClass::Neither);
            }
        }
        Ok(if diverges {
            PairClass::Negative
        } else {
            PairClass::Positive
        })
    }
}

pub fn classify_pair(f: &CodeTuple, i: TableIndex, x: &[Symbol], c: &BitString, horizon: usize) -> Result<PairClass> {
    PairClassifier::new(f, i, horizon.max(x.len()))?.classify(x, c)
}
