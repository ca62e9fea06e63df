//! The extended encoder `f*_i`, `τ*_i` and a delayed decoder.

use std::collections::BTreeSet;

use crate::bits::BitString;
use crate::decodability::is_k_delay_decodable;
use crate::error::{Error, Result};
use crate::tuple::{CodeTuple, Symbol, TableIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodeResult {
    /// `f*_i(x)`
    pub codeword: BitString,
    /// `τ*_i(x)`
    pub final_table: TableIndex,
}

/// Encodes `x` starting with table `i`.
pub fn encode_star(f: &CodeTuple, i: TableIndex, x: &[Symbol]) -> Result<EncodeResult> {
    f.check_table(i)?;
    f.check_symbols(x)?;
    let mut codeword = BitString::empty();
    let mut table = i;
    for &s in x {
        codeword.extend_from(f.codeword(table, s));
        table = f.next(table, s);
    }
    Ok(EncodeResult {
        codeword,
        final_table: table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    /// Longest source prefix shared by every source string consistent with the input.
    pub decoded: Vec<Symbol>,
    /// `|f*_i(decoded)|`, capped at the input length when the last decoded
    /// symbol's codeword is only partly present.
    pub bits_consumed: usize,
    /// Whether some consistent source string differs from `decoded`, i.e. the
    /// tail of the input could not be resolved.
    pub ambiguous_tail: bool,
}

/// Decodes `c`, encoded from table `i`, with a code that is `k`-bit delay decodable.
///
/// The input is read as a complete codeword sequence when some source string
/// encodes to exactly `c`; the consistent strings are then those `x` with
/// `f*_i(x) = c`. Otherwise the input is treated as truncated and the
/// consistent strings are those whose encoding extends `c`. The decoder keeps
/// the set of parse hypotheses `(bit position, table)` reached by the common
/// prefix and emits a symbol whenever every viable hypothesis agrees on it.
pub fn decode_delayed(f: &CodeTuple, i: TableIndex, k: usize, c: &BitString) -> Result<DecodeResult> {
    f.check_table(i)?;
    if !is_k_delay_decodable(f, k)?.decodable {
        return Err(Error::NotDecodable(k));
    }
    let parser = Parser::new(f, c);
    let exact = parser.viable(Mode::Exact);
    let (mode, viable) = if exact[i][0] {
        (Mode::Exact, exact)
    } else {
        let truncated = parser.viable(Mode::Truncated);
        if !truncated[i][0] {
            return Err(Error::InconsistentBits(c.to_string()));
        }
        (Mode::Truncated, truncated)
    };
    Ok(parser.common_prefix(i, mode, &viable))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Parses must end exactly at the end of the input.
    Exact,
    /// Parses end with a codeword that runs past the end of the input.
    Truncated,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Step {
    /// Codeword fits inside the input; continue at (position, table).
    Inside(usize, TableIndex),
    /// Codeword extends past the end of the input.
    Overflow,
}

struct Parser<'a> {
    f: &'a CodeTuple,
    c: &'a BitString,
}

impl<'a> Parser<'a> {
    fn new(f: &'a CodeTuple, c: &'a BitString) -> Self {
        Self { f, c }
    }

    fn step(&self, p: usize, j: TableIndex, s: Symbol) -> Option<Step> {
        let cw = self.f.codeword(j, s);
        let n = self.c.len();
        if p + cw.len() <= n {
            let fits = (0..cw.len()).all(|q| cw.get(q) == self.c.get(p + q));
            fits.then(|| Step::Inside(p + cw.len(), self.f.next(j, s)))
        } else {
            let fits = (p..n).all(|q| cw.get(q - p) == self.c.get(q));
            fits.then_some(Step::Overflow)
        }
    }

    fn accepting(&self, mode: Mode, step: Step) -> bool {
        match (mode, step) {
            (Mode::Exact, Step::Inside(p, _)) => p == self.c.len(),
            (Mode::Truncated, Step::Overflow) => true,
            _ => false,
        }
    }

    /// `viable[j][p]`: some parse continuing from (p, j) is accepted.
    fn viable(&self, mode: Mode) -> Vec<Vec<bool>> {
        let n = self.c.len();
        let m = self.f.num_tables();
        let mut ok = vec![vec![false; n + 1]; m];
        if mode == Mode::Exact {
            for row in ok.iter_mut() {
                row[n] = true;
            }
        }
        loop {
            let mut changed = false;
            for p in (0..=n).rev() {
                for j in 0..m {
                    if ok[j][p] {
                        continue;
                    }
                    let hit = (0..self.f.alphabet_size()).any(|s| match self.step(p, j, s) {
                        Some(st @ Step::Overflow) => self.accepting(mode, st),
                        Some(Step::Inside(q, t)) => ok[t][q],
                        None => false,
                    });
                    if hit {
                        ok[j][p] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return ok;
            }
        }
    }

    fn is_viable(&self, mode: Mode, viable: &[Vec<bool>], step: Step) -> bool {
        match step {
            Step::Inside(p, t) => viable[t][p],
            Step::Overflow => mode == Mode::Truncated,
        }
    }

    fn common_prefix(&self, start: TableIndex, mode: Mode, viable: &[Vec<bool>]) -> DecodeResult {
        let mut decoded = Vec::new();
        let mut hyps: BTreeSet<Step> = BTreeSet::from([Step::Inside(0, start)]);
        let mut seen: BTreeSet<BTreeSet<Step>> = BTreeSet::new();
        loop {
            let stop_here = hyps.iter().any(|&h| self.accepting(mode, h) || h == Step::Overflow);
            let mut moves: BTreeSet<(Symbol, Step)> = BTreeSet::new();
            for &h in &hyps {
                if let Step::Inside(p, j) = h {
                    for s in 0..self.f.alphabet_size() {
                        if let Some(st) = self.step(p, j, s) {
                            if self.is_viable(mode, viable, st) {
                                moves.insert((s, st));
                            }
                        }
                    }
                }
            }
            let symbols: BTreeSet<Symbol> = moves.iter().map(|&(s, _)| s).collect();
            if stop_here || symbols.len() != 1 || !seen.insert(hyps.clone()) {
                let ambiguous = mode == Mode::Truncated || !moves.is_empty() || !stop_here;
                let produced = encode_star(self.f, start, &decoded).expect("decoded symbols are in range");
                let bits_consumed = produced.codeword.len().min(self.c.len());
                return DecodeResult {
                    decoded,
                    bits_consumed,
                    ambiguous_tail: ambiguous,
                };
            }
            decoded.push(*symbols.iter().next().unwrap());
            hyps = moves.into_iter().map(|(_, st)| st).collect();
        }
    }
}
