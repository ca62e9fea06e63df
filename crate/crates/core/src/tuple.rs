//! Code-tuples, source symbols and source distributions.

use std::fmt;

use num::{One, Signed};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Index of a source symbol, `0..σ`.
pub type Symbol = usize;
/// Index of a code table, `0..m`.
pub type TableIndex = usize;

/// One row of a code table: the codeword for a symbol and the table used next.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub codeword: BitString,
    pub next: TableIndex,
}

impl Entry {
    pub fn new(codeword: BitString, next: TableIndex) -> Self {
        Self { codeword, next }
    }
}

/// An m-code-tuple: `m` code tables `f_i` with their successor maps `τ_i`.
///
/// `tables[i][s]` holds `(f_i(s), τ_i(s))`. Immutable once built; every
/// constructor validates that each table covers the whole alphabet and that
/// successors stay in range.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeTuple {
    alphabet: Vec<String>,
    tables: Vec<Vec<Entry>>,
}

impl CodeTuple {
    pub fn new(alphabet: Vec<String>, tables: Vec<Vec<Entry>>) -> Result<Self> {
        if alphabet.len() < 2 {
            return Err(Error::InvalidCodeTuple(format!(
                "alphabet needs at least 2 symbols, got {}",
                alphabet.len()
            )));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() || a.chars().any(char::is_whitespace) {
                return Err(Error::InvalidCodeTuple(format!("bad symbol label {a:?}")));
            }
            if alphabet[..i].contains(a) {
                return Err(Error::InvalidCodeTuple(format!("duplicate symbol {a:?}")));
            }
        }
        if tables.is_empty() {
            return Err(Error::InvalidCodeTuple("at least one code table is required".into()));
        }
        let m = tables.len();
        for (i, table) in tables.iter().enumerate() {
            if table.len() != alphabet.len() {
                return Err(Error::InvalidCodeTuple(format!(
                    "table {i} defines {} symbols, alphabet has {}",
                    table.len(),
                    alphabet.len()
                )));
            }
            if let Some((s, e)) = table.iter().enumerate().find(|(_, e)| e.next >= m) {
                return Err(Error::InvalidCodeTuple(format!(
                    "table {i}, symbol {}: next index {} out of range for {m} tables",
                    alphabet[s], e.next
                )));
            }
        }
        Ok(Self { alphabet, tables })
    }

    /// Compact constructor: `rows[i][s] = (codeword, next)`, with `-` for λ.
    pub fn from_rows(alphabet: &[&str], rows: &[&[(&str, TableIndex)]]) -> Result<Self> {
        let tables = rows
            .iter()
            .map(|t| {
                t.iter()
                    .map(|(cw, next)| Ok(Entry::new(cw.parse()?, *next)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.iter().map(|s| s.to_string()).collect(), tables)
    }

    /// A single-table tuple whose successor is always table 0.
    pub fn single_table(alphabet: &[&str], codewords: &[&str]) -> Result<Self> {
        let row: Vec<(&str, TableIndex)> = codewords.iter().map(|c| (*c, 0)).collect();
        Self::from_rows(alphabet, &[&row])
    }

    /// `|F|`.
    pub fn num_tables(&self) -> usize {
        self.tables.len()
    }

    /// `σ`.
    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn tables(&self) -> &[Vec<Entry>] {
        &self.tables
    }

    pub fn table(&self, i: TableIndex) -> &[Entry] {
        &self.tables[i]
    }

    /// `f_i(s)`.
    pub fn codeword(&self, i: TableIndex, s: Symbol) -> &BitString {
        &self.tables[i][s].codeword
    }

    /// `τ_i(s)`.
    pub fn next(&self, i: TableIndex, s: Symbol) -> TableIndex {
        self.tables[i][s].next
    }

    pub fn check_table(&self, i: TableIndex) -> Result<()> {
        if i < self.num_tables() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                what: "table",
                index: i,
                limit: self.num_tables(),
            })
        }
    }

    pub fn check_symbols(&self, x: &[Symbol]) -> Result<()> {
        match x.iter().find(|&&s| s >= self.alphabet_size()) {
            Some(&s) => Err(Error::IndexOutOfRange {
                what: "symbol",
                index: s,
                limit: self.alphabet_size(),
            }),
            None => Ok(()),
        }
    }

    pub fn symbol_index(&self, label: &str) -> Option<Symbol> {
        self.alphabet.iter().position(|a| a == label)
    }

    /// Parses a source string: whitespace/comma separated labels, or a run of
    /// single-character labels such as `badb`. `-`/`λ`/empty is the empty string.
    pub fn parse_symbols(&self, text: &str) -> Result<Vec<Symbol>> {
        let t = text.trim();
        if t.is_empty() || t == "-" || t == "λ" {
            return Ok(Vec::new());
        }
        let lookup = |label: &str| {
            self.symbol_index(label).ok_or_else(|| Error::Parse {
                line: 0,
                reason: format!("unknown symbol {label:?}"),
            })
        };
        if t.contains(|c: char| c.is_whitespace() || c == ',') {
            t.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|p| !p.is_empty())
                .map(lookup)
                .collect()
        } else if let Some(s) = self.symbol_index(t) {
            Ok(vec![s])
        } else if self.alphabet.iter().all(|a| a.chars().count() == 1) {
            t.chars().map(|c| lookup(&c.to_string())).collect()
        } else {
            lookup(t).map(|s| vec![s])
        }
    }

    /// Renders a source string, concatenating labels when all are one character.
    pub fn format_symbols(&self, x: &[Symbol]) -> String {
        if x.is_empty() {
            return "λ".into();
        }
        let single = self.alphabet.iter().all(|a| a.chars().count() == 1);
        let parts: Vec<&str> = x.iter().map(|&s| self.alphabet[s].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// Same codewords, different successor maps.
    pub fn with_successors<F>(&self, mut next: F) -> CodeTuple
    where
        F: FnMut(TableIndex, Symbol, TableIndex) -> TableIndex,
    {
        let tables = self
            .tables
            .iter()
            .enumerate()
            .map(|(i, t)| {
                t.iter()
                    .enumerate()
                    .map(|(s, e)| Entry::new(e.codeword.clone(), next(i, s, e.next)))
                    .collect()
            })
            .collect();
        CodeTuple::new(self.alphabet.clone(), tables).expect("successor rewrite produced an invalid tuple")
    }

    /// Relabels table indices: table `i` of `self` becomes table `perm[i]`.
    pub fn permute_tables(&self, perm: &[TableIndex]) -> Result<CodeTuple> {
        let m = self.num_tables();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidCodeTuple("not a permutation of the table indices".into()));
        }
        let mut tables = vec![Vec::new(); m];
        for (i, t) in self.tables.iter().enumerate() {
            tables[perm[i]] = t.iter().map(|e| Entry::new(e.codeword.clone(), perm[e.next])).collect();
        }
        CodeTuple::new(self.alphabet.clone(), tables)
    }

    /// Total number of codeword bits across all tables.
    pub fn total_bits(&self) -> usize {
        self.tables.iter().flatten().map(|e| e.codeword.len()).sum()
    }
}

impl fmt::Display for CodeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::serialize_code_tuple(self))
    }
}

/// A probability for every source symbol: all strictly positive, summing to
/// exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDistribution {
    probs: Vec<Rational>,
}

impl SourceDistribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidDistribution("at least two symbols are required".into()));
        }
        if let Some((s, p)) = probs.iter().enumerate().find(|(_, p)| !p.is_positive()) {
            return Err(Error::InvalidDistribution(format!(
                "probability of symbol {s} is {p}, must be positive"
            )));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let p = Rational::new(1.into(), (n.max(1) as i64).into());
        Self::new(vec![p; n])
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// `μ(s)`.
    pub fn prob(&self, s: Symbol) -> &Rational {
        &self.probs[s]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn check_matches(&self, f: &CodeTuple) -> Result<()> {
        if self.len() == f.alphabet_size() {
            Ok(())
        } else {
            Err(Error::InvalidDistribution(format!(
                "distribution has {} symbols, code-tuple alphabet has {}",
                self.len(),
                f.alphabet_size()
            )))
        }
    }
}
