//! Binary strings over the coding alphabet {0, 1}.
//!
//! Bits are packed most-significant-first into 64-bit words with the unused
//! tail of the last word kept at zero, so equality, hashing and ordering can
//! work on whole words. The derived order is the usual string order: a proper
//! prefix sorts before its extensions and otherwise the first differing bit
//! decides.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: SmallVec<[u64; 2]>,
    len: usize,
}

impl BitString {
    /// The empty string λ.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut out = Self::empty();
        for b in bits {
            out.push(b);
        }
        out
    }

    /// The `len` low-order bits of `value`, most significant first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        Self::from_bits((0..len).rev().map(|i| (value >> i) & 1 == 1))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at position `i` (0-based from the left).
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (WORD - 1 - i % WORD)) & 1 == 1
    }

    pub fn push(&mut self, bit: bool) {
        let pos = self.len % WORD;
        if pos == 0 {
            self.words.push(0);
        }
        if bit {
            let last = self.words.len() - 1;
            self.words[last] |= 1 << (WORD - 1 - pos);
        }
        self.len += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn extend_from(&mut self, other: &BitString) {
        if self.len.is_multiple_of(WORD) {
            // Word aligned: copy whole words.
            self.words.extend_from_slice(&other.words);
            self.len += other.len;
        } else {
            for b in other.iter() {
                self.push(b);
            }
        }
    }

    /// The first `n` bits (the whole string when `n >= len`).
    pub fn prefix(&self, n: usize) -> BitString {
        let n = n.min(self.len);
        let mut words: SmallVec<[u64; 2]> = self.words[..n.div_ceil(WORD)].into();
        if !n.is_multiple_of(WORD) {
            let last = words.len() - 1;
            words[last] &= !(u64::MAX >> (n % WORD));
        }
        BitString { words, len: n }
    }

    /// Bits from position `start` to the end.
    pub fn suffix_from(&self, start: usize) -> BitString {
        Self::from_bits((start.min(self.len)..self.len).map(|i| self.get(i)))
    }

    /// `self ⪯ other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        if self.len > other.len {
            return false;
        }
        let full = self.len / WORD;
        if self.words[..full] != other.words[..full] {
            return false;
        }
        let rem = self.len % WORD;
        if rem == 0 {
            return true;
        }
        let mask = !(u64::MAX >> rem);
        (self.words[full] ^ other.words[full]) & mask == 0
    }

    /// `self ≺ other`: a prefix that is strictly shorter.
    pub fn is_proper_prefix_of(&self, other: &BitString) -> bool {
        self.len < other.len && self.is_prefix_of(other)
    }

    /// Returns z with `self · z = target`.
    pub fn strip_prefix_of(&self, target: &BitString) -> Result<BitString> {
        if self.is_prefix_of(target) {
            Ok(target.suffix_from(self.len))
        } else {
            Err(Error::NotAPrefix {
                prefix: self.to_string(),
                target: target.to_string(),
            })
        }
    }

    /// Drops the last bit.
    pub fn pref(&self) -> Result<BitString> {
        if self.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(self.prefix(self.len - 1))
    }

    /// Drops the first bit.
    pub fn suff(&self) -> Result<BitString> {
        if self.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(self.suffix_from(1))
    }

    /// `0`/`1` characters, with the empty string rendered as `λ`.
    pub fn to_bit_chars(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Every bit string of length exactly `n`, in increasing order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BitString> {
        assert!(n < WORD, "enumeration limited to fewer than 64 bits");
        (0..1u64 << n).map(move |v| BitString::from_u64(v, n))
    }
}

/// `x ⪯ y`.
pub fn is_prefix(x: &BitString, y: &BitString) -> bool {
    x.is_prefix_of(y)
}

/// `x⁻¹y`, the unique z with `xz = y`.
pub fn strip_prefix(x: &BitString, y: &BitString) -> Result<BitString> {
    x.strip_prefix_of(y)
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .as_slice()
            .cmp(other.words.as_slice())
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("λ")
        } else {
            f.write_str(&self.to_bit_chars())
        }
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Accepts `0`/`1` digits; `-`, `λ` and the empty string denote λ.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "λ" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: 0,
                    reason: format!("invalid bit {other:?} in {s:?}"),
                }),
            })
            .collect::<Result<Vec<bool>>>()
            .map(Self::from_bits)
    }
}

/// Shorthand used throughout the tests: `bits("0100")`.
pub fn bits(s: &str) -> BitString {
    s.parse().expect("invalid bit literal")
}

/// Drops the last element of a symbol string.
pub fn pref_seq<T>(x: &[T]) -> Result<&[T]> {
    match x.len() {
        0 => Err(Error::EmptySequence),
        n => Ok(&x[..n - 1]),
    }
}

/// Drops the first element of a symbol string.
pub fn suff_seq<T>(x: &[T]) -> Result<&[T]> {
    if x.is_empty() {
        Err(Error::EmptySequence)
    } else {
        Ok(&x[1..])
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self::from_bits(iter)
    }
}
