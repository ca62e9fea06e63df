//! Text formats for code-tuples and source distributions.
//!
//! A code-tuple document:
//!
//! ```text
//! delaycode-tuple 1
//! alphabet a b c d
//! tables 2
//! table 0
//! a 100 -> 0
//! b 00 -> 0
//! c 01 -> 0
//! d 1 -> 1
//! table 1
//! a 1100 -> 0
//! b 11 -> 1
//! c 01 -> 0
//! d 10 -> 0
//! ```
//!
//! `-` is the empty codeword, `#` starts a comment, and the `->` arrow is
//! optional. Rows may come in any order inside a block; the serializer emits
//! them in alphabet order.
//!
//! A distribution document lists one `symbol probability` pair per line
//! after the `delaycode-dist 1` header, with probabilities given as `p/q`,
//! integers or decimals (converted exactly).

use std::fmt::Write as _;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rational::{format_exact, parse_rational, Rational};
use crate::tuple::{CodeTuple, Entry, SourceDistribution};

pub const TUPLE_HEADER: &str = "delaycode-tuple 1";
pub const DIST_HEADER: &str = "delaycode-dist 1";

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Non-blank lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((n + 1, words))
    })
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, header: &str) -> Result<()> {
    match lines.next() {
        Some((_, w)) if w.join(" ") == header => Ok(()),
        Some((n, w)) => Err(parse_err(
            n,
            format!("expected header {header:?}, found {:?}", w.join(" ")),
        )),
        None => Err(parse_err(0, format!("empty document, expected header {header:?}"))),
    }
}

pub fn parse_code_tuple(text: &str) -> Result<CodeTuple> {
    let mut lines = content_lines(text).peekable();
    expect_header(&mut lines, TUPLE_HEADER)?;

    let alphabet: Vec<String> = match lines.next() {
        Some((_, w)) if w[0] == "alphabet" => w[1..].iter().map(|s| s.to_string()).collect(),
        Some((n, _)) => return Err(parse_err(n, "expected 'alphabet <symbols…>'")),
        None => return Err(parse_err(0, "missing alphabet line")),
    };
    let (count_line, m) = match lines.next() {
        Some((n, w)) if w.len() == 2 && w[0] == "tables" => {
            let m: usize = w[1]
                .parse()
                .map_err(|_| parse_err(n, format!("invalid table count {:?}", w[1])))?;
            if m == 0 {
                return Err(parse_err(n, "table count must be at least 1"));
            }
            (n, m)
        }
        Some((n, _)) => return Err(parse_err(n, "expected 'tables <count>'")),
        None => return Err(parse_err(0, "missing table count")),
    };

    let sigma = alphabet.len();
    let mut tables: Vec<Vec<Entry>> = Vec::with_capacity(m);
    let mut last_line = count_line;
    for i in 0..m {
        match lines.next() {
            Some((n, w)) if w.len() == 2 && w[0] == "table" => {
                if w[1] != i.to_string() {
                    return Err(parse_err(n, format!("expected 'table {i}', found 'table {}'", w[1])));
                }
                last_line = n;
            }
            Some((n, w)) => return Err(parse_err(n, format!("expected 'table {i}', found {:?}", w.join(" ")))),
            None => return Err(parse_err(last_line, format!("missing block for table {i}"))),
        }
        let mut rows: Vec<Option<Entry>> = vec![None; sigma];
        while let Some((n, w)) = lines.next_if(|(_, w)| w[0] != "table") {
            last_line = n;
            let (label, cw, next) = match w.as_slice() {
                [label, cw, "->", next] | [label, cw, next] => (*label, *cw, *next),
                _ => return Err(parse_err(n, "expected '<symbol> <codeword> -> <next>'")),
            };
            let s = alphabet
                .iter()
                .position(|a| a == label)
                .ok_or_else(|| parse_err(n, format!("unknown symbol {label:?}")))?;
            let codeword: BitString = cw
                .parse()
                .map_err(|_| parse_err(n, format!("invalid codeword {cw:?}")))?;
            let next: usize = next
                .parse()
                .map_err(|_| parse_err(n, format!("invalid table index {next:?}")))?;
            if next >= m {
                return Err(parse_err(n, format!("next table {next} out of range (tables 0..{m})")));
            }
            if rows[s].is_some() {
                return Err(parse_err(n, format!("duplicate row for symbol {label:?} in table {i}")));
            }
            rows[s] = Some(Entry::new(codeword, next));
        }
        let missing: Vec<&str> = rows
            .iter()
            .zip(&alphabet)
            .filter(|(r, _)| r.is_none())
            .map(|(_, a)| a.as_str())
            .collect();
        if !missing.is_empty() {
            return Err(parse_err(
                last_line,
                format!("table {i} has no row for {}", missing.join(", ")),
            ));
        }
        tables.push(rows.into_iter().flatten().collect());
    }
    if let Some((n, w)) = lines.next() {
        return Err(parse_err(
            n,
            format!("unexpected content after table {}: {:?}", m - 1, w.join(" ")),
        ));
    }
    CodeTuple::new(alphabet, tables).map_err(|e| parse_err(0, e.to_string()))
}

pub fn serialize_code_tuple(f: &CodeTuple) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{TUPLE_HEADER}");
    let _ = writeln!(out, "alphabet {}", f.alphabet().join(" "));
    let _ = writeln!(out, "tables {}", f.num_tables());
    for (i, table) in f.tables().iter().enumerate() {
        let _ = writeln!(out, "table {i}");
        for (label, e) in f.alphabet().iter().zip(table) {
            let cw = if e.codeword.is_empty() {
                "-".to_string()
            } else {
                e.codeword.to_string()
            };
            let _ = writeln!(out, "{label} {cw} -> {}", e.next);
        }
    }
    out
}

/// A distribution document: symbol labels in file order with their probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDistribution {
    pub labels: Vec<String>,
    pub dist: SourceDistribution,
}

impl LabeledDistribution {
    /// Reorders the probabilities to follow `f`'s alphabet.
    pub fn aligned_to(&self, f: &CodeTuple) -> Result<SourceDistribution> {
        if self.labels.len() != f.alphabet_size() {
            return Err(Error::InvalidDistribution(format!(
                "distribution has {} symbols, code-tuple alphabet has {}",
                self.labels.len(),
                f.alphabet_size()
            )));
        }
        let probs = f
            .alphabet()
            .iter()
            .map(|a| {
                self.labels
                    .iter()
                    .position(|l| l == a)
                    .map(|p| self.dist.prob(p).clone())
                    .ok_or_else(|| Error::InvalidDistribution(format!("no probability for symbol {a:?}")))
            })
            .collect::<Result<Vec<Rational>>>()?;
        SourceDistribution::new(probs)
    }
}

pub fn parse_distribution(text: &str) -> Result<LabeledDistribution> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, DIST_HEADER)?;
    let mut labels: Vec<String> = Vec::new();
    let mut probs = Vec::new();
    let mut last_line = 0;
    for (n, w) in lines {
        last_line = n;
        let [label, p] = w.as_slice() else {
            return Err(parse_err(n, "expected '<symbol> <probability>'"));
        };
        if labels.iter().any(|l| l == label) {
            return Err(parse_err(n, format!("duplicate symbol {label:?}")));
        }
        let p = parse_rational(p).map_err(|_| parse_err(n, format!("invalid probability {p:?}")))?;
        labels.push(label.to_string());
        probs.push(p);
    }
    let dist = SourceDistribution::new(probs).map_err(|e| parse_err(last_line, e.to_string()))?;
    Ok(LabeledDistribution { labels, dist })
}

pub fn serialize_distribution(labels: &[String], dist: &SourceDistribution) -> String {
    let mut out = format!("{DIST_HEADER}\n");
    for (label, p) in labels.iter().zip(dist.probs()) {
        let _ = writeln!(out, "{label} {}", format_exact(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;
    use crate::rational::ratio;
    use crate::samples;

    #[test]
    fn alpha_round_trip() {
        let f = samples::alpha();
        let text = serialize_code_tuple(&f);
        assert!(text.contains("b - -> 0"));
        let g = parse_code_tuple(&text).unwrap();
        assert_eq!(g, f);
        assert_eq!(g.codeword(0, 2), &bits("0100"));
        assert_eq!(g.next(2, 1), 2);
        assert_eq!(serialize_code_tuple(&g), text);
    }

    #[test]
    fn lenient_input_is_canonicalized() {
        let text =
            "# two symbols\ndelaycode-tuple 1\nalphabet x y\ntables 1\n\ntable 0\ny 1 0   # no arrow\nx λ -> 0\n";
        let f = parse_code_tuple(text).unwrap();
        assert_eq!(f.codeword(0, 0), &BitString::empty());
        assert_eq!(
            serialize_code_tuple(&f),
            "delaycode-tuple 1\nalphabet x y\ntables 1\ntable 0\nx - -> 0\ny 1 -> 0\n"
        );
    }

    fn line_of(text: &str) -> usize {
        match parse_code_tuple(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let head = "delaycode-tuple 1\nalphabet a b\ntables 3\ntable 0\n";
        assert_eq!(line_of(&format!("{head}a 01 -> 5\nb 1 -> 0\n")), 5);
        assert_eq!(line_of(&format!("{head}a 01 -> 0\na 1 -> 0\n")), 6);
        assert_eq!(line_of(&format!("{head}a 01 -> 0\nb 1 -> 0\ntable 2\n")), 7);
        assert_eq!(line_of(&format!("{head}a 0x1 -> 0\n")), 5);
        assert_eq!(line_of(&format!("{head}z 01 -> 0\n")), 5);
        assert_eq!(line_of("delaycode-tuple 2\n"), 1);
        assert_eq!(
            line_of("delaycode-tuple 1\nalphabet a b\ntables 1\ntable 0\na 0 -> 0\n"),
            5
        );
    }

    #[test]
    fn distributions() {
        let d = parse_distribution("delaycode-dist 1\na 0.1\nb 1/5\nc 0.3\nd 2/5\n").unwrap();
        assert_eq!(d.dist.probs(), samples::mu_abcd().probs());
        assert_eq!(d.dist.prob(0), &ratio(1, 10));
        let text = serialize_distribution(&d.labels, &d.dist);
        assert_eq!(text, "delaycode-dist 1\na 1/10\nb 1/5\nc 3/10\nd 2/5\n");
        assert_eq!(parse_distribution(&text).unwrap(), d);

        let shuffled = parse_distribution("delaycode-dist 1\nd 0.4\nc 0.3\nb 0.2\na 0.1\n").unwrap();
        assert_eq!(shuffled.aligned_to(&samples::alpha()).unwrap(), samples::mu_abcd());

        assert!(matches!(
            parse_distribution("delaycode-dist 1\na 0.5\nb 0.4\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_distribution("delaycode-dist 1\na 1e-1\nb 0.9\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
