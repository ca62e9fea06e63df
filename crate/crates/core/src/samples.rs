//! Reference code-tuples over the alphabet `a b c d`, used as golden data in
//! tests and the bundled `data/` files.

use crate::rational::ratio;
use crate::tuple::{CodeTuple, SourceDistribution};

const ABCD: [&str; 4] = ["a", "b", "c", "d"];

/// Three tables, 2-bit delay decodable, irreducible.
pub fn alpha() -> CodeTuple {
    CodeTuple::from_rows(
        &ABCD,
        &[
            &[("01", 0), ("10", 1), ("0100", 0), ("01", 2)],
            &[("00", 1), ("-", 0), ("00111", 1), ("00111", 2)],
            &[("1100", 1), ("1110", 2), ("111000", 2), ("110", 2)],
        ],
    )
    .unwrap()
}

/// Three tables; table 2 never emits a bit and no table is reachable from all others.
pub fn beta() -> CodeTuple {
    CodeTuple::from_rows(
        &ABCD,
        &[
            &[("-", 1), ("101", 2), ("1011", 1), ("1101", 2)],
            &[("0110", 1), ("01", 1), ("0111", 1), ("01111", 1)],
            &[("-", 2), ("-", 2), ("-", 2), ("-", 2)],
        ],
    )
    .unwrap()
}

/// Four tables, 2-bit delay decodable, with two pairs of tables sharing
/// the same 2-bit follow sets.
pub fn gamma() -> CodeTuple {
    CodeTuple::from_rows(
        &ABCD,
        &[
            &[("0010", 2), ("0011", 0), ("000", 1), ("-", 2)],
            &[("100", 1), ("00", 0), ("01", 1), ("1", 2)],
            &[("1100", 1), ("11", 2), ("01", 1), ("10", 0)],
            &[("010", 0), ("011", 1), ("100", 0), ("1", 2)],
        ],
    )
    .unwrap()
}

/// Two tables, 2-bit delay decodable, average length 28/15 under [`mu_abcd`].
pub fn delta() -> CodeTuple {
    CodeTuple::from_rows(
        &ABCD,
        &[
            &[("100", 0), ("00", 0), ("01", 0), ("1", 1)],
            &[("1100", 0), ("11", 1), ("01", 0), ("10", 0)],
        ],
    )
    .unwrap()
}

/// Single prefix-free table `{00, 01, 10, 110}` whose code tree is not full.
pub fn incomplete_prefix_code() -> CodeTuple {
    CodeTuple::single_table(&ABCD, &["00", "01", "10", "110"]).unwrap()
}

/// μ = (0.1, 0.2, 0.3, 0.4).
pub fn mu_abcd() -> SourceDistribution {
    SourceDistribution::new(vec![ratio(1, 10), ratio(2, 10), ratio(3, 10), ratio(4, 10)]).unwrap()
}
