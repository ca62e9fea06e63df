//! Code-tuples with k bits of decoding delay: encoding and delayed decoding,
//! follow sets and the decodability test, the table-index Markov chain and
//! average codeword length, table reduction, a necessary condition for
//! optimality, bounded search, and text formats with a CLI.

pub mod bits;
pub mod cli;
pub mod cost;
pub mod decodability;
pub mod error;
pub mod followsets;
pub mod io;
pub mod linalg;
pub mod markov;
pub mod optimality;
pub mod rational;
pub mod reduce;
pub mod samples;
pub mod search;
pub mod semantics;
pub mod tuple;

pub use bits::BitString;
pub use error::{Error, Result};
pub use rational::Rational;
pub use tuple::{CodeTuple, Entry, SourceDistribution, Symbol, TableIndex};
