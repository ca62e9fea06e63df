use thiserror::Error;

/// Errors raised by the library. CLI exit codes are derived from these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{prefix} is not a prefix of {target}")]
    NotAPrefix { prefix: String, target: String },

    #[error("operation requires a non-empty sequence")]
    EmptySequence,

    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("invalid code-tuple: {0}")]
    InvalidCodeTuple(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("code-tuple is not {0}-bit delay decodable")]
    NotDecodable(usize),

    #[error("bit string {0} is not a prefix of any achievable codeword sequence")]
    InconsistentBits(String),

    #[error("code-tuple is not regular (R_F is empty)")]
    NonRegular,

    #[error("code-tuple is not irreducible")]
    NonIrreducible,

    #[error("precondition failed: code-tuple is not {0}")]
    PreconditionFailed(String),

    #[error("no valid code-tuple exists within the search bounds")]
    InfeasibleBounds,

    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),

    #[error("depth {0} exceeds the follow-set cap of {cap}", cap = crate::followsets::MAX_DEPTH)]
    DepthTooLarge(usize),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
