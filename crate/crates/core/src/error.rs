use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {0}: free groups here need 2 <= n <= 127")]
    InvalidRank(u8),

    #[error("invalid generator letter: {0}")]
    InvalidLetter(String),

    #[error("rank mismatch: expected n = {expected}, found generator {found}")]
    RankMismatch { expected: u8, found: u8 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("rebase undefined: {0} is not a vertex of the pattern")]
    NotAVertex(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("pattern is not realizable in {space}: {reason}")]
    NotRealizable { space: String, reason: String },

    #[error("refusing {what} for {space} at m = {m}: bound is m <= {bound}; count at the bound is {lower_bound}, a lower bound for the request")]
    ResourceBound {
        what: &'static str,
        space: String,
        m: usize,
        bound: usize,
        lower_bound: BigUint,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
