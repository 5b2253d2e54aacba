use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// A denominator vanished at a concrete value of `x`.
    #[error("pole at x = {at}: denominator {denominator} vanishes")]
    Pole { at: String, denominator: String },

    #[error("invalid arguments to {func}({i}, {j}): indices must satisfy 1 <= i < j")]
    BadPair { func: &'static str, i: usize, j: usize },

    #[error("invalid argument to {func}({j}): index must be >= 1")]
    BadIndex { func: &'static str, j: usize },

    #[error("chain {0:?} is not a nonempty strictly increasing list of positive integers")]
    BadChain(Vec<usize>),

    #[error("p = {p} exceeds the enumeration limit {limit} ({chains} chains); raise the limit to proceed")]
    EnumerationLimit { p: usize, limit: usize, chains: u128 },

    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("leading coefficient vanishes at n = {n}")]
    SingularLeading { n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
