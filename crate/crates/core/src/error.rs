use thiserror::Error;

use crate::poly::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A division by a binomial `1 ± x^(2^j)` left a nonzero remainder.
    #[error("division by (1 {sign} x^{shift}) is not exact")]
    NonExactDivision { sign: Sign, shift: usize },

    /// A division by `x^m` would have discarded nonzero low-order coefficients.
    #[error("division by x^{0} is not exact")]
    NonExactShift(usize),

    #[error("invalid mask: {0}")]
    InvalidMask(String),

    #[error("coefficient at degree {degree} lies off the stride {step} (offset {offset})")]
    StrideViolation { degree: usize, step: usize, offset: usize },

    #[error("line {line}, column {column}: cannot parse {token:?} as an integer")]
    Parse { line: usize, column: usize, token: String },

    #[error("path {0} contains a branch-2 digit")]
    NotDirectPath(String),

    #[error("path digit {0} is not in 0..=2")]
    InvalidDigit(u8),

    #[error("series prefix holds {available} coefficients, {needed} required")]
    PrefixTooShort { needed: usize, available: usize },

    #[error("{0} is outside [0, 1]")]
    OutOfDomain(String),

    #[error("Takagi expression for d = {0} is not an integer")]
    NonIntegerResult(u64),

    #[error("operand has {len} coefficients, more than the block length {n}")]
    LengthExceeds { len: usize, n: usize },

    #[error("term index {k} is not below {n}")]
    TermIndex { k: usize, n: usize },

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("binomial factor at level {level}: {reason}")]
    FactorState { level: u32, reason: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
