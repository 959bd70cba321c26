use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient index {index} is past the reliable order {order}")]
    BeyondOrder { index: usize, order: usize },
    #[error("leading exponents {0} and {1} differ by a non-integer")]
    ExponentMismatch(String, String),
    #[error("series has zero leading coefficient")]
    NotUnit,
    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(u32),
    #[error("series order must be at least {0}")]
    OrderTooSmall(usize),
    #[error("lower hypergeometric parameter {0} is a nonpositive integer")]
    LowerParameter(String),
    #[error("{value} is not {p}-integral")]
    NotPIntegral { value: String, p: u64 },
    #[error("infinitely many carries: the Pochhammer factor vanishes")]
    InfiniteCarries,
    #[error("indicial roots are not distinct")]
    RepeatedRoots,
    #[error("resonance: exponent {0} has another indicial root a positive integer above it")]
    Resonance(String),
    #[error("exponent {0} is not a root of the indicial polynomial")]
    NotIndicialRoot(String),
    #[error("weights {0}, {1}, 0 are not distinct modulo 1")]
    NotDistinctModOne(String, String),
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical tolerance not met: {0}")]
    Tolerance(String),
    #[error("{0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
