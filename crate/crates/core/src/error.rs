use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("q-binomial needs 0 <= k <= n, got n = {n}, k = {k}")]
    InvalidBinomial { n: usize, k: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("basis dimension {0} is outside 1..=16")]
    InvalidDimension(usize),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("braid closure has {0} components; only knots are supported")]
    NotAKnot(usize),

    #[error("state space of {needed} basis tuples exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("no enhancement exists for this R-matrix")]
    NoEnhancement,

    #[error("non-unique enhancement (solution space of dimension {0})")]
    NonUniqueEnhancement(usize),

    #[error("enhancement check failed: {0}")]
    EnhancementCheck(String),

    #[error("open-strand endomorphism is not a scalar multiple of the identity: {0}")]
    NotScalar(String),

    #[error("expected a Laurent polynomial, got {0}")]
    NotLaurent(String),

    #[error("singular block in {0}")]
    Singular(String),

    #[error("cannot symmetrize {0} by a unit monomial")]
    NotSymmetrizable(String),

    #[error("parse error: {0}")]
    Parse(String),
}
