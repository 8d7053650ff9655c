use thiserror::Error;

/// Errors raised across the zeta pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{value} is not invertible modulo {p}")]
    NotInvertible { value: String, p: String },
    #[error("{0} has negative p-adic valuation")]
    NegativeValuation(String),

    #[error("parse error at position {position}: expected {expected}")]
    Parse { position: usize, expected: String },
    #[error("polynomial does not split over the rationals")]
    SplittingFieldNotQ,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("root search exceeded {0} candidate moduli")]
    CandidateOverflow(usize),

    #[error("tree depth {depth} is below l_f = {lf}")]
    InsufficientDepth { depth: u32, lf: u32 },
    #[error("stationary phase recursion exceeded depth {0}")]
    RecursionDepthExceeded(u32),
    #[error("rational function has a pole at t = {0}")]
    PoleAtPoint(String),

    #[error("zeta function has negative t-shift {0}; counts need integer coefficients")]
    NegativeShift(i64),
    #[error("p^{n} * c_{j} is not a nonnegative integer")]
    NonIntegralCount { n: usize, j: usize },
    #[error("p^n = {modulus} exceeds the brute-force cap {cap}")]
    CapExceeded { modulus: String, cap: u64 },
    #[error("polynomial has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("solution counts require a polynomial with integer coefficients")]
    IntegralityError,
    #[error("prime {0} is too large for this operation")]
    PrimeTooLarge(String),

    #[error("last tap q_r must be nonzero")]
    DegenerateTaps,
    #[error("numerator degree must be below denominator degree {0}")]
    DegreeViolation(usize),
    #[error("invalid LFSR: {0}")]
    InvalidLfsr(String),

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
