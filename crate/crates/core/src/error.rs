use num_bigint::BigInt;
use thiserror::Error;

/// Errors across the arithmetic, density, oracle and cohomology layers.
///
/// Every rejection carries enough data to report *which* hypothesis failed;
/// the CLI forwards these verbatim as machine-readable error objects.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("modulus {0} is not prime")]
    CompositeModulus(BigInt),

    #[error("{0} is not a prime power")]
    NotPrimePower(BigInt),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("degree {got} does not match expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("functional-equation symmetry fails at coefficient index {index}")]
    SymmetryFailure { index: usize },

    #[error("real Weil polynomial is not totally real (got {got} real roots, need {need})")]
    NotTotallyReal { got: usize, need: usize },

    #[error("real Weil polynomial has a root outside [-2*sqrt(q), 2*sqrt(q)]")]
    RootOutOfRange,

    #[error("polynomial is not separable (discriminant is zero)")]
    NotSeparable,

    #[error("repeated eigenvalue sums: discriminant of the real Weil polynomial is zero")]
    RepeatedRealRoot,

    #[error("isogeny class is not ordinary (middle coefficient shares a factor with p)")]
    NotOrdinary,

    #[error("hypothesis violated: {0}")]
    HypothesisFailed(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error("enumeration budget exceeded: estimated cost {estimated} exceeds budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("invalid group data: {0}")]
    BadGroup(String),

    #[error("invalid CM data: {0}")]
    BadCmData(String),

    #[error("missing archimedean density")]
    MissingInfinity,
}
