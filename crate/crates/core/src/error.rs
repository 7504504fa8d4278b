use alloc::string::String;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("f_n is reducible over Q: rational root {root}")]
    Reducible { root: Rational },

    #[error("division by zero")]
    DivisionByZero,

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("{0} is not a prime congruent to 1 mod 3")]
    NotSplitPrime(String),

    #[error("basis is singular")]
    SingularBasis,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("operation not defined for case {0}")]
    CaseError(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("verification failed: {check}")]
    Verification { check: &'static str },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
