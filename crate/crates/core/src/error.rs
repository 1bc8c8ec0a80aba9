//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Two operands live over different variable sets.
    #[error("variable set mismatch: {0}")]
    VarMismatch(String),

    /// Two operands live over different coefficient rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// Cyclotomic elements with different conductors were combined.
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    /// A cyclotomic integer with nonzero non-constant coordinates was
    /// asked to descend to a rational integer.
    #[error("cyclotomic element is not a rational integer: {0}")]
    NotRational(String),

    /// Exact division failed; carries a witness term or remainder.
    #[error("not divisible: {0}")]
    NotDivisible(String),

    /// A modulus that must be prime is not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Denominator is the zero polynomial.
    #[error("zero denominator")]
    ZeroDenominator,

    /// All projective coordinates are zero.
    #[error("all projective coordinates are zero")]
    AllZero,

    /// A projective point with vanishing denominator block has no image.
    #[error("indeterminate point: denominator coordinates all zero")]
    IndeterminatePoint,

    /// The field characteristic divides the transform order.
    #[error("characteristic {p} divides transform order {m}")]
    CharDividesM { p: u64, m: u32 },

    /// A variable name absent from the variable set was referenced.
    #[error("unknown variable: {0}")]
    UnknownVariable(String),

    /// Parameters exceed a documented cost guard.
    #[error("cost guard exceeded: {0}")]
    GuardExceeded(String),

    /// Malformed input (bad JSON, bad coefficient string, wrong lengths).
    #[error("parse error: {0}")]
    Parse(String),

    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An internal invariant that the construction guarantees was violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
