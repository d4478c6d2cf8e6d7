use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::LatticeVector;

/// Errors produced by the toric-hj library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector {0} is not primitive")]
    NotPrimitive(LatticeVector),

    #[error("cone generators {0} and {1} are collinear (determinant 0)")]
    Collinear(Box<LatticeVector>, Box<LatticeVector>),

    #[error("cone generators {0} and {1} are antipodal; the cone is not strongly convex")]
    Antipodal(Box<LatticeVector>, Box<LatticeVector>),

    #[error("zero vector cannot generate a ray")]
    ZeroVector,

    #[error("denominator must be positive, got {0}")]
    NonPositiveDenominator(BigInt),

    #[error("fraction must exceed 1, got {num}/{den}")]
    FractionNotAboveOne { num: BigInt, den: BigInt },

    #[error("continued fraction expansion is empty")]
    EmptyExpansion,

    #[error("continued fraction entry {0} is below 2")]
    EntryBelowTwo(BigInt),

    #[error("invalid weights (1, {m}, {n}): {reason}")]
    InvalidWeights {
        m: BigInt,
        n: BigInt,
        reason: &'static str,
    },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("fan is not smooth at cone {index} (determinant {det})")]
    NotSmooth { index: usize, det: BigInt },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("|det| = {det} exceeds the oracle bound {bound}")]
    DeterminantBoundExceeded { det: BigInt, bound: BigInt },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
