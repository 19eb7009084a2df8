//! Exact arithmetic in real quadratic fields, their rings of integers, prime
//! splitting and residue fields.

mod finite;
mod multiquad;
mod prime;
mod quadratic;
pub(crate) mod text;

pub use finite::{is_prime, FiniteField, ResidueElement};
pub use multiquad::{mask_of, radicand, MultiQuadElement, PRIMES};
pub use prime::{discriminant, splitting, PrimeIdealData, PrimeKind, PID_RADICANDS};
pub use quadratic::{is_squarefree, QuadraticFieldElement};
pub use text::{parse_multiquad, parse_quadratic, TextError};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberFieldError {
    #[error("{value} does not lie in Q(sqrt {d})")]
    NotInField { value: String, d: i64 },
    #[error("sqrt({0}) is not in Q(sqrt 2, sqrt 3, sqrt 5)")]
    UnsupportedRadicand(i64),
    #[error("{0} is not an algebraic integer")]
    NotIntegral(String),
    #[error("ring of integers of Q(sqrt {0}) is not known to be a principal ideal domain")]
    NotPid(i64),
    #[error("{0} is not a supported rational prime")]
    NotPrime(i64),
    #[error("{0} is not a squarefree positive integer")]
    NotSquarefree(i64),
    #[error("element of Q(sqrt {found}) used with a prime of Q(sqrt {expected})")]
    FieldMismatch { expected: i64, found: i64 },
}

/// Whether `alpha` divides `beta` in the ring of integers.
pub fn divides(alpha: &QuadraticFieldElement, beta: &QuadraticFieldElement) -> bool {
    beta.is_divisible_by(alpha)
}
