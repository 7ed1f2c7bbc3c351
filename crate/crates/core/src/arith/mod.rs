//! Exact integer and rational primitives.

mod number;
mod sqrt;
mod stirling;

pub use number::{divisors, factorial, integer_root, is_prime, mobius, prime_factors};
pub use sqrt::{isqrt, sqrt_upper_rational};
pub use stirling::{
    binomial, eval_stirling_poly, stirling2, stirling2_defining_identity_check, stirling_poly,
    StirlingPoly,
};

/// Arbitrary-precision signed integer.
pub type BigInteger = num_bigint::BigInt;

/// Exact rational, always in lowest terms with a positive denominator.
pub type ExactRational = num_rational::BigRational;
