//! Exact counts of monic irreducible polynomials over finite fields, the
//! Stirling-number asymptotic expansion of the prime polynomial counting
//! function `pi_q(q^n)`, and certified verification of its remainder bound.
//!
//! Every quantity is an arbitrary-precision integer or an exact rational.
//! The one irrational value that enters a bound (a square root) is replaced
//! by a certified rational upper bound, so a passing check is a proof for
//! the cell it covers.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: Möbius function, divisors, Stirling numbers and the Stirling
//!   polynomials, outward-rounded square roots.
//! * [`ffpoly`]: explicit finite fields, polynomial arithmetic over them and
//!   a brute-force enumeration oracle for irreducible counts.
//! * [`expansion`]: the exact counting formula, the expansion terms, the
//!   remainder bound and the comparison expansions.
//! * [`inequalities`]: the intermediate estimates behind the remainder bound,
//!   each checked in exact arithmetic.
//! * [`suite`]: grid drivers that combine the above into pass/fail rows.

pub mod arith;
pub mod error;
pub mod expansion;
pub mod ffpoly;
pub mod inequalities;
pub mod prime_power;
pub mod suite;

pub use arith::{BigInteger, ExactRational, StirlingPoly};
pub use error::{Error, Result};
pub use expansion::{BoundConstants, CountQuery, ExpansionReport, PollackCoefficient};
pub use ffpoly::{FieldContext, FieldPoly};
pub use prime_power::PrimePower;

/// Default denominator for outward-rounded square roots.
pub const DEFAULT_SQRT_SLACK: u64 = 1_000_000;

/// Default number of polynomials the enumeration oracle may visit per cell.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;
