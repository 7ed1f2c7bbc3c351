//! Brute-force oracle side: explicit finite fields, polynomials over them,
//! two independent irreducibility tests and exhaustive counting.

mod enumerate;
mod field;
mod irreducible;
mod poly;

pub use enumerate::{count_irreducible_bruteforce, monic_polys, RabinKernel};
pub use field::{build_field, Elem, FieldContext, MAX_FIELD_ORDER};
pub use irreducible::{is_irreducible_rabin, is_irreducible_trial};
pub use poly::FieldPoly;
