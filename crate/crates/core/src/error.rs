use thiserror::Error;

/// Errors raised by the library. Mathematical check failures are never
/// reported through this type; they are data in the respective reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    ZeroArgument,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {p}^{e} exceeds the oracle cap of 2^20 elements")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("operands belong to different fields")]
    MixedContext,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("enumerating {q}^{n} polynomials exceeds the budget of {budget}")]
    BudgetExceeded { q: u64, n: usize, budget: u64 },
    #[error("square root of a negative number")]
    NegativeSqrt,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
