use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(x: &BigInt) -> Result<BigInt> {
    if x.sign() == Sign::Minus {
        return Err(Error::NegativeSqrt);
    }
    Ok(x.sqrt())
}

/// A rational `r` with `sqrt(x) <= r <= sqrt(x) + 1/d`.
///
/// Computed from the integer square root of `x * d^2`. Whenever `x * d^2` is
/// a perfect square the result is exact.
pub fn sqrt_upper_rational(x: &BigInt, d: u64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::ZeroArgument);
    }
    let d = BigInt::from(d);
    let scaled = x * &d * &d;
    let root = isqrt(&scaled)?;
    let num = if &root * &root == scaled { root } else { root + BigInt::one() };
    Ok(BigRational::new(num, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    fn certify(x: &BigInt, d: u64) {
        let r = sqrt_upper_rational(x, d).unwrap();
        let xr = BigRational::from_integer(x.clone());
        assert!(!r.is_negative());
        assert!(&r * &r >= xr, "r^2 < x");
        if x.is_positive() {
            let lower = &r - BigRational::new(BigInt::one(), BigInt::from(d));
            assert!(lower.is_negative() || &lower * &lower < xr, "r exceeds sqrt(x) + 1/d");
        }
    }

    #[test]
    fn examples() {
        let r = sqrt_upper_rational(&BigInt::from(16), 1).unwrap();
        assert!(r >= BigRational::from_integer(4.into()) && r <= BigRational::from_integer(5.into()));
        assert_eq!(r, BigRational::from_integer(4.into()));

        certify(&BigInt::from(2), 1000);
        let r = sqrt_upper_rational(&BigInt::from(2), 1000).unwrap();
        assert_eq!(r, BigRational::new(1415.into(), 1000.into()));

        let r = sqrt_upper_rational(&BigInt::zero(), 7).unwrap();
        assert!(r >= BigRational::zero() && r <= BigRational::new(1.into(), 7.into()));
    }

    #[test]
    fn rejects_negative() {
        assert_eq!(sqrt_upper_rational(&BigInt::from(-1), 10), Err(Error::NegativeSqrt));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn outward_rounding_contract(hi in any::<u64>(), lo in any::<u64>(), d in 1u64..10_000_000) {
            let x = (BigInt::from(hi) << 64) + BigInt::from(lo);
            certify(&x, d);
        }
    }
}
