use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{integer_root, is_prime};
use crate::error::{Error, Result};

/// A field size `q = p^e` with `p` prime and `e >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    q: u64,
    p: u64,
    e: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if is_prime(q) {
            return Ok(PrimePower { q, p: q, e: 1 });
        }
        if q >= 4 {
            for e in 2..=63u32 {
                let r = integer_root(q, e);
                if r < 2 {
                    break;
                }
                if r.pow(e) == q && is_prime(r) {
                    return Ok(PrimePower { q, p: r, e });
                }
            }
        }
        Err(Error::NotPrimePower(q))
    }

    pub fn from_parts(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroArgument);
        }
        let q = p.checked_pow(e).ok_or(Error::NotPrimePower(u64::MAX))?;
        Ok(PrimePower { q, p, e })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.q)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.to_bigint())
    }

    /// `q^n` as an exact integer.
    pub fn pow(&self, n: usize) -> BigInt {
        num_traits::pow(self.to_bigint(), n)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

impl FromStr for PrimePower {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q: u64 = s
            .trim()
            .parse()
            .map_err(|_| format!("{s:?} is not a positive integer"))?;
        PrimePower::new(q).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognises_prime_powers() {
        let pp = PrimePower::new(16).unwrap();
        assert_eq!((pp.q(), pp.characteristic(), pp.exponent()), (16, 2, 4));
        let pp = PrimePower::new(9).unwrap();
        assert_eq!((pp.characteristic(), pp.exponent()), (3, 2));
        assert_eq!(PrimePower::new(13).unwrap().exponent(), 1);
        let big = 3u64.pow(40);
        assert_eq!(PrimePower::new(big).unwrap().exponent(), 40);
        assert_eq!(PrimePower::new(1 << 63).unwrap().exponent(), 63);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0u64, 1, 6, 12, 36, 100, 1 << 40 | 1] {
            assert!(PrimePower::new(q).is_err(), "{q}");
        }
        assert_eq!("6".parse::<PrimePower>().unwrap_err(), "6 is not a prime power");
        assert_eq!(PrimePower::from_parts(4, 2), Err(Error::NotPrime(4)));
    }

    #[test]
    fn agrees_with_brute_force_below_three_thousand() {
        for q in 0..3_000u64 {
            let brute = (2..=q).any(|p| {
                is_prime(p) && {
                    let mut v = p;
                    while v < q {
                        v *= p;
                    }
                    v == q
                }
            });
            assert_eq!(PrimePower::new(q).is_ok(), brute, "q = {q}");
        }
    }
}
