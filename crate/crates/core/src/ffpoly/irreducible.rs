use num_bigint::BigUint;

use super::poly::FieldPoly;
use crate::arith::prime_factors;
use crate::error::{Error, Result};

fn check_input(f: &FieldPoly) -> Result<usize> {
    match f.degree() {
        None | Some(0) => Err(Error::ConstantPolynomial),
        Some(_) if !f.is_monic() => Err(Error::NotMonic),
        Some(n) => Ok(n),
    }
}

/// Irreducibility by exhaustive trial division with every monic polynomial
/// of degree `1..=deg f / 2`.
pub fn is_irreducible_trial(f: &FieldPoly) -> Result<bool> {
    let n = check_input(f)?;
    let ctx = f.context();
    let q = ctx.order();
    for d in 1..=n / 2 {
        let mut coeffs = vec![0u32; d + 1];
        coeffs[d] = 1;
        for t in 0..q.pow(d as u32) {
            let mut t = t;
            for c in coeffs[..d].iter_mut() {
                *c = (t % q) as u32;
                t /= q;
            }
            let divisor = FieldPoly::new(ctx, coeffs.clone());
            if f.rem(&divisor)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rabin's criterion: `f` of degree `n` is irreducible iff
/// `x^(q^n) = x (mod f)` and `gcd(x^(q^(n/l)) - x, f) = 1` for every prime
/// `l | n`. Powers are taken with big-integer exponents.
pub fn is_irreducible_rabin(f: &FieldPoly) -> Result<bool> {
    let n = check_input(f)?;
    let ctx = f.context();
    let q = BigUint::from(ctx.order());
    let x = FieldPoly::x(ctx).rem(f)?;
    let frobenius_power = |k: usize| x.powmod(&q.pow(k as u32), f);

    if frobenius_power(n)? != x {
        return Ok(false);
    }
    for l in prime_factors(n as u64) {
        let h = frobenius_power(n / l as usize)?.sub(&x)?;
        if h.gcd(f)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
