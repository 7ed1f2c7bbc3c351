use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Canonical exact form: `num/den`, or just `num` for integers.
pub fn rational(r: &BigRational) -> String {
    r.to_string()
}

/// Scientific notation with `digits` significant digits, rounded half away
/// from zero, e.g. `1.2500000000000000000e+1`.
pub fn approx(r: &BigRational, digits: u32) -> String {
    assert!(digits >= 1);
    if r.is_zero() {
        return format!("{}e+0", mantissa_text(&BigInt::zero(), digits));
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let (num, den) = (r.numer().abs(), r.denom().clone());

    // exponent estimate from decimal lengths, corrected below
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    let scaled = |exp: i64| -> BigInt {
        let shift = digits as i64 - 1 - exp;
        let (n, d) = if shift >= 0 {
            (&num * pow10(shift as u32), den.clone())
        } else {
            (num.clone(), &den * pow10((-shift) as u32))
        };
        let (q, rem) = n.div_rem(&d);
        if rem * 2u32 >= d {
            q + 1u32
        } else {
            q
        }
    };
    let lower = pow10(digits - 1);
    let upper = pow10(digits);
    let mut m = scaled(exp);
    loop {
        if m < lower {
            exp -= 1;
        } else if m >= upper {
            exp += 1;
        } else {
            break;
        }
        m = scaled(exp);
    }
    let exp_sign = if exp < 0 { '-' } else { '+' };
    format!("{sign}{}e{exp_sign}{}", mantissa_text(&m, digits), exp.abs())
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

fn mantissa_text(m: &BigInt, digits: u32) -> String {
    let s = if m.sign() == Sign::NoSign { "0".repeat(digits as usize) } else { m.to_string() };
    if digits == 1 {
        s
    } else {
        format!("{}.{}", &s[..1], &s[1..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_strings() {
        assert_eq!(rational(&r(-39, 16)), "-39/16");
        assert_eq!(rational(&r(16, 2)), "8");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(approx(&r(1, 1), 20), "1.0000000000000000000e+0");
        assert_eq!(approx(&r(-39, 16), 5), "-2.4375e+0");
        assert_eq!(approx(&r(1, 3), 4), "3.333e-1");
        assert_eq!(approx(&r(2, 3), 4), "6.667e-1");
        assert_eq!(approx(&r(9999, 1), 2), "1.0e+4");
        assert_eq!(approx(&r(105, 2), 3), "5.25e+1");
        assert_eq!(approx(&r(0, 1), 3), "0.00e+0");
        assert_eq!(approx(&r(1, 1000), 1), "1e-3");
    }

    #[test]
    fn huge_values() {
        let x = BigRational::from_integer(num_traits::pow(BigInt::from(16), 60));
        assert_eq!(approx(&x, 20), "1.7668470647783843296e+72");
    }
}
