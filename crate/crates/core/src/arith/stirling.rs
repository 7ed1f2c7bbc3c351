use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::number::factorial;

// Row `n` holds S(n, 0..=n). Rows are appended under the write lock and never
// modified afterwards.
static TABLE: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

fn ensure_rows(n: usize) {
    if TABLE.read().unwrap().len() > n {
        return;
    }
    let mut table = TABLE.write().unwrap();
    if table.is_empty() {
        table.push(vec![BigInt::one()]);
    }
    while table.len() <= n {
        let prev = table.last().unwrap();
        let i = prev.len();
        let mut row = vec![BigInt::zero(); i + 1];
        for k in 1..=i {
            let carried = if k < i { &prev[k] * k } else { BigInt::zero() };
            row[k] = carried + &prev[k - 1];
        }
        table.push(row);
    }
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ensure_rows(n);
    TABLE.read().unwrap()[n][k].clone()
}

/// `t (t-1) ... (t-k+1) / k!`, valid for negative `t`.
pub fn binomial(t: &BigInt, k: u64) -> BigInt {
    let mut falling = BigInt::one();
    for i in 0..k {
        falling *= t - BigInt::from(i);
    }
    falling / factorial(k)
}

/// Checks `t^n = sum_k k! S(n,k) C(t,k)` exactly.
pub fn stirling2_defining_identity_check(n: usize, t: i64) -> bool {
    let t = BigInt::from(t);
    let lhs = num_traits::pow(t.clone(), n);
    let rhs: BigInt = (0..=n)
        .map(|k| factorial(k as u64) * stirling2(n, k) * binomial(&t, k as u64))
        .sum();
    lhs == rhs
}

/// Integer coefficients of the signed Stirling polynomial
/// `sum_k (-1)^(j-k) k! S(j,k) x^k`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingPoly {
    j: usize,
    coeffs: Vec<BigInt>,
}

impl StirlingPoly {
    pub fn index(&self) -> usize {
        self.j
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Horner evaluation at an exact rational.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }
}

pub fn stirling_poly(j: usize) -> StirlingPoly {
    let coeffs = (0..=j)
        .map(|k| {
            let c = factorial(k as u64) * stirling2(j, k);
            if (j - k) % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    StirlingPoly { j, coeffs }
}

pub fn eval_stirling_poly(j: usize, x: &BigRational) -> BigRational {
    stirling_poly(j).eval(x)
}
