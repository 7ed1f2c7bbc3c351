//! Exact prime polynomial counts and the Stirling-number expansion
//!
//! `pi_q(x)` counts monic irreducible polynomials over `F_q` of norm at most
//! `x = q^n`. Here it is compared against
//!
//! ```text
//! q/(q-1) * x/n  +  1/(q-1) * sum_{j=1}^{m-1} S_j(q/(q-1)) * x/n^(j+1)  +  R_m
//! ```
//!
//! where `S_j` is the signed Stirling polynomial from [`crate::arith`]. The
//! remainder is certified against
//!
//! ```text
//! |R_m| <= 11 sqrt(x)/n + m! (3^(m+3) x/(q n^(m+1)) + 2^(m+1)/n).
//! ```
//!
//! Inputs are always `(q, n)`; `x` is never taken directly, so it is a power
//! of `q` by construction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, factorial, mobius, sqrt_upper_rational, stirling_poly};
use crate::error::{Error, Result};
use crate::prime_power::PrimePower;

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn frac(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// One evaluation point: field size `q`, degree bound `n` (so `x = q^n`)
/// and expansion order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountQuery {
    q: PrimePower,
    n: usize,
    m: usize,
}

impl CountQuery {
    pub fn new(q: PrimePower, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(CountQuery { q, n, m })
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `x = q^n`.
    pub fn x(&self) -> BigInt {
        self.q.pow(self.n)
    }
}

/// Constants of the remainder bound. Only the square-root coefficient is
/// adjustable, so tests can check that a weakened bound is caught.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundConstants {
    pub sqrt_coefficient: BigRational,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants { sqrt_coefficient: rat(11) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub query: CountQuery,
    pub exact_count: BigInt,
    pub leading_term: BigRational,
    /// Terms for `j = 1..m-1`; empty when `m = 1`.
    pub correction_terms: Vec<BigRational>,
    pub remainder: BigRational,
    pub bound: BigRational,
    pub bound_holds: bool,
}

impl ExpansionReport {
    /// Leading term plus all correction terms.
    pub fn approximation(&self) -> BigRational {
        self.correction_terms
            .iter()
            .fold(self.leading_term.clone(), |acc, t| acc + t)
    }
}

/// `sum_{d | k} mu(k/d) q^d`, which is `k` times the number of monic
/// irreducibles of degree `k`.
pub fn necklace_sum(q: PrimePower, k: usize) -> BigInt {
    divisors(k as u64)
        .expect("degree is positive")
        .into_iter()
        .map(|d| BigInt::from(mobius(k as u64 / d).unwrap()) * q.pow(d as usize))
        .sum()
}

/// Number of monic irreducible polynomials of degree `k` over `F_q`.
pub fn count_degree_exact(q: PrimePower, k: usize) -> BigInt {
    assert!(k >= 1, "degree must be positive");
    let s = necklace_sum(q, k);
    let (count, rest) = s.div_rem(&BigInt::from(k));
    assert!(rest.is_zero(), "necklace sum not divisible by {k}");
    assert!(count.is_positive(), "nonpositive count at degree {k}");
    count
}

/// Counts for degrees `1..=n`.
pub fn degree_counts(q: PrimePower, n: usize) -> Vec<BigInt> {
    (1..=n).map(|k| count_degree_exact(q, k)).collect()
}

/// `pi_q(q^n)`: monic irreducibles of degree at most `n`.
pub fn pi_q(q: PrimePower, n: usize) -> BigInt {
    degree_counts(q, n).into_iter().sum()
}

/// Coefficient of `x / n^(j+1)`: `q/(q-1)` for `j = 0`, otherwise
/// `S_j(q/(q-1)) / (q-1)`.
pub fn expansion_coefficient(q: PrimePower, j: usize) -> BigRational {
    let qm1 = q.to_bigint() - BigInt::one();
    let ratio = frac(q.to_bigint(), qm1.clone());
    if j == 0 {
        ratio
    } else {
        stirling_poly(j).eval(&ratio) / rat(qm1)
    }
}

/// The `j`-th term of the expansion at `x = q^n`.
pub fn expansion_term(q: PrimePower, n: usize, j: usize) -> BigRational {
    assert!(n >= 1, "degree bound must be positive");
    expansion_coefficient(q, j) * frac(q.pow(n), num_traits::pow(BigInt::from(n), j + 1))
}

/// Certified upper bound for `|R_m|` at `x = q^n`. The square root is
/// rounded outward to within `1/sqrt_slack`.
pub fn remainder_bound(
    q: PrimePower,
    n: usize,
    m: usize,
    sqrt_slack: u64,
    constants: &BoundConstants,
) -> Result<BigRational> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroArgument);
    }
    let x = q.pow(n);
    let nb = BigInt::from(n);
    let sqrt_x = sqrt_upper_rational(&x, sqrt_slack)?;
    let sqrt_part = &constants.sqrt_coefficient * sqrt_x / rat(nb.clone());
    let main = frac(
        num_traits::pow(BigInt::from(3), m + 3) * &x,
        q.to_bigint() * num_traits::pow(nb.clone(), m + 1),
    );
    let tail = frac(num_traits::pow(BigInt::from(2), m + 1), nb);
    Ok(sqrt_part + rat(factorial(m as u64)) * (main + tail))
}

/// Per-field cache for evaluating many `(n, m)` cells.
#[derive(Debug, Clone)]
pub struct Expander {
    q: PrimePower,
    sqrt_slack: u64,
    constants: BoundConstants,
    coefficients: Vec<BigRational>,
    cumulative: Vec<BigInt>,
}

impl Expander {
    pub fn new(q: PrimePower, sqrt_slack: u64, constants: BoundConstants) -> Self {
        Expander {
            q,
            sqrt_slack,
            constants,
            coefficients: Vec::new(),
            cumulative: vec![BigInt::zero()],
        }
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn coefficient(&mut self, j: usize) -> &BigRational {
        while self.coefficients.len() <= j {
            let next = expansion_coefficient(self.q, self.coefficients.len());
            self.coefficients.push(next);
        }
        &self.coefficients[j]
    }

    pub fn pi(&mut self, n: usize) -> &BigInt {
        while self.cumulative.len() <= n {
            let k = self.cumulative.len();
            let next = self.cumulative.last().unwrap() + count_degree_exact(self.q, k);
            self.cumulative.push(next);
        }
        &self.cumulative[n]
    }

    pub fn report(&mut self, n: usize, m: usize) -> Result<ExpansionReport> {
        let query = CountQuery::new(self.q, n, m)?;
        let x = rat(query.x());
        let nb = BigInt::from(n);
        let mut terms: Vec<BigRational> = (0..m)
            .map(|j| self.coefficient(j).clone() * &x / rat(num_traits::pow(nb.clone(), j + 1)))
            .collect();
        let leading_term = terms.remove(0);
        let exact_count = self.pi(n).clone();
        let remainder = terms
            .iter()
            .fold(rat(exact_count.clone()) - &leading_term, |acc, t| acc - t);
        let bound = remainder_bound(self.q, n, m, self.sqrt_slack, &self.constants)?;
        let bound_holds = remainder.abs() <= bound;
        Ok(ExpansionReport {
            query,
            exact_count,
            leading_term,
            correction_terms: terms,
            remainder,
            bound,
            bound_holds,
        })
    }
}

/// Full expansion report for one query.
pub fn expand(query: CountQuery, sqrt_slack: u64, constants: &BoundConstants) -> Result<ExpansionReport> {
    Expander::new(query.q(), sqrt_slack, constants.clone()).report(query.n(), query.m())
}

/// Closed form of `sum_{k>=1} k^j / q^k`, namely `S_j(q/(q-1)) / (q-1)`.
///
/// Obtained by writing `k^j = (-1)^j (-k)^j`, expanding in falling
/// binomials of `-k` and summing the negative binomial series.
pub fn power_sum_closed(q: PrimePower, j: usize) -> BigRational {
    let qm1 = q.to_bigint() - BigInt::one();
    stirling_poly(j).eval(&frac(q.to_bigint(), qm1.clone())) / rat(qm1)
}

/// Majorant `j! / (q (1 - 1/q)^(j+1))` for the same series.
pub fn power_sum_majorant(q: PrimePower, j: usize) -> BigRational {
    let qb = q.to_bigint();
    let one_minus = frac(&qb - 1u32, qb.clone());
    rat(factorial(j as u64)) / (rat(qb) * num_traits::pow(one_minus, j + 1))
}

/// Partial sums `sum_{k=1}^t k^(j-1) / q^(k-1)` for `t = 1..=K` of the
/// classical coefficient series, together with its exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PollackCoefficient {
    pub p: PrimePower,
    pub j: usize,
    pub closed_form: BigRational,
    pub partial_sums: Vec<BigRational>,
}

impl PollackCoefficient {
    pub fn terms(&self) -> usize {
        self.partial_sums.len()
    }

    /// `closed_form` minus the last partial sum.
    pub fn tail(&self) -> BigRational {
        &self.closed_form - self.partial_sums.last().expect("at least one term")
    }

    /// `(K+1)^(j-1) (p/(p-1))^j / p^(K-1)`. Valid once `K` is large
    /// compared with `j` (it fails, for example, at `K = 1, j = 8`).
    pub fn tail_majorant(&self) -> BigRational {
        let p = self.p.to_bigint();
        let k = self.terms();
        rat(num_traits::pow(BigInt::from(k + 1), self.j - 1))
            * num_traits::pow(frac(p.clone(), &p - 1u32), self.j)
            / rat(num_traits::pow(p, k - 1))
    }

    /// `(K+1)^(j-1) A / p^K`, a tail bound for every `K`; it follows from
    /// `K + 1 + i <= (K+1)(1+i)`.
    pub fn tail_bound(&self) -> BigRational {
        let k = self.terms();
        rat(num_traits::pow(BigInt::from(k + 1), self.j - 1)) * &self.closed_form
            / rat(self.p.pow(k))
    }
}

pub fn pollack_coefficient(p: PrimePower, j: usize, terms: usize) -> Result<PollackCoefficient> {
    if j == 0 || terms == 0 {
        return Err(Error::ZeroArgument);
    }
    let pb = p.to_bigint();
    let closed_form = if j == 1 {
        frac(pb.clone(), &pb - 1u32)
    } else {
        rat(pb.clone()) * power_sum_closed(p, j - 1)
    };
    let mut partial_sums = Vec::with_capacity(terms);
    let mut acc = BigRational::zero();
    let mut p_power = BigInt::one();
    for k in 1..=terms {
        acc += frac(num_traits::pow(BigInt::from(k), j - 1), p_power.clone());
        partial_sums.push(acc.clone());
        p_power *= &pb;
    }
    Ok(PollackCoefficient { p, j, closed_form, partial_sums })
}

/// First-order term `q/(q-1) * q^n / n`.
pub fn ks_leading(q: PrimePower, n: usize) -> BigRational {
    expansion_term(q, n, 0)
}

/// Two-term expansion `q/(q-1) * x/n + q/(q-1)^2 * x/n^2`.
pub fn wang_kan_two_term(q: PrimePower, n: usize) -> BigRational {
    let qb = q.to_bigint();
    let x = q.pow(n);
    let nb = BigInt::from(n);
    frac(&qb * &x, (&qb - 1u32) * &nb) + frac(&qb * &x, (&qb - 1u32) * (&qb - 1u32) * &nb * &nb)
}
