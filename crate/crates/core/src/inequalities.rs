//! The intermediate estimates behind the remainder bound, each checked in
//! exact arithmetic.
//!
//! Square roots are eliminated rather than approximated: sums involving
//! `q^(k/2)` are split by the parity of `k` into `a + b sqrt(q)` with
//! rational `a, b`, and `1.3^(n/2)` is handled by squaring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::factorial;
use crate::expansion::{necklace_sum, power_sum_closed, power_sum_majorant};
use crate::prime_power::PrimePower;

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn frac(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow<T: Clone + One + std::ops::Mul<Output = T>>(base: T, e: usize) -> T {
    num_traits::pow(base, e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityKind {
    /// `q^k - 2 q^(k/2) <= sum_{d|k} mu(k/d) q^d <= q^k`
    Sandwich,
    /// `sum_{k=1}^n q^(k/2)/k <= 5.5 q^(n/2)/n`
    HalfPowerSum,
    /// `sum_{k>=1} k^m/q^k <= m!/(q (1-1/q)^(m+1))`
    PowerSumMajorant,
    /// `sum_{1<=k<n/2} k^m/q^k * 1/(1-k/n) <= 2^(m+2) m!/q`
    SplitSumLower,
    /// `sum_{n/2<=k<=n-1} k^m/q^k * 1/(1-k/n) <= n/1.3^(n/2) * m!/(0.75q (1-1/(0.75q))^(m+1))`
    SplitSumUpper,
    /// `sum_{k=1}^{n-1} k^m/q^k * 1/(1-k/n) <= 3^(m+3) m!/q`
    SplitSumTotal,
    /// `(0.75q/(0.75q-1))^(m+1) <= 3^(m+1)`
    ShiftedBaseRatio,
    /// `n/1.3^(n/2) <= 3`
    DecayRatio,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 8] = [
        InequalityKind::Sandwich,
        InequalityKind::HalfPowerSum,
        InequalityKind::PowerSumMajorant,
        InequalityKind::SplitSumLower,
        InequalityKind::SplitSumUpper,
        InequalityKind::SplitSumTotal,
        InequalityKind::ShiftedBaseRatio,
        InequalityKind::DecayRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityKind::Sandwich => "sandwich",
            InequalityKind::HalfPowerSum => "half_power_sum",
            InequalityKind::PowerSumMajorant => "power_sum_majorant",
            InequalityKind::SplitSumLower => "split_sum_lower",
            InequalityKind::SplitSumUpper => "split_sum_upper",
            InequalityKind::SplitSumTotal => "split_sum_total",
            InequalityKind::ShiftedBaseRatio => "shifted_base_ratio",
            InequalityKind::DecayRatio => "decay_ratio",
        }
    }
}

impl fmt::Display for InequalityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub kind: InequalityKind,
    pub q: PrimePower,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub q: PrimePower,
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn count(&self, kind: InequalityKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }
}

/// Sign test for `a + b sqrt(r)` with `r >= 0`: true iff it is `>= 0`.
pub fn surd_nonnegative(a: &BigRational, b: &BigRational, r: &BigInt) -> bool {
    let r = rat(r.clone());
    match (a.is_negative(), b.is_negative()) {
        (false, false) => true,
        (true, true) => false,
        // a >= 0 > b: need a^2 >= b^2 r
        (false, true) => a * a >= b * b * r,
        // b >= 0 > a: need b^2 r >= a^2
        (true, false) => b * b * r >= a * a,
    }
}

pub fn sandwich_holds(q: PrimePower, k: usize) -> bool {
    let qk = q.pow(k);
    let gap = &qk - necklace_sum(q, k);
    !gap.is_negative() && &gap * &gap <= BigInt::from(4) * qk
}

pub fn power_sum_majorant_holds(q: PrimePower, m: usize) -> bool {
    power_sum_closed(q, m) <= power_sum_majorant(q, m)
}

pub fn shifted_base_ratio_holds(q: PrimePower, m: usize) -> bool {
    let three_q = q.to_bigint() * 3u32;
    let ratio = frac(three_q.clone(), three_q - 4u32);
    pow(ratio, m + 1) <= rat(pow(BigInt::from(3), m + 1))
}

/// `n^2 (10/13)^n <= 9`, the square of `n / 1.3^(n/2) <= 3`.
pub fn decay_ratio_holds(n: usize) -> bool {
    rat(BigInt::from(n * n)) * pow(frac(10, 13), n) <= rat(9)
}

/// Incremental evaluation of `sum_{k <= n} q^(k/2)/k` as `a + b sqrt(q)`.
struct HalfPowerSum {
    q: PrimePower,
    n: usize,
    even: BigRational,
    odd: BigRational,
}

impl HalfPowerSum {
    fn new(q: PrimePower) -> Self {
        HalfPowerSum { q, n: 0, even: BigRational::zero(), odd: BigRational::zero() }
    }

    fn advance(&mut self) {
        self.n += 1;
        let k = self.n;
        let term = frac(self.q.pow(k / 2), BigInt::from(k));
        if k.is_multiple_of(2) {
            self.even += term;
        } else {
            self.odd += term;
        }
    }

    fn bound_holds(&self) -> bool {
        let n = self.n;
        let rhs = frac(11, 2) * frac(self.q.pow(n / 2), BigInt::from(n));
        let (a, b) = if n.is_multiple_of(2) {
            (rhs - &self.even, -self.odd.clone())
        } else {
            (-self.even.clone(), rhs - &self.odd)
        };
        surd_nonnegative(&a, &b, &self.q.to_bigint())
    }
}

pub fn half_power_sum_holds(q: PrimePower, n: usize) -> bool {
    let mut s = HalfPowerSum::new(q);
    for _ in 0..n {
        s.advance();
    }
    s.bound_holds()
}

/// Outcomes of the three split-sum estimates at one `(q, n, m)`:
/// `(lower, upper, total)`.
pub fn split_sums_hold(q: PrimePower, n: usize, m: usize) -> (bool, bool, bool) {
    let weights = SplitWeights::new(q, n);
    weights.check(q, n, m)
}

/// `k^m/q^k * n/(n-k)` for `k = 1..n-1` share the denominator
/// `lcm(1..n-1) q^(n-1)`; the numerators without `k^m` are cached.
struct SplitWeights {
    weights: Vec<BigInt>,
    denominator: BigInt,
}

impl SplitWeights {
    fn new(q: PrimePower, n: usize) -> Self {
        let lcm = (1..n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
        let weights = (1..n)
            .map(|k| BigInt::from(n) * q.pow(n - 1 - k) * (&lcm / BigInt::from(n - k)))
            .collect();
        let denominator = lcm * q.pow(n.saturating_sub(1));
        SplitWeights { weights, denominator }
    }

    fn check(&self, q: PrimePower, n: usize, m: usize) -> (bool, bool, bool) {
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (i, w) in self.weights.iter().enumerate() {
            let k = i + 1;
            let term = w * pow(BigInt::from(k), m);
            if 2 * k < n {
                lower += term;
            } else {
                upper += term;
            }
        }
        let qb = q.to_bigint();
        let mf = rat(factorial(m as u64));
        let lower_r = frac(lower.clone(), self.denominator.clone());
        let upper_r = frac(upper.clone(), self.denominator.clone());
        let total_r = frac(lower + upper, self.denominator.clone());

        let lower_ok = lower_r <= rat(pow(BigInt::from(2), m + 2)) * &mf / rat(qb.clone());

        // m!/(0.75q (1 - 1/(0.75q))^(m+1)) with 0.75q = 3q/4
        let shifted = frac(qb.clone() * 3u32, 4);
        let one_minus = rat(1) - frac(4, qb.clone() * 3u32);
        let c = &mf / (shifted * pow(one_minus, m + 1));
        // U <= n (10/13)^(n/2) c  <=>  U^2 13^n <= n^2 c^2 10^n
        let lhs = &upper_r * &upper_r * rat(pow(BigInt::from(13), n));
        let rhs = rat(BigInt::from(n * n)) * &c * &c * rat(pow(BigInt::from(10), n));
        let upper_ok = lhs <= rhs;

        let total_ok = total_r <= rat(pow(BigInt::from(3), m + 3)) * mf / rat(qb);
        (lower_ok, upper_ok, total_ok)
    }
}

/// Runs every estimate for `n = 1..=n_max` and `m = 1..=m_max`.
pub fn verify_proof_inequalities(q: PrimePower, n_max: usize, m_max: usize) -> InequalityReport {
    let mut checks = Vec::new();
    let mut push = |kind, n, m, holds| checks.push(InequalityCheck { kind, q, n, m, holds });

    for k in 1..=n_max {
        push(InequalityKind::Sandwich, Some(k), None, sandwich_holds(q, k));
    }
    let mut half = HalfPowerSum::new(q);
    for n in 1..=n_max {
        half.advance();
        push(InequalityKind::HalfPowerSum, Some(n), None, half.bound_holds());
    }
    for m in 1..=m_max {
        push(InequalityKind::PowerSumMajorant, None, Some(m), power_sum_majorant_holds(q, m));
        push(InequalityKind::ShiftedBaseRatio, None, Some(m), shifted_base_ratio_holds(q, m));
    }
    for n in 1..=n_max {
        push(InequalityKind::DecayRatio, Some(n), None, decay_ratio_holds(n));
        let weights = SplitWeights::new(q, n);
        for m in 1..=m_max {
            let (lower, upper, total) = weights.check(q, n, m);
            push(InequalityKind::SplitSumLower, Some(n), Some(m), lower);
            push(InequalityKind::SplitSumUpper, Some(n), Some(m), upper);
            push(InequalityKind::SplitSumTotal, Some(n), Some(m), total);
        }
    }
    InequalityReport { q, checks }
}
