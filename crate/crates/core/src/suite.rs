//! Grid drivers: evaluate whole families of checks and return one row per
//! check, ordered deterministically.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expansion::{
    count_degree_exact, expansion_coefficient, ks_leading, pi_q, pollack_coefficient,
    BoundConstants, Expander, ExpansionReport,
};
use crate::ffpoly::{build_field, count_irreducible_bruteforce, MAX_FIELD_ORDER};
use crate::inequalities::{verify_proof_inequalities, InequalityKind};
use crate::prime_power::PrimePower;

/// Remainder-bound reports for every `(q, n, m)`, ordered by `q`, then `n`,
/// then `m`.
pub fn certify_bounds(
    qs: &[PrimePower],
    ns: RangeInclusive<usize>,
    ms: RangeInclusive<usize>,
    sqrt_slack: u64,
    constants: &BoundConstants,
) -> Result<Vec<ExpansionReport>> {
    if *ns.start() == 0 || *ms.start() == 0 {
        return Err(Error::ZeroArgument);
    }
    let per_q: Vec<Result<Vec<ExpansionReport>>> = qs
        .par_iter()
        .map(|&q| {
            let mut expander = Expander::new(q, sqrt_slack, constants.clone());
            let mut rows = Vec::new();
            for n in ns.clone() {
                for m in ms.clone() {
                    rows.push(expander.report(n, m)?);
                }
            }
            Ok(rows)
        })
        .collect();
    let mut out = Vec::new();
    for rows in per_q {
        out.extend(rows?);
    }
    Ok(out)
}

/// The `j = 1` coefficient equals `q/(q-1)^2`.
pub fn wang_kan_consistent(q: PrimePower) -> bool {
    let qb = q.to_bigint();
    let one = BigInt::from(1);
    expansion_coefficient(q, 1) == BigRational::new(qb.clone(), (&qb - &one) * (&qb - &one))
}

/// Partial sums are nondecreasing, bounded by the closed form, and the gap
/// after the last one is within the tail majorant.
pub fn pollack_consistent(p: PrimePower, j: usize, terms: usize) -> Result<bool> {
    let a = pollack_coefficient(p, j, terms)?;
    let monotone = a.partial_sums.windows(2).all(|w| w[0] <= w[1]);
    let bounded = a.partial_sums.iter().all(|s| s <= &a.closed_form);
    let gap = a.tail().abs();
    Ok(monotone && bounded && gap <= a.tail_majorant())
}

/// Relative deviation `|pi_q(q^n) / (q/(q-1) q^n/n) - 1|`, exactly.
pub fn ks_relative_deviation(q: PrimePower, n: usize) -> BigRational {
    let ratio = BigRational::from_integer(pi_q(q, n)) / ks_leading(q, n);
    (ratio - BigRational::from_integer(1.into())).abs()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// `q^n` exceeds the enumeration budget (or the field is too large to build).
    Skipped,
    Compared { bruteforce: BigInt, formula: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCell {
    pub q: PrimePower,
    pub n: usize,
    pub outcome: OracleOutcome,
}

impl OracleCell {
    /// `Some(true)` on agreement, `None` when skipped.
    pub fn matches(&self) -> Option<bool> {
        match &self.outcome {
            OracleOutcome::Skipped => None,
            OracleOutcome::Compared { bruteforce, formula } => Some(bruteforce == formula),
        }
    }
}

/// Brute-force counts against the Möbius formula for every `(q, n)`.
pub fn oracle_grid(qs: &[PrimePower], ns: RangeInclusive<usize>, budget: u64) -> Result<Vec<OracleCell>> {
    let mut out = Vec::new();
    for &q in qs {
        let ctx = if q.q() <= MAX_FIELD_ORDER {
            Some(build_field(q.characteristic(), q.exponent())?)
        } else {
            None
        };
        for n in ns.clone() {
            let outcome = match &ctx {
                Some(ctx) => match count_irreducible_bruteforce(ctx, n, budget) {
                    Ok(bruteforce) => OracleOutcome::Compared { bruteforce, formula: count_degree_exact(q, n) },
                    Err(Error::BudgetExceeded { .. }) => OracleOutcome::Skipped,
                    Err(e) => return Err(e),
                },
                None => OracleOutcome::Skipped,
            };
            out.push(OracleCell { q, n, outcome });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckFamily {
    BoundCertification,
    ProofInequality(InequalityKind),
    WangKanCoefficient,
    PollackClosedForm,
}

impl fmt::Display for CheckFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFamily::BoundCertification => f.write_str("bound_certification"),
            CheckFamily::ProofInequality(kind) => write!(f, "inequality_{kind}"),
            CheckFamily::WangKanCoefficient => f.write_str("wang_kan_coefficient"),
            CheckFamily::PollackClosedForm => f.write_str("pollack_closed_form"),
        }
    }
}

/// One pass/fail line. `n` and `m` are present where the check is indexed
/// by them (for the Pollack family `m` carries the coefficient index `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRow {
    pub family: CheckFamily,
    pub q: PrimePower,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub qs: Vec<PrimePower>,
    pub ns: RangeInclusive<usize>,
    pub ms: RangeInclusive<usize>,
    pub sqrt_slack: u64,
    pub constants: BoundConstants,
    pub pollack_terms: usize,
}

pub const DEFAULT_POLLACK_TERMS: usize = 200;

/// Bound certification, the proof inequalities (up to `n = max ns`,
/// `m = max ms`), the `j = 1` coefficient match and the Pollack closed forms
/// (for `j` in `ms`).
pub fn run_verification(config: &VerifyConfig) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for report in certify_bounds(&config.qs, config.ns.clone(), config.ms.clone(), config.sqrt_slack, &config.constants)? {
        rows.push(CheckRow {
            family: CheckFamily::BoundCertification,
            q: report.query.q(),
            n: Some(report.query.n()),
            m: Some(report.query.m()),
            passed: report.bound_holds,
        });
    }
    let inequality_reports: Vec<_> = config
        .qs
        .par_iter()
        .map(|&q| verify_proof_inequalities(q, *config.ns.end(), *config.ms.end()))
        .collect();
    for report in inequality_reports {
        rows.extend(report.checks.into_iter().map(|c| CheckRow {
            family: CheckFamily::ProofInequality(c.kind),
            q: c.q,
            n: c.n,
            m: c.m,
            passed: c.holds,
        }));
    }
    for &q in &config.qs {
        rows.push(CheckRow {
            family: CheckFamily::WangKanCoefficient,
            q,
            n: None,
            m: None,
            passed: wang_kan_consistent(q),
        });
    }
    for &q in &config.qs {
        for j in config.ms.clone() {
            rows.push(CheckRow {
                family: CheckFamily::PollackClosedForm,
                q,
                n: None,
                m: Some(j),
                passed: pollack_consistent(q, j, config.pollack_terms)?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    #[test]
    fn certify_orders_rows() {
        let rows = certify_bounds(&[pp(3), pp(2)], 1..=3, 1..=2, 1000, &BoundConstants::default()).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.query.q().q(), r.query.n(), r.query.m())).collect();
        assert_eq!(keys[0], (3, 1, 1));
        assert_eq!(keys[1], (3, 1, 2));
        assert_eq!(keys[6], (2, 1, 1));
        assert!(rows.iter().all(|r| r.bound_holds));
        assert!(certify_bounds(&[pp(2)], 0..=3, 1..=2, 1000, &BoundConstants::default()).is_err());
    }

    #[test]
    fn oracle_cells_skip_over_budget() {
        let cells = oracle_grid(&[pp(2)], 1..=5, 20).unwrap();
        assert_eq!(cells.iter().map(OracleCell::matches).collect::<Vec<_>>(), [
            Some(true),
            Some(true),
            Some(true),
            Some(true),
            None
        ]);
        let huge = oracle_grid(&[pp(1 << 40)], 1..=1, u64::MAX).unwrap();
        assert_eq!(huge[0].outcome, OracleOutcome::Skipped);
    }

    #[test]
    fn small_verification_run_passes() {
        let config = VerifyConfig {
            qs: vec![pp(2), pp(9)],
            ns: 1..=8,
            ms: 1..=3,
            sqrt_slack: 1000,
            constants: BoundConstants::default(),
            pollack_terms: 200,
        };
        let rows = run_verification(&config).unwrap();
        assert!(rows.iter().all(|r| r.passed), "{:?}", rows.iter().find(|r| !r.passed));
        assert!(rows.iter().any(|r| r.family == CheckFamily::PollackClosedForm));
    }

    #[test]
    fn ks_deviation_at_the_exact_cell() {
        assert_eq!(ks_relative_deviation(pp(2), 4), BigRational::from_integer(0.into()));
    }
}
