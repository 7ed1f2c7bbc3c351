use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use ffpnt_core::expansion::{degree_counts, Expander};
use ffpnt_core::suite::{certify_bounds, oracle_grid, run_verification, OracleOutcome, VerifyConfig, DEFAULT_POLLACK_TERMS};

use crate::config::RunConfig;
use crate::table::{Cell, Table};
use crate::CliError;

/// A finished command: its table, whether every mathematical check passed,
/// and an optional summary for stderr.
pub struct Output {
    pub table: Table,
    pub all_passed: bool,
    pub summary: Option<String>,
}

fn ok(table: Table) -> Output {
    Output { table, all_passed: true, summary: None }
}

fn core_err(e: ffpnt_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

pub fn cmd_count(config: &RunConfig) -> Result<Output, CliError> {
    let mut table = Table::new(vec!["q", "n", "pi_q", "degree_counts"]);
    let n_max = *config.n_range.end();
    let per_q: Vec<Vec<BigInt>> = config.q_list.par_iter().map(|&q| degree_counts(q, n_max)).collect();
    for (q, counts) in config.q_list.iter().zip(per_q) {
        let mut cumulative = Vec::with_capacity(counts.len());
        let mut acc = BigInt::from(0);
        for c in &counts {
            acc += c;
            cumulative.push(acc.clone());
        }
        for n in config.n_range.clone() {
            table.push(vec![
                Cell::Small(q.q()),
                Cell::Small(n as u64),
                Cell::Big(cumulative[n - 1].clone()),
                Cell::List(counts[..n].iter().map(|c| c.to_string()).collect()),
            ]);
        }
    }
    Ok(ok(table))
}

pub fn cmd_expand(config: &RunConfig) -> Result<Output, CliError> {
    let reports = certify_bounds(
        &config.q_list,
        config.n_range.clone(),
        config.m_range.clone(),
        config.sqrt_slack_denominator,
        &config.constants,
    )
    .map_err(core_err)?;
    let mut table = Table::new(vec![
        "q",
        "n",
        "m",
        "exact",
        "leading_term",
        "correction_terms",
        "remainder",
        "approx_remainder",
        "bound",
        "approx_bound",
        "holds",
    ]);
    for r in reports {
        table.push(vec![
            Cell::Small(r.query.q().q()),
            Cell::Small(r.query.n() as u64),
            Cell::Small(r.query.m() as u64),
            Cell::Big(r.exact_count),
            Cell::Rational(r.leading_term),
            Cell::List(r.correction_terms.iter().map(|t| t.to_string()).collect()),
            Cell::Rational(r.remainder.clone()),
            Cell::Approx(r.remainder),
            Cell::Rational(r.bound.clone()),
            Cell::Approx(r.bound),
            Cell::Bool(r.bound_holds),
        ]);
    }
    Ok(ok(table))
}

pub fn cmd_verify(config: &RunConfig) -> Result<Output, CliError> {
    let rows = run_verification(&VerifyConfig {
        qs: config.q_list.clone(),
        ns: config.n_range.clone(),
        ms: config.m_range.clone(),
        sqrt_slack: config.sqrt_slack_denominator,
        constants: config.constants.clone(),
        pollack_terms: DEFAULT_POLLACK_TERMS,
    })
    .map_err(core_err)?;
    let mut table = Table::new(vec!["family", "q", "n", "m", "passed"]);
    let mut families: Vec<(String, usize, usize)> = Vec::new();
    for row in &rows {
        let family = row.family.to_string();
        match families.iter_mut().find(|(f, _, _)| *f == family) {
            Some(entry) => {
                entry.1 += 1;
                entry.2 += !row.passed as usize;
            }
            None => families.push((family.clone(), 1, !row.passed as usize)),
        }
        let opt = |v: Option<usize>| v.map_or(Cell::Empty, |v| Cell::Small(v as u64));
        table.push(vec![
            Cell::Text(family),
            Cell::Small(row.q.q()),
            opt(row.n),
            opt(row.m),
            Cell::Bool(row.passed),
        ]);
    }
    let failed: usize = families.iter().map(|f| f.2).sum();
    let mut summary = format!("verify: {} checks, {} passed, {failed} failed", rows.len(), rows.len() - failed);
    for (family, total, bad) in &families {
        summary.push_str(&format!("\n  {family}: {} passed, {bad} failed", total - bad));
    }
    Ok(Output { table, all_passed: failed == 0, summary: Some(summary) })
}

pub fn cmd_oracle(config: &RunConfig) -> Result<Output, CliError> {
    let cells = oracle_grid(&config.q_list, config.n_range.clone(), config.oracle_budget).map_err(core_err)?;
    let mut table = Table::new(vec!["q", "n", "bruteforce_count", "formula_count", "match"]);
    let (mut compared, mut skipped, mut mismatched) = (0, 0, 0);
    for cell in cells {
        let (brute, formula, status) = match cell.outcome {
            OracleOutcome::Skipped => {
                skipped += 1;
                let formula = ffpnt_core::expansion::count_degree_exact(cell.q, cell.n);
                (Cell::Empty, Cell::Big(formula), Cell::Text("skipped".into()))
            }
            OracleOutcome::Compared { bruteforce, formula } => {
                compared += 1;
                let same = bruteforce == formula;
                mismatched += !same as usize;
                (Cell::Big(bruteforce), Cell::Big(formula), Cell::Bool(same))
            }
        };
        table.push(vec![Cell::Small(cell.q.q()), Cell::Small(cell.n as u64), brute, formula, status]);
    }
    Ok(Output {
        table,
        all_passed: mismatched == 0,
        summary: Some(format!("oracle: {compared} compared, {mismatched} mismatched, {skipped} skipped (budget)")),
    })
}

pub fn cmd_table(config: &RunConfig) -> Result<Output, CliError> {
    let mut table = Table::new(vec![
        "q",
        "n",
        "m",
        "ratio_exact_over_leading",
        "approx_ratio_exact_over_leading",
        "relative_remainder",
        "approx_relative_remainder",
        "bound_over_x_term",
        "approx_bound_over_x_term",
    ]);
    let per_q: Vec<Result<Vec<Vec<Cell>>, CliError>> = config
        .q_list
        .par_iter()
        .map(|&q| {
            let mut expander = Expander::new(q, config.sqrt_slack_denominator, config.constants.clone());
            let mut rows = Vec::new();
            for n in config.n_range.clone() {
                for m in config.m_range.clone() {
                    let r = expander.report(n, m).map_err(core_err)?;
                    let exact = BigRational::from_integer(r.exact_count.clone());
                    let ratio = &exact / &r.leading_term;
                    let relative = &r.remainder / &exact;
                    let x_term = BigRational::new(r.query.x(), num_traits::pow(BigInt::from(n), m + 1));
                    let bound_ratio = &r.bound / x_term;
                    rows.push(vec![
                        Cell::Small(q.q()),
                        Cell::Small(n as u64),
                        Cell::Small(m as u64),
                        Cell::Rational(ratio.clone()),
                        Cell::Approx(ratio),
                        Cell::Rational(relative.clone()),
                        Cell::Approx(relative),
                        Cell::Rational(bound_ratio.clone()),
                        Cell::Approx(bound_ratio),
                    ]);
                }
            }
            Ok(rows)
        })
        .collect();
    for rows in per_q {
        for row in rows? {
            table.push(row);
        }
    }
    Ok(ok(table))
}
