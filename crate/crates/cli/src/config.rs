use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use ffpnt_core::{BoundConstants, PrimePower, DEFAULT_ORACLE_BUDGET, DEFAULT_SQRT_SLACK};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ffpnt", version, about = "Counts of irreducible polynomials over F_q and their asymptotic expansion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Count,
    Expand,
    Verify,
    Oracle,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact pi_q(q^n) and per-degree counts
    Count(GridArgs),
    /// Expansion terms, remainder and certified bound per (q, n, m)
    Expand(GridArgs),
    /// Run every verification family; exit 1 on any failure
    Verify(GridArgs),
    /// Brute-force enumeration against the counting formula
    Oracle(GridArgs),
    /// Long-format dataset for plotting
    Table(GridArgs),
}

impl Command {
    pub fn split(self) -> (CommandKind, GridArgs) {
        match self {
            Command::Count(a) => (CommandKind::Count, a),
            Command::Expand(a) => (CommandKind::Expand, a),
            Command::Verify(a) => (CommandKind::Verify, a),
            Command::Oracle(a) => (CommandKind::Oracle, a),
            Command::Table(a) => (CommandKind::Table, a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Comma-separated field sizes
    #[arg(long, default_value = "2,3,4,5,7,8,9,11,13,16")]
    pub q: String,
    /// Degree bounds, `a..b` (inclusive) or a single value
    #[arg(long, default_value = "1..60")]
    pub n: String,
    /// Evaluate at n = floor(log_q x) instead of --n
    #[arg(long, conflicts_with = "n")]
    pub x: Option<String>,
    /// Expansion orders, `a..b` (inclusive) or a single value
    #[arg(long, default_value = "1..10")]
    pub m: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Denominator for outward-rounded square roots
    #[arg(long, default_value_t = DEFAULT_SQRT_SLACK)]
    pub sqrt_slack: u64,
    /// Maximum number of polynomials enumerated per oracle cell
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    pub oracle_budget: u64,
    /// Test hook: replaces the square-root coefficient of the remainder bound
    #[arg(long, hide = true)]
    pub corrupt_sqrt_constant: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub q_list: Vec<PrimePower>,
    pub n_range: RangeInclusive<usize>,
    pub m_range: RangeInclusive<usize>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub sqrt_slack_denominator: u64,
    pub oracle_budget: u64,
    pub constants: BoundConstants,
    /// Set when `--x` was given and is not an exact power of every `q`.
    pub x_not_power_of_q: bool,
}

pub fn parse_range(s: &str, what: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Config(format!("invalid {what} range {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Config(format!("empty {what} range {s:?}")));
    }
    if lo == 0 {
        return Err(CliError::Config(format!("{what} range must start at 1 or above, got {s:?}")));
    }
    Ok(lo..=hi)
}

pub fn parse_q_list(s: &str) -> Result<Vec<PrimePower>, CliError> {
    let list: Vec<PrimePower> = s
        .split(',')
        .map(|item| PrimePower::from_str(item).map_err(CliError::Config))
        .collect::<Result<_, _>>()?;
    if list.is_empty() {
        return Err(CliError::Config("empty q list".into()));
    }
    Ok(list)
}

/// `floor(log_q x)` and whether `x` is an exact power of `q`.
pub fn floor_log(q: PrimePower, x: &BigInt) -> (usize, bool) {
    let qb = q.to_bigint();
    let mut power = qb.clone();
    let mut n = 0;
    while &power <= x {
        n += 1;
        power *= &qb;
    }
    let exact = n > 0 && power / &qb == *x;
    (n, exact)
}

impl RunConfig {
    pub fn from_args(command: CommandKind, args: GridArgs) -> Result<Self, CliError> {
        let q_list = parse_q_list(&args.q)?;
        let mut x_not_power_of_q = false;
        let n_range = match &args.x {
            None => parse_range(&args.n, "n")?,
            Some(x) => {
                let x: BigInt = x.trim().parse().map_err(|_| CliError::Config(format!("invalid x {x:?}")))?;
                let logs: Vec<(usize, bool)> = q_list.iter().map(|&q| floor_log(q, &x)).collect();
                let n = logs[0].0;
                if logs.iter().any(|&(k, _)| k != n) {
                    return Err(CliError::Config("--x maps to different n for the given q values; pass one q".into()));
                }
                if n == 0 {
                    return Err(CliError::Config(format!("x = {x} is below q; no degree bound n >= 1")));
                }
                x_not_power_of_q = logs.iter().any(|&(_, exact)| !exact);
                n..=n
            }
        };
        let m_range = parse_range(&args.m, "m")?;
        if args.sqrt_slack == 0 {
            return Err(CliError::Config("--sqrt-slack must be positive".into()));
        }
        if args.oracle_budget == 0 {
            return Err(CliError::Config("--oracle-budget must be positive".into()));
        }
        let constants = match &args.corrupt_sqrt_constant {
            None => BoundConstants::default(),
            Some(s) => BoundConstants {
                sqrt_coefficient: s
                    .parse::<BigRational>()
                    .map_err(|_| CliError::Config(format!("invalid rational {s:?}")))?,
            },
        };
        Ok(RunConfig {
            command,
            q_list,
            n_range,
            m_range,
            output_format: args.format,
            output_path: args.out,
            sqrt_slack_denominator: args.sqrt_slack,
            oracle_budget: args.oracle_budget,
            constants,
            x_not_power_of_q,
        })
    }

    pub fn command_name(&self) -> &'static str {
        match self.command {
            CommandKind::Count => "count",
            CommandKind::Expand => "expand",
            CommandKind::Verify => "verify",
            CommandKind::Oracle => "oracle",
            CommandKind::Table => "table",
        }
    }

    /// Configuration echo for JSON output.
    pub fn echo(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), self.command_name().into());
        obj.insert("q".into(), self.q_list.iter().map(|q| q.q()).collect::<Vec<_>>().into());
        obj.insert("n".into(), format!("{}..{}", self.n_range.start(), self.n_range.end()).into());
        obj.insert("m".into(), format!("{}..{}", self.m_range.start(), self.m_range.end()).into());
        obj.insert("sqrt_slack".into(), self.sqrt_slack_denominator.into());
        obj.insert("oracle_budget".into(), self.oracle_budget.into());
        if self.constants != BoundConstants::default() {
            obj.insert("sqrt_coefficient".into(), self.constants.sqrt_coefficient.to_string().into());
        }
        if self.x_not_power_of_q {
            obj.insert("x_not_power_of_q".into(), true.into());
        }
        serde_json::Value::Object(obj)
    }
}
