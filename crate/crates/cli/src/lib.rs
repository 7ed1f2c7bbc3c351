//! Library side of the `ffpnt` binary: argument handling, the five
//! subcommands and output serialisation.

pub mod commands;
pub mod config;
pub mod format;
pub mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use thiserror::Error;

use config::{CommandKind, OutputFormat, RunConfig};

/// Exit code when every mathematical check passed.
pub const EXIT_OK: u8 = 0;
/// Exit code when a mathematical check failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Exit code for configuration and usage errors.
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_CONFIG
    }
}

/// Reads `FFPNT_THREADS` (0 or unset means automatic).
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("FFPNT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("FFPNT_THREADS must be a nonnegative integer, got {raw:?}")))?;
    if threads > 0 {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

/// Runs one command and writes its output. Returns the process exit code.
pub fn run(config: &RunConfig) -> Result<u8, CliError> {
    if config.x_not_power_of_q {
        eprintln!(
            "warning: x is not a power of q; using n = floor(log_q x) = {}",
            config.n_range.start()
        );
    }
    let output = match config.command {
        CommandKind::Count => commands::cmd_count(config)?,
        CommandKind::Expand => commands::cmd_expand(config)?,
        CommandKind::Verify => commands::cmd_verify(config)?,
        CommandKind::Oracle => commands::cmd_oracle(config)?,
        CommandKind::Table => commands::cmd_table(config)?,
    };

    let sink: Box<dyn Write> = match &config.output_path {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match config.output_format {
        OutputFormat::Csv => output.table.write_csv(&mut sink)?,
        OutputFormat::Json => {
            let doc = output.table.to_json(config.echo());
            serde_json::to_writer_pretty(&mut sink, &doc).map_err(io::Error::from)?;
            sink.write_all(b"\n")?;
        }
    }
    sink.flush()?;

    if let Some(summary) = output.summary {
        eprintln!("{summary}");
    }
    Ok(if output.all_passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}
