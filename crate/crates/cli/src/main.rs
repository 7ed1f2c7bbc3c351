use std::process::ExitCode;

use clap::Parser;

use ffpnt_cli::config::{Cli, RunConfig};
use ffpnt_cli::{configure_threads, run};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| {
        let (kind, args) = cli.command.split();
        let config = RunConfig::from_args(kind, args)?;
        run(&config)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ffpnt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
