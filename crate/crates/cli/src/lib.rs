//! Command-line front end for the `entropic` library.
//!
//! Every command writes CSV: a header row, data rows, then `#` summary rows.
//! Exit status is 0 on success, 1 for usage or configuration errors and 2 for
//! numeric, domain or infeasibility failures and failed checks.

use std::ffi::OsString;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use args::Cli;
use output::Sink;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAILURE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error(transparent)]
    Core(#[from] entropic::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use entropic::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(E::Usage(_) | E::Config(_)) => EXIT_USAGE,
            CliError::Core(_) | CliError::Failure(_) | CliError::Io(_) => EXIT_FAILURE,
        }
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match execute(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: Vec<OsString>) -> Result<u8, CliError> {
    let args = config::expand(args)?;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return Ok(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let sink = Sink::resolve(cli.out.as_deref(), cli.command.name())?;
    let outcome = commands::dispatch(&cli.command, cli.precision)?;
    sink.write(&outcome.body)?;
    match outcome.failure {
        Some(msg) => {
            eprintln!("check failed: {msg}");
            Ok(EXIT_FAILURE)
        }
        None => Ok(0),
    }
}
