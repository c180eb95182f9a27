//! Command-line front end for the `extbeta` crate.
//!
//! Exit codes: 0 ok, 1 violation, 2 usage, 3 domain, 4 indeterminate, 5 I/O.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod args;
pub mod check;
pub mod config;
pub mod error;
pub mod eval;
pub mod output;
pub mod params;
pub mod report;
pub mod sweep;

use args::{Cli, Command};
use config::Config;
pub use error::{CliError, Status};

/// Runs one command, writing its output to `out`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, out) {
        Ok(status) => status.exit_code(),
        Err(e) => {
            eprintln!("extbeta: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    let cfg = Config::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Eval(a) => eval::run(a, &cfg, out),
        Command::Check(a) => check::run(a, &cfg, out),
        Command::Sweep(a) => sweep::run(a, &cfg, out),
        Command::Report(a) => report::run(a, out),
    }
}
