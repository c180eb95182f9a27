use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Evaluate extended beta and hypergeometric functions and certify
/// inequalities between them.
#[derive(Debug, Parser)]
#[command(name = "extbeta", version, about)]
pub struct Cli {
    /// Flat TOML file whose keys are flag names; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function and print the value with its error estimate.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Run one named check and print the result as JSON.
    #[command(allow_negative_numbers = true)]
    Check(CheckArgs),
    /// Run a seeded randomized sweep and write CSV and JSON reports.
    Sweep(SweepArgs),
    /// Summarize a CSV written by `sweep`.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Extbeta,
    Echf,
    Eghf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Integral,
    Series,
}

/// A comma-separated list of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad grid entry {t:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Grid)
}

/// Every numeric parameter any function or check accepts.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub y: Option<f64>,
    #[arg(long)]
    pub x1: Option<f64>,
    #[arg(long)]
    pub y1: Option<f64>,
    #[arg(long)]
    pub x2: Option<f64>,
    #[arg(long)]
    pub y2: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub s1: Option<f64>,
    #[arg(long)]
    pub s2: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Comma-separated grid for monotonicity checks.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    /// Comma-separated, equally spaced grid in `a`.
    #[arg(long, value_parser = parse_grid)]
    pub a_grid: Option<Grid>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct QuadratureArgs {
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_levels: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum)]
    pub route: Option<RouteArg>,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
    /// Print a JSON record instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Registered check name; run `extbeta check list` to see them all.
    pub name: String,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Relative slack tolerance.
    #[arg(long)]
    pub slack_rel_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// One of: all, thm1, thm2, thm3, gruss, echf, eghf.
    #[arg(long)]
    pub suite: Option<String>,
    /// Samples per check family.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory; defaults to $EXTBETA_OUT_DIR, then the working directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub slack_rel_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub csv: PathBuf,
}
