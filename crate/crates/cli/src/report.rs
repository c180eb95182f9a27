use std::io::Write;
use std::path::Path;

use extbeta::Verdict;

use crate::args::ReportArgs;
use crate::error::{CliError, Status};
use crate::output::PARAM_COLUMNS;
use crate::sweep::{SweepReport, Tally};

fn parse_verdict(s: &str) -> Option<Verdict> {
    match s {
        "satisfied" => Some(Verdict::Satisfied),
        "violated" => Some(Verdict::Violated),
        "indeterminate" => Some(Verdict::Indeterminate),
        _ => None,
    }
}

/// Rebuilds the summary of a sweep from its CSV.
pub fn summarize_csv(path: &Path) -> Result<SweepReport, CliError> {
    let bad = |e: &dyn std::fmt::Display| CliError::io(format!("reading {}", path.display()), e);
    let mut rdr = csv::Reader::from_path(path).map_err(|e| bad(&e))?;
    let headers = rdr.headers().map_err(|e| bad(&e))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| bad(&format!("missing column {name:?}")))
    };
    let (i_suite, i_name, i_slack, i_verdict, i_gated) = (
        col("suite")?,
        col("check_name")?,
        col("slack")?,
        col("verdict")?,
        col("gated")?,
    );
    let params: Vec<(usize, &str)> = PARAM_COLUMNS
        .iter()
        .filter_map(|&p| headers.iter().position(|h| h == p).map(|i| (i, p)))
        .collect();

    let mut tally = Tally::default();
    let mut suites: Vec<String> = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(&e))?;
        let at = |what: &str| bad(&format!("row {}: bad {what}", line + 1));
        let suite = &rec[i_suite];
        if !suites.iter().any(|s| s == suite) {
            suites.push(suite.to_string());
        }
        let verdict = parse_verdict(&rec[i_verdict]).ok_or_else(|| at("verdict"))?;
        let slack: f64 = rec[i_slack].parse().map_err(|_| at("slack"))?;
        let gated: bool = rec[i_gated].parse().map_err(|_| at("gated"))?;
        let inputs = params
            .iter()
            .filter_map(|&(i, p)| rec[i].parse::<f64>().ok().map(|v| (p.to_string(), v)))
            .collect::<Vec<_>>();
        tally.add(&rec[i_name], gated, verdict, slack, inputs);
    }
    Ok(tally.into_report(&suites.join("+"), None, None))
}

pub fn run(args: &ReportArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let report = summarize_csv(&args.csv)?;
    out.write_all(report.render_text().as_bytes())
        .map_err(|e| CliError::io("writing output", e))?;
    Ok(Status::Ok)
}
