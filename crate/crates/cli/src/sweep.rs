use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use extbeta::inequalities::sampling::{Family, Suite};
use extbeta::{Check, CheckConfig, InequalityCheck, Inputs, Verdict};

use crate::args::SweepArgs;
use crate::check::check_config;
use crate::config::Config;
use crate::error::{CliError, Status};
use crate::output::{csv_header, csv_record, fmt_num};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "EXTBETA_OUT_DIR";

pub const VERSION: &str = concat!("extbeta ", env!("CARGO_PKG_VERSION"));

/// One CSV row.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub suite: Suite,
    pub sample_index: u64,
    pub check: Check,
}

#[derive(Debug, Clone, Default)]
pub struct SweepRun {
    pub rows: Vec<SweepRow>,
    /// Samples whose parameters were rejected; each also yields an
    /// indeterminate row.
    pub errors: Vec<String>,
}

/// Runs `n` samples of every family in `suite`. Samples run in parallel; rows
/// come back ordered by family, then sample index.
pub fn run_sweep(suite: Suite, n: u64, seed: u64, cfg: &CheckConfig) -> SweepRun {
    let tasks: Vec<(Family, u64)> = suite
        .families()
        .into_iter()
        .flat_map(|f| (0..n).map(move |i| (f, i)))
        .collect();
    let results: Vec<_> = tasks
        .par_iter()
        .map(|&(f, i)| (f, i, f.run_sample(seed, i, cfg)))
        .collect();

    let mut run = SweepRun::default();
    for (family, i, res) in results {
        let checks = res.unwrap_or_else(|e| {
            run.errors.push(format!("{family} sample {i}: {e}"));
            vec![Check::Inequality(InequalityCheck {
                name: family.name(),
                inputs: Inputs::default(),
                lhs: f64::NAN,
                rhs: f64::NAN,
                slack: f64::NAN,
                tolerance: f64::NAN,
                verdict: Verdict::Indeterminate,
                gated: true,
            })]
        });
        run.rows.extend(checks.into_iter().map(|check| SweepRow {
            suite: family.suite(),
            sample_index: i,
            check,
        }));
    }
    run
}

pub fn write_csv<W: Write>(rows: &[SweepRow], w: W) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(csv_header())?;
    for r in rows {
        wtr.write_record(csv_record(r.suite.name(), r.sample_index, &r.check))?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckTally {
    pub check_name: String,
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub indeterminate: u64,
    pub gated: bool,
    pub worst_slack: Option<f64>,
}

/// Counts over gated rows; informational rows are tallied per check only.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    by_check: BTreeMap<String, CheckTally>,
    order: Vec<String>,
    total: u64,
    passed: u64,
    failed: u64,
    indeterminate: u64,
    informational: u64,
    worst: Option<(f64, String, BTreeMap<String, f64>)>,
}

impl Tally {
    pub fn add(
        &mut self,
        name: &str,
        gated: bool,
        verdict: Verdict,
        slack: f64,
        inputs: impl IntoIterator<Item = (String, f64)>,
    ) {
        if !self.by_check.contains_key(name) {
            self.order.push(name.to_string());
        }
        let t = self
            .by_check
            .entry(name.to_string())
            .or_insert_with(|| CheckTally {
                check_name: name.to_string(),
                gated,
                ..CheckTally::default()
            });
        t.total += 1;
        match verdict {
            Verdict::Satisfied => t.passed += 1,
            Verdict::Violated => t.failed += 1,
            Verdict::Indeterminate => t.indeterminate += 1,
        }
        if verdict != Verdict::Indeterminate {
            t.worst_slack = Some(t.worst_slack.map_or(slack, |w| w.min(slack)));
        }
        if !gated {
            self.informational += 1;
            return;
        }
        self.total += 1;
        match verdict {
            Verdict::Satisfied => self.passed += 1,
            Verdict::Violated => self.failed += 1,
            Verdict::Indeterminate => {
                self.indeterminate += 1;
                return;
            }
        }
        if self.worst.as_ref().is_none_or(|(w, _, _)| slack < *w) {
            self.worst = Some((slack, name.to_string(), inputs.into_iter().collect()));
        }
    }

    pub fn add_check(&mut self, c: &Check) {
        let inputs = c.inputs().iter().map(|&(k, v)| (k.to_string(), v));
        self.add(c.name(), c.gated(), c.verdict(), c.slack(), inputs);
    }

    pub fn into_report(self, suite_name: &str, seed: Option<u64>, n: Option<u64>) -> SweepReport {
        let (worst_slack, worst_check, worst_inputs) = match self.worst {
            Some((s, c, i)) => (Some(s), Some(c), i),
            None => (None, None, BTreeMap::new()),
        };
        let mut by_check = self.by_check;
        SweepReport {
            version: VERSION.to_string(),
            suite_name: suite_name.to_string(),
            seed,
            samples_per_family: n,
            total: self.total,
            passed: self.passed,
            failed: self.failed,
            indeterminate: self.indeterminate,
            informational: self.informational,
            worst_slack,
            worst_check,
            worst_inputs,
            wall_time: 0.0,
            by_check: self
                .order
                .iter()
                .filter_map(|k| by_check.remove(k))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub version: String,
    pub suite_name: String,
    pub seed: Option<u64>,
    pub samples_per_family: Option<u64>,
    /// Gated checks: `passed + failed + indeterminate`.
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub indeterminate: u64,
    /// Rows reported for comparison only, not counted in `total`.
    pub informational: u64,
    /// Minimum slack over gated, determinate checks.
    pub worst_slack: Option<f64>,
    pub worst_check: Option<String>,
    pub worst_inputs: BTreeMap<String, f64>,
    /// Seconds; the only field that varies between identical runs.
    pub wall_time: f64,
    pub by_check: Vec<CheckTally>,
}

impl SweepReport {
    pub fn status(&self) -> Status {
        if self.failed > 0 {
            Status::Violation
        } else {
            Status::Ok
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let seed = self.seed.map(|v| format!(", seed {v}")).unwrap_or_default();
        let _ = writeln!(
            s,
            "suite {}{seed}: {} checks, {} passed, {} failed, {} indeterminate, {} informational",
            self.suite_name,
            self.total,
            self.passed,
            self.failed,
            self.indeterminate,
            self.informational
        );
        if let (Some(w), Some(c)) = (self.worst_slack, &self.worst_check) {
            let _ = writeln!(s, "worst slack {} ({c})", fmt_num(w));
        }
        let _ = writeln!(
            s,
            "{:<40} {:>7} {:>7} {:>7} {:>7}  worst slack",
            "check", "total", "passed", "failed", "indet."
        );
        for t in &self.by_check {
            let name = if t.gated {
                t.check_name.clone()
            } else {
                format!("{} (info)", t.check_name)
            };
            let _ = writeln!(
                s,
                "{:<40} {:>7} {:>7} {:>7} {:>7}  {}",
                name,
                t.total,
                t.passed,
                t.failed,
                t.indeterminate,
                t.worst_slack.map(fmt_num).unwrap_or_else(|| "-".into())
            );
        }
        s
    }
}

pub fn summarize(run: &SweepRun, suite: Suite, seed: u64, n: u64) -> SweepReport {
    let mut t = Tally::default();
    for r in &run.rows {
        t.add_check(&r.check);
    }
    t.into_report(suite.name(), Some(seed), Some(n))
}

pub fn output_dir(flag: Option<PathBuf>, cfg: &Config) -> Result<PathBuf, CliError> {
    if let Some(p) = cfg.path("out", flag)? {
        return Ok(p);
    }
    Ok(std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".")))
}

pub fn file_stem(suite: Suite, n: u64, seed: u64) -> String {
    format!("sweep-{}-n{n}-seed{seed}", suite.name())
}

fn write_outputs(
    dir: &Path,
    stem: &str,
    run: &SweepRun,
    report: &SweepReport,
) -> Result<(PathBuf, PathBuf), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    let csv_path = dir.join(format!("{stem}.csv"));
    let file = std::fs::File::create(&csv_path)
        .map_err(|e| CliError::io(format!("creating {}", csv_path.display()), e))?;
    write_csv(&run.rows, std::io::BufWriter::new(file))
        .map_err(|e| CliError::io(format!("writing {}", csv_path.display()), e))?;
    let json_path = dir.join(format!("{stem}.json"));
    let json = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    std::fs::write(&json_path, json)
        .map_err(|e| CliError::io(format!("writing {}", json_path.display()), e))?;
    Ok((csv_path, json_path))
}

pub fn run(args: &SweepArgs, cfg: &Config, out: &mut dyn Write) -> Result<Status, CliError> {
    let suite: Suite = cfg
        .string("suite", args.suite.clone())?
        .unwrap_or_else(|| "all".into())
        .parse()?;
    let n = cfg.u64("n", args.n)?.unwrap_or(1000);
    if n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let seed = cfg.u64("seed", args.seed)?.unwrap_or(42);
    let cc = check_config(args.slack_rel_tol, cfg)?;
    let dir = output_dir(args.out.clone(), cfg)?;

    let start = Instant::now();
    let sweep = run_sweep(suite, n, seed, &cc);
    let mut report = summarize(&sweep, suite, seed, n);
    report.wall_time = start.elapsed().as_secs_f64();

    for e in &sweep.errors {
        eprintln!("warning: {e}");
    }
    let (csv_path, json_path) = write_outputs(&dir, &file_stem(suite, n, seed), &sweep, &report)?;
    let text = format!(
        "{}csv: {}\njson: {}\n",
        report.render_text(),
        csv_path.display(),
        json_path.display()
    );
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("writing output", e))?;
    Ok(report.status())
}
