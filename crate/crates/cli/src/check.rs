use std::io::Write;

use extbeta::inequalities::{
    check_echf_b_ratio_decreasing, check_echf_logconvex_sigma, check_echf_logconvex_x,
    check_echf_product, check_echf_ratio_increasing, check_echf_reverse_turan,
    check_eghf_logconvex_a, check_eghf_logconvex_sigma, check_eghf_product,
    check_eghf_ratio_increasing, check_eghf_suite, check_gruss_extbeta, check_gruss_power,
    check_gruss_shift, check_logconvex_sigma, check_thm1, check_thm2_ratio_decreasing,
    check_thm3_midpoint, check_turan_sigma, EghfSuiteParams, GrussPowerParams,
};
use extbeta::{Check, CheckConfig, QuadratureConfig, Verdict};

use crate::args::CheckArgs;
use crate::config::Config;
use crate::error::{CliError, Status};
use crate::output::CheckRecord;
use crate::params::Params;

pub const CHECK_NAMES: &[&str] = &[
    "thm1",
    "turan-sigma",
    "thm2-ratio",
    "logconvex-sigma",
    "thm3-midpoint",
    "gruss-extbeta",
    "gruss-shift",
    "gruss-power",
    "echf-ratio",
    "echf-product",
    "echf-logconvex-x",
    "echf-logconvex-sigma",
    "echf-b-ratio",
    "echf-reverse-turan",
    "eghf-ratio",
    "eghf-product",
    "eghf-logconvex-sigma",
    "eghf-logconvex-a",
    "eghf-suite",
];

pub fn check_config(slack_rel_tol: Option<f64>, cfg: &Config) -> Result<CheckConfig, CliError> {
    match cfg.f64("slack-rel-tol", slack_rel_tol)? {
        None => Ok(CheckConfig::default()),
        Some(t) if t > 0.0 && t.is_finite() => {
            let d = CheckConfig::default();
            Ok(CheckConfig {
                slack_rel_tol: t,
                quadrature: QuadratureConfig {
                    rel_tol: t * 1e-2,
                    ..d.quadrature
                },
                ..d
            })
        }
        Some(t) => Err(CliError::usage(format!(
            "slack-rel-tol must be positive, got {t}"
        ))),
    }
}

/// Worst gated outcome: any violation, else any indeterminate, else ok.
pub fn status_of(checks: &[Check]) -> Status {
    let gated = || checks.iter().filter(|c| c.gated());
    if gated().any(|c| c.verdict() == Verdict::Violated) {
        Status::Violation
    } else if gated().any(|c| c.verdict() == Verdict::Indeterminate) {
        Status::Indeterminate
    } else {
        Status::Ok
    }
}

pub fn run_named(name: &str, p: &Params, cc: &CheckConfig) -> Result<Vec<Check>, CliError> {
    let one = |c: Check| Ok(vec![c]);
    match name {
        "thm1" => one(check_thm1(
            p.need("x")?,
            p.need("x1")?,
            p.need("y")?,
            p.need("y1")?,
            p.or("sigma", 0.0),
            cc,
        )?
        .into()),
        "turan-sigma" => one(check_turan_sigma(
            p.need("x")?,
            p.need("y")?,
            p.need("sigma")?,
            p.need("a")?,
            cc,
        )?
        .into()),
        "thm2-ratio" => {
            one(check_thm2_ratio_decreasing(p.need("x")?, p.need("y")?, p.need_grid()?, cc)?.into())
        }
        "logconvex-sigma" => one(check_logconvex_sigma(
            p.need("x")?,
            p.need("y")?,
            p.need("s1")?,
            p.need("s2")?,
            p.need("alpha")?,
            cc,
        )?
        .into()),
        "thm3-midpoint" => one(check_thm3_midpoint(
            p.need("x1")?,
            p.need("y1")?,
            p.need("x2")?,
            p.need("y2")?,
            p.or("sigma", 0.0),
            cc,
        )?
        .into()),
        "gruss-extbeta" => {
            Ok(
                check_gruss_extbeta(p.need("x")?, p.need("y")?, p.need("s1")?, p.need("s2")?, cc)?
                    .into_checks(),
            )
        }
        "gruss-shift" => Ok(check_gruss_shift(
            p.need("x")?,
            p.need("y")?,
            p.need("x1")?,
            p.need("y1")?,
            p.or("sigma", 0.0),
            cc,
        )?
        .into_checks()),
        "gruss-power" => {
            let gp = GrussPowerParams {
                alpha: p.need("alpha")?,
                beta: p.need("beta")?,
                m: p.need("m")?,
                n: p.need("n")?,
                p: p.need("p")?,
                q: p.need("q")?,
                sigma: p.or("sigma", 0.0),
            };
            Ok(check_gruss_power(&gp, cc)?.into_checks())
        }
        "echf-ratio" => one(check_echf_ratio_increasing(
            p.need("b")?,
            p.need("c")?,
            p.need("d")?,
            p.or("sigma", 0.0),
            p.need_grid()?,
            cc,
        )?
        .into()),
        "echf-product" => one(check_echf_product(
            p.need("b")?,
            p.need("c")?,
            p.need("d")?,
            p.or("sigma", 0.0),
            p.need("x")?,
            cc,
        )?
        .into()),
        "echf-logconvex-x" => one(check_echf_logconvex_x(
            p.need("b")?,
            p.need("c")?,
            p.or("sigma", 0.0),
            p.need("x")?,
            p.need("y")?,
            p.need("alpha")?,
            cc,
        )?
        .into()),
        "echf-logconvex-sigma" => one(check_echf_logconvex_sigma(
            p.need("b")?,
            p.need("c")?,
            p.need("x")?,
            p.need("s1")?,
            p.need("s2")?,
            p.need("alpha")?,
            cc,
        )?
        .into()),
        "echf-b-ratio" => Ok(check_echf_b_ratio_decreasing(
            p.need("c")?,
            p.need("x")?,
            p.or("sigma", 0.0),
            p.need("delta")?,
            p.need_grid()?,
            cc,
        )?
        .into_checks()),
        "echf-reverse-turan" => one(check_echf_reverse_turan(
            p.need("b")?,
            p.need("c")?,
            p.need("x")?,
            p.or("sigma", 0.0),
            p.need("delta")?,
            cc,
        )?
        .into()),
        "eghf-ratio" => one(check_eghf_ratio_increasing(
            p.need("a")?,
            p.need("b")?,
            p.need("c")?,
            p.need("d")?,
            p.or("sigma", 0.0),
            p.need_grid()?,
            cc,
        )?
        .into()),
        "eghf-product" => one(check_eghf_product(
            p.need("a")?,
            p.need("b")?,
            p.need("c")?,
            p.need("d")?,
            p.or("sigma", 0.0),
            p.need("x")?,
            cc,
        )?
        .into()),
        "eghf-logconvex-sigma" => one(check_eghf_logconvex_sigma(
            p.need("a")?,
            p.need("b")?,
            p.need("c")?,
            p.need("x")?,
            p.need("s1")?,
            p.need("s2")?,
            p.need("alpha")?,
            cc,
        )?
        .into()),
        "eghf-logconvex-a" => one(check_eghf_logconvex_a(
            p.need("b")?,
            p.need("c")?,
            p.or("sigma", 0.0),
            p.need("x")?,
            p.need_a_grid()?,
            cc,
        )?
        .into()),
        "eghf-suite" => {
            let sp = EghfSuiteParams {
                a: p.need("a")?,
                b: p.need("b")?,
                c: p.need("c")?,
                d: p.need("d")?,
                sigma: p.or("sigma", 0.0),
                x: p.need("x")?,
                x_grid: p.need_grid()?.to_vec(),
                alpha: p.need("alpha")?,
                sigma1: p.need("s1")?,
                sigma2: p.need("s2")?,
                a_grid: p.need_a_grid()?.to_vec(),
            };
            Ok(check_eghf_suite(&sp, cc)?)
        }
        _ => Err(CliError::usage(format!(
            "unknown check {name:?}; registered checks: {}",
            CHECK_NAMES.join(", ")
        ))),
    }
}

pub fn run(args: &CheckArgs, cfg: &Config, out: &mut dyn Write) -> Result<Status, CliError> {
    let write = |out: &mut dyn Write, text: String| {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::io("writing output", e))
    };
    if args.name == "list" {
        write(out, CHECK_NAMES.join("\n") + "\n")?;
        return Ok(Status::Ok);
    }
    let p = Params::resolve(&args.params, cfg)?;
    let cc = check_config(args.slack_rel_tol, cfg)?;
    let checks = run_named(&args.name, &p, &cc)?;
    let records: Vec<CheckRecord> = checks.iter().map(CheckRecord::from).collect();
    write(
        out,
        serde_json::to_string_pretty(&records).expect("records serialize") + "\n",
    )?;
    Ok(status_of(&checks))
}
