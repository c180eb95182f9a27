use std::io::Write;

use serde::Serialize;

use extbeta::{
    echf, eghf, ext_beta, Evaluation, ExtBetaPoint, HypergeomParams, QuadratureConfig, Route,
    SeriesControl,
};

use crate::args::{EvalArgs, Function, RouteArg};
use crate::config::Config;
use crate::error::{CliError, Status};
use crate::output::fmt_num;
use crate::params::Params;

#[derive(Debug, Serialize)]
struct EvalRecord {
    function: &'static str,
    value: f64,
    error_estimate: f64,
    evaluations: usize,
    converged: bool,
}

pub fn quadrature_config(
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    max_levels: Option<u32>,
    cfg: &Config,
) -> Result<QuadratureConfig, CliError> {
    let mut q = QuadratureConfig::default();
    if let Some(v) = cfg.f64("abs-tol", abs_tol)? {
        q.abs_tol = v;
    }
    if let Some(v) = cfg.f64("rel-tol", rel_tol)? {
        q.rel_tol = v;
    }
    if let Some(v) = cfg.u64("max-levels", max_levels.map(u64::from))? {
        q.max_levels = u32::try_from(v).map_err(|_| CliError::usage("max-levels is too large"))?;
    }
    q.validate().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(q)
}

fn route(args: &EvalArgs, cfg: &Config) -> Result<Route, CliError> {
    if let Some(r) = args.route {
        return Ok(match r {
            RouteArg::Integral => Route::Integral,
            RouteArg::Series => Route::Series,
        });
    }
    match cfg.string("route", None)?.as_deref() {
        None | Some("integral") => Ok(Route::Integral),
        Some("series") => Ok(Route::Series),
        Some(other) => Err(CliError::usage(format!(
            "route must be \"integral\" or \"series\", got {other:?}"
        ))),
    }
}

pub fn evaluate(args: &EvalArgs, cfg: &Config) -> Result<Evaluation, CliError> {
    let p = Params::resolve(&args.params, cfg)?;
    let q = &args.quadrature;
    let qc = quadrature_config(q.abs_tol, q.rel_tol, q.max_levels, cfg)?;
    let sc = SeriesControl::default();
    let sigma = p.or("sigma", 0.0);
    let r = route(args, cfg)?;
    Ok(match args.function {
        Function::Extbeta => {
            let pt = ExtBetaPoint::new(p.need("x")?, p.need("y")?, sigma)?;
            ext_beta(&pt, &qc)?
        }
        Function::Echf => {
            let hp = HypergeomParams::echf(p.need("b")?, p.need("c")?, sigma, p.need("x")?);
            echf(&hp.with_route(r), &sc, &qc)?
        }
        Function::Eghf => {
            let hp = HypergeomParams::eghf(
                p.need("a")?,
                p.need("b")?,
                p.need("c")?,
                sigma,
                p.need("x")?,
            );
            eghf(&hp.with_route(r), &sc, &qc)?
        }
    })
}

pub fn run(args: &EvalArgs, cfg: &Config, out: &mut dyn Write) -> Result<Status, CliError> {
    let e = evaluate(args, cfg)?;
    let function = match args.function {
        Function::Extbeta => "extbeta",
        Function::Echf => "echf",
        Function::Eghf => "eghf",
    };
    let text = if cfg.bool("json", args.json)? {
        let rec = EvalRecord {
            function,
            value: e.value,
            error_estimate: e.error_estimate,
            evaluations: e.evaluations,
            converged: e.converged,
        };
        serde_json::to_string_pretty(&rec).expect("record serializes") + "\n"
    } else {
        format!(
            "value: {}\nerror_estimate: {}\nevaluations: {}\nconverged: {}\n",
            fmt_num(e.value),
            fmt_num(e.error_estimate),
            e.evaluations,
            e.converged
        )
    };
    out.write_all(text.as_bytes())
        .map_err(|err| CliError::io("writing output", err))?;
    Ok(if e.converged {
        Status::Ok
    } else {
        Status::Indeterminate
    })
}
