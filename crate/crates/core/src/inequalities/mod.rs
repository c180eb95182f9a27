//! Numerical certification of inequalities for B_σ, Φ_σ and F_σ.
//!
//! Every check evaluates both sides of one inequality instance and reports
//! the signed slack `rhs - lhs`. An instance is satisfied when
//! `slack ≥ -tolerance`, with `tolerance = slack_rel_tol · max(|lhs|, |rhs|, 1)`.
//! Quadratures run two orders of magnitude tighter than the slack tolerance,
//! so evaluation error alone should not flip a verdict.
//!
//! If any evaluation behind a check fails to converge, the check is
//! [`Verdict::Indeterminate`]: a quadrature failure is not a counterexample.
//!
//! Monotonicity claims are certified on a finite grid only: a
//! [`MonotonicityCheck`] states that no adjacent pair of grid values violates
//! the claimed direction.

use std::cell::Cell;
use std::fmt;

use crate::error::Result;
use crate::evaluation::Evaluation;
use crate::quadrature::QuadratureConfig;
use crate::xbeta::{ext_beta, ExtBetaPoint};
use crate::xhyper::{echf, eghf, HypergeomParams, Route, SeriesControl};

mod beta;
mod gruss;
mod hyper;
pub mod sampling;

pub use beta::{
    check_logconvex_sigma, check_thm1, check_thm2_ratio_decreasing, check_thm3_midpoint,
    check_turan_sigma,
};
pub use gruss::{
    check_gruss_extbeta, check_gruss_power, check_gruss_shift, gruss_functional, GrussChain,
    GrussExtBeta, GrussPowerParams,
};
pub use hyper::{
    check_echf_b_ratio_decreasing, check_echf_logconvex_sigma, check_echf_logconvex_x,
    check_echf_product, check_echf_ratio_increasing, check_echf_reverse_turan,
    check_eghf_logconvex_a, check_eghf_logconvex_sigma, check_eghf_product,
    check_eghf_ratio_increasing, check_eghf_suite, BRatioChecks, EghfSuiteParams,
};

/// Tolerances used by every check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub slack_rel_tol: f64,
    pub quadrature: QuadratureConfig,
    pub series: SeriesControl,
}

impl Default for CheckConfig {
    fn default() -> Self {
        let slack_rel_tol = 1e-10;
        Self {
            slack_rel_tol,
            quadrature: QuadratureConfig::relative(slack_rel_tol * 1e-2),
            series: SeriesControl::default(),
        }
    }
}

impl CheckConfig {
    pub fn tolerance_for(&self, lhs: f64, rhs: f64) -> f64 {
        self.slack_rel_tol * lhs.abs().max(rhs.abs()).max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Satisfied,
    Violated,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named input parameters of a check, in a fixed order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Inputs(pub Vec<(&'static str, f64)>);

impl Inputs {
    pub fn new(pairs: &[(&'static str, f64)]) -> Self {
        Self(pairs.to_vec())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(&'static str, f64)> {
        self.0.iter()
    }

    fn with_grid(mut self, grid: &[f64]) -> Self {
        if let (Some(&lo), Some(&hi)) = (grid.first(), grid.last()) {
            self.0.push(("grid_lo", lo));
            self.0.push(("grid_hi", hi));
        }
        self.0.push(("grid_len", grid.len() as f64));
        self
    }
}

/// One certified inequality instance `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub inputs: Inputs,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// False for rows that are reported alongside a check but do not count
    /// toward certification.
    pub gated: bool,
}

impl InequalityCheck {
    pub(crate) fn assemble(
        name: &'static str,
        inputs: Inputs,
        lhs: f64,
        rhs: f64,
        determinate: bool,
        cfg: &CheckConfig,
    ) -> Self {
        let slack = rhs - lhs;
        let tolerance = cfg.tolerance_for(lhs, rhs);
        let verdict = if !determinate || !slack.is_finite() {
            Verdict::Indeterminate
        } else if slack >= -tolerance {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        };
        Self {
            name,
            inputs,
            lhs,
            rhs,
            slack,
            tolerance,
            verdict,
            gated: true,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }

    pub(crate) fn informational(self) -> Self {
        Self {
            gated: false,
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A sampled monotonicity claim.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityCheck {
    pub name: &'static str,
    pub inputs: Inputs,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub direction: Direction,
    /// Largest step against `direction` between adjacent grid points, or 0.
    pub max_violation: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub gated: bool,
}

impl MonotonicityCheck {
    pub(crate) fn assemble(
        name: &'static str,
        inputs: Inputs,
        grid: Vec<f64>,
        values: Vec<f64>,
        direction: Direction,
        determinate: bool,
        cfg: &CheckConfig,
    ) -> Self {
        let max_violation = values
            .windows(2)
            .map(|w| match direction {
                Direction::Increasing => w[0] - w[1],
                Direction::Decreasing => w[1] - w[0],
            })
            .fold(0.0_f64, f64::max);
        let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let tolerance = cfg.slack_rel_tol * scale;
        let finite = values.iter().all(|v| v.is_finite());
        let verdict = if !determinate || !finite {
            Verdict::Indeterminate
        } else if max_violation <= tolerance {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        };
        Self {
            name,
            inputs: inputs.with_grid(&grid),
            grid,
            values,
            direction,
            max_violation,
            tolerance,
            verdict,
            gated: true,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }
}

/// Either kind of check, for uniform reporting.
#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Inequality(InequalityCheck),
    Monotonicity(MonotonicityCheck),
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Inequality(c) => c.name,
            Check::Monotonicity(c) => c.name,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            Check::Inequality(c) => c.verdict,
            Check::Monotonicity(c) => c.verdict,
        }
    }

    pub fn gated(&self) -> bool {
        match self {
            Check::Inequality(c) => c.gated,
            Check::Monotonicity(c) => c.gated,
        }
    }

    pub fn inputs(&self) -> &Inputs {
        match self {
            Check::Inequality(c) => &c.inputs,
            Check::Monotonicity(c) => &c.inputs,
        }
    }

    /// For monotonicity checks: the largest violation.
    pub fn lhs(&self) -> f64 {
        match self {
            Check::Inequality(c) => c.lhs,
            Check::Monotonicity(c) => c.max_violation,
        }
    }

    /// For monotonicity checks: zero.
    pub fn rhs(&self) -> f64 {
        match self {
            Check::Inequality(c) => c.rhs,
            Check::Monotonicity(_) => 0.0,
        }
    }

    pub fn slack(&self) -> f64 {
        self.rhs() - self.lhs()
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            Check::Inequality(c) => c.tolerance,
            Check::Monotonicity(c) => c.tolerance,
        }
    }
}

impl From<InequalityCheck> for Check {
    fn from(c: InequalityCheck) -> Self {
        Check::Inequality(c)
    }
}

impl From<MonotonicityCheck> for Check {
    fn from(c: MonotonicityCheck) -> Self {
        Check::Monotonicity(c)
    }
}

/// At σ = 0 the series coefficients are closed-form, while the integral
/// loses mass below the quadrature's endpoint cutoff once b or c - b is
/// close to zero.
fn route_for(sigma: f64) -> Route {
    if sigma == 0.0 {
        Route::Series
    } else {
        Route::Integral
    }
}

/// Evaluates functions for one check and remembers whether every
/// evaluation converged.
pub(crate) struct Evaluator<'a> {
    cfg: &'a CheckConfig,
    determinate: Cell<bool>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(cfg: &'a CheckConfig) -> Self {
        Self {
            cfg,
            determinate: Cell::new(true),
        }
    }

    pub(crate) fn determinate(&self) -> bool {
        self.determinate.get()
    }

    fn note(&self, e: Evaluation) -> f64 {
        if !e.converged {
            self.determinate.set(false);
        }
        e.value
    }

    pub(crate) fn beta(&self, x: f64, y: f64, sigma: f64) -> Result<f64> {
        let p = ExtBetaPoint::new(x, y, sigma)?;
        Ok(self.note(ext_beta(&p, &self.cfg.quadrature)?))
    }

    pub(crate) fn echf(&self, b: f64, c: f64, sigma: f64, x: f64) -> Result<f64> {
        let p = HypergeomParams::echf(b, c, sigma, x).with_route(route_for(sigma));
        Ok(self.note(echf(&p, &self.cfg.series, &self.cfg.quadrature)?))
    }

    pub(crate) fn eghf(&self, a: f64, b: f64, c: f64, sigma: f64, x: f64) -> Result<f64> {
        let p = HypergeomParams::eghf(a, b, c, sigma, x).with_route(route_for(sigma));
        Ok(self.note(eghf(&p, &self.cfg.series, &self.cfg.quadrature)?))
    }

    pub(crate) fn inequality(
        &self,
        name: &'static str,
        inputs: Inputs,
        lhs: f64,
        rhs: f64,
    ) -> InequalityCheck {
        InequalityCheck::assemble(name, inputs, lhs, rhs, self.determinate(), self.cfg)
    }

    pub(crate) fn monotonicity(
        &self,
        name: &'static str,
        inputs: Inputs,
        grid: &[f64],
        values: Vec<f64>,
        direction: Direction,
    ) -> MonotonicityCheck {
        MonotonicityCheck::assemble(
            name,
            inputs,
            grid.to_vec(),
            values,
            direction,
            self.determinate(),
            self.cfg,
        )
    }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(crate::error::precondition(msg()))
    }
}

pub(crate) fn require_grid(grid: &[f64], what: &str) -> Result<()> {
    require(!grid.is_empty(), || format!("{what} must not be empty"))?;
    require(grid.iter().all(|v| v.is_finite()), || {
        format!("{what} must be finite")
    })?;
    require(grid.windows(2).all(|w| w[0] < w[1]), || {
        format!("{what} must be strictly increasing")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn satisfied_iff_slack_within_tolerance() {
        let cfg = CheckConfig::default();
        let ok = InequalityCheck::assemble("t", Inputs::default(), 1.0, 1.0 - 5e-11, true, &cfg);
        assert_eq!(ok.verdict, Verdict::Satisfied);
        let bad = InequalityCheck::assemble("t", Inputs::default(), 1.0, 1.0 - 2e-10, true, &cfg);
        assert_eq!(bad.verdict, Verdict::Violated);
        let big = InequalityCheck::assemble("t", Inputs::default(), 1e6, 1e6 - 1e-5, true, &cfg);
        assert_eq!(big.verdict, Verdict::Satisfied);
        let unknown = InequalityCheck::assemble("t", Inputs::default(), 0.0, -1.0, false, &cfg);
        assert_eq!(unknown.verdict, Verdict::Indeterminate);
    }

    #[test]
    fn monotone_violation_measure() {
        let cfg = CheckConfig::default();
        let m = MonotonicityCheck::assemble(
            "m",
            Inputs::default(),
            vec![0.0, 1.0, 2.0, 3.0],
            vec![4.0, 3.0, 3.5, 1.0],
            Direction::Decreasing,
            true,
            &cfg,
        );
        assert_eq!(m.max_violation, 0.5);
        assert_eq!(m.verdict, Verdict::Violated);
        let single = MonotonicityCheck::assemble(
            "m",
            Inputs::default(),
            vec![1.0],
            vec![2.0],
            Direction::Increasing,
            true,
            &cfg,
        );
        assert_eq!(single.max_violation, 0.0);
        assert!(single.satisfied());
    }
}
