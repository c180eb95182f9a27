//! Extended confluent (Φ_σ) and Gaussian (F_σ) hypergeometric functions.
//!
//! Both functions have an integral form,
//!
//! ```text
//! Φ_σ(b; c; x)    = 1/B(b, c-b) ∫₀¹ t^{b-1} (1-t)^{c-b-1} exp(xt - σ/(t(1-t))) dt
//! F_σ(a, b; c; x) = 1/B(b, c-b) ∫₀¹ t^{b-1} (1-t)^{c-b-1} (1-xt)^{-a} exp(-σ/(t(1-t))) dt
//! ```
//!
//! and a power series whose n-th coefficient is `B_σ(b+n, c-b) / B(b, c-b)`
//! times `xⁿ/n!` (confluent) or `(a)_n xⁿ/n!` (Gaussian). The series is what
//! expanding `e^{xt}` or `(1-xt)^{-a}` under the integral produces, and the
//! two routes are computed independently so they can be checked against each
//! other.
//!
//! Negative arguments of Φ_σ go through the Kummer-type reflection
//! `Φ_σ(b; c; x) = eˣ Φ_σ(c-b; c; -x)`, which follows from `t → 1-t`.

use crate::error::{domain, Result};
use crate::evaluation::Evaluation;
use crate::gamma_kernel::{log_beta, pochhammer};
use crate::quadrature::{integrate_unit_log, QuadratureConfig};
use crate::xbeta::{ext_beta, log_kernel, ExtBetaPoint};

/// Which representation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    Series,
    #[default]
    Integral,
}

/// Parameters of Φ_σ(b; c; x) (`a` absent) or F_σ(a, b; c; x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeomParams {
    pub a: Option<f64>,
    pub b: f64,
    pub c: f64,
    pub sigma: f64,
    pub x: f64,
    pub route: Route,
}

impl HypergeomParams {
    pub fn echf(b: f64, c: f64, sigma: f64, x: f64) -> Self {
        Self {
            a: None,
            b,
            c,
            sigma,
            x,
            route: Route::default(),
        }
    }

    pub fn eghf(a: f64, b: f64, c: f64, sigma: f64, x: f64) -> Self {
        Self {
            a: Some(a),
            ..Self::echf(b, c, sigma, x)
        }
    }

    pub fn with_route(self, route: Route) -> Self {
        Self { route, ..self }
    }

    pub fn with_x(self, x: f64) -> Self {
        Self { x, ..self }
    }

    pub fn with_sigma(self, sigma: f64) -> Self {
        Self { sigma, ..self }
    }

    /// Checks `c > b ≥ 0`, `σ ≥ 0`, finiteness, and `|x| < 1` for F_σ.
    ///
    /// `b = 0` is admitted here; the evaluators decide what it means.
    pub fn validate(&self) -> Result<()> {
        let Self { b, c, sigma, x, .. } = *self;
        if ![b, c, sigma, x].iter().all(|v| v.is_finite()) {
            return Err(domain("hypergeometric parameters must be finite"));
        }
        if let Some(a) = self.a {
            if !a.is_finite() {
                return Err(domain("a must be finite"));
            }
            if !(x.abs() < 1.0) {
                return Err(domain(format!("F_sigma requires |x| < 1, got x = {x}")));
            }
        }
        if !(b >= 0.0) || !(c > b) {
            return Err(domain(format!("requires c > b > 0, got b = {b}, c = {c}")));
        }
        if !(sigma >= 0.0) {
            return Err(domain(format!("sigma must be >= 0, got {sigma}")));
        }
        Ok(())
    }
}

/// Truncation rule for the series route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_term_tol: f64,
    /// Number of successive terms below `rel_term_tol·|sum|` before stopping.
    pub consecutive_small: u32,
    pub max_terms: u32,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_term_tol: 1e-15,
            consecutive_small: 3,
            max_terms: 10_000,
        }
    }
}

/// b = 0: the classical function is identically 1; for σ > 0 the limit
/// b → 0⁺ of the normalized integral is 0, which no inequality can use.
fn degenerate_b(p: &HypergeomParams) -> Result<Option<Evaluation>> {
    if p.b != 0.0 {
        return Ok(None);
    }
    if p.sigma == 0.0 {
        Ok(Some(Evaluation::exact(1.0)))
    } else {
        Err(domain("b = 0 is only defined here for sigma = 0"))
    }
}

/// `B_σ(b+n, c-b) / B(b, c-b)`.
fn series_coefficient(
    b: f64,
    c: f64,
    sigma: f64,
    n: u32,
    log_norm: f64,
    cfg: &QuadratureConfig,
) -> Result<Evaluation> {
    let shifted = b + n as f64;
    if sigma == 0.0 {
        return Ok(Evaluation::exact(
            (log_beta(shifted, c - b)? - log_norm).exp(),
        ));
    }
    let p = ExtBetaPoint::new(shifted, c - b, sigma)?;
    Ok(ext_beta(&p, cfg)?.scaled((-log_norm).exp()))
}

/// Sums `Σ coefficient(n) · factor(n)` where `factor(n+1) = factor(n)·ratio(n)`.
fn sum_series(
    p: &HypergeomParams,
    sc: &SeriesControl,
    cfg: &QuadratureConfig,
    ratio: impl Fn(u32) -> f64,
) -> Result<Evaluation> {
    let log_norm = log_beta(p.b, p.c - p.b)?;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut converged = true;
    let mut factor = 1.0;
    let mut small_run = 0;

    for n in 0..sc.max_terms {
        if factor == 0.0 {
            return Ok(Evaluation {
                value: sum,
                error_estimate: err,
                evaluations,
                converged,
            });
        }
        let coef = series_coefficient(p.b, p.c, p.sigma, n, log_norm, cfg)?;
        converged &= coef.converged;
        evaluations += coef.evaluations;
        let term = coef.value * factor;
        sum += term;
        err += coef.error_estimate * factor.abs();

        if term.abs() <= sc.rel_term_tol * sum.abs() {
            small_run += 1;
            if small_run >= sc.consecutive_small {
                return Ok(Evaluation {
                    value: sum,
                    error_estimate: err + term.abs(),
                    evaluations,
                    converged,
                });
            }
        } else {
            small_run = 0;
        }
        factor *= ratio(n);
    }
    Ok(Evaluation {
        value: sum,
        error_estimate: f64::INFINITY,
        evaluations,
        converged: false,
    })
}

/// Φ_σ(b; c; x) from its integral representation, for any real x.
pub fn echf_integral(p: &HypergeomParams, cfg: &QuadratureConfig) -> Result<Evaluation> {
    p.validate()?;
    if let Some(e) = degenerate_b(p)? {
        return Ok(e);
    }
    let HypergeomParams { b, c, sigma, x, .. } = *p;
    let log_norm = log_beta(b, c - b)?;
    let r = integrate_unit_log(
        |t, tc| log_kernel(b, c - b, sigma, t, tc) + x * t - log_norm,
        cfg,
    )?;
    Ok(r.into())
}

/// Φ_σ(b; c; x) from its power series, for x ≥ 0.
pub fn echf_series(
    p: &HypergeomParams,
    sc: &SeriesControl,
    cfg: &QuadratureConfig,
) -> Result<Evaluation> {
    p.validate()?;
    if p.x < 0.0 {
        return Err(domain("the series route is used for x >= 0 only"));
    }
    if let Some(e) = degenerate_b(p)? {
        return Ok(e);
    }
    let x = p.x;
    sum_series(p, sc, cfg, |n| x / (n as f64 + 1.0))
}

/// Φ_σ(b; c; x) by the route in `params`; negative x goes through
/// [`echf_reflect`].
///
/// ```
/// use extbeta::{echf, HypergeomParams, QuadratureConfig, SeriesControl};
///
/// // Φ₀(1; 2; 1) = e - 1
/// let p = HypergeomParams::echf(1.0, 2.0, 0.0, 1.0);
/// let v = echf(&p, &SeriesControl::default(), &QuadratureConfig::default()).unwrap();
/// assert!((v.value - (1f64.exp() - 1.0)).abs() < 1e-12);
/// ```
pub fn echf(p: &HypergeomParams, sc: &SeriesControl, cfg: &QuadratureConfig) -> Result<Evaluation> {
    if p.a.is_some() {
        return Err(domain("echf takes no `a` parameter"));
    }
    p.validate()?;
    if p.x < 0.0 {
        return echf_reflect(p, sc, cfg);
    }
    match p.route {
        Route::Integral => echf_integral(p, cfg),
        Route::Series => echf_series(p, sc, cfg),
    }
}

/// Φ_σ(b; c; x) for x < 0 as eˣ Φ_σ(c-b; c; -x).
pub fn echf_reflect(
    p: &HypergeomParams,
    sc: &SeriesControl,
    cfg: &QuadratureConfig,
) -> Result<Evaluation> {
    p.validate()?;
    if !(p.x < 0.0) {
        return Err(domain(format!("reflection requires x < 0, got {}", p.x)));
    }
    if let Some(e) = degenerate_b(p)? {
        return Ok(e);
    }
    let mirrored = HypergeomParams {
        b: p.c - p.b,
        x: -p.x,
        ..*p
    };
    Ok(echf(&mirrored, sc, cfg)?.scaled(p.x.exp()))
}

/// dⁿ/dxⁿ Φ_σ(b; c; x) = (b)_n/(c)_n · Φ_σ(b+n; c+n; x).
pub fn echf_x_derivative(
    p: &HypergeomParams,
    n: u32,
    sc: &SeriesControl,
    cfg: &QuadratureConfig,
) -> Result<Evaluation> {
    p.validate()?;
    if n == 0 {
        return echf(p, sc, cfg);
    }
    let shifted = HypergeomParams {
        b: p.b + n as f64,
        c: p.c + n as f64,
        ..*p
    };
    let factor = pochhammer(p.b, n) / pochhammer(p.c, n);
    Ok(echf(&shifted, sc, cfg)?.scaled(factor))
}

fn require_a(p: &HypergeomParams) -> Result<f64> {
    p.a.ok_or_else(|| domain("eghf requires the `a` parameter"))
}

/// F_σ(a, b; c; x) from its integral representation.
pub fn eghf_integral(p: &HypergeomParams, cfg: &QuadratureConfig) -> Result<Evaluation> {
    let a = require_a(p)?;
    p.validate()?;
    if let Some(e) = degenerate_b(p)? {
        return Ok(e);
    }
    let HypergeomParams { b, c, sigma, x, .. } = *p;
    let log_norm = log_beta(b, c - b)?;
    let r = integrate_unit_log(
        |t, tc| log_kernel(b, c - b, sigma, t, tc) - a * (-x * t).ln_1p() - log_norm,
        cfg,
    )?;
    Ok(r.into())
}

/// F_σ(a, b; c; x) from its power series.
pub fn eghf_series(
    p: &HypergeomParams,
    sc: &SeriesControl,
    cfg: &QuadratureConfig,
) -> Result<Evaluation> {
    let a = require_a(p)?;
    p.validate()?;
    if let Some(e) = degenerate_b(p)? {
        return Ok(e);
    }
    let x = p.x;
    sum_series(p, sc, cfg, |n| (a + n as f64) * x / (n as f64 + 1.0))
}

/// F_σ(a, b; c; x) by the route in `params`; requires |x| < 1.
pub fn eghf(p: &HypergeomParams, sc: &SeriesControl, cfg: &QuadratureConfig) -> Result<Evaluation> {
    match p.route {
        Route::Integral => eghf_integral(p, cfg),
        Route::Series => eghf_series(p, sc, cfg),
    }
}

/// The n-th series term of Φ_σ: `B_σ(b+n, c-b)/B(b, c-b) · xⁿ/n!`.
pub fn echf_term(p: &HypergeomParams, n: u32, cfg: &QuadratureConfig) -> Result<Evaluation> {
    p.validate()?;
    let log_norm = log_beta(p.b, p.c - p.b)?;
    let coef = series_coefficient(p.b, p.c, p.sigma, n, log_norm, cfg)?;
    let mut factor = 1.0;
    for k in 0..n {
        factor *= p.x / (k as f64 + 1.0);
    }
    Ok(coef.scaled(factor))
}

/// The n-th series term of F_σ: `B_σ(b+n, c-b)/B(b, c-b) · (a)_n xⁿ/n!`.
pub fn eghf_term(p: &HypergeomParams, n: u32, cfg: &QuadratureConfig) -> Result<Evaluation> {
    let a = require_a(p)?;
    p.validate()?;
    let log_norm = log_beta(p.b, p.c - p.b)?;
    let coef = series_coefficient(p.b, p.c, p.sigma, n, log_norm, cfg)?;
    let mut factor = 1.0;
    for k in 0..n {
        factor *= (a + k as f64) * p.x / (k as f64 + 1.0);
    }
    Ok(coef.scaled(factor))
}
