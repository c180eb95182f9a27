//! Double-exponential (tanh-sinh) quadrature on the open unit interval.
//!
//! The substitution `t = (1 + tanh(π/2 · sinh s)) / 2` maps the real line onto
//! (0, 1) and makes the transformed integrand decay doubly exponentially in
//! `s`. The trapezoidal rule in `s` then converges very fast, both for
//! integrands with algebraic endpoint singularities (`t^{x-1}`, `x < 1`) and
//! for integrands that vanish to all orders at the endpoints
//! (`exp(-σ / (t(1-t)))`).
//!
//! Each refinement level halves the step and only evaluates the new odd
//! nodes. Convergence is declared when two successive levels agree within
//! `max(abs_tol, rel_tol·|value|)`; the error estimate is that difference.
//!
//! Abscissae are produced together with their complements `1 - t`, both
//! computed without cancellation, so integrands can evaluate `ln(1 - t)`
//! accurately near `t = 1`. Nodes within 1e-300 of either endpoint are never
//! generated.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Smallest distance from an endpoint at which a node is kept.
const ENDPOINT_CUTOFF: f64 = 1e-300;
/// Largest double below 1; plain `f(t)` integrands are never handed 1.0.
const ONE_BELOW: f64 = 1.0 - f64::EPSILON / 2.0;
/// Below this a log-integrand contributes exactly zero.
const LOG_UNDERFLOW: f64 = -745.0;
/// Levels at which convergence may first be declared. Coarser levels can
/// agree by accident when a narrow peak falls between nodes.
const MIN_CONVERGED_LEVEL: u32 = 4;
const CACHED_LEVELS: usize = 20;

/// Tolerances and budgets for [`integrate_unit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Refinement depth: the finest step is `2^-max_levels`.
    pub max_levels: u32,
    pub max_evaluations: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_levels: 10,
            max_evaluations: 50_000,
        }
    }
}

impl QuadratureConfig {
    /// A config that converges on relative agreement alone.
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol,
            max_levels: 12,
            max_evaluations: 200_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_levels < 1 {
            return Err(Error::InvalidConfig("max_levels must be at least 1".into()));
        }
        if self.max_levels as usize >= CACHED_LEVELS {
            return Err(Error::InvalidConfig(format!(
                "max_levels must be below {CACHED_LEVELS}"
            )));
        }
        if self.max_evaluations < 1 {
            return Err(Error::InvalidConfig(
                "max_evaluations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Value of a definite integral over (0, 1).
///
/// When `converged` is false the value is the best estimate reached and must
/// not be relied upon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    t: f64,
    tc: f64,
    weight: f64,
}

impl Node {
    fn at(s: f64) -> Option<Node> {
        // t_small = 1 / (1 + e^{2u}) without cancellation; u = π/2 sinh|s|.
        let u = 0.5 * PI * s.abs().sinh();
        let e = (-2.0 * u).exp();
        let small = e / (1.0 + e);
        let large = 1.0 / (1.0 + e);
        if small < ENDPOINT_CUTOFF {
            return None;
        }
        let weight = PI * s.cosh() * small * large;
        let (t, tc) = if s < 0.0 {
            (small, large)
        } else {
            (large, small)
        };
        Some(Node { t, tc, weight })
    }
}

/// Nodes first introduced at `level`: all integers for level 0, odd
/// multiples of `2^-level` afterwards.
fn level_nodes(level: u32) -> &'static [Node] {
    static LEVELS: [OnceLock<Vec<Node>>; CACHED_LEVELS] =
        [const { OnceLock::new() }; CACHED_LEVELS];
    LEVELS[level as usize].get_or_init(|| {
        let h = (-(level as f64)).exp2();
        let stride = if level == 0 { 1_u64 } else { 2 };
        let mut nodes = Vec::new();
        if level == 0 {
            nodes.extend(Node::at(0.0));
        }
        let mut j = 1_u64;
        loop {
            let s = j as f64 * h;
            match Node::at(s) {
                Some(pos) => {
                    nodes.push(pos);
                    nodes.extend(Node::at(-s));
                }
                None => break,
            }
            j += stride;
        }
        nodes
    })
}

fn check_finite(v: f64, t: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidIntegrand { t })
    }
}

fn run<G>(cfg: &QuadratureConfig, mut contribution: G) -> Result<QuadratureResult>
where
    G: FnMut(&Node) -> Result<f64>,
{
    cfg.validate()?;
    let mut raw = 0.0;
    let mut evaluations = 0;
    let mut previous: Option<f64> = None;
    let mut best = QuadratureResult {
        value: 0.0,
        error_estimate: f64::INFINITY,
        evaluations: 0,
        converged: false,
    };

    for level in 0..=cfg.max_levels {
        let nodes = level_nodes(level);
        if evaluations + nodes.len() > cfg.max_evaluations {
            break;
        }
        let mut sum = 0.0;
        for node in nodes {
            sum += node.weight * contribution(node)?;
        }
        evaluations += nodes.len();
        raw += sum;
        let value = raw * (-(level as f64)).exp2();

        let error_estimate = previous.map_or(f64::INFINITY, |p| (value - p).abs());
        best = QuadratureResult {
            value,
            error_estimate,
            evaluations,
            converged: false,
        };
        if level >= MIN_CONVERGED_LEVEL
            && error_estimate <= cfg.abs_tol.max(cfg.rel_tol * value.abs())
        {
            best.converged = true;
            return Ok(best);
        }
        previous = Some(value);
    }
    Ok(best)
}

/// Integrates `f` over (0, 1).
///
/// `f` may have integrable algebraic singularities at either endpoint; it is
/// never evaluated at exactly 0 or 1. Abscissae closer to 1 than half an ulp
/// are rounded down, so singularities at t = 1 are better served by
/// [`integrate_unit_split`]. A NaN or infinite value at any node is
/// reported as [`Error::InvalidIntegrand`].
///
/// ```
/// use extbeta::{integrate_unit, QuadratureConfig};
///
/// let r = integrate_unit(|t| t.powf(-0.5), &QuadratureConfig::default()).unwrap();
/// assert!(r.converged);
/// assert!((r.value - 2.0).abs() < 1e-12);
/// ```
pub fn integrate_unit<F>(f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    run(cfg, |n| {
        let t = n.t.min(ONE_BELOW);
        check_finite(f(t), t)
    })
}

/// Like [`integrate_unit`], but `f` receives `(t, 1 - t)` with the complement
/// computed to full relative precision.
pub fn integrate_unit_split<F>(f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> f64,
{
    run(cfg, |n| check_finite(f(n.t, n.tc), n.t))
}

/// Integrates a positive integrand given by its logarithm `log_f(t, 1 - t)`.
///
/// The logarithm is exponentiated once per node; values below -745 contribute
/// exactly zero and `-∞` is accepted as zero.
pub fn integrate_unit_log<F>(log_f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> f64,
{
    run(cfg, |n| {
        let l = log_f(n.t, n.tc);
        if l.is_nan() || l == f64::INFINITY {
            return Err(Error::InvalidIntegrand { t: n.t });
        }
        if l < LOG_UNDERFLOW {
            Ok(0.0)
        } else {
            check_finite(l.exp(), n.t)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = f(a) + f(b);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + i as f64 * h);
        }
        acc * h / 3.0
    }

    fn bump(t: f64) -> f64 {
        (-1.0 / (t * (1.0 - t))).exp()
    }

    #[test]
    fn constant_is_exact() {
        let r = integrate_unit(|_| 1.0, &QuadratureConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() <= 1e-14);
        assert!(r.error_estimate <= 1e-14);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        let r = integrate_unit(|t| 1.0 / t.sqrt(), &QuadratureConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 2e-12, "{r:?}");
    }

    #[test]
    fn singularity_at_right_endpoint_uses_complement() {
        let r = integrate_unit_split(|_, tc| tc.powf(-0.9), &QuadratureConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value - 10.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn essential_decay_matches_simpson() {
        let oracle = simpson(bump, 1e-6, 1.0 - 1e-6, 1_000_000);
        let r = integrate_unit(bump, &QuadratureConfig::default()).unwrap();
        assert!(r.converged);
        assert!(
            ((r.value - oracle) / oracle).abs() < 1e-10,
            "{} vs {oracle}",
            r.value
        );
    }

    #[test]
    fn refinement_never_increases_discrepancy() {
        let oracle = simpson(bump, 1e-6, 1.0 - 1e-6, 1_000_000);
        let mut last = f64::INFINITY;
        for levels in 1..=10 {
            let cfg = QuadratureConfig {
                max_levels: levels,
                abs_tol: f64::MIN_POSITIVE,
                rel_tol: 1e-300,
                ..Default::default()
            };
            let r = integrate_unit(bump, &cfg).unwrap();
            let err = (r.value - oracle).abs();
            // The Simpson sum itself is only good to ~1e-12 relative.
            assert!(
                err <= last.max(1e-12 * oracle),
                "level {levels}: {err} > {last}"
            );
            last = err;
        }
    }

    #[test]
    fn never_touches_endpoints() {
        let r = integrate_unit(
            |t| {
                assert!(t > 0.0 && t < 1.0);
                1.0
            },
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!(r.converged);
        let r = integrate_unit_split(
            |t, tc| {
                assert!(t >= ENDPOINT_CUTOFF && tc >= ENDPOINT_CUTOFF);
                assert!((t + tc - 1.0).abs() <= f64::EPSILON);
                1.0
            },
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert!(r.converged);
    }

    #[test]
    fn nan_integrand_is_an_error() {
        let err = integrate_unit(
            |t| if t > 0.3 { f64::NAN } else { 1.0 },
            &QuadratureConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidIntegrand { .. }));
    }

    #[test]
    fn log_underflow_is_zero() {
        let r = integrate_unit_log(|_, _| -800.0, &QuadratureConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let cfg = QuadratureConfig {
            max_evaluations: 40,
            ..Default::default()
        };
        let r = integrate_unit(|t| t.sin(), &cfg).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = QuadratureConfig {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(matches!(
            integrate_unit(|_| 1.0, &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn deterministic() {
        let cfg = QuadratureConfig::default();
        let a = integrate_unit(bump, &cfg).unwrap();
        let b = integrate_unit(bump, &cfg).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
