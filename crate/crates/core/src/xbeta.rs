//! The extended beta function
//!
//! ```text
//! B_σ(x, y) = ∫₀¹ t^{x-1} (1-t)^{y-1} exp(-σ / (t(1-t))) dt
//! ```
//!
//! For σ = 0 this is the classical beta function and requires x, y > 0. For
//! σ > 0 the exponential factor kills every algebraic endpoint growth, so x
//! and y may be any reals.
//!
//! The σ-derivatives follow from differentiating under the integral:
//! `∂ⁿ/∂σⁿ B_σ(x, y) = (-1)ⁿ B_σ(x-n, y-n)`.

use crate::error::{domain, Result};
use crate::evaluation::Evaluation;
use crate::quadrature::{integrate_unit_log, QuadratureConfig};

/// A point (x, y, σ) at which B_σ is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtBetaPoint {
    pub x: f64,
    pub y: f64,
    pub sigma: f64,
}

impl ExtBetaPoint {
    pub fn new(x: f64, y: f64, sigma: f64) -> Result<Self> {
        let p = Self { x, y, sigma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { x, y, sigma } = *self;
        if !x.is_finite() || !y.is_finite() {
            return Err(domain(format!("x and y must be finite, got ({x}, {y})")));
        }
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(domain(format!(
                "sigma must be finite and >= 0, got {sigma}"
            )));
        }
        if sigma == 0.0 && !(x > 0.0 && y > 0.0) {
            return Err(domain(format!(
                "sigma = 0 requires x, y > 0, got ({x}, {y})"
            )));
        }
        Ok(())
    }
}

/// ln of the integrand t^{x-1}(1-t)^{y-1} exp(-σ/(t(1-t))).
#[inline]
pub(crate) fn log_kernel(x: f64, y: f64, sigma: f64, t: f64, tc: f64) -> f64 {
    let mut l = 0.0;
    if x != 1.0 {
        l += (x - 1.0) * t.ln();
    }
    if y != 1.0 {
        l += (y - 1.0) * tc.ln();
    }
    if sigma != 0.0 {
        l -= sigma / (t * tc);
    }
    l
}

/// B_σ(x, y) by double-exponential quadrature of the integral definition.
///
/// ```
/// use extbeta::{ext_beta, ExtBetaPoint, QuadratureConfig};
///
/// let p = ExtBetaPoint::new(2.0, 3.0, 0.0).unwrap();
/// let b = ext_beta(&p, &QuadratureConfig::default()).unwrap();
/// assert!((b.value - 1.0 / 12.0).abs() < 1e-14);
/// ```
pub fn ext_beta(p: &ExtBetaPoint, cfg: &QuadratureConfig) -> Result<Evaluation> {
    p.validate()?;
    let ExtBetaPoint { x, y, sigma } = *p;
    let r = integrate_unit_log(|t, tc| log_kernel(x, y, sigma, t, tc), cfg)?;
    Ok(r.into())
}

/// ∂ⁿ/∂σⁿ B_σ(x, y), evaluated as (-1)ⁿ B_σ(x-n, y-n).
///
/// For n ≥ 1 this needs σ > 0 so that the shifted arguments stay admissible.
pub fn ext_beta_sigma_derivative(
    p: &ExtBetaPoint,
    n: u32,
    cfg: &QuadratureConfig,
) -> Result<Evaluation> {
    p.validate()?;
    if n == 0 {
        return ext_beta(p, cfg);
    }
    if p.sigma == 0.0 {
        return Err(domain("sigma derivatives of order >= 1 require sigma > 0"));
    }
    let shifted = ExtBetaPoint {
        x: p.x - n as f64,
        y: p.y - n as f64,
        sigma: p.sigma,
    };
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(ext_beta(&shifted, cfg)?.scaled(sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_kernel::classical_beta;
    use proptest::prelude::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn b(x: f64, y: f64, sigma: f64) -> f64 {
        let r = ext_beta(&ExtBetaPoint::new(x, y, sigma).unwrap(), &cfg()).unwrap();
        assert!(r.converged, "({x}, {y}, {sigma}) did not converge: {r:?}");
        r.value
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reduces_to_classical_beta() {
        assert!(rel(b(2.0, 3.0, 0.0), 1.0 / 12.0) < 1e-12);
        let grid = [0.5, 1.0, 2.0, 5.5, 10.0];
        for &x in &grid {
            for &y in &grid {
                let c = classical_beta(x, y).unwrap();
                assert!(rel(b(x, y, 0.0), c) < 1e-12, "({x}, {y})");
            }
        }
    }

    #[test]
    fn symmetric_example() {
        assert!(rel(b(1.7, 2.4, 0.9), b(2.4, 1.7, 0.9)) < 1e-13);
    }

    #[test]
    fn domain_errors() {
        assert!(ExtBetaPoint::new(-1.0, 2.0, 0.0).is_err());
        assert!(ExtBetaPoint::new(1.0, 2.0, -0.1).is_err());
        assert!(ExtBetaPoint::new(-3.0, -2.0, 0.5).is_ok());
        let p = ExtBetaPoint::new(2.0, 2.0, 0.0).unwrap();
        assert!(ext_beta_sigma_derivative(&p, 1, &cfg()).is_err());
    }

    #[test]
    fn derivative_identity_at_n_one() {
        let p = ExtBetaPoint::new(2.0, 2.0, 1.0).unwrap();
        let d = ext_beta_sigma_derivative(&p, 1, &cfg()).unwrap();
        assert_eq!(d.value, -b(1.0, 1.0, 1.0));
        assert_eq!(
            ext_beta_sigma_derivative(&p, 0, &cfg()).unwrap(),
            ext_beta(&p, &cfg()).unwrap()
        );
    }

    #[test]
    fn derivative_matches_central_difference() {
        let (x, y, s, h) = (3.0, 3.0, 0.5, 1e-4);
        let fd = (b(x, y, s + h) - b(x, y, s - h)) / (2.0 * h);
        let p = ExtBetaPoint::new(x, y, s).unwrap();
        let d = ext_beta_sigma_derivative(&p, 1, &cfg()).unwrap().value;
        assert!(rel(d, fd) < 1e-5, "{d} vs {fd}");
    }

    #[test]
    fn negative_arguments_converge() {
        for &(x, y) in &[(-5.0, 2.0), (-2.5, -3.0), (0.5, -5.0)] {
            let v = b(x, y, 1.0);
            assert!(v > 0.0 && v.is_finite());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn symmetry(x in 0.1f64..10.0, y in 0.1f64..10.0, s in 0.0f64..5.0) {
            prop_assert!(rel(b(x, y, s), b(y, x, s)) < 1e-13);
        }

        #[test]
        fn decreasing_in_sigma(x in 0.1f64..10.0, y in 0.1f64..10.0, s1 in 0.0f64..5.0, gap in 0.01f64..5.0) {
            prop_assert!(b(x, y, s1 + gap) < b(x, y, s1));
        }
    }
}
