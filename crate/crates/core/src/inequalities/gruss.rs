use super::{require, Check, CheckConfig, Evaluator, InequalityCheck, Inputs};
use crate::error::Result;
use crate::evaluation::Evaluation;
use crate::quadrature::{integrate_unit, QuadratureConfig};

/// The weighted covariance functional on (0, 1):
///
/// ```text
/// D(f, g; h) = ∫h · ∫hfg - ∫hf · ∫hg
/// ```
///
/// Converged only when all four quadratures converged.
///
/// ```
/// use extbeta::{gruss_functional, QuadratureConfig};
///
/// let d = gruss_functional(|t| t, |t| 1.0 - t, |_| 1.0, &QuadratureConfig::default()).unwrap();
/// assert!((d.value + 1.0 / 12.0).abs() < 1e-12);
/// ```
pub fn gruss_functional<F, G, H>(f: F, g: G, h: H, cfg: &QuadratureConfig) -> Result<Evaluation>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    let i_h = integrate_unit(&h, cfg)?;
    let i_hfg = integrate_unit(|t| h(t) * f(t) * g(t), cfg)?;
    let i_hf = integrate_unit(|t| h(t) * f(t), cfg)?;
    let i_hg = integrate_unit(|t| h(t) * g(t), cfg)?;
    let value = i_h.value * i_hfg.value - i_hf.value * i_hg.value;
    let error_estimate = i_h.error_estimate * i_hfg.value.abs()
        + i_hfg.error_estimate * i_h.value.abs()
        + i_hf.error_estimate * i_hg.value.abs()
        + i_hg.error_estimate * i_hf.value.abs();
    let parts = [i_h, i_hfg, i_hf, i_hg];
    Ok(Evaluation {
        value,
        error_estimate,
        evaluations: parts.iter().map(|r| r.evaluations).sum(),
        converged: parts.iter().all(|r| r.converged),
    })
}

/// Middle and outer inequality of a Grüss chain
/// `|D(f,g)| ≤ √(D(f,f) D(g,g)) ≤ bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrussChain {
    pub middle: InequalityCheck,
    pub outer: InequalityCheck,
}

impl GrussChain {
    pub fn into_checks(self) -> Vec<Check> {
        vec![self.middle.into(), self.outer.into()]
    }
}

/// The Grüss chain for B_σ with h = 1, plus the middle inequality with the
/// second square-root factor taken at (2σ₁, σ₁) instead of (2σ₂, σ₂).
/// That variant is not gated.
#[derive(Debug, Clone, PartialEq)]
pub struct GrussExtBeta {
    pub middle: InequalityCheck,
    pub outer: InequalityCheck,
    pub middle_as_printed: InequalityCheck,
}

impl GrussExtBeta {
    pub fn into_checks(self) -> Vec<Check> {
        vec![
            self.middle.into(),
            self.outer.into(),
            self.middle_as_printed.into(),
        ]
    }
}

/// Square-root product of two variances, clamping round-off below zero.
fn sqrt_product(dff: f64, dgg: f64) -> f64 {
    (dff.max(0.0) * dgg.max(0.0)).sqrt()
}

fn positive(vals: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in vals {
        require(v > 0.0 && v.is_finite(), || {
            format!("{name} must be positive and finite, got {v}")
        })?;
    }
    Ok(())
}

/// f = tˣ(1-t)ˣ e^{-σ₁/(t(1-t))}, g = tʸ(1-t)ʸ e^{-σ₂/(t(1-t))}, h = 1.
pub fn check_gruss_extbeta(
    x: f64,
    y: f64,
    sigma1: f64,
    sigma2: f64,
    cfg: &CheckConfig,
) -> Result<GrussExtBeta> {
    positive(&[("x", x), ("y", y), ("sigma1", sigma1), ("sigma2", sigma2)])?;
    let ev = Evaluator::new(cfg);
    let (x1, y1) = (x + 1.0, y + 1.0);
    let bf = ev.beta(x1, x1, sigma1)?;
    let bg = ev.beta(y1, y1, sigma2)?;
    let dfg = ev.beta(x + y1, x + y1, sigma1 + sigma2)? - bf * bg;
    let dff = ev.beta(2.0 * x + 1.0, 2.0 * x + 1.0, 2.0 * sigma1)? - bf * bf;
    let dgg = ev.beta(2.0 * y + 1.0, 2.0 * y + 1.0, 2.0 * sigma2)? - bg * bg;
    let bg_alt = ev.beta(y1, y1, sigma1)?;
    let dgg_alt = ev.beta(2.0 * y + 1.0, 2.0 * y + 1.0, 2.0 * sigma1)? - bg_alt * bg_alt;

    let mid = sqrt_product(dff, dgg);
    let bound = (-4.0 * (sigma1 + sigma2)).exp() / 4f64.powf(x + y + 1.0);
    let inputs = Inputs::new(&[("x", x), ("y", y), ("sigma1", sigma1), ("sigma2", sigma2)]);
    Ok(GrussExtBeta {
        middle: ev.inequality("gruss-extbeta-middle", inputs.clone(), dfg.abs(), mid),
        outer: ev.inequality("gruss-extbeta-outer", inputs.clone(), mid, bound),
        middle_as_printed: ev
            .inequality(
                "gruss-extbeta-middle-as-printed",
                inputs,
                dfg.abs(),
                sqrt_product(dff, dgg_alt),
            )
            .informational(),
    })
}

/// f = tˣ, g = (1-t)ʸ, h = t^{x₁-1}(1-t)^{y₁-1} e^{-σ/(t(1-t))}; outer bound
/// B_σ(x₁, y₁)²/4.
pub fn check_gruss_shift(
    x: f64,
    y: f64,
    x1: f64,
    y1: f64,
    sigma: f64,
    cfg: &CheckConfig,
) -> Result<GrussChain> {
    require(x >= 0.0 && y >= 0.0, || {
        format!("x and y must be >= 0, got ({x}, {y})")
    })?;
    positive(&[("x1", x1), ("y1", y1)])?;
    let ev = Evaluator::new(cfg);
    let b0 = ev.beta(x1, y1, sigma)?;
    let bf = ev.beta(x + x1, y1, sigma)?;
    let bg = ev.beta(x1, y + y1, sigma)?;
    let dfg = b0 * ev.beta(x + x1, y + y1, sigma)? - bf * bg;
    let dff = b0 * ev.beta(2.0 * x + x1, y1, sigma)? - bf * bf;
    let dgg = b0 * ev.beta(x1, 2.0 * y + y1, sigma)? - bg * bg;
    let mid = sqrt_product(dff, dgg);
    let inputs = Inputs::new(&[("x", x), ("y", y), ("x1", x1), ("y1", y1), ("sigma", sigma)]);
    Ok(GrussChain {
        middle: ev.inequality("gruss-shift-middle", inputs.clone(), dfg.abs(), mid),
        outer: ev.inequality("gruss-shift-outer", inputs, mid, 0.25 * b0 * b0),
    })
}

/// Parameters of the power-weight Grüss chain: f = t^m(1-t)^n, g = t^p(1-t)^q,
/// h = t^{α-1}(1-t)^{β-1} e^{-σ/(t(1-t))}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrussPowerParams {
    pub alpha: f64,
    pub beta: f64,
    pub m: f64,
    pub n: f64,
    pub p: f64,
    pub q: f64,
    pub sigma: f64,
}

/// sup of t^m (1-t)^n on [0, 1].
fn power_peak(m: f64, n: f64) -> f64 {
    (m * m.ln() + n * n.ln() - (m + n) * (m + n).ln()).exp()
}

pub fn check_gruss_power(pp: &GrussPowerParams, cfg: &CheckConfig) -> Result<GrussChain> {
    let GrussPowerParams {
        alpha,
        beta,
        m,
        n,
        p,
        q,
        sigma,
    } = *pp;
    positive(&[
        ("alpha", alpha),
        ("beta", beta),
        ("m", m),
        ("n", n),
        ("p", p),
        ("q", q),
    ])?;
    let ev = Evaluator::new(cfg);
    let b0 = ev.beta(alpha, beta, sigma)?;
    let bf = ev.beta(alpha + m, beta + n, sigma)?;
    let bg = ev.beta(alpha + p, beta + q, sigma)?;
    let dfg = b0 * ev.beta(alpha + m + p, beta + n + q, sigma)? - bf * bg;
    let dff = b0 * ev.beta(alpha + 2.0 * m, beta + 2.0 * n, sigma)? - bf * bf;
    let dgg = b0 * ev.beta(alpha + 2.0 * p, beta + 2.0 * q, sigma)? - bg * bg;
    let mid = sqrt_product(dff, dgg);
    let bound = 0.25 * b0 * b0 * power_peak(m, n) * power_peak(p, q);
    let inputs = Inputs::new(&[
        ("alpha", alpha),
        ("beta", beta),
        ("m", m),
        ("n", n),
        ("p", p),
        ("q", q),
        ("sigma", sigma),
    ]);
    Ok(GrussChain {
        middle: ev.inequality("gruss-power-middle", inputs.clone(), dfg.abs(), mid),
        outer: ev.inequality("gruss-power-outer", inputs, mid, bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_kernel::classical_beta;
    use proptest::prelude::*;

    fn qcfg() -> QuadratureConfig {
        QuadratureConfig::relative(1e-12)
    }

    #[test]
    fn functional_elementary_cases() {
        let d = gruss_functional(|t| t, |t| 1.0 - t, |_| 1.0, &qcfg()).unwrap();
        assert!((d.value + 1.0 / 12.0).abs() < 1e-12);
        assert!(d.converged);
        let c = gruss_functional(|t| t * t, |_| 3.0, |t| t.sqrt(), &qcfg()).unwrap();
        assert!(c.value.abs() < 1e-14);
        let v = gruss_functional(|t| t, |t| t, |_| 1.0, &qcfg()).unwrap();
        assert!((v.value - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn extbeta_outer_bound_formula() {
        let g = check_gruss_extbeta(1.0, 1.0, 0.5, 0.5, &CheckConfig::default()).unwrap();
        assert!((g.outer.rhs - (-4.0f64).exp() / 64.0).abs() < 1e-18);
        assert!(g.middle.satisfied() && g.outer.satisfied());
        // σ₁ = σ₂ makes both middle-term readings coincide.
        assert_eq!(g.middle.rhs, g.middle_as_printed.rhs);
        assert!(!g.middle_as_printed.gated);
    }

    #[test]
    fn extbeta_mixed_instance() {
        let g = check_gruss_extbeta(0.5, 1.5, 0.3, 0.9, &CheckConfig::default()).unwrap();
        assert!(g.middle.satisfied() && g.outer.satisfied(), "{g:?}");
    }

    #[test]
    fn shift_cases() {
        let cfg = CheckConfig::default();
        let z = check_gruss_shift(0.0, 1.3, 2.0, 1.5, 0.6, &cfg).unwrap();
        assert!(z.middle.lhs.abs() < 1e-15);
        let c = check_gruss_shift(1.0, 1.0, 1.0, 1.0, 0.0, &cfg).unwrap();
        // B(1,1)B(2,2) - B(2,1)B(1,2) = 1/6 - 1/4.
        assert!((c.middle.lhs - 1.0 / 12.0).abs() < 1e-14);
        // D(f,f) = B(1,1)B(3,1) - B(2,1)² = 1/12.
        assert!((c.middle.rhs - 1.0 / 12.0).abs() < 1e-14);
        assert!((c.outer.rhs - 0.25).abs() < 1e-15);
        let q = check_gruss_shift(0.7, 1.3, 2.0, 1.5, 0.6, &cfg).unwrap();
        assert!(q.middle.satisfied() && q.outer.satisfied());
    }

    #[test]
    fn power_cases() {
        assert!((power_peak(1.0, 1.0) - 0.25).abs() < 1e-16);
        let cfg = CheckConfig::default();
        let unit = GrussPowerParams {
            alpha: 1.0,
            beta: 1.0,
            m: 1.0,
            n: 1.0,
            p: 1.0,
            q: 1.0,
            sigma: 0.0,
        };
        let c = check_gruss_power(&unit, &cfg).unwrap();
        let b = |x, y| classical_beta(x, y).unwrap();
        let dfg = b(1.0, 1.0) * b(3.0, 3.0) - b(2.0, 2.0) * b(2.0, 2.0);
        assert!((c.middle.lhs - dfg.abs()).abs() < 1e-15);
        assert!((c.outer.rhs - 1.0 / 64.0).abs() < 1e-16);
        let pp = GrussPowerParams {
            alpha: 1.5,
            beta: 2.0,
            m: 1.0,
            n: 2.0,
            p: 0.5,
            q: 1.5,
            sigma: 0.4,
        };
        let r = check_gruss_power(&pp, &cfg).unwrap();
        assert!(r.middle.satisfied() && r.outer.satisfied());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cauchy_schwarz(
            cf in prop::collection::vec(-2.0f64..2.0, 4),
            cg in prop::collection::vec(-2.0f64..2.0, 4),
            x in 0.5f64..4.0,
            y in 0.5f64..4.0,
            s in 0.05f64..3.0,
        ) {
            let poly = |c: &[f64], t: f64| c.iter().rev().fold(0.0, |acc, &a| acc * t + a);
            let h = |t: f64| {
                let tc = 1.0 - t;
                t.powf(x - 1.0) * tc.powf(y - 1.0) * (-s / (t * tc)).exp()
            };
            let q = qcfg();
            let dfg = gruss_functional(|t| poly(&cf, t), |t| poly(&cg, t), h, &q).unwrap();
            let dff = gruss_functional(|t| poly(&cf, t), |t| poly(&cf, t), h, &q).unwrap();
            let dgg = gruss_functional(|t| poly(&cg, t), |t| poly(&cg, t), h, &q).unwrap();
            prop_assert!(dff.value >= -1e-15 && dgg.value >= -1e-15);
            let bound = sqrt_product(dff.value, dgg.value);
            prop_assert!(dfg.value.abs() <= bound + 1e-12 * bound.max(1e-300) + 1e-16);
        }
    }
}
