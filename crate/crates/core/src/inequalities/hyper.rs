use super::{
    require, require_grid, Check, CheckConfig, Direction, Evaluator, InequalityCheck, Inputs,
    MonotonicityCheck,
};
use crate::error::Result;
use crate::gamma_kernel::{coeff_f_delta, log_beta};

fn require_alpha(alpha: f64) -> Result<()> {
    require((0.0..=1.0).contains(&alpha), || {
        format!("alpha must lie in [0, 1], got {alpha}")
    })
}

fn require_ordered(b: f64, c: f64, d: f64) -> Result<()> {
    require(b >= 0.0, || format!("b must be >= 0, got {b}"))?;
    require(c >= d && d > b, || {
        format!("need c >= d > b, got b={b}, c={c}, d={d}")
    })
}

/// `x ↦ Φ_σ(b; c; x) / Φ_σ(b; d; x)` is increasing for c ≥ d, on `x_grid`.
pub fn check_echf_ratio_increasing(
    b: f64,
    c: f64,
    d: f64,
    sigma: f64,
    x_grid: &[f64],
    cfg: &CheckConfig,
) -> Result<MonotonicityCheck> {
    require_ordered(b, c, d)?;
    require_grid(x_grid, "x grid")?;
    require(x_grid[0] > 0.0, || "x grid must be positive".into())?;
    let ev = Evaluator::new(cfg);
    let values = x_grid
        .iter()
        .map(|&x| Ok(ev.echf(b, c, sigma, x)? / ev.echf(b, d, sigma, x)?))
        .collect::<Result<Vec<_>>>()?;
    let inputs = Inputs::new(&[("b", b), ("c", c), ("d", d), ("sigma", sigma)]);
    Ok(ev.monotonicity("echf-ratio", inputs, x_grid, values, Direction::Increasing))
}

/// `c Φ_σ(b;c;x) Φ_σ(b+1;d+1;x) ≤ d Φ_σ(b+1;c+1;x) Φ_σ(b;d;x)` for c ≥ d.
pub fn check_echf_product(
    b: f64,
    c: f64,
    d: f64,
    sigma: f64,
    x: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_ordered(b, c, d)?;
    let ev = Evaluator::new(cfg);
    let lhs = c * ev.echf(b, c, sigma, x)? * ev.echf(b + 1.0, d + 1.0, sigma, x)?;
    let rhs = d * ev.echf(b + 1.0, c + 1.0, sigma, x)? * ev.echf(b, d, sigma, x)?;
    let inputs = Inputs::new(&[("b", b), ("c", c), ("d", d), ("sigma", sigma), ("x", x)]);
    Ok(ev.inequality("echf-product", inputs, lhs, rhs))
}

/// Log-convexity in x on the whole real line; negative arguments go through
/// Kummer reflection.
pub fn check_echf_logconvex_x(
    b: f64,
    c: f64,
    sigma: f64,
    x: f64,
    y: f64,
    alpha: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_alpha(alpha)?;
    let ev = Evaluator::new(cfg);
    let lhs = ev.echf(b, c, sigma, alpha * x + (1.0 - alpha) * y)?;
    let rhs = ev.echf(b, c, sigma, x)?.powf(alpha) * ev.echf(b, c, sigma, y)?.powf(1.0 - alpha);
    let inputs = Inputs::new(&[
        ("b", b),
        ("c", c),
        ("sigma", sigma),
        ("x", x),
        ("y", y),
        ("alpha", alpha),
    ]);
    Ok(ev.inequality("echf-logconvex-x", inputs, lhs, rhs))
}

/// Log-convexity in σ at fixed x.
pub fn check_echf_logconvex_sigma(
    b: f64,
    c: f64,
    x: f64,
    sigma1: f64,
    sigma2: f64,
    alpha: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_alpha(alpha)?;
    require(sigma1 > 0.0 && sigma2 > 0.0, || {
        format!("sigma1 and sigma2 must be positive, got ({sigma1}, {sigma2})")
    })?;
    let ev = Evaluator::new(cfg);
    let lhs = ev.echf(b, c, alpha * sigma1 + (1.0 - alpha) * sigma2, x)?;
    let rhs = ev.echf(b, c, sigma1, x)?.powf(alpha) * ev.echf(b, c, sigma2, x)?.powf(1.0 - alpha);
    let inputs = Inputs::new(&[
        ("b", b),
        ("c", c),
        ("x", x),
        ("sigma1", sigma1),
        ("sigma2", sigma2),
        ("alpha", alpha),
    ]);
    Ok(ev.inequality("echf-logconvex-sigma", inputs, lhs, rhs))
}

/// The normalized b-shift ratio under both normalizations.
#[derive(Debug, Clone, PartialEq)]
pub struct BRatioChecks {
    /// Normalizers B(b, c-b) and B(b+δ, c-b-δ), matching the integral weight.
    pub weighted: MonotonicityCheck,
    /// Normalizers B(b, c) and B(b+δ, c).
    pub display: MonotonicityCheck,
}

impl BRatioChecks {
    pub fn into_checks(self) -> Vec<Check> {
        vec![self.weighted.into(), self.display.into()]
    }
}

/// `b ↦ B(b, ·) Φ_σ(b+δ; c; x) / (B(b+δ, ·) Φ_σ(b; c; x))` is decreasing.
pub fn check_echf_b_ratio_decreasing(
    c: f64,
    x: f64,
    sigma: f64,
    delta: f64,
    b_grid: &[f64],
    cfg: &CheckConfig,
) -> Result<BRatioChecks> {
    require(delta > 0.0, || {
        format!("delta must be positive, got {delta}")
    })?;
    require_grid(b_grid, "b grid")?;
    require(b_grid[0] > 0.0, || "b grid must be positive".into())?;
    let b_max = b_grid[b_grid.len() - 1];
    require(b_max + delta < c, || {
        format!("need b + delta < c on the whole grid, got max b={b_max}, delta={delta}, c={c}")
    })?;
    let ev = Evaluator::new(cfg);
    let mut weighted = Vec::with_capacity(b_grid.len());
    let mut display = Vec::with_capacity(b_grid.len());
    for &b in b_grid {
        let phi = ev.echf(b + delta, c, sigma, x)? / ev.echf(b, c, sigma, x)?;
        let lw = log_beta(b, c - b)? - log_beta(b + delta, c - b - delta)?;
        let ld = log_beta(b, c)? - log_beta(b + delta, c)?;
        weighted.push(lw.exp() * phi);
        display.push(ld.exp() * phi);
    }
    let inputs = Inputs::new(&[("c", c), ("x", x), ("sigma", sigma), ("delta", delta)]);
    Ok(BRatioChecks {
        weighted: ev.monotonicity(
            "echf-b-ratio",
            inputs.clone(),
            b_grid,
            weighted,
            Direction::Decreasing,
        ),
        display: ev.monotonicity(
            "echf-b-ratio-display",
            inputs,
            b_grid,
            display,
            Direction::Decreasing,
        ),
    })
}

/// Reverse Turán in b:
/// `f(δ) Φ_σ(b+2δ; c; x) Φ_σ(b; c; x) ≤ Φ_σ(b+δ; c; x)²` with
/// `f(δ) = B(b+δ, c)² / (B(b+2δ, c) B(b, c))`.
pub fn check_echf_reverse_turan(
    b: f64,
    c: f64,
    x: f64,
    sigma: f64,
    delta: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require(b > 0.0 && delta >= 0.0, || {
        format!("need b > 0 and delta >= 0, got b={b}, delta={delta}")
    })?;
    require(c > b + 2.0 * delta, || {
        format!("need c > b + 2 delta, got b={b}, c={c}, delta={delta}")
    })?;
    let ev = Evaluator::new(cfg);
    let f = coeff_f_delta(b, c, delta)?;
    let lhs = f * ev.echf(b + 2.0 * delta, c, sigma, x)? * ev.echf(b, c, sigma, x)?;
    let mid = ev.echf(b + delta, c, sigma, x)?;
    let inputs = Inputs::new(&[
        ("b", b),
        ("c", c),
        ("x", x),
        ("sigma", sigma),
        ("delta", delta),
    ]);
    Ok(ev.inequality("echf-reverse-turan", inputs, lhs, mid * mid))
}

fn require_unit_x(x: f64) -> Result<()> {
    require(x > 0.0 && x < 1.0, || {
        format!("x must lie in (0, 1), got {x}")
    })
}

/// `x ↦ F_σ(a, b; c; x) / F_σ(a, b; d; x)` is increasing on (0, 1) for c ≥ d.
pub fn check_eghf_ratio_increasing(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    sigma: f64,
    x_grid: &[f64],
    cfg: &CheckConfig,
) -> Result<MonotonicityCheck> {
    require_ordered(b, c, d)?;
    require_grid(x_grid, "x grid")?;
    require_unit_x(x_grid[0])?;
    require_unit_x(x_grid[x_grid.len() - 1])?;
    let ev = Evaluator::new(cfg);
    let values = x_grid
        .iter()
        .map(|&x| Ok(ev.eghf(a, b, c, sigma, x)? / ev.eghf(a, b, d, sigma, x)?))
        .collect::<Result<Vec<_>>>()?;
    let inputs = Inputs::new(&[("a", a), ("b", b), ("c", c), ("d", d), ("sigma", sigma)]);
    Ok(ev.monotonicity("eghf-ratio", inputs, x_grid, values, Direction::Increasing))
}

/// `c F_σ(a+1,b+1;d+1;x) F_σ(a,b;c;x) ≤ d F_σ(a+1,b+1;c+1;x) F_σ(a,b;d;x)`.
pub fn check_eghf_product(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    sigma: f64,
    x: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_ordered(b, c, d)?;
    require_unit_x(x)?;
    let ev = Evaluator::new(cfg);
    let lhs = c * ev.eghf(a + 1.0, b + 1.0, d + 1.0, sigma, x)? * ev.eghf(a, b, c, sigma, x)?;
    let rhs = d * ev.eghf(a + 1.0, b + 1.0, c + 1.0, sigma, x)? * ev.eghf(a, b, d, sigma, x)?;
    let inputs = Inputs::new(&[
        ("a", a),
        ("b", b),
        ("c", c),
        ("d", d),
        ("sigma", sigma),
        ("x", x),
    ]);
    Ok(ev.inequality("eghf-product", inputs, lhs, rhs))
}

/// Log-convexity of F_σ in σ.
#[allow(clippy::too_many_arguments)]
pub fn check_eghf_logconvex_sigma(
    a: f64,
    b: f64,
    c: f64,
    x: f64,
    sigma1: f64,
    sigma2: f64,
    alpha: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_alpha(alpha)?;
    require(sigma1 > 0.0 && sigma2 > 0.0, || {
        format!("sigma1 and sigma2 must be positive, got ({sigma1}, {sigma2})")
    })?;
    let ev = Evaluator::new(cfg);
    let lhs = ev.eghf(a, b, c, alpha * sigma1 + (1.0 - alpha) * sigma2, x)?;
    let rhs =
        ev.eghf(a, b, c, sigma1, x)?.powf(alpha) * ev.eghf(a, b, c, sigma2, x)?.powf(1.0 - alpha);
    let inputs = Inputs::new(&[
        ("a", a),
        ("b", b),
        ("c", c),
        ("x", x),
        ("sigma1", sigma1),
        ("sigma2", sigma2),
        ("alpha", alpha),
    ]);
    Ok(ev.inequality("eghf-logconvex-sigma", inputs, lhs, rhs))
}

/// Log-convexity of F_σ in a on an equally spaced `a_grid`: every interior
/// point must satisfy `F(aᵢ)² ≤ F(aᵢ₋₁) F(aᵢ₊₁)`. Reports the worst triple.
pub fn check_eghf_logconvex_a(
    b: f64,
    c: f64,
    sigma: f64,
    x: f64,
    a_grid: &[f64],
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_grid(a_grid, "a grid")?;
    require(a_grid.len() >= 3, || {
        "a grid needs at least 3 points".into()
    })?;
    require(a_grid[0] >= 0.0, || "a grid must be non-negative".into())?;
    let h = a_grid[1] - a_grid[0];
    require(
        a_grid
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h),
        || "a grid must be equally spaced".into(),
    )?;
    require_unit_x(x)?;
    let ev = Evaluator::new(cfg);
    let values = a_grid
        .iter()
        .map(|&a| ev.eghf(a, b, c, sigma, x))
        .collect::<Result<Vec<_>>>()?;
    let mut worst: Option<(f64, f64, f64)> = None;
    for w in values.windows(3) {
        let (lhs, rhs) = (w[1] * w[1], w[0] * w[2]);
        let score = (rhs - lhs) / cfg.tolerance_for(lhs, rhs);
        if worst.is_none_or(|(s, _, _)| score < s) {
            worst = Some((score, lhs, rhs));
        }
    }
    let (_, lhs, rhs) = worst.expect("grid has an interior point");
    let inputs = Inputs::new(&[("b", b), ("c", c), ("sigma", sigma), ("x", x)]).with_grid(a_grid);
    Ok(ev.inequality("eghf-logconvex-a", inputs, lhs, rhs))
}

/// Inputs of the four EGHF checks.
#[derive(Debug, Clone, PartialEq)]
pub struct EghfSuiteParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub sigma: f64,
    pub x: f64,
    pub x_grid: Vec<f64>,
    pub alpha: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub a_grid: Vec<f64>,
}

pub fn check_eghf_suite(p: &EghfSuiteParams, cfg: &CheckConfig) -> Result<Vec<Check>> {
    Ok(vec![
        check_eghf_ratio_increasing(p.a, p.b, p.c, p.d, p.sigma, &p.x_grid, cfg)?.into(),
        check_eghf_product(p.a, p.b, p.c, p.d, p.sigma, p.x, cfg)?.into(),
        check_eghf_logconvex_sigma(p.a, p.b, p.c, p.x, p.sigma1, p.sigma2, p.alpha, cfg)?.into(),
        check_eghf_logconvex_a(p.b, p.c, p.sigma, p.x, &p.a_grid, cfg)?.into(),
    ])
}
