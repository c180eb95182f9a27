use super::{
    require, require_grid, CheckConfig, Direction, Evaluator, InequalityCheck, Inputs,
    MonotonicityCheck,
};
use crate::error::Result;

fn require_positive(vals: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in vals {
        require(v > 0.0 && v.is_finite(), || {
            format!("{name} must be positive and finite, got {v}")
        })?;
    }
    Ok(())
}

fn require_alpha(alpha: f64) -> Result<()> {
    require((0.0..=1.0).contains(&alpha), || {
        format!("alpha must lie in [0, 1], got {alpha}")
    })
}

/// Chebyshev ordering: `B_σ(x, y₁) B_σ(x₁, y) ≤ B_σ(x₁, y₁) B_σ(x, y)` when
/// `(x - x₁)(y - y₁) ≥ 0`.
pub fn check_thm1(
    x: f64,
    x1: f64,
    y: f64,
    y1: f64,
    sigma: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_positive(&[("x", x), ("x1", x1), ("y", y), ("y1", y1)])?;
    require((x - x1) * (y - y1) >= 0.0, || {
        format!("sign condition (x - x1)(y - y1) >= 0 fails for x={x}, x1={x1}, y={y}, y1={y1}")
    })?;
    let ev = Evaluator::new(cfg);
    let lhs = ev.beta(x, y1, sigma)? * ev.beta(x1, y, sigma)?;
    let rhs = ev.beta(x1, y1, sigma)? * ev.beta(x, y, sigma)?;
    let inputs = Inputs::new(&[("x", x), ("x1", x1), ("y", y), ("y1", y1), ("sigma", sigma)]);
    Ok(ev.inequality("thm1", inputs, lhs, rhs))
}

/// Turán inequality in σ: `B_σ(x, y)² ≤ B_{σ+a}(x, y) B_{σ-a}(x, y)`.
pub fn check_turan_sigma(
    x: f64,
    y: f64,
    sigma: f64,
    a: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require(sigma - a >= 0.0 && sigma + a >= 0.0, || {
        format!("sigma ± a must be >= 0, got sigma={sigma}, a={a}")
    })?;
    let ev = Evaluator::new(cfg);
    let b = ev.beta(x, y, sigma)?;
    let rhs = ev.beta(x, y, sigma + a)? * ev.beta(x, y, sigma - a)?;
    let inputs = Inputs::new(&[("x", x), ("y", y), ("sigma", sigma), ("a", a)]);
    Ok(ev.inequality("turan-sigma", inputs, b * b, rhs))
}

/// `σ ↦ B_σ(x-1, y-1) / B_σ(x, y)` is decreasing, sampled on `sigma_grid`.
pub fn check_thm2_ratio_decreasing(
    x: f64,
    y: f64,
    sigma_grid: &[f64],
    cfg: &CheckConfig,
) -> Result<MonotonicityCheck> {
    require_grid(sigma_grid, "sigma grid")?;
    require(sigma_grid[0] > 0.0, || "sigma grid must be positive".into())?;
    let ev = Evaluator::new(cfg);
    let values = sigma_grid
        .iter()
        .map(|&s| Ok(ev.beta(x - 1.0, y - 1.0, s)? / ev.beta(x, y, s)?))
        .collect::<Result<Vec<_>>>()?;
    let inputs = Inputs::new(&[("x", x), ("y", y)]);
    Ok(ev.monotonicity(
        "thm2-ratio",
        inputs,
        sigma_grid,
        values,
        Direction::Decreasing,
    ))
}

/// Log-convexity in σ:
/// `B_{ασ₁+(1-α)σ₂}(x, y) ≤ B_{σ₁}(x, y)^α B_{σ₂}(x, y)^{1-α}`.
pub fn check_logconvex_sigma(
    x: f64,
    y: f64,
    sigma1: f64,
    sigma2: f64,
    alpha: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    require_positive(&[("sigma1", sigma1), ("sigma2", sigma2)])?;
    require_alpha(alpha)?;
    let ev = Evaluator::new(cfg);
    let lhs = ev.beta(x, y, alpha * sigma1 + (1.0 - alpha) * sigma2)?;
    let rhs = ev.beta(x, y, sigma1)?.powf(alpha) * ev.beta(x, y, sigma2)?.powf(1.0 - alpha);
    let inputs = Inputs::new(&[
        ("x", x),
        ("y", y),
        ("sigma1", sigma1),
        ("sigma2", sigma2),
        ("alpha", alpha),
    ]);
    Ok(ev.inequality("logconvex-sigma", inputs, lhs, rhs))
}

/// Joint log-convexity at the midpoint:
/// `B_σ((x₁+x₂)/2, (y₁+y₂)/2)² ≤ B_σ(x₁, y₁) B_σ(x₂, y₂)`.
pub fn check_thm3_midpoint(
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    sigma: f64,
    cfg: &CheckConfig,
) -> Result<InequalityCheck> {
    let ev = Evaluator::new(cfg);
    let mid = ev.beta(0.5 * (x1 + x2), 0.5 * (y1 + y2), sigma)?;
    let rhs = ev.beta(x1, y1, sigma)? * ev.beta(x2, y2, sigma)?;
    let inputs = Inputs::new(&[
        ("x1", x1),
        ("y1", y1),
        ("x2", x2),
        ("y2", y2),
        ("sigma", sigma),
    ]);
    Ok(ev.inequality("thm3-midpoint", inputs, mid * mid, rhs))
}
