//! Log-gamma, digamma, classical beta and Pochhammer symbols.

use std::f64::consts::PI;

use crate::error::{domain, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx), valid for 0 < x < 1/2.
        return (PI / (PI * x).sin()).ln() - lanczos_ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Natural logarithm of Γ(x) for x > 0.
///
/// ```
/// use extbeta::log_gamma;
/// assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
/// ```
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("log_gamma requires x > 0, got {x}")));
    }
    // Γ(1) = Γ(2) = 1 exactly.
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    Ok(lanczos_ln_gamma(x))
}

/// Digamma ψ(y) = Γ'(y)/Γ(y) for y > 0.
///
/// Shifts the argument to y ≥ 8 with ψ(y) = ψ(y+1) - 1/y, then applies the
/// asymptotic expansion in 1/y².
pub fn digamma(y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(domain(format!("digamma requires y > 0, got {y}")));
    }
    let mut y = y;
    let mut shift = 0.0;
    while y < 8.0 {
        shift -= 1.0 / y;
        y += 1.0;
    }
    let r = 1.0 / (y * y);
    // Bernoulli terms B_2k / (2k): 1/12, 1/120, 1/252, 1/240, 1/132, 691/32760, 1/12.
    let tail = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0
                    - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
    Ok(shift + y.ln() - 0.5 / y - tail)
}

/// ln B(x, y) for x, y > 0.
pub fn log_beta(x: f64, y: f64) -> Result<f64> {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    Ok(log_gamma(lo)? + log_gamma(hi)? - log_gamma(lo + hi)?)
}

/// Classical beta function B(x, y) = Γ(x)Γ(y)/Γ(x+y).
///
/// Symmetric bit for bit: arguments are ordered before evaluation.
pub fn classical_beta(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0) || !(y > 0.0) {
        return Err(domain(format!(
            "classical beta requires positive arguments, got ({x}, {y})"
        )));
    }
    Ok(log_beta(x, y)?.exp())
}

/// A rising factorial (base)_order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochhammerTerm {
    pub base: f64,
    pub order: u32,
}

impl PochhammerTerm {
    pub fn new(base: f64, order: u32) -> Self {
        Self { base, order }
    }

    /// The product and whether it overflowed to ±∞.
    pub fn evaluate(&self) -> (f64, bool) {
        let mut acc = 1.0;
        for k in 0..self.order {
            acc *= self.base + k as f64;
        }
        (acc, acc.is_infinite())
    }
}

/// (a)_n = a(a+1)…(a+n-1), with (a)_0 = 1. Overflow saturates to ±∞; see
/// [`PochhammerTerm::evaluate`] for the flagged form.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    PochhammerTerm::new(a, n).evaluate().0
}

/// f(δ) = B²(b+δ, c) / (B(b+2δ, c) B(b, c)), evaluated in log space.
///
/// f(0) = 1 exactly, and f is non-increasing in δ.
pub fn coeff_f_delta(b: f64, c: f64, delta: f64) -> Result<f64> {
    if !(b > 0.0) || !(c > 0.0) {
        return Err(domain(format!(
            "coefficient function requires b, c > 0, got b = {b}, c = {c}"
        )));
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(domain(format!(
            "coefficient function requires delta >= 0, got {delta}"
        )));
    }
    if delta == 0.0 {
        return Ok(1.0);
    }
    let lg = log_gamma;
    let first = 2.0 * lg(b + delta)? - lg(b + 2.0 * delta)? - lg(b)?;
    let second = lg(b + 2.0 * delta + c)? + lg(b + c)? - 2.0 * lg(b + c + delta)?;
    Ok((first + second).exp())
}

/// d/dδ ln f(δ) = 2ψ(b+δ) + 2ψ(b+2δ+c) - 2ψ(b+c+δ) - 2ψ(b+2δ).
pub fn coeff_f_delta_log_derivative(b: f64, c: f64, delta: f64) -> Result<f64> {
    if !(b > 0.0) || !(c > 0.0) || !(delta >= 0.0) {
        return Err(domain(format!(
            "coefficient function requires b, c > 0 and delta >= 0, got ({b}, {c}, {delta})"
        )));
    }
    let psi = digamma;
    Ok(2.0
        * ((psi(b + delta)? - psi(b + 2.0 * delta)?)
            + (psi(b + 2.0 * delta + c)? - psi(b + c + delta)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// ψ(y) = -γ + Σ_{k≥0} (1/(k+1) - 1/(y+k)), summed to `terms` with the
    /// tail ψ(N+y) - ψ(N+1) ≈ ln((N+y-1/2)/(N+1/2)).
    fn digamma_series(y: f64, terms: usize) -> f64 {
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        for k in (0..terms).rev() {
            let term = 1.0 / (k as f64 + 1.0) - 1.0 / (y + k as f64);
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        let n = terms as f64;
        let tail = ((y - 1.0) / (n + 0.5)).ln_1p();
        -EULER_GAMMA + sum + comp + tail
    }

    #[test]
    fn log_gamma_known_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert!(rel(log_gamma(5.0).unwrap(), 24f64.ln()) < 1e-14);
        assert!(rel(log_gamma(0.5).unwrap(), 0.5 * PI.ln()) < 1e-14);
        assert!(rel(log_gamma(10.0).unwrap(), 362_880f64.ln()) < 1e-14);
        assert!(rel(log_gamma(100.0).unwrap(), 359.134_205_369_575_4) < 1e-14);
        assert!(rel(log_gamma(0.1).unwrap(), 2.252_712_651_734_206) < 1e-14);
        assert!(rel(log_gamma(3.7).unwrap(), 1.428_072_326_665_388) < 1e-14);
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn digamma_known_values() {
        assert!(rel(digamma(1.0).unwrap(), -EULER_GAMMA) < 1e-13);
        assert!(rel(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA) < 1e-13);
        assert!(rel(digamma(0.5).unwrap(), -EULER_GAMMA - 2.0 * 2f64.ln()) < 1e-13);
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn digamma_agrees_with_series() {
        for &y in &[0.5, 1.0, 1.25, 2.0, 3.3, 7.9, 8.0, 12.5, 40.0] {
            let series = digamma_series(y, 1_000_000);
            let fast = digamma(y).unwrap();
            assert!(rel(fast, series) < 1e-12, "y = {y}: {fast} vs {series}");
        }
    }

    #[test]
    fn beta_closed_forms() {
        assert!(rel(classical_beta(1.0, 1.0).unwrap(), 1.0) < 1e-13);
        assert!(rel(classical_beta(2.0, 3.0).unwrap(), 1.0 / 12.0) < 1e-13);
        assert!(rel(classical_beta(0.5, 0.5).unwrap(), PI) < 1e-13);
        assert!(classical_beta(0.0, 1.0).is_err());
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(2.0, 3), 24.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
        let (v, saturated) = PochhammerTerm::new(100.0, 400).evaluate();
        assert!(v.is_infinite() && saturated);
    }

    #[test]
    fn coeff_f_delta_values() {
        assert_eq!(coeff_f_delta(1.0, 1.0, 0.0).unwrap(), 1.0);
        assert!(rel(coeff_f_delta(1.0, 1.0, 1.0).unwrap(), 0.75) < 1e-13);
        assert!(coeff_f_delta(0.0, 1.0, 1.0).is_err());
        assert!(coeff_f_delta(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn coeff_f_delta_against_gamma_products() {
        // Γ(b+δ)² Γ(b+2δ+c) Γ(b+c) / (Γ(b+c+δ)² Γ(b+2δ) Γ(b)) with
        // mpmath-computed gammas (30 digits) for b = 2, c = 3, δ = 0.7.
        let g_b_d = 1.544_685_845_850_593_8; // Γ(2.7)
        let g_b2d_c = 240.833_779_983_445_94; // Γ(6.4)
        let g_b_c = 24.0; // Γ(5)
        let g_bc_d = 72.527_634_520_222_93; // Γ(5.7)
        let g_b2d = 2.981_206_426_810_333; // Γ(3.4)
        let g_b = 1.0; // Γ(2)
        let expected = g_b_d * g_b_d * g_b2d_c * g_b_c / (g_bc_d * g_bc_d * g_b2d * g_b);
        let got = coeff_f_delta(2.0, 3.0, 0.7).unwrap();
        assert!(rel(expected, 0.879_447_467_728_822_9) < 1e-14);
        assert!(got > 0.0 && got < 1.0);
        assert!(rel(got, expected) < 1e-12, "{got} vs {expected}");
    }

    proptest! {
        #[test]
        fn beta_recurrence(x in 0.1f64..20.0, y in 0.1f64..20.0) {
            let lhs = classical_beta(x + 1.0, y).unwrap();
            let rhs = classical_beta(x, y).unwrap() * x / (x + y);
            prop_assert!(rel(lhs, rhs) < 1e-12);
        }

        #[test]
        fn beta_symmetry_is_exact(x in 0.1f64..20.0, y in 0.1f64..20.0) {
            prop_assert_eq!(classical_beta(x, y).unwrap().to_bits(), classical_beta(y, x).unwrap().to_bits());
        }

        #[test]
        fn digamma_recurrence(y in 0.05f64..50.0) {
            let lhs = digamma(y + 1.0).unwrap();
            let rhs = digamma(y).unwrap() + 1.0 / y;
            prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0));
        }

        #[test]
        fn coeff_f_delta_decreasing(b in 0.1f64..10.0, c in 0.1f64..10.0) {
            let mut prev = 1.0;
            for i in 0..=50 {
                let delta = i as f64 * 0.1;
                let f = coeff_f_delta(b, c, delta).unwrap();
                prop_assert!(f <= 1.0 && f <= prev);
                prop_assert!(coeff_f_delta_log_derivative(b, c, delta).unwrap() <= 1e-12);
                prev = f;
            }
        }
    }
}
