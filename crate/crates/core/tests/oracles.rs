use extbeta::{
    classical_beta, echf, eghf, ext_beta, log_gamma, ExtBetaPoint, HypergeomParams,
    QuadratureConfig, Route, SeriesControl,
};
use proptest::prelude::*;

fn quad() -> QuadratureConfig {
    QuadratureConfig::relative(1e-12)
}

fn bsigma(x: f64, y: f64, s: f64) -> f64 {
    let e = ext_beta(&ExtBetaPoint::new(x, y, s).unwrap(), &quad()).unwrap();
    assert!(e.converged);
    e.value
}

/// Composite Simpson with 20000 panels; accurate for σ > 0, where the
/// integrand and all its derivatives vanish at both ends.
fn simpson(f: impl Fn(f64) -> f64) -> f64 {
    let n = 20_000;
    let h = 1.0 / n as f64;
    let inner: f64 = (1..n)
        .map(|i| {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            w * f(i as f64 * h)
        })
        .sum();
    h / 3.0 * inner
}

#[test]
fn ext_beta_matches_simpson() {
    for &(x, y, s) in &[
        (0.5, 0.5, 1.0),
        (2.0, 3.0, 0.5),
        (7.0, 1.5, 2.0),
        (1.0, 1.0, 0.1),
    ] {
        let oracle =
            simpson(|t| t.powf(x - 1.0) * (1.0 - t).powf(y - 1.0) * (-s / (t * (1.0 - t))).exp());
        let v = bsigma(x, y, s);
        assert!(
            ((v - oracle) / oracle).abs() < 1e-9,
            "({x}, {y}, {s}): {v} vs {oracle}"
        );
    }
}

#[test]
fn ext_beta_reduces_to_gamma_ratio() {
    for &(x, y) in &[(0.5, 0.5), (3.0, 4.0), (10.0, 0.25)] {
        let exact =
            (log_gamma(x).unwrap() + log_gamma(y).unwrap() - log_gamma(x + y).unwrap()).exp();
        assert!(((bsigma(x, y, 0.0) - exact) / exact).abs() < 1e-12);
    }
}

#[test]
fn confluent_closed_form() {
    // Φ₀(1; 2; x) = (eˣ - 1)/x
    let sc = SeriesControl::default();
    for &x in &[-3.0, -0.5, 0.25, 1.0, 4.0] {
        let exact = (f64::exp(x) - 1.0) / x;
        for route in [Route::Series, Route::Integral] {
            let p = HypergeomParams::echf(1.0, 2.0, 0.0, x).with_route(route);
            let v = echf(&p, &sc, &quad()).unwrap().value;
            assert!(((v - exact) / exact).abs() < 1e-12, "x = {x}, {route:?}");
        }
    }
}

#[test]
fn gaussian_closed_form() {
    // F₀(1, 1; 2; x) = -ln(1 - x)/x
    let sc = SeriesControl::default();
    for &x in &[-0.9f64, -0.3, 0.2, 0.7] {
        let exact = -(1.0 - x).ln() / x;
        for route in [Route::Series, Route::Integral] {
            let p = HypergeomParams::eghf(1.0, 1.0, 2.0, 0.0, x).with_route(route);
            let v = eghf(&p, &sc, &quad()).unwrap().value;
            assert!(((v - exact) / exact).abs() < 1e-11, "x = {x}, {route:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ext_beta_is_symmetric(x in 0.1f64..10.0, y in 0.1f64..10.0, s in 0.0f64..5.0) {
        let (a, b) = (bsigma(x, y, s), bsigma(y, x, s));
        prop_assert!(((a - b) / b).abs() < 1e-11);
    }

    #[test]
    fn ext_beta_decreases_in_sigma(x in 0.1f64..10.0, y in 0.1f64..10.0, s in 0.0f64..5.0) {
        let lower = bsigma(x, y, s + 0.1);
        let upper = if s == 0.0 { classical_beta(x, y).unwrap() } else { bsigma(x, y, s) };
        prop_assert!(lower < upper);
    }

    #[test]
    fn confluent_routes_agree(
        b in 0.1f64..10.0, gap in 0.1f64..10.0, s in 0.1f64..5.0, x in 0.0f64..5.0
    ) {
        let p = HypergeomParams::echf(b, b + gap, s, x);
        let sc = SeriesControl::default();
        let series = echf(&p.with_route(Route::Series), &sc, &quad()).unwrap().value;
        let integral = echf(&p.with_route(Route::Integral), &sc, &quad()).unwrap().value;
        prop_assert!(((series - integral) / integral).abs() < 1e-9);
    }

    #[test]
    fn gaussian_routes_agree(
        a in 0.1f64..10.0, b in 0.1f64..10.0, gap in 0.1f64..10.0, s in 0.1f64..5.0,
        x in -0.9f64..0.9
    ) {
        let p = HypergeomParams::eghf(a, b, b + gap, s, x);
        let sc = SeriesControl::default();
        let series = eghf(&p.with_route(Route::Series), &sc, &quad()).unwrap().value;
        let integral = eghf(&p.with_route(Route::Integral), &sc, &quad()).unwrap().value;
        prop_assert!(((series - integral) / integral).abs() < 1e-9);
    }
}
