//! Seeded random instances for every check family.
//!
//! Each sample owns an RNG derived from `(seed, family, index)`, so a sample's
//! parameters depend on nothing else and samples may run in any order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    check_echf_b_ratio_decreasing, check_echf_logconvex_sigma, check_echf_logconvex_x,
    check_echf_product, check_echf_ratio_increasing, check_echf_reverse_turan, check_eghf_suite,
    check_gruss_extbeta, check_gruss_power, check_gruss_shift, check_logconvex_sigma, check_thm1,
    check_thm2_ratio_decreasing, check_thm3_midpoint, check_turan_sigma, Check, CheckConfig,
    EghfSuiteParams, GrussPowerParams,
};
use crate::error::{Error, Result};

const LO: f64 = 0.1;
const HI: f64 = 10.0;
const GRID_LEN: usize = 6;

/// A family of checks sharing one parameter distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Thm1,
    TuranSigma,
    LogconvexSigma,
    Thm2Ratio,
    Thm3Midpoint,
    GrussExtBeta,
    GrussShift,
    GrussPower,
    EchfRatio,
    EchfProduct,
    EchfLogconvexX,
    EchfLogconvexSigma,
    EchfBRatio,
    EchfReverseTuran,
    EghfSuite,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::Thm1,
        Family::TuranSigma,
        Family::LogconvexSigma,
        Family::Thm2Ratio,
        Family::Thm3Midpoint,
        Family::GrussExtBeta,
        Family::GrussShift,
        Family::GrussPower,
        Family::EchfRatio,
        Family::EchfProduct,
        Family::EchfLogconvexX,
        Family::EchfLogconvexSigma,
        Family::EchfBRatio,
        Family::EchfReverseTuran,
        Family::EghfSuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Thm1 => "thm1",
            Family::TuranSigma => "turan-sigma",
            Family::LogconvexSigma => "logconvex-sigma",
            Family::Thm2Ratio => "thm2-ratio",
            Family::Thm3Midpoint => "thm3-midpoint",
            Family::GrussExtBeta => "gruss-extbeta",
            Family::GrussShift => "gruss-shift",
            Family::GrussPower => "gruss-power",
            Family::EchfRatio => "echf-ratio",
            Family::EchfProduct => "echf-product",
            Family::EchfLogconvexX => "echf-logconvex-x",
            Family::EchfLogconvexSigma => "echf-logconvex-sigma",
            Family::EchfBRatio => "echf-b-ratio",
            Family::EchfReverseTuran => "echf-reverse-turan",
            Family::EghfSuite => "eghf-suite",
        }
    }

    pub fn suite(self) -> Suite {
        match self {
            Family::Thm1 => Suite::Thm1,
            Family::TuranSigma | Family::LogconvexSigma | Family::Thm2Ratio => Suite::Thm2,
            Family::Thm3Midpoint => Suite::Thm3,
            Family::GrussExtBeta | Family::GrussShift | Family::GrussPower => Suite::Gruss,
            Family::EchfRatio
            | Family::EchfProduct
            | Family::EchfLogconvexX
            | Family::EchfLogconvexSigma
            | Family::EchfBRatio
            | Family::EchfReverseTuran => Suite::Echf,
            Family::EghfSuite => Suite::Eghf,
        }
    }

    fn index(self) -> u64 {
        Family::ALL.iter().position(|&f| f == self).unwrap() as u64
    }

    /// Draw the parameters of sample `index` and run the checks.
    pub fn run_sample(self, seed: u64, index: u64, cfg: &CheckConfig) -> Result<Vec<Check>> {
        let mut rng = sample_rng(seed, self.index(), index);
        let r = &mut rng;
        Ok(match self {
            Family::Thm1 => {
                let (xl, xh) = ordered_pair(r);
                let (yl, yh) = ordered_pair(r);
                let sigma = sigma_ge0(r);
                let (x, x1, y, y1) = if r.random_bool(0.5) {
                    (xh, xl, yh, yl)
                } else {
                    (xl, xh, yl, yh)
                };
                vec![check_thm1(x, x1, y, y1, sigma, cfg)?.into()]
            }
            Family::TuranSigma => {
                let (x, y, sigma) = (lu(r), lu(r), lu(r));
                let a = sigma * r.random_range(-1.0..=1.0);
                vec![check_turan_sigma(x, y, sigma, a, cfg)?.into()]
            }
            Family::LogconvexSigma => {
                let (x, y, s1, s2) = (lu(r), lu(r), lu(r), lu(r));
                let alpha = unit(r);
                vec![check_logconvex_sigma(x, y, s1, s2, alpha, cfg)?.into()]
            }
            Family::Thm2Ratio => {
                let (x, y) = (lu(r), lu(r));
                let (lo, hi) = ordered_pair(r);
                vec![check_thm2_ratio_decreasing(x, y, &geom_grid(lo, hi), cfg)?.into()]
            }
            Family::Thm3Midpoint => {
                let (x1, y1, x2, y2) = (lu(r), lu(r), lu(r), lu(r));
                let sigma = sigma_ge0(r);
                vec![check_thm3_midpoint(x1, y1, x2, y2, sigma, cfg)?.into()]
            }
            Family::GrussExtBeta => {
                let (x, y, s1, s2) = (lu(r), lu(r), lu(r), lu(r));
                check_gruss_extbeta(x, y, s1, s2, cfg)?.into_checks()
            }
            Family::GrussShift => {
                let (x, y, x1, y1) = (lu(r), lu(r), lu(r), lu(r));
                let sigma = sigma_ge0(r);
                check_gruss_shift(x, y, x1, y1, sigma, cfg)?.into_checks()
            }
            Family::GrussPower => {
                let pp = GrussPowerParams {
                    alpha: lu(r),
                    beta: lu(r),
                    m: lu(r),
                    n: lu(r),
                    p: lu(r),
                    q: lu(r),
                    sigma: sigma_ge0(r),
                };
                check_gruss_power(&pp, cfg)?.into_checks()
            }
            Family::EchfRatio => {
                let (b, c, d) = bcd(r);
                let sigma = sigma_ge0(r);
                let x_max = lu(r);
                let grid = lin_grid(x_max / GRID_LEN as f64, x_max);
                vec![check_echf_ratio_increasing(b, c, d, sigma, &grid, cfg)?.into()]
            }
            Family::EchfProduct => {
                let (b, c, d) = bcd(r);
                let (sigma, x) = (sigma_ge0(r), lu(r));
                vec![check_echf_product(b, c, d, sigma, x, cfg)?.into()]
            }
            Family::EchfLogconvexX => {
                let b = lu(r);
                let c = b + lu(r);
                let sigma = sigma_ge0(r);
                let x = r.random_range(-5.0..=5.0);
                let y = r.random_range(-5.0..=5.0);
                let alpha = unit(r);
                vec![check_echf_logconvex_x(b, c, sigma, x, y, alpha, cfg)?.into()]
            }
            Family::EchfLogconvexSigma => {
                let b = lu(r);
                let c = b + lu(r);
                let (x, s1, s2) = (lu(r), lu(r), lu(r));
                let alpha = unit(r);
                vec![check_echf_logconvex_sigma(b, c, x, s1, s2, alpha, cfg)?.into()]
            }
            Family::EchfBRatio => {
                let (delta, room) = (lu(r), lu(r));
                let c = delta + room;
                let (x, sigma) = (lu(r), sigma_ge0(r));
                let grid = lin_grid(0.05 * room, 0.95 * room);
                check_echf_b_ratio_decreasing(c, x, sigma, delta, &grid, cfg)?.into_checks()
            }
            Family::EchfReverseTuran => {
                let (b, delta) = (lu(r), lu(r));
                let c = b + 2.0 * delta + lu(r);
                let (x, sigma) = (lu(r), sigma_ge0(r));
                vec![check_echf_reverse_turan(b, c, x, sigma, delta, cfg)?.into()]
            }
            Family::EghfSuite => {
                let a = lu(r);
                let (b, c, d) = bcd(r);
                let sigma = sigma_ge0(r);
                let x = r.random_range(0.05..0.9);
                let x_hi = r.random_range(0.2..0.9);
                let (s1, s2) = (lu(r), lu(r));
                let alpha = unit(r);
                let a_step = lu(r) / 4.0;
                let p = EghfSuiteParams {
                    a,
                    b,
                    c,
                    d,
                    sigma,
                    x,
                    x_grid: lin_grid(x_hi / GRID_LEN as f64, x_hi),
                    alpha,
                    sigma1: s1,
                    sigma2: s2,
                    a_grid: (0..5).map(|i| a + a_step * i as f64).collect(),
                };
                check_eghf_suite(&p, cfg)?
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named group of families run together by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Thm1,
    Thm2,
    Thm3,
    Gruss,
    Echf,
    Eghf,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["all", "thm1", "thm2", "thm3", "gruss", "echf", "eghf"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Gruss => "gruss",
            Suite::Echf => "echf",
            Suite::Eghf => "eghf",
        }
    }

    pub fn families(self) -> Vec<Family> {
        Family::ALL
            .into_iter()
            .filter(|f| self == Suite::All || f.suite() == self)
            .collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "thm1" => Suite::Thm1,
            "thm2" => Suite::Thm2,
            "thm3" => Suite::Thm3,
            "gruss" => Suite::Gruss,
            "echf" => Suite::Echf,
            "eghf" => Suite::Eghf,
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The RNG of one sample.
pub fn sample_rng(seed: u64, family: u64, index: u64) -> ChaCha8Rng {
    let k = splitmix64(splitmix64(splitmix64(seed) ^ family) ^ index);
    ChaCha8Rng::seed_from_u64(k)
}

/// Log-uniform on [0.1, 10].
fn lu<R: Rng>(r: &mut R) -> f64 {
    r.random_range(LO.ln()..=HI.ln()).exp()
}

fn unit<R: Rng>(r: &mut R) -> f64 {
    r.random_range(0.0..=1.0)
}

/// σ ≥ 0, exactly zero one time in eight.
fn sigma_ge0<R: Rng>(r: &mut R) -> f64 {
    if r.random_ratio(1, 8) {
        0.0
    } else {
        lu(r)
    }
}

/// `(lo, lo + gap)` with both draws log-uniform.
fn ordered_pair<R: Rng>(r: &mut R) -> (f64, f64) {
    let lo = lu(r);
    (lo, lo + lu(r))
}

/// b, then c = b + gap and d between b and c.
fn bcd<R: Rng>(r: &mut R) -> (f64, f64, f64) {
    let b = lu(r);
    let gap = lu(r);
    let d = b + gap * r.random_range(0.05..=1.0);
    (b, b + gap, d.min(b + gap))
}

fn lin_grid(lo: f64, hi: f64) -> Vec<f64> {
    let n = GRID_LEN - 1;
    (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}

fn geom_grid(lo: f64, hi: f64) -> Vec<f64> {
    let n = GRID_LEN - 1;
    let ratio = hi / lo;
    (0..=n)
        .map(|i| lo * ratio.powf(i as f64 / n as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_streams_are_distinct_and_repeatable() {
        let a: u64 = sample_rng(42, 0, 0).random();
        assert_eq!(a, sample_rng(42, 0, 0).random::<u64>());
        assert_ne!(a, sample_rng(42, 0, 1).random::<u64>());
        assert_ne!(a, sample_rng(42, 1, 0).random::<u64>());
        assert_ne!(a, sample_rng(43, 0, 0).random::<u64>());
    }

    #[test]
    fn suites_partition_families() {
        let mut n = 0;
        for s in Suite::NAMES.iter().skip(1) {
            n += s.parse::<Suite>().unwrap().families().len();
        }
        assert_eq!(n, Family::ALL.len());
        assert_eq!(Suite::All.families().len(), Family::ALL.len());
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn every_family_samples_within_preconditions() {
        let cfg = CheckConfig::default();
        for f in Family::ALL {
            for i in 0..4 {
                let checks = f
                    .run_sample(7, i, &cfg)
                    .unwrap_or_else(|e| panic!("{f} #{i}: {e}"));
                assert!(!checks.is_empty());
            }
        }
    }

    #[test]
    fn samples_are_deterministic() {
        let cfg = CheckConfig::default();
        for f in [Family::Thm1, Family::GrussExtBeta, Family::EghfSuite] {
            assert_eq!(
                f.run_sample(9, 3, &cfg).unwrap(),
                f.run_sample(9, 3, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn grids_are_strictly_increasing() {
        for g in [lin_grid(0.1, 2.0), geom_grid(0.1, 9.0)] {
            assert_eq!(g.len(), GRID_LEN);
            assert!(g.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
