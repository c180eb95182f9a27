//! Number formatting, JSON check records and the sweep CSV layout.

use serde::Serialize;
use serde_json::{Map, Value};

use extbeta::{Check, Direction, Inputs};

/// Parameter columns of the sweep CSV, in order. Every input name produced by
/// a check appears here.
pub const PARAM_COLUMNS: &[&str] = &[
    "x", "y", "x1", "y1", "x2", "y2", "sigma", "sigma1", "sigma2", "a", "b", "c", "d", "delta",
    "alpha", "beta", "m", "n", "p", "q", "grid_lo", "grid_hi", "grid_len",
];

pub fn csv_header() -> Vec<&'static str> {
    let mut h = vec!["suite", "check_name", "sample_index"];
    h.extend_from_slice(PARAM_COLUMNS);
    h.extend_from_slice(&["lhs", "rhs", "slack", "tolerance", "verdict", "gated"]);
    h
}

/// Shortest round-trip text for `v`, in exponent form outside [1e-4, 1e15).
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if v == 0.0 || (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn csv_record(suite: &str, sample_index: u64, check: &Check) -> Vec<String> {
    let inputs = check.inputs();
    let mut rec = vec![
        suite.to_string(),
        check.name().to_string(),
        sample_index.to_string(),
    ];
    rec.extend(
        PARAM_COLUMNS
            .iter()
            .map(|col| inputs.get(col).map(fmt_num).unwrap_or_default()),
    );
    rec.extend([
        fmt_num(check.lhs()),
        fmt_num(check.rhs()),
        fmt_num(check.slack()),
        fmt_num(check.tolerance()),
        check.verdict().as_str().to_string(),
        check.gated().to_string(),
    ]);
    rec
}

pub fn inputs_map(inputs: &Inputs) -> Map<String, Value> {
    inputs
        .iter()
        .map(|&(k, v)| (k.to_string(), Value::from(v)))
        .collect()
}

#[derive(Debug, Serialize)]
pub struct MonotonicityRecord {
    pub direction: &'static str,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub max_violation: f64,
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub gated: bool,
    pub inputs: Map<String, Value>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub verdict: &'static str,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monotonicity: Option<MonotonicityRecord>,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        let monotonicity = match c {
            Check::Monotonicity(m) => Some(MonotonicityRecord {
                direction: match m.direction {
                    Direction::Increasing => "increasing",
                    Direction::Decreasing => "decreasing",
                },
                grid: m.grid.clone(),
                values: m.values.clone(),
                max_violation: m.max_violation,
            }),
            Check::Inequality(_) => None,
        };
        Self {
            name: c.name(),
            gated: c.gated(),
            inputs: inputs_map(c.inputs()),
            lhs: c.lhs(),
            rhs: c.rhs(),
            slack: c.slack(),
            tolerance: c.tolerance(),
            verdict: c.verdict().as_str(),
            satisfied: c.verdict() == extbeta::Verdict::Satisfied,
            monotonicity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [
            0.0,
            1.0,
            -2.5,
            1.0 / 12.0,
            1e-300,
            -3.2e-7,
            6.02e23,
            123456.789,
            5e-324,
        ] {
            let s = fmt_num(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(1e-300), "1e-300");
        assert_eq!(fmt_num(f64::NAN), "NaN");
    }

    #[test]
    fn header_has_unique_columns() {
        let h = csv_header();
        let mut sorted = h.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), h.len());
    }
}
