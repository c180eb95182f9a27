use std::collections::BTreeMap;

use crate::args::ParamArgs;
use crate::config::Config;
use crate::error::CliError;

/// Numeric parameters after merging flags with the config file.
#[derive(Debug, Clone, Default)]
pub struct Params {
    values: BTreeMap<&'static str, f64>,
    grid: Option<Vec<f64>>,
    a_grid: Option<Vec<f64>>,
}

impl Params {
    pub fn resolve(p: &ParamArgs, cfg: &Config) -> Result<Self, CliError> {
        let flags: [(&'static str, Option<f64>); 20] = [
            ("x", p.x),
            ("y", p.y),
            ("x1", p.x1),
            ("y1", p.y1),
            ("x2", p.x2),
            ("y2", p.y2),
            ("sigma", p.sigma),
            ("s1", p.s1),
            ("s2", p.s2),
            ("a", p.a),
            ("b", p.b),
            ("c", p.c),
            ("d", p.d),
            ("delta", p.delta),
            ("alpha", p.alpha),
            ("beta", p.beta),
            ("m", p.m),
            ("n", p.n),
            ("p", p.p),
            ("q", p.q),
        ];
        let mut values = BTreeMap::new();
        for (key, flag) in flags {
            if let Some(v) = cfg.f64(key, flag)? {
                values.insert(key, v);
            }
        }
        Ok(Self {
            values,
            grid: cfg.grid("grid", p.grid.clone())?.map(|g| g.0),
            a_grid: cfg.grid("a-grid", p.a_grid.clone())?.map(|g| g.0),
        })
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).copied()
    }

    pub fn or(&self, key: &str, default: f64) -> f64 {
        self.get(key).unwrap_or(default)
    }

    pub fn need(&self, key: &str) -> Result<f64, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::usage(format!("missing required --{key}")))
    }

    pub fn need_grid(&self) -> Result<&[f64], CliError> {
        self.grid
            .as_deref()
            .ok_or_else(|| CliError::usage("missing required --grid"))
    }

    pub fn need_a_grid(&self) -> Result<&[f64], CliError> {
        self.a_grid
            .as_deref()
            .ok_or_else(|| CliError::usage("missing required --a-grid"))
    }
}
