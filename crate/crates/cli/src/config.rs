//! Layered settings: command-line flag, then config file, then default.
//!
//! The config file is flat TOML whose keys are flag names without the
//! leading dashes, e.g.
//!
//! ```toml
//! suite = "thm2"
//! n = 200
//! seed = 7
//! rel-tol = 1e-12
//! grid = "0.5, 1, 2"
//! ```

use std::path::{Path, PathBuf};

use toml::{Table, Value};

use crate::args::{parse_grid, Grid};
use crate::error::CliError;

pub const KEYS: &[&str] = &[
    "x",
    "y",
    "x1",
    "y1",
    "x2",
    "y2",
    "sigma",
    "s1",
    "s2",
    "a",
    "b",
    "c",
    "d",
    "delta",
    "alpha",
    "beta",
    "m",
    "n",
    "p",
    "q",
    "grid",
    "a-grid",
    "route",
    "abs-tol",
    "rel-tol",
    "max-levels",
    "json",
    "slack-rel-tol",
    "suite",
    "seed",
    "out",
];

#[derive(Debug, Clone, Default)]
pub struct Config {
    table: Table,
    source: Option<PathBuf>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        Self::parse(&text, Some(path.to_path_buf()))
    }

    pub fn parse(text: &str, source: Option<PathBuf>) -> Result<Self, CliError> {
        let raw: Table = text
            .parse()
            .map_err(|e| CliError::usage(format!("config file is not valid TOML: {e}")))?;
        let mut table = Table::new();
        for (k, v) in raw {
            let key = k.replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!("unknown config key {k:?}")));
            }
            if matches!(v, Value::Table(_)) {
                return Err(CliError::usage(format!(
                    "config key {k:?} must not be a table"
                )));
            }
            table.insert(key, v);
        }
        Ok(Self { table, source })
    }

    fn bad(&self, key: &str, want: &str) -> CliError {
        let src = self
            .source
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "config".into());
        CliError::usage(format!("{src}: key {key:?} must be {want}"))
    }

    pub fn f64(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Float(v)) => Ok(Some(*v)),
            Some(Value::Integer(v)) => Ok(Some(*v as f64)),
            Some(_) => Err(self.bad(key, "a number")),
        }
    }

    pub fn u64(&self, key: &str, flag: Option<u64>) -> Result<Option<u64>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Integer(v)) if *v >= 0 => Ok(Some(*v as u64)),
            Some(_) => Err(self.bad(key, "a non-negative integer")),
        }
    }

    pub fn string(&self, key: &str, flag: Option<String>) -> Result<Option<String>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(self.bad(key, "a string")),
        }
    }

    pub fn bool(&self, key: &str, flag: bool) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.table.get(key) {
            None => Ok(false),
            Some(Value::Boolean(b)) => Ok(*b),
            Some(_) => Err(self.bad(key, "a boolean")),
        }
    }

    pub fn path(&self, key: &str, flag: Option<PathBuf>) -> Result<Option<PathBuf>, CliError> {
        Ok(self
            .string(key, flag.map(|p| p.to_string_lossy().into_owned()))?
            .map(PathBuf::from))
    }

    pub fn grid(&self, key: &str, flag: Option<Grid>) -> Result<Option<Grid>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => parse_grid(s).map(Some).map_err(CliError::Usage),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    Value::Float(f) => Ok(*f),
                    Value::Integer(i) => Ok(*i as f64),
                    _ => Err(self.bad(key, "a list of numbers")),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(|v| Some(Grid(v))),
            Some(_) => Err(self.bad(key, "a list of numbers")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_beats_config_beats_nothing() {
        let c = Config::parse("x = 2\nseed = 7\nsuite = \"thm2\"\n", None).unwrap();
        assert_eq!(c.f64("x", Some(3.0)).unwrap(), Some(3.0));
        assert_eq!(c.f64("x", None).unwrap(), Some(2.0));
        assert_eq!(c.f64("y", None).unwrap(), None);
        assert_eq!(c.u64("seed", None).unwrap(), Some(7));
        assert_eq!(c.string("suite", None).unwrap().as_deref(), Some("thm2"));
    }

    #[test]
    fn grids_from_strings_or_arrays() {
        let c = Config::parse("grid = [0.5, 1, 2]\na-grid = \"1, 1.5, 2\"\n", None).unwrap();
        assert_eq!(
            c.grid("grid", None).unwrap().unwrap().0,
            vec![0.5, 1.0, 2.0]
        );
        assert_eq!(
            c.grid("a-grid", None).unwrap().unwrap().0,
            vec![1.0, 1.5, 2.0]
        );
    }

    #[test]
    fn underscores_are_accepted() {
        let c = Config::parse("rel_tol = 1e-9\n", None).unwrap();
        assert_eq!(c.f64("rel-tol", None).unwrap(), Some(1e-9));
    }

    #[test]
    fn rejects_unknown_and_mistyped_keys() {
        assert!(matches!(
            Config::parse("bogus = 1", None),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            Config::parse("[x]\ny = 1", None),
            Err(CliError::Usage(_))
        ));
        let c = Config::parse("x = \"two\"", None).unwrap();
        assert!(c.f64("x", None).is_err());
        assert!(Config::parse("x = ", None).is_err());
    }
}
