//! Run configuration: flat `key=value` files overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qtor_core::verify::{Suite, VerifyConfig};
use qtor_core::ModelConfig;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: expected key=value")]
    Syntax { path: PathBuf, line: usize },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {value}")]
    Value { key: String, value: String },
    #[error("{0}")]
    Invalid(String),
}

/// Keys accepted in config files; each matches the long flag of the same name.
pub const KEYS: &[&str] = &[
    "n",
    "w",
    "colors",
    "trunc",
    "exact-boxes",
    "modes",
    "order",
    "backend",
    "modulus",
    "seed",
    "points",
    "rational-points",
    "suites",
    "out",
    "jobs",
    "timing",
];

/// Parses a flat `key=value` file. Blank lines and `#` comments are skipped.
pub fn read_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_pairs(&text, path)
}

pub fn parse_pairs(text: &str, path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            path: path.to_path_buf(),
            line: i + 1,
        })?;
        let k = k.trim().to_string();
        if !KEYS.contains(&k.as_str()) {
            return Err(ConfigError::UnknownKey(k));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

/// Which fields the points are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendChoice {
    /// Prime-field points plus rational points (the default).
    Mixed,
    Prime,
    Rational,
}

impl BackendChoice {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "mixed" => Some(BackendChoice::Mixed),
            "prime" => Some(BackendChoice::Prime),
            "rational" => Some(BackendChoice::Rational),
            _ => None,
        }
    }
}

/// Every setting after merging file values and flags.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub values: BTreeMap<String, String>,
}

impl Settings {
    pub fn set(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        self.values
            .get(key)
            .map(|v| {
                v.parse().map_err(|_| ConfigError::Value {
                    key: key.to_string(),
                    value: v.clone(),
                })
            })
            .transpose()
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, ConfigError> {
        self.values
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse().map_err(|_| ConfigError::Value {
                            key: key.to_string(),
                            value: v.clone(),
                        })
                    })
                    .collect()
            })
            .transpose()
    }

    pub fn model(&self) -> Result<ModelConfig, ConfigError> {
        let n: u32 = self.get("n")?.unwrap_or(3);
        let colors: Vec<u32> = match self.list("colors")? {
            Some(c) => c,
            None => vec![0; self.get::<usize>("w")?.unwrap_or(1)],
        };
        if let Some(w) = self.get::<usize>("w")? {
            if w != colors.len() {
                return Err(ConfigError::Invalid(format!(
                    "w = {w} but {} colors were given",
                    colors.len()
                )));
            }
        }
        ModelConfig::new(n, colors).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn verify_config(&self) -> Result<VerifyConfig, ConfigError> {
        let mut cfg = VerifyConfig::new(self.model()?);
        if let Some(v) = self.get("trunc")? {
            cfg.truncation = v;
        }
        if let Some(v) = self.get("exact-boxes")? {
            cfg.exact_boxes = v;
        }
        if let Some(v) = self.get("modes")? {
            cfg.modes = v;
            cfg.order = cfg.order.max(2 * v.max(0) as usize + 2);
        }
        if let Some(v) = self.get("order")? {
            cfg.order = v;
        }
        if let Some(v) = self.get("modulus")? {
            cfg.prime = v;
        }
        if let Some(v) = self.get("seed")? {
            cfg.seed = v;
        }
        let points: Option<usize> = self.get("points")?;
        let backend = match self.values.get("backend") {
            Some(b) => BackendChoice::parse(b).ok_or_else(|| ConfigError::Value {
                key: "backend".into(),
                value: b.clone(),
            })?,
            None => BackendChoice::Mixed,
        };
        match backend {
            BackendChoice::Mixed => {
                if let Some(p) = points {
                    cfg.prime_points = p;
                }
                if let Some(r) = self.get("rational-points")? {
                    cfg.rational_points = r;
                }
            }
            BackendChoice::Prime => {
                cfg.prime_points = points.unwrap_or(cfg.prime_points);
                cfg.rational_points = 0;
            }
            BackendChoice::Rational => {
                cfg.prime_points = 0;
                cfg.rational_points = points.unwrap_or(1);
                cfg.rational_relations = true;
            }
        }
        if let Some(names) = self.list::<String>("suites")? {
            cfg.suites = names
                .iter()
                .map(|s| {
                    Suite::parse(s).ok_or_else(|| ConfigError::Value {
                        key: "suites".into(),
                        value: s.clone(),
                    })
                })
                .collect::<Result<_, _>>()?;
        }
        if let Some(v) = self.get("timing")? {
            cfg.timing = v;
        }
        cfg.validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(cfg)
    }

    pub fn jobs(&self) -> Result<Option<usize>, ConfigError> {
        self.get("jobs")
    }

    pub fn out(&self) -> Option<PathBuf> {
        self.values.get("out").map(PathBuf::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(pairs: &[(&str, &str)]) -> Settings {
        Settings {
            values: pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    #[test]
    fn file_syntax() {
        let p = Path::new("run.cfg");
        let m = parse_pairs("# comment\nn = 4\n\ncolors=0,2 # trailing\n", p).unwrap();
        assert_eq!(m["n"], "4");
        assert_eq!(m["colors"], "0,2");
        assert!(matches!(
            parse_pairs("n 4", p),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_pairs("bogus=1", p),
            Err(ConfigError::UnknownKey(_))
        ));
    }

    #[test]
    fn defaults_and_backends() {
        let cfg = settings(&[]).verify_config().unwrap();
        assert_eq!((cfg.prime_points, cfg.rational_points), (3, 1));
        let cfg = settings(&[("backend", "prime"), ("points", "2")])
            .verify_config()
            .unwrap();
        assert_eq!((cfg.prime_points, cfg.rational_points), (2, 0));
        let cfg = settings(&[("backend", "rational")])
            .verify_config()
            .unwrap();
        assert_eq!((cfg.prime_points, cfg.rational_points), (0, 1));
        assert!(cfg.rational_relations);
    }

    #[test]
    fn invalid_settings() {
        assert!(settings(&[("n", "2")]).verify_config().is_err());
        assert!(settings(&[("w", "2"), ("colors", "0")])
            .verify_config()
            .is_err());
        assert!(settings(&[("modes", "2"), ("order", "3")])
            .verify_config()
            .is_err());
        assert!(settings(&[("suites", "boundary,nope")])
            .verify_config()
            .is_err());
    }

    #[test]
    fn modes_raise_the_default_order() {
        let cfg = settings(&[("modes", "4")]).verify_config().unwrap();
        assert_eq!(cfg.order, 10);
    }
}
