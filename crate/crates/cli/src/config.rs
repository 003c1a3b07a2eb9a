//! Flat `key = value` run configuration.
//!
//! ```text
//! # defocusing cubic run
//! theta = 1, 1.4142135623730951, 1.7320508075688772
//! p = 2
//! sign = plus
//! bandlimit = 8
//! T = 0.05
//! n = 64
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use torus_nls::lattice::{TorusMetric, DEFAULT_LAPLACE_SCALE};
use torus_nls::littlewood_paley::CutoffProfile;
use torus_nls::nonlinearity::Sign;

pub const KEYS: [&str; 12] =
    ["theta", "laplace_scale", "p", "sign", "bandlimit", "T", "n", "oversample", "profile", "seed", "output", "amplitude"];

/// Keys `solve` cannot default.
pub const SOLVE_KEYS: [&str; 4] = ["p", "bandlimit", "T", "n"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("config line {line}: key `{key}`: {message}")]
    Value { line: usize, key: String, message: String },

    #[error("config: missing required key `{0}`")]
    Missing(String),

    #[error("config: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub theta: [f64; 3],
    pub laplace_scale: f64,
    pub p: f64,
    pub sign: Sign,
    pub bandlimit: usize,
    #[serde(rename = "T")]
    pub t_final: f64,
    pub n: usize,
    pub oversample: usize,
    pub profile: CutoffProfile,
    /// Unset means "keep the preset's own seed".
    pub seed: Option<u64>,
    pub output: PathBuf,
    /// `H^{s_c}` norm of generated initial data.
    pub amplitude: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let generic = TorusMetric::generic();
        RunConfig {
            theta: generic.theta,
            laplace_scale: DEFAULT_LAPLACE_SCALE,
            p: 2.0,
            sign: Sign::Plus,
            bandlimit: 8,
            t_final: 0.05,
            n: 64,
            oversample: 2,
            profile: CutoffProfile::Smooth,
            seed: None,
            output: PathBuf::from("out"),
            amplitude: 0.01,
        }
    }
}

fn number<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::Value { line, key: key.into(), message: format!("cannot parse {v:?}") })
}

impl RunConfig {
    pub fn metric(&self) -> Result<TorusMetric, torus_nls::Error> {
        TorusMetric::new(self.theta, self.laplace_scale)
    }

    /// Parse `text`, failing if any of `required` is absent.
    pub fn parse(text: &str, required: &[&str]) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line, message: format!("expected `key = value`, got {body:?}") })?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::Syntax { line, message: format!("unknown key `{key}`") });
            }
            if !seen.insert(key.to_string()) {
                return Err(ConfigError::Syntax { line, message: format!("duplicate key `{key}`") });
            }
            let bad = |message: &str| ConfigError::Value { line, key: key.into(), message: message.into() };
            match key {
                "theta" => {
                    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                    if parts.len() != 3 {
                        return Err(bad("expected three comma-separated numbers"));
                    }
                    for (slot, v) in cfg.theta.iter_mut().zip(parts) {
                        *slot = number(line, key, v)?;
                    }
                    if cfg.theta.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
                        return Err(bad("entries must be positive"));
                    }
                }
                "laplace_scale" => {
                    cfg.laplace_scale = number(line, key, value)?;
                    if !(cfg.laplace_scale.is_finite() && cfg.laplace_scale > 0.0) {
                        return Err(bad("must be positive"));
                    }
                }
                "p" => {
                    cfg.p = number(line, key, value)?;
                    if !(cfg.p.is_finite() && cfg.p >= 2.0) {
                        return Err(bad("need p >= 2"));
                    }
                }
                "sign" => {
                    cfg.sign = match value {
                        "plus" | "+1" | "1" => Sign::Plus,
                        "minus" | "-1" => Sign::Minus,
                        _ => return Err(bad("expected plus or minus")),
                    }
                }
                "bandlimit" => {
                    cfg.bandlimit = number(line, key, value)?;
                    if cfg.bandlimit == 0 {
                        return Err(bad("must be at least 1"));
                    }
                }
                "T" => {
                    cfg.t_final = number(line, key, value)?;
                    if !(cfg.t_final.is_finite() && cfg.t_final > 0.0) {
                        return Err(bad("must be positive"));
                    }
                }
                "n" => {
                    cfg.n = number(line, key, value)?;
                    if cfg.n == 0 {
                        return Err(bad("must be at least 1"));
                    }
                }
                "oversample" => {
                    cfg.oversample = number(line, key, value)?;
                    if cfg.oversample == 0 {
                        return Err(bad("must be at least 1"));
                    }
                }
                "profile" => {
                    cfg.profile = match value {
                        "smooth" => CutoffProfile::Smooth,
                        "sharp" => CutoffProfile::Sharp,
                        _ => return Err(bad("expected smooth or sharp")),
                    }
                }
                "seed" => cfg.seed = Some(number(line, key, value)?),
                "output" => {
                    if value.is_empty() {
                        return Err(bad("must not be empty"));
                    }
                    cfg.output = PathBuf::from(value);
                }
                "amplitude" => {
                    cfg.amplitude = number(line, key, value)?;
                    if !(cfg.amplitude.is_finite() && cfg.amplitude >= 0.0) {
                        return Err(bad("must be nonnegative"));
                    }
                }
                _ => unreachable!("key list checked above"),
            }
        }
        if let Some(missing) = required.iter().find(|k| !seen.contains(**k)) {
            return Err(ConfigError::Missing(missing.to_string()));
        }
        Ok(cfg)
    }

    /// Every key, floats in shortest round-trip form.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let [a, b, c] = self.theta;
        let _ = writeln!(out, "theta = {a}, {b}, {c}");
        let _ = writeln!(out, "laplace_scale = {}", self.laplace_scale);
        let _ = writeln!(out, "p = {}", self.p);
        let _ = writeln!(out, "sign = {}", if self.sign == Sign::Plus { "plus" } else { "minus" });
        let _ = writeln!(out, "bandlimit = {}", self.bandlimit);
        let _ = writeln!(out, "T = {}", self.t_final);
        let _ = writeln!(out, "n = {}", self.n);
        let _ = writeln!(out, "oversample = {}", self.oversample);
        let _ = writeln!(out, "profile = {}", self.profile.name());
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed = {seed}");
        }
        let _ = writeln!(out, "output = {}", self.output.display());
        let _ = writeln!(out, "amplitude = {}", self.amplitude);
        out
    }
}

pub fn load_config(path: impl AsRef<Path>, required: &[&str]) -> Result<RunConfig, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    RunConfig::parse(&text, required)
}

pub fn save_config(path: impl AsRef<Path>, cfg: &RunConfig) -> Result<(), ConfigError> {
    let path = path.as_ref();
    std::fs::write(path, cfg.render()).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_from_empty_text() {
        assert_eq!(RunConfig::parse("# nothing\n\n", &[]).unwrap(), RunConfig::default());
    }

    #[test]
    fn render_parse_round_trip() {
        let cfg = RunConfig {
            theta: [1.0, 0.1 + 0.2, std::f64::consts::E],
            p: 7.0 / 3.0,
            sign: Sign::Minus,
            seed: Some(u64::MAX),
            profile: CutoffProfile::Sharp,
            ..RunConfig::default()
        };
        let back = RunConfig::parse(&cfg.render(), &KEYS[..11]).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.theta[1].to_bits(), (0.1f64 + 0.2).to_bits());
    }

    #[test]
    fn errors_name_line_and_key() {
        let e = RunConfig::parse("p = 2\nbandlimit = many\n", &[]).unwrap_err();
        assert_eq!(e.to_string(), "config line 2: key `bandlimit`: cannot parse \"many\"");
        let e = RunConfig::parse("p = 2\n", &SOLVE_KEYS).unwrap_err();
        assert_eq!(e, ConfigError::Missing("bandlimit".into()));
        assert!(matches!(RunConfig::parse("colour = red", &[]), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(RunConfig::parse("p = 2\np = 3", &[]), Err(ConfigError::Syntax { line: 2, .. })));
        assert!(matches!(RunConfig::parse("\n\njust words", &[]), Err(ConfigError::Syntax { line: 3, .. })));
        assert!(matches!(RunConfig::parse("p = 1.5", &[]), Err(ConfigError::Value { .. })));
    }

    #[test]
    fn comments_are_stripped() {
        let cfg = RunConfig::parse("p = 3 # quintic would be 4\n  # whole line\nsign = minus", &[]).unwrap();
        assert_eq!(cfg.p, 3.0);
        assert_eq!(cfg.sign, Sign::Minus);
    }
}
