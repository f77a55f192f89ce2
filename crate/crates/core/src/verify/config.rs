//! Suite configuration: built-in defaults, overridden by a plain-text
//! `key = value` file, overridden by command-line flags.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::residual::{GridSpec, DEFAULT_TOL};
use crate::surface::DEFAULT_FD_STEP;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Restricts the BCV parameter sets of the suites to one pair when set.
    pub m: Option<f64>,
    pub l: Option<f64>,
    pub grid: GridSpec,
    /// Residual tolerance for biharmonicity checks.
    pub tol: f64,
    pub fd_step: f64,
    pub seed: u64,
    /// Number of quasi-random ambient points per model in property checks.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            m: None,
            l: None,
            grid: GridSpec::new(6, 6),
            tol: DEFAULT_TOL,
            fd_step: DEFAULT_FD_STEP,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

fn bad(key: &str, value: &str) -> GeometryError {
    GeometryError::InvalidConfig(format!("invalid value `{value}` for `{key}`"))
}

fn number(key: &str, value: &str) -> Result<f64> {
    value.trim().parse::<f64>().map_err(|_| bad(key, value))
}

/// Parses `NxM` (or a single `N` for a square grid).
pub fn parse_grid(value: &str) -> Result<GridSpec> {
    let v = value.trim();
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad("grid", value));
    let g = match v.split_once(['x', 'X']) {
        Some((a, b)) => GridSpec::new(parse(a)?, parse(b)?),
        None => {
            let n = parse(v)?;
            GridSpec::new(n, n)
        }
    };
    Ok(g)
}

/// Splits `key = value` lines, skipping blanks and `#` comments.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| GeometryError::InvalidConfig(format!("line {}: expected key = value", n + 1)))?;
        out.push((k.trim().replace('-', "_"), v.trim().to_string()));
    }
    Ok(out)
}

impl SuiteConfig {
    /// Applies one setting. Returns `Ok(false)` for keys this type does not own,
    /// so callers can layer their own keys on the same file.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<bool> {
        match key.replace('-', "_").as_str() {
            "m" => self.m = Some(number(key, value)?),
            "l" => self.l = Some(number(key, value)?),
            "grid" => self.grid = parse_grid(value)?,
            "tol" => self.tol = number(key, value)?,
            "fd_step" => self.fd_step = number(key, value)?,
            "seed" => self.seed = value.trim().parse().map_err(|_| bad(key, value))?,
            "samples" => self.samples = value.trim().parse().map_err(|_| bad(key, value))?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(GeometryError::InvalidConfig(msg));
        for (name, v) in [("m", self.m), ("l", self.l)] {
            if let Some(v) = v {
                if !v.is_finite() {
                    return invalid(format!("{name} must be finite"));
                }
            }
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return invalid(format!("tol must be positive, got {}", self.tol));
        }
        if !(self.fd_step.is_finite() && self.fd_step > 0.0 && self.fd_step <= 0.05) {
            return invalid(format!("fd_step must lie in (0, 0.05], got {}", self.fd_step));
        }
        if self.grid.nu == 0 || self.grid.nv == 0 {
            return invalid("grid must have at least one point per direction".into());
        }
        if self.samples == 0 {
            return invalid("samples must be at least 1".into());
        }
        Ok(())
    }

    /// The single BCV pair requested on the command line, if any.
    pub fn bcv_override(&self) -> Option<(f64, f64)> {
        match (self.m, self.l) {
            (None, None) => None,
            (m, l) => Some((m.unwrap_or(1.0), l.unwrap_or(0.0))),
        }
    }
}
