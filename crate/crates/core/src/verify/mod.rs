//! Named verification suites, parameter sweeps and their reports.

mod ambient;
mod config;
mod sampling;
mod suites;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

pub use ambient::{
    bianchi_defect, frame_orthonormality_defect, metric_compatibility_defect, riemann_symmetry_defect, torsion_defect,
};
pub use config::{parse_grid, parse_key_values, SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
pub use sampling::quasi_random_points;
pub use suites::{laplacian_convergence_order, BCV_SETTINGS, EXTRA_BCV_SETTINGS, HOPF_SETTINGS};
pub use sweep::{expected_classification, rows_to_csv, run_sweep, SweepRow, SweepSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteName {
    GeometryTables,
    HopfCircle,
    SolCmc,
    SphereInS3,
    UmbilicalCodazzi,
    Properties,
    Full,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::GeometryTables,
        SuiteName::HopfCircle,
        SuiteName::SolCmc,
        SuiteName::SphereInS3,
        SuiteName::UmbilicalCodazzi,
        SuiteName::Properties,
        SuiteName::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::GeometryTables => "geometry-tables",
            SuiteName::HopfCircle => "hopf-circle",
            SuiteName::SolCmc => "sol-cmc",
            SuiteName::SphereInS3 => "sphere-in-s3",
            SuiteName::UmbilicalCodazzi => "umbilical-codazzi",
            SuiteName::Properties => "properties",
            SuiteName::Full => "full",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL.into_iter().find(|n| n.name() == s).ok_or_else(|| GeometryError::UnknownSuite(s.to_string()))
    }
}

/// Outcome of one check. `residual` and `margin` are `None` when the check
/// could not be evaluated; `error` then says why.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub desc: String,
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    pub margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl CheckRecord {
    /// Passes when `residual ≤ tol`.
    pub fn at_most(id: impl Into<String>, desc: impl Into<String>, residual: f64, tol: f64) -> Self {
        CheckRecord {
            id: id.into(),
            desc: desc.into(),
            residual: finite(residual),
            tol,
            pass: residual <= tol,
            margin: finite(tol - residual),
            error: None,
        }
    }

    /// Passes when `value ≥ floor`.
    pub fn at_least(id: impl Into<String>, desc: impl Into<String>, value: f64, floor: f64) -> Self {
        CheckRecord {
            id: id.into(),
            desc: desc.into(),
            residual: finite(value),
            tol: floor,
            pass: value >= floor,
            margin: finite(value - floor),
            error: None,
        }
    }

    /// A yes/no check, recorded as residual 0 or 1 against tolerance 0.
    pub fn holds(id: impl Into<String>, desc: impl Into<String>, ok: bool) -> Self {
        let mut r = CheckRecord::at_most(id, desc, if ok { 0.0 } else { 1.0 }, 0.0);
        r.margin = None;
        r
    }

    pub fn failed(id: impl Into<String>, desc: impl Into<String>, err: &GeometryError) -> Self {
        CheckRecord {
            id: id.into(),
            desc: desc.into(),
            residual: None,
            tol: 0.0,
            pass: false,
            margin: None,
            error: Some(err.to_string()),
        }
    }

    /// `at_most` when `value` is available, `failed` otherwise.
    pub fn at_most_or(id: impl Into<String>, desc: impl Into<String>, value: Result<f64>, tol: f64) -> Self {
        match value {
            Ok(v) => CheckRecord::at_most(id, desc, v, tol),
            Err(e) => CheckRecord::failed(id, desc, &e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    pub duration_ms: u64,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing field removed; identical for identical inputs.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("duration_ms");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    /// One row per check: `id,desc,residual,tol,pass,margin`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "desc", "residual", "tol", "pass", "margin"]).expect("in-memory write");
        let opt = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
        for c in &self.checks {
            w.write_record([
                c.id.clone(),
                c.desc.clone(),
                opt(c.residual),
                format!("{:e}", c.tol),
                c.pass.to_string(),
                opt(c.margin),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

pub fn run_suite(name: SuiteName, config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let checks = match name {
        SuiteName::GeometryTables => suites::geometry_tables(config)?,
        SuiteName::HopfCircle => suites::hopf_circle(config)?,
        SuiteName::SolCmc => suites::sol_cmc(config)?,
        SuiteName::SphereInS3 => suites::sphere_in_s3(config)?,
        SuiteName::UmbilicalCodazzi => suites::umbilical_codazzi(config)?,
        SuiteName::Properties => suites::properties(config)?,
        SuiteName::Full => {
            let mut all = Vec::new();
            for part in &SuiteName::ALL[..SuiteName::ALL.len() - 1] {
                all.extend(run_suite(*part, config)?.checks);
            }
            all
        }
    };
    Ok(SuiteReport {
        suite: name.name().to_string(),
        config: config.clone(),
        pass: checks.iter().all(|c| c.pass),
        checks,
        duration_ms: start.elapsed().as_millis() as u64,
    })
}
