//! Parameter sweeps of the Hopf-cylinder construction over `(m, l)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::hopf::{circle_for_kg, hopf_invariants, lift_cylinder, window, PlaneCurve};
use crate::residual::{verdict, Classification, ResidualOptions, DEFAULT_MARGIN_FLOOR};
use crate::surface::StencilOptions;

use super::config::SuiteConfig;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub m_range: (f64, f64),
    pub l_range: (f64, f64),
    pub steps: (usize, usize),
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite();
        if !finite(self.m_range) || !finite(self.l_range) {
            return Err(GeometryError::InvalidConfig("sweep ranges must be finite".into()));
        }
        if self.steps.0 == 0 || self.steps.1 == 0 {
            return Err(GeometryError::InvalidConfig("sweep needs at least one step per axis".into()));
        }
        Ok(())
    }

    fn values(range: (f64, f64), n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![range.0];
        }
        (0..n).map(|i| range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64).collect()
    }

    pub fn pairs(&self) -> Vec<(f64, f64)> {
        let ls = Self::values(self.l_range, self.steps.1);
        Self::values(self.m_range, self.steps.0).into_iter().flat_map(|m| ls.iter().map(move |&l| (m, l))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: f64,
    pub l: f64,
    /// `4m − l²`.
    pub window: f64,
    pub kappa_g: f64,
    pub mean_curvature: f64,
    pub norm_a_sq: f64,
    /// Extrinsic radius, present when the window is open.
    pub radius: Option<f64>,
    pub verdict: Classification,
    pub expected: Classification,
}

impl SweepRow {
    pub fn agrees(&self) -> bool {
        self.verdict == self.expected
    }
}

/// Verdict the theory predicts for the cylinder over a circle of
/// geodesic curvature `√max(4m − l², 0)`.
pub fn expected_classification(m: f64, l: f64) -> Classification {
    if window(m, l) > 0.0 {
        Classification::ProperBiharmonic
    } else {
        Classification::Minimal
    }
}

/// Base curve with target geodesic curvature, or a geodesic when `κ = 0`.
fn base_curve(m: f64, kappa: f64) -> Result<PlaneCurve<f64>> {
    if kappa > 0.0 || m > 0.0 {
        return Ok(PlaneCurve::unit_speed_circle(m, circle_for_kg(m, kappa)?));
    }
    // Lines through the origin are geodesics; keep F well above the floor.
    let half = if m < 0.0 { (0.5 / -m).sqrt().min(1.0) } else { 1.0 };
    Ok(PlaneCurve::line([0.0, 0.0], [1.0, 0.0], (-half, half)))
}

fn sweep_row(m: f64, l: f64, cfg: &SuiteConfig) -> Result<SweepRow> {
    let q: f64 = window(m, l);
    let kappa = q.max(0.0).sqrt();
    let opts = ResidualOptions {
        stencil: StencilOptions { step: cfg.fd_step, richardson: true },
        tol: cfg.tol,
        margin_floor: DEFAULT_MARGIN_FLOOR,
    };
    let inv = hopf_invariants(m, l, kappa)?;
    let patch = lift_cylinder(m, l, base_curve(m, kappa)?, (-1.0, 1.0))?;
    let v = verdict(&patch, cfg.grid, &opts)?;
    Ok(SweepRow {
        m,
        l,
        window: q,
        kappa_g: kappa,
        mean_curvature: inv.mean_curvature,
        norm_a_sq: inv.norm_a_sq,
        // Only the biharmonic circle has the extrinsic radius 1/√(8m − l²).
        radius: if q > 0.0 { inv.radius(m).ok() } else { None },
        verdict: v.classification,
        expected: expected_classification(m, l),
    })
}

pub fn run_sweep(spec: &SweepSpec, cfg: &SuiteConfig) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    cfg.validate()?;
    spec.pairs().into_par_iter().map(|(m, l)| sweep_row(m, l, cfg)).collect()
}

pub fn rows_to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| GeometryError::Io { path: "<csv>".into(), message: e.to_string() };
    w.write_record(["m", "l", "window", "kappa_g", "mean_curvature", "norm_a_sq", "radius", "verdict", "expected"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.l.to_string(),
            r.window.to_string(),
            r.kappa_g.to_string(),
            r.mean_curvature.to_string(),
            r.norm_a_sq.to_string(),
            r.radius.map(|x| x.to_string()).unwrap_or_default(),
            r.verdict.name().to_string(),
            r.expected.name().to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| GeometryError::Io { path: "<csv>".into(), message: e.to_string() })?;
    String::from_utf8(bytes).map_err(|e| GeometryError::Io { path: "<csv>".into(), message: e.to_string() })
}
