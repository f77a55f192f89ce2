//! Closed-form frame tables for the BCV family and Sol.
//!
//! This is oracle data: the verification suites and tests compare the
//! metric-derived connection and curvature against it. Nothing in the
//! computation path reads it.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::chart::{ChartPoint, MetricModel};
use crate::error::{GeometryError, Result};

const TABLES_JSON: &str = include_str!("../data/reference_tables.json");
pub const SUPPORTED_VERSION: u32 = 1;

/// One monomial `c · m^pm · l^pl · x^px · y^py`.
#[derive(Clone, Debug, Deserialize)]
pub struct Term {
    pub c: f64,
    #[serde(default)]
    pub m: i32,
    #[serde(default)]
    pub l: i32,
    #[serde(default)]
    pub x: i32,
    #[serde(default)]
    pub y: i32,
}

pub type Poly = Vec<Term>;

fn eval_poly(poly: &[Term], m: f64, l: f64, x: f64, y: f64) -> f64 {
    poly.iter().map(|t| t.c * m.powi(t.m) * l.powi(t.l) * x.powi(t.x) * y.powi(t.y)).sum()
}

#[derive(Clone, Debug, Deserialize)]
struct VectorEntry {
    i: usize,
    j: usize,
    value: [Poly; 3],
}

#[derive(Clone, Debug, Deserialize)]
struct ScalarEntry {
    i: usize,
    j: usize,
    value: Poly,
}

#[derive(Clone, Debug, Deserialize)]
struct ModelTables {
    brackets: Vec<VectorEntry>,
    connection: Vec<VectorEntry>,
    curvature: Vec<ScalarEntry>,
    ricci: Vec<ScalarEntry>,
}

#[derive(Clone, Debug, Deserialize)]
struct TableFile {
    version: u32,
    models: BTreeMap<String, ModelTables>,
}

#[derive(Clone, Debug)]
pub struct ReferenceTables {
    models: BTreeMap<String, ModelTables>,
}

/// Table values evaluated at one point of one model, all in frame components
/// and with 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameTables {
    /// `brackets[i][j]` = coefficients of `[E_i, E_j]`.
    pub brackets: [[[f64; 3]; 3]; 3],
    /// `connection[i][j]` = coefficients of `∇_{E_i} E_j`.
    pub connection: [[[f64; 3]; 3]; 3],
    /// `riemann[a][b][c][d] = R(E_a, E_b, E_c, E_d)`.
    pub riemann: [[[[f64; 3]; 3]; 3]; 3],
    pub ricci: [[f64; 3]; 3],
}

impl ReferenceTables {
    pub fn load() -> Result<Self> {
        Self::parse(TABLES_JSON)
    }

    pub fn parse(json: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(json).map_err(|e| GeometryError::InvalidConfig(format!("reference tables: {e}")))?;
        if file.version != SUPPORTED_VERSION {
            return Err(GeometryError::InvalidConfig(format!(
                "reference tables version {} unsupported (expected {SUPPORTED_VERSION})",
                file.version
            )));
        }
        for (name, t) in &file.models {
            let indices = t
                .brackets
                .iter()
                .chain(&t.connection)
                .map(|e| (e.i, e.j))
                .chain(t.curvature.iter().chain(&t.ricci).map(|e| (e.i, e.j)));
            for (i, j) in indices {
                if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
                    return Err(GeometryError::InvalidConfig(format!(
                        "reference tables: index ({i}, {j}) out of range in model {name}"
                    )));
                }
            }
        }
        Ok(ReferenceTables { models: file.models })
    }

    /// Evaluates every table entry for `model` at `p`. Returns `None` for models
    /// without a table (the space-form chart).
    pub fn evaluate(&self, model: &MetricModel<f64>, p: &ChartPoint<f64>) -> Option<FrameTables> {
        let (key, m, l) = match *model {
            MetricModel::Bcv { m, l } => ("bcv", m, l),
            MetricModel::Sol => ("sol", 0.0, 0.0),
            MetricModel::SpaceForm { .. } => return None,
        };
        let t = self.models.get(key)?;
        let ev = |poly: &[Term]| eval_poly(poly, m, l, p.x, p.y);

        let mut out = FrameTables {
            brackets: [[[0.0; 3]; 3]; 3],
            connection: [[[0.0; 3]; 3]; 3],
            riemann: [[[[0.0; 3]; 3]; 3]; 3],
            ricci: [[0.0; 3]; 3],
        };
        for e in &t.brackets {
            let v = [ev(&e.value[0]), ev(&e.value[1]), ev(&e.value[2])];
            out.brackets[e.i - 1][e.j - 1] = v;
            out.brackets[e.j - 1][e.i - 1] = [-v[0], -v[1], -v[2]];
        }
        for e in &t.connection {
            out.connection[e.i - 1][e.j - 1] = [ev(&e.value[0]), ev(&e.value[1]), ev(&e.value[2])];
        }
        for e in &t.curvature {
            let v = ev(&e.value);
            let (i, j) = (e.i - 1, e.j - 1);
            out.riemann[i][j][i][j] = v;
            out.riemann[j][i][j][i] = v;
            out.riemann[i][j][j][i] = -v;
            out.riemann[j][i][i][j] = -v;
        }
        for e in &t.ricci {
            let v = ev(&e.value);
            out.ricci[e.i - 1][e.j - 1] = v;
            out.ricci[e.j - 1][e.i - 1] = v;
        }
        Some(out)
    }
}
