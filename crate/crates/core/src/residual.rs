//! The biharmonic system for surfaces in a 3-manifold,
//!
//! ```text
//! ΔH − H|A|² + H·Ric(ξ,ξ) = 0
//! 2A(grad H) + grad H² − 2H(Ric ξ)^⊤ = 0,
//! ```
//!
//! its reduced form for constant mean curvature, the algebraic conditions it
//! becomes in BCV spaces and in Sol, and grid verdicts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chart::{CurvatureData, MetricModel};
use crate::error::{GeometryError, Result};
use crate::linalg::{inv2, Mat2};
use crate::scalar::Real;
use crate::surface::{ParamDomain, ShapeReport, StencilOptions, SurfacePatch};

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MARGIN_FLOOR: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualOptions<T> {
    pub stencil: StencilOptions<T>,
    pub tol: T,
    /// Smallest `|H|` accepted as "not minimal" for a proper verdict.
    pub margin_floor: T,
}

impl<T: Real> Default for ResidualOptions<T> {
    fn default() -> Self {
        ResidualOptions {
            stencil: StencilOptions::default(),
            tol: T::lit(DEFAULT_TOL),
            margin_floor: T::lit(DEFAULT_MARGIN_FLOOR),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BiharmonicResidual<T> {
    pub u: T,
    pub v: T,
    pub mean_curvature: T,
    pub norm_a_sq: T,
    /// `Ric(ξ, ξ)`.
    pub ricci_normal: T,
    pub laplacian_h: T,
    pub grad_h_norm: T,
    pub normal_residual: T,
    pub tangential_residual: T,
    pub chn_triple: Option<[T; 3]>,
    pub csl_triple: Option<[T; 3]>,
}

impl<T: Real> BiharmonicResidual<T> {
    /// The larger of the two residual magnitudes.
    pub fn magnitude(&self) -> T {
        self.normal_residual.abs().max(self.tangential_residual.abs())
    }
}

/// Ambient Ricci data along the normal: `Ric(ξ,ξ)` and the tangential part of
/// `Ric(ξ)` as components in the `(r_u, r_v)` basis.
struct NormalRicci<T> {
    normal: T,
    tangent: [T; 2],
}

fn normal_ricci<T: Real>(curv: &CurvatureData<T>, report: &ShapeReport<T>) -> NormalRicci<T> {
    let xi = &report.normal.components;
    let cov = [curv.ricci2(xi, &report.jet.ru), curv.ricci2(xi, &report.jet.rv)];
    NormalRicci { normal: curv.ricci2(xi, xi), tangent: raise(&report.first_form, cov) }
}

fn raise<T: Real>(form: &Mat2<T>, cov: [T; 2]) -> [T; 2] {
    let inv = inv2(form);
    [inv[0][0] * cov[0] + inv[0][1] * cov[1], inv[1][0] * cov[0] + inv[1][1] * cov[1]]
}

fn form_norm<T: Real>(form: &Mat2<T>, w: [T; 2]) -> T {
    let q = form[0][0] * w[0] * w[0] + T::lit(2.0) * form[0][1] * w[0] * w[1] + form[1][1] * w[1] * w[1];
    q.max(T::zero()).sqrt()
}

fn bcv_triple<T: Real>(model: &MetricModel<T>, report: &ShapeReport<T>) -> Result<[T; 3]> {
    let MetricModel::Bcv { m, l } = *model else {
        return Err(GeometryError::WrongAmbient { expected: "bcv", found: model.kind().name() });
    };
    let (c, a1, a2) = adapted_coefficients(model, report)?;
    let q = l * l - T::lit(4.0) * m;
    let first = report.norm_a_sq - (T::lit(4.0) * m - l * l / T::lit(2.0)) - q * c[2] * c[2];
    Ok([first, q * c[2] * a1[2], q * c[2] * a2[2]])
}

fn sol_triple<T: Real>(model: &MetricModel<T>, report: &ShapeReport<T>) -> Result<[T; 3]> {
    if !matches!(model, MetricModel::Sol) {
        return Err(GeometryError::WrongAmbient { expected: "sol", found: model.kind().name() });
    }
    let (c, a, b) = adapted_coefficients(model, report)?;
    Ok([report.norm_a_sq + T::lit(2.0) * c[2] * c[2], c[2] * a[2], c[2] * b[2]])
}

/// Frame coefficients of `ξ`, `e₁`, `e₂`.
fn adapted_coefficients<T: Real>(model: &MetricModel<T>, r: &ShapeReport<T>) -> Result<([T; 3], [T; 3], [T; 3])> {
    Ok((
        model.frame_coefficients(&r.normal)?,
        model.frame_coefficients(&r.tangent_frame[0])?,
        model.frame_coefficients(&r.tangent_frame[1])?,
    ))
}

/// The BCV and Sol algebraic triples; at most one applies to a given model.
type Triples<T> = (Option<[T; 3]>, Option<[T; 3]>);

fn model_triples<T: Real>(model: &MetricModel<T>, report: &ShapeReport<T>) -> Result<Triples<T>> {
    Ok(match model {
        MetricModel::Bcv { .. } => (Some(bcv_triple(model, report)?), None),
        MetricModel::Sol => (None, Some(sol_triple(model, report)?)),
        MetricModel::SpaceForm { .. } => (None, None),
    })
}

/// Both equations of the system at an interior parameter point.
pub fn residual_full<T: Real>(
    patch: &SurfacePatch<T>,
    u: T,
    v: T,
    opts: &ResidualOptions<T>,
) -> Result<BiharmonicResidual<T>> {
    let report = patch.shape_report(u, v)?;
    let h_field = patch.mean_curvature_field();
    let grad = patch.intrinsic_gradient(&h_field, u, v, opts.stencil)?;
    let lap = patch.laplace_beltrami(&h_field, u, v, opts.stencil)?;
    let curv = patch.model.curvature_at(&report.point)?;
    let ric = normal_ricci(&curv, &report);

    let h = report.mean_curvature;
    let two = T::lit(2.0);
    let a = &report.shape_operator;
    let w = grad.param_components;
    let mut tangential = [T::zero(); 2];
    for (i, t) in tangential.iter_mut().enumerate() {
        let aw = a[i][0] * w[0] + a[i][1] * w[1];
        *t = two * aw + two * h * w[i] - two * h * ric.tangent[i];
    }
    let (chn, csl) = model_triples(&patch.model, &report)?;
    Ok(BiharmonicResidual {
        u,
        v,
        mean_curvature: h,
        norm_a_sq: report.norm_a_sq,
        ricci_normal: ric.normal,
        laplacian_h: lap,
        grad_h_norm: grad.norm,
        normal_residual: lap - h * report.norm_a_sq + h * ric.normal,
        tangential_residual: form_norm(&report.first_form, tangential),
        chn_triple: chn,
        csl_triple: csl,
    })
}

/// `(|A|² − (4m − l²/2) − (l² − 4m)(c³)², (l² − 4m)c³a₁³, (l² − 4m)c³a₂³)`.
pub fn chn_residual<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<[T; 3]> {
    if !matches!(patch.model, MetricModel::Bcv { .. }) {
        return Err(GeometryError::WrongAmbient { expected: "bcv", found: patch.model.kind().name() });
    }
    bcv_triple(&patch.model, &patch.shape_report(u, v)?)
}

/// `(|A|² + 2(c³)², c³a³, c³b³)`.
pub fn csl_residual<T: Real>(patch: &SurfacePatch<T>, u: T, v: T) -> Result<[T; 3]> {
    if !matches!(patch.model, MetricModel::Sol) {
        return Err(GeometryError::WrongAmbient { expected: "sol", found: patch.model.kind().name() });
    }
    sol_triple(&patch.model, &patch.shape_report(u, v)?)
}

/// `nu × nv` interior points, `u_i = u₀ + (i+1)(u₁−u₀)/(nu+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nu: usize,
    pub nv: usize,
}

impl GridSpec {
    pub fn new(nu: usize, nv: usize) -> Self {
        GridSpec { nu, nv }
    }

    pub fn points<T: Real>(&self, domain: &ParamDomain<T>) -> Result<Vec<(T, T)>> {
        if self.nu == 0 || self.nv == 0 {
            return Err(GeometryError::EmptyGrid);
        }
        let at = |(a, b): (T, T), i: usize, n: usize| a + (b - a) * T::lit((i + 1) as f64) / T::lit((n + 1) as f64);
        let mut out = Vec::with_capacity(self.nu * self.nv);
        for i in 0..self.nu {
            for j in 0..self.nv {
                out.push((at(domain.u, i, self.nu), at(domain.v, j, self.nv)));
            }
        }
        Ok(out)
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { nu: 8, nv: 8 }
    }
}

/// A patch whose mean curvature has been checked constant over a grid; only
/// such patches admit the reduced system.
#[derive(Clone, Copy, Debug)]
pub struct CmcPatch<'a, T> {
    patch: &'a SurfacePatch<T>,
    max_grad_norm: T,
}

impl<'a, T: Real> CmcPatch<'a, T> {
    pub fn verify(patch: &'a SurfacePatch<T>, grid: GridSpec, opts: &ResidualOptions<T>) -> Result<Self> {
        let h_field = patch.mean_curvature_field();
        let norms = grid
            .points(&patch.domain)?
            .into_par_iter()
            .map(|(u, v)| patch.intrinsic_gradient(&h_field, u, v, opts.stencil).map(|g| g.norm))
            .collect::<Result<Vec<T>>>()?;
        let max_grad_norm = norms.into_iter().fold(T::zero(), T::max);
        if !(max_grad_norm <= opts.tol) {
            return Err(GeometryError::NotCmc { grad_norm: max_grad_norm.as_f64(), tol: opts.tol.as_f64() });
        }
        Ok(CmcPatch { patch, max_grad_norm })
    }

    pub fn patch(&self) -> &SurfacePatch<T> {
        self.patch
    }

    pub fn max_grad_norm(&self) -> T {
        self.max_grad_norm
    }

    /// `−H|A|² + H·Ric(ξ,ξ)` and `‖H(Ric ξ)^⊤‖`.
    pub fn residual(&self, u: T, v: T) -> Result<BiharmonicResidual<T>> {
        let report = self.patch.shape_report(u, v)?;
        let curv = self.patch.model.curvature_at(&report.point)?;
        let ric = normal_ricci(&curv, &report);
        let h = report.mean_curvature;
        let (chn, csl) = model_triples(&self.patch.model, &report)?;
        Ok(BiharmonicResidual {
            u,
            v,
            mean_curvature: h,
            norm_a_sq: report.norm_a_sq,
            ricci_normal: ric.normal,
            laplacian_h: T::zero(),
            grad_h_norm: self.max_grad_norm,
            normal_residual: -h * report.norm_a_sq + h * ric.normal,
            tangential_residual: (h * form_norm(&report.first_form, ric.tangent)).abs(),
            chn_triple: chn,
            csl_triple: csl,
        })
    }
}

/// CMC check over `grid` followed by the reduced system at `(u, v)`.
pub fn residual_cmc<T: Real>(
    patch: &SurfacePatch<T>,
    grid: GridSpec,
    u: T,
    v: T,
    opts: &ResidualOptions<T>,
) -> Result<BiharmonicResidual<T>> {
    CmcPatch::verify(patch, grid, opts)?.residual(u, v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Minimal,
    ProperBiharmonic,
    NotBiharmonic,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Minimal => "minimal",
            Classification::ProperBiharmonic => "proper_biharmonic",
            Classification::NotBiharmonic => "not_biharmonic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict<T> {
    pub classification: Classification,
    pub points: usize,
    pub max_abs_h: T,
    pub min_abs_h: T,
    pub max_normal_residual: T,
    pub max_tangential_residual: T,
    /// Distance of the deciding quantity from its threshold; positive means
    /// the classification is not borderline.
    pub margin: T,
}

impl<T: Real> Verdict<T> {
    pub fn max_residual(&self) -> T {
        self.max_normal_residual.max(self.max_tangential_residual)
    }
}

pub fn verdict<T: Real>(patch: &SurfacePatch<T>, grid: GridSpec, opts: &ResidualOptions<T>) -> Result<Verdict<T>> {
    verdict_with_records(patch, grid, opts).map(|(v, _)| v)
}

/// Grid verdict together with every per-point residual, in grid order.
pub fn verdict_with_records<T: Real>(
    patch: &SurfacePatch<T>,
    grid: GridSpec,
    opts: &ResidualOptions<T>,
) -> Result<(Verdict<T>, Vec<BiharmonicResidual<T>>)> {
    let records = grid
        .points(&patch.domain)?
        .into_par_iter()
        .map(|(u, v)| residual_full(patch, u, v, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok((classify(&records, opts), records))
}

/// Classifies a set of point residuals. NaN anywhere makes the result
/// `not_biharmonic`.
pub fn classify<T: Real>(records: &[BiharmonicResidual<T>], opts: &ResidualOptions<T>) -> Verdict<T> {
    let nan_max = |acc: T, x: T| if x.is_nan() || acc.is_nan() { T::nan() } else { acc.max(x) };
    let mut max_h = T::zero();
    let mut min_h = T::infinity();
    let (mut max_n, mut max_t) = (T::zero(), T::zero());
    for r in records {
        let h = r.mean_curvature.abs();
        max_h = nan_max(max_h, h);
        min_h = if h.is_nan() { T::nan() } else { min_h.min(h) };
        max_n = nan_max(max_n, r.normal_residual.abs());
        max_t = nan_max(max_t, r.tangential_residual.abs());
    }
    let max_res = max_n.max(max_t);
    let (tol, floor) = (opts.tol, opts.margin_floor);
    let any_nan = max_h.is_nan() || min_h.is_nan() || max_n.is_nan() || max_t.is_nan();
    let (classification, margin) = if any_nan {
        (Classification::NotBiharmonic, T::nan())
    } else if max_h <= tol {
        (Classification::Minimal, tol - max_h)
    } else if max_res <= tol && min_h > floor {
        (Classification::ProperBiharmonic, (tol - max_res).min(min_h - floor))
    } else {
        (Classification::NotBiharmonic, (max_res - tol).max(floor - min_h))
    };
    Verdict {
        classification,
        points: records.len(),
        max_abs_h: max_h,
        min_abs_h: min_h,
        max_normal_residual: max_n,
        max_tangential_residual: max_t,
        margin,
    }
}

/// Both sides of `e_i(λ) = Ric(e_i, ξ)` for an umbilical patch with `λ = H`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CodazziSides<T> {
    pub lhs: [T; 2],
    pub rhs: [T; 2],
}

impl<T: Real> CodazziSides<T> {
    pub fn max_abs(&self) -> T {
        self.lhs.iter().chain(&self.rhs).fold(T::zero(), |a, x| a.max(x.abs()))
    }
}

pub fn codazzi_umbilic_sides<T: Real>(
    patch: &SurfacePatch<T>,
    u: T,
    v: T,
    stencil: StencilOptions<T>,
) -> Result<CodazziSides<T>> {
    let report = patch.shape_report(u, v)?;
    let grad = patch.intrinsic_gradient(&patch.mean_curvature_field(), u, v, stencil)?;
    let curv = patch.model.curvature_at(&report.point)?;
    let d = grad.differential;
    let g = report.gauge;
    let xi = &report.normal.components;
    let mut sides = CodazziSides { lhs: [T::zero(); 2], rhs: [T::zero(); 2] };
    for i in 0..2 {
        sides.lhs[i] = d[0] * g[0][i] + d[1] * g[1][i];
        sides.rhs[i] = curv.ricci2(&report.tangent_frame[i].components, xi);
    }
    Ok(sides)
}
