//! Immersed parametric surfaces `r: [u₀,u₁]×[v₀,v₁] → chart` and their
//! extrinsic and intrinsic geometry.
//!
//! Analytic surface kinds are evaluated on nested dual numbers so that the
//! immersion jet (value, first and second partials) is exact. The
//! [`SurfaceKind::Sampled`] kind takes an arbitrary closure and falls back to
//! central differences with the patch step.

mod catalog;
mod fields;
mod shape;

use std::fmt;
use std::sync::Arc;

use crate::chart::{ChartPoint, MetricModel, TangentVector};
use crate::dual::Dual;
use crate::error::{GeometryError, Result};
use crate::hopf::PlaneCurve;
use crate::linalg::{bilinear3, cross3, inv3, mat_vec3, norm3, scale3, Mat2, Vec3};
use crate::scalar::{Real, Scalar};

pub use catalog::{geodesic_sphere_mean_curvature, Axis};
pub use fields::{StencilOptions, SurfaceGradient};
pub use shape::ShapeReport;

/// Second-order nested dual.
pub type Dual2<T> = Dual<Dual<T>>;

/// Closure over second-order duals; its jets are exact.
pub type AnalyticMap<T> = Arc<dyn Fn(Dual2<T>, Dual2<T>) -> [Dual2<T>; 3] + Send + Sync>;
/// Plain closure; its jets come from central differences.
pub type SampledMap<T> = Arc<dyn Fn(T, T) -> [T; 3] + Send + Sync>;

/// Default step for difference stencils in the parameter plane.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Closed rectangle `[u₀,u₁]×[v₀,v₁]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamDomain<T> {
    pub u: (T, T),
    pub v: (T, T),
}

impl<T: Real> ParamDomain<T> {
    pub fn new(u: (T, T), v: (T, T)) -> Self {
        ParamDomain { u, v }
    }

    pub fn contains(&self, u: T, v: T) -> bool {
        u >= self.u.0 && u <= self.u.1 && v >= self.v.0 && v <= self.v.1
    }

    /// Whether the square of half-width `reach` around `(u, v)` is inside.
    pub fn contains_stencil(&self, u: T, v: T, reach: T) -> bool {
        self.contains(u - reach, v - reach) && self.contains(u + reach, v + reach)
    }

    pub fn center(&self) -> (T, T) {
        let two = T::lit(2.0);
        ((self.u.0 + self.u.1) / two, (self.v.0 + self.v.1) / two)
    }
}

#[derive(Clone)]
pub enum SurfaceKind<T> {
    /// `origin + u·du + v·dv`.
    Affine {
        origin: Vec3<T>,
        du: Vec3<T>,
        dv: Vec3<T>,
    },
    /// `(x(s), y(s), t)` over a plane curve.
    VerticalCylinder {
        curve: PlaneCurve<T>,
    },
    /// `center + radius·(sin θ cos φ, sin θ sin φ, cos θ)` in `(θ, φ)`.
    CoordinateSphere {
        center: Vec3<T>,
        radius: T,
    },
    Analytic(AnalyticMap<T>),
    Sampled(SampledMap<T>),
}

impl<T: fmt::Debug> fmt::Debug for SurfaceKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Affine { origin, du, dv } => {
                f.debug_struct("Affine").field("origin", origin).field("du", du).field("dv", dv).finish()
            }
            SurfaceKind::VerticalCylinder { curve } => {
                f.debug_struct("VerticalCylinder").field("curve", curve).finish()
            }
            SurfaceKind::CoordinateSphere { center, radius } => {
                f.debug_struct("CoordinateSphere").field("center", center).field("radius", radius).finish()
            }
            SurfaceKind::Analytic(_) => f.write_str("Analytic(..)"),
            SurfaceKind::Sampled(_) => f.write_str("Sampled(..)"),
        }
    }
}

impl<T: Real> SurfaceKind<T> {
    fn eval_generic<S: Scalar<T>>(&self, u: S, v: S) -> Option<[S; 3]> {
        match self {
            SurfaceKind::Affine { origin, du, dv } => Some([
                S::cst(origin[0]) + u * S::cst(du[0]) + v * S::cst(dv[0]),
                S::cst(origin[1]) + u * S::cst(du[1]) + v * S::cst(dv[1]),
                S::cst(origin[2]) + u * S::cst(du[2]) + v * S::cst(dv[2]),
            ]),
            SurfaceKind::VerticalCylinder { curve } => {
                let [x, y] = curve.eval(u);
                Some([x, y, v])
            }
            SurfaceKind::CoordinateSphere { center, radius } => {
                let r = S::cst(*radius);
                let st = u.sin();
                Some([
                    S::cst(center[0]) + r * st * v.cos(),
                    S::cst(center[1]) + r * st * v.sin(),
                    S::cst(center[2]) + r * u.cos(),
                ])
            }
            SurfaceKind::Analytic(_) | SurfaceKind::Sampled(_) => None,
        }
    }

    fn eval_dual2(&self, u: Dual2<T>, v: Dual2<T>) -> Option<[Dual2<T>; 3]> {
        match self {
            SurfaceKind::Analytic(f) => Some(f(u, v)),
            _ => self.eval_generic(u, v),
        }
    }
}

/// Point, first and second partials of the immersion at one parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImmersionJet<T> {
    pub point: ChartPoint<T>,
    pub ru: Vec3<T>,
    pub rv: Vec3<T>,
    pub ruu: Vec3<T>,
    pub ruv: Vec3<T>,
    pub rvv: Vec3<T>,
}

impl<T: Real> ImmersionJet<T> {
    pub fn partial(&self, a: usize) -> &Vec3<T> {
        if a == 0 {
            &self.ru
        } else {
            &self.rv
        }
    }

    pub fn second_partial(&self, a: usize, b: usize) -> &Vec3<T> {
        match (a, b) {
            (0, 0) => &self.ruu,
            (1, 1) => &self.rvv,
            _ => &self.ruv,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SurfacePatch<T> {
    pub kind: SurfaceKind<T>,
    pub domain: ParamDomain<T>,
    pub model: MetricModel<T>,
    /// Step for central differences of sampled immersions.
    pub fd_step: T,
}

fn seed2<T: Real>(x: T, a: T, b: T) -> Dual2<T> {
    Dual::new(Dual::new(x, a), Dual::new(b, T::zero()))
}

impl<T: Real> SurfacePatch<T> {
    pub fn new(model: MetricModel<T>, kind: SurfaceKind<T>, domain: ParamDomain<T>) -> Self {
        SurfacePatch { kind, domain, model, fd_step: T::lit(DEFAULT_FD_STEP) }
    }

    pub fn with_fd_step(mut self, step: T) -> Self {
        self.fd_step = step;
        self
    }

    /// True when jets are exact (dual numbers) rather than differenced.
    pub fn is_analytic(&self) -> bool {
        !matches!(self.kind, SurfaceKind::Sampled(_))
    }

    /// Extra parameter reach a single jet evaluation needs.
    pub(crate) fn jet_reach(&self) -> T {
        if self.is_analytic() {
            T::zero()
        } else {
            self.fd_step
        }
    }

    /// The surface with `u` and `v` exchanged; this flips the normal.
    pub fn swapped(&self) -> Self {
        let inner = self.clone();
        let f: AnalyticMap<T> = Arc::new(move |a, b| inner.kind.eval_dual2(b, a).expect("swap of an analytic patch"));
        let kind = match &self.kind {
            SurfaceKind::Sampled(g) => {
                let g = g.clone();
                SurfaceKind::Sampled(Arc::new(move |a, b| g(b, a)))
            }
            _ => SurfaceKind::Analytic(f),
        };
        SurfacePatch {
            kind,
            domain: ParamDomain::new(self.domain.v, self.domain.u),
            model: self.model,
            fd_step: self.fd_step,
        }
    }

    /// Plain point evaluation.
    pub fn point(&self, u: T, v: T) -> Result<ChartPoint<T>> {
        if !self.domain.contains(u, v) {
            return Err(GeometryError::ParamOutOfDomain { u: u.as_f64(), v: v.as_f64() });
        }
        let c = match &self.kind {
            SurfaceKind::Sampled(f) => f(u, v),
            kind => {
                let r = kind.eval_dual2(seed2(u, T::zero(), T::zero()), seed2(v, T::zero(), T::zero())).unwrap();
                [r[0].re.re, r[1].re.re, r[2].re.re]
            }
        };
        let p = ChartPoint::from_coords(c);
        self.model.check_point(&p)?;
        Ok(p)
    }

    pub fn immersion_jet(&self, u: T, v: T) -> Result<ImmersionJet<T>> {
        if !self.domain.contains(u, v) {
            return Err(GeometryError::ParamOutOfDomain { u: u.as_f64(), v: v.as_f64() });
        }
        let jet = match &self.kind {
            SurfaceKind::Sampled(f) => self.sampled_jet(f.as_ref(), u, v)?,
            kind => {
                let (o, z) = (T::one(), T::zero());
                let uu = kind.eval_dual2(seed2(u, o, o), seed2(v, z, z)).unwrap();
                let vv = kind.eval_dual2(seed2(u, z, z), seed2(v, o, o)).unwrap();
                let uv = kind.eval_dual2(seed2(u, o, z), seed2(v, z, o)).unwrap();
                let pick = |r: &[Dual2<T>; 3], f: fn(&Dual2<T>) -> T| [f(&r[0]), f(&r[1]), f(&r[2])];
                ImmersionJet {
                    point: ChartPoint::from_coords(pick(&uu, |d| d.re.re)),
                    ru: pick(&uu, |d| d.re.eps),
                    rv: pick(&vv, |d| d.re.eps),
                    ruu: pick(&uu, |d| d.eps.eps),
                    ruv: pick(&uv, |d| d.eps.eps),
                    rvv: pick(&vv, |d| d.eps.eps),
                }
            }
        };
        self.model.check_point(&jet.point)?;
        let c = cross3(&jet.ru, &jet.rv);
        let scale = norm3(&jet.ru) * norm3(&jet.rv);
        if !(norm3(&c) > T::lit(1e-10) * scale) || scale == T::zero() {
            return Err(GeometryError::RankDeficient { u: u.as_f64(), v: v.as_f64() });
        }
        Ok(jet)
    }

    fn sampled_jet(&self, f: &(dyn Fn(T, T) -> [T; 3] + Send + Sync), u: T, v: T) -> Result<ImmersionJet<T>> {
        let h = self.fd_step;
        if !self.domain.contains_stencil(u, v, h) {
            return Err(GeometryError::StencilOutOfDomain { u: u.as_f64(), v: v.as_f64(), reach: h.as_f64() });
        }
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let c = f(u, v);
        let (up, um, vp, vm) = (f(u + h, v), f(u - h, v), f(u, v + h), f(u, v - h));
        let (pp, pm, mp, mm) = (f(u + h, v + h), f(u + h, v - h), f(u - h, v + h), f(u - h, v - h));
        let mut jet = ImmersionJet {
            point: ChartPoint::from_coords(c),
            ru: [T::zero(); 3],
            rv: [T::zero(); 3],
            ruu: [T::zero(); 3],
            ruv: [T::zero(); 3],
            rvv: [T::zero(); 3],
        };
        for k in 0..3 {
            jet.ru[k] = (up[k] - um[k]) / (two * h);
            jet.rv[k] = (vp[k] - vm[k]) / (two * h);
            jet.ruu[k] = (up[k] - two * c[k] + um[k]) / (h * h);
            jet.rvv[k] = (vp[k] - two * c[k] + vm[k]) / (h * h);
            jet.ruv[k] = (pp[k] - pm[k] - mp[k] + mm[k]) / (four * h * h);
        }
        Ok(jet)
    }

    /// Pullback `I_ab = g(r_a, r_b)`.
    pub fn first_fundamental_form(&self, u: T, v: T) -> Result<Mat2<T>> {
        let jet = self.immersion_jet(u, v)?;
        Ok(first_form_of(&self.model, &jet))
    }

    pub fn unit_normal(&self, u: T, v: T) -> Result<TangentVector<T>> {
        let jet = self.immersion_jet(u, v)?;
        let xi = normal_generic(&self.model, &jet.point.coords(), &jet.ru, &jet.rv);
        Ok(TangentVector::new(jet.point, xi))
    }

    /// Tangent vector `a·r_u + b·r_v` at `(u, v)`.
    pub fn push_forward(&self, jet: &ImmersionJet<T>, coeffs: [T; 2]) -> TangentVector<T> {
        let mut c = [T::zero(); 3];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = coeffs[0] * jet.ru[k] + coeffs[1] * jet.rv[k];
        }
        TangentVector::new(jet.point, c)
    }
}

pub(crate) fn first_form_of<T: Real>(model: &MetricModel<T>, jet: &ImmersionJet<T>) -> Mat2<T> {
    let g = model.metric(&jet.point.coords());
    let e = bilinear3(&g, &jet.ru, &jet.ru);
    let f = bilinear3(&g, &jet.ru, &jet.rv);
    let gg = bilinear3(&g, &jet.rv, &jet.rv);
    [[e, f], [f, gg]]
}

/// Unit normal `ξ = g⁻¹(r_u × r_v)/|·|`, which makes `(r_u, r_v, ξ)` positively
/// oriented for the chart volume form.
pub(crate) fn normal_generic<T: Real, S: Scalar<T>>(
    model: &MetricModel<T>,
    p: &Vec3<S>,
    ru: &Vec3<S>,
    rv: &Vec3<S>,
) -> Vec3<S> {
    let w = cross3(ru, rv);
    let xi = mat_vec3(&inv3(&model.metric(p)), &w);
    let n2 = w[0] * xi[0] + w[1] * xi[1] + w[2] * xi[2];
    scale3(n2.sqrt().recip(), &xi)
}
