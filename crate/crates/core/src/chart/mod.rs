//! Homogeneous 3-manifolds as metric charts on ℝ³.
//!
//! Three families are supported:
//!
//! * [`MetricModel::Bcv`]: the Bianchi–Cartan–Vranceanu metrics
//!   `(dx²+dy²)/F² + (dz + (l/2)(y dx − x dy)/F)²`, `F = 1 + m(x²+y²)`.
//! * [`MetricModel::Sol`]: `e^{2z}dx² + e^{−2z}dy² + dz²`.
//! * [`MetricModel::SpaceForm`]: the conformal chart `δ/ψ²`,
//!   `ψ = 1 + (c/4)(x²+y²+z²)`, of constant sectional curvature `c`.
//!
//! Metric and frame components are closed-form expressions generic over
//! [`Scalar`], so derivatives of them are obtained exactly with dual numbers.
//! Connection and curvature are derived from the metric alone; the frame is
//! only used to express results.

mod connection;
mod curvature;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::linalg::{bilinear3, Mat3, Vec3};
use crate::scalar::{Real, Scalar};

pub use connection::{Christoffel, FrameVector, VectorField};
pub use curvature::CurvatureData;

/// `F`/`ψ` below this value is rejected: the metric blows up near zero.
pub const CONFORMAL_FACTOR_FLOOR: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ChartPoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> ChartPoint<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        ChartPoint { x, y, z }
    }

    pub fn from_coords(c: [T; 3]) -> Self {
        ChartPoint { x: c[0], y: c[1], z: c[2] }
    }

    pub fn coords(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn origin() -> Self {
        ChartPoint::new(T::zero(), T::zero(), T::zero())
    }
}

/// Coordinate components of a tangent vector together with its base point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentVector<T> {
    pub base: ChartPoint<T>,
    pub components: Vec3<T>,
}

impl<T: Real> TangentVector<T> {
    pub fn new(base: ChartPoint<T>, components: Vec3<T>) -> Self {
        TangentVector { base, components }
    }

    pub fn zero(base: ChartPoint<T>) -> Self {
        TangentVector { base, components: [T::zero(); 3] }
    }

    pub fn scale(&self, s: T) -> Self {
        let c = self.components;
        TangentVector::new(self.base, [s * c[0], s * c[1], s * c[2]])
    }

    /// Sum of two vectors at the same base point.
    pub fn add(&self, other: &Self) -> Result<Self> {
        same_base(self, other)?;
        let (a, b) = (self.components, other.components);
        Ok(TangentVector::new(self.base, [a[0] + b[0], a[1] + b[1], a[2] + b[2]]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-T::one()))
    }
}

pub(crate) fn same_base<T: Real>(a: &TangentVector<T>, b: &TangentVector<T>) -> Result<()> {
    if a.base == b.base {
        Ok(())
    } else {
        Err(GeometryError::MismatchedBase)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Bcv,
    Sol,
    SpaceForm,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Bcv => "bcv",
            ModelKind::Sol => "sol",
            ModelKind::SpaceForm => "space-form",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bcv" => Ok(ModelKind::Bcv),
            "sol" => Ok(ModelKind::Sol),
            "space-form" | "spaceform" | "space_form" => Ok(ModelKind::SpaceForm),
            other => Err(GeometryError::UnknownModel(other.to_string())),
        }
    }
}

/// Raw parameters for [`MetricModel::make`]. Fields a kind does not use are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ModelParams<T> {
    pub m: T,
    pub l: T,
    pub c: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetricModel<T> {
    Bcv { m: T, l: T },
    Sol,
    SpaceForm { c: T },
}

impl<T: Real> MetricModel<T> {
    pub fn make(kind: ModelKind, params: ModelParams<T>) -> Result<Self> {
        let finite = |name: &'static str, v: T| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(GeometryError::NonFiniteParameter { name, value: v.as_f64() })
            }
        };
        Ok(match kind {
            ModelKind::Bcv => MetricModel::Bcv { m: finite("m", params.m)?, l: finite("l", params.l)? },
            ModelKind::Sol => MetricModel::Sol,
            ModelKind::SpaceForm => MetricModel::SpaceForm { c: finite("c", params.c)? },
        })
    }

    pub fn bcv(m: T, l: T) -> Result<Self> {
        Self::make(ModelKind::Bcv, ModelParams { m, l, c: T::zero() })
    }

    pub fn space_form(c: T) -> Result<Self> {
        Self::make(ModelKind::SpaceForm, ModelParams { m: T::zero(), l: T::zero(), c })
    }

    pub fn sol() -> Self {
        MetricModel::Sol
    }

    pub fn euclidean() -> Self {
        MetricModel::Bcv { m: T::zero(), l: T::zero() }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            MetricModel::Bcv { .. } => ModelKind::Bcv,
            MetricModel::Sol => ModelKind::Sol,
            MetricModel::SpaceForm { .. } => ModelKind::SpaceForm,
        }
    }

    /// Rejects non-finite points and points where the conformal factor is too small.
    pub fn check_point(&self, p: &ChartPoint<T>) -> Result<()> {
        let invalid =
            |reason| GeometryError::InvalidPoint { x: p.x.as_f64(), y: p.y.as_f64(), z: p.z.as_f64(), reason };
        if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
            return Err(invalid("non-finite coordinate"));
        }
        let floor = T::lit(CONFORMAL_FACTOR_FLOOR);
        match *self {
            MetricModel::Bcv { m, .. } => {
                if T::one() + m * (p.x * p.x + p.y * p.y) <= floor {
                    return Err(invalid("F = 1 + m(x²+y²) too small"));
                }
            }
            MetricModel::SpaceForm { c } => {
                let r2 = p.x * p.x + p.y * p.y + p.z * p.z;
                if T::one() + c / T::lit(4.0) * r2 <= floor {
                    return Err(invalid("ψ = 1 + (c/4)|p|² too small"));
                }
            }
            MetricModel::Sol => {}
        }
        Ok(())
    }

    /// Metric components `g_ij` at a point, for any scalar type.
    pub fn metric<S: Scalar<T>>(&self, p: &Vec3<S>) -> Mat3<S> {
        let [x, y, z] = *p;
        match *self {
            MetricModel::Bcv { m, l } => {
                let f = S::one() + S::cst(m) * (x * x + y * y);
                let f2 = f * f;
                let q = S::cst(l * l / T::lit(4.0));
                let half_l = S::cst(l / T::lit(2.0));
                let gxx = (S::one() + q * y * y) / f2;
                let gyy = (S::one() + q * x * x) / f2;
                let gxy = -(q * x * y) / f2;
                let gxz = half_l * y / f;
                let gyz = -(half_l * x) / f;
                [[gxx, gxy, gxz], [gxy, gyy, gyz], [gxz, gyz, S::one()]]
            }
            MetricModel::Sol => {
                let zero = S::zero();
                let two_z = z + z;
                [[two_z.exp(), zero, zero], [zero, (-two_z).exp(), zero], [zero, zero, S::one()]]
            }
            MetricModel::SpaceForm { c } => {
                let psi = S::one() + S::cst(c / T::lit(4.0)) * (x * x + y * y + z * z);
                let w = (psi * psi).recip();
                let zero = S::zero();
                [[w, zero, zero], [zero, w, zero], [zero, zero, w]]
            }
        }
    }

    /// Orthonormal frame `E₁, E₂, E₃` in coordinate components, for any scalar type.
    pub fn frame<S: Scalar<T>>(&self, p: &Vec3<S>) -> [Vec3<S>; 3] {
        let [x, y, z] = *p;
        let zero = S::zero();
        let one = S::one();
        match *self {
            MetricModel::Bcv { m, l } => {
                let f = one + S::cst(m) * (x * x + y * y);
                let half_l = S::cst(l / T::lit(2.0));
                [[f, zero, -(half_l * y)], [zero, f, half_l * x], [zero, zero, one]]
            }
            MetricModel::Sol => [[(-z).exp(), zero, zero], [zero, z.exp(), zero], [zero, zero, one]],
            MetricModel::SpaceForm { c } => {
                let psi = one + S::cst(c / T::lit(4.0)) * (x * x + y * y + z * z);
                [[psi, zero, zero], [zero, psi, zero], [zero, zero, psi]]
            }
        }
    }

    pub fn metric_at(&self, p: &ChartPoint<T>) -> Result<Mat3<T>> {
        self.check_point(p)?;
        Ok(self.metric(&p.coords()))
    }

    pub fn orthonormal_frame_at(&self, p: &ChartPoint<T>) -> Result<[TangentVector<T>; 3]> {
        self.check_point(p)?;
        let e = self.frame(&p.coords());
        Ok([TangentVector::new(*p, e[0]), TangentVector::new(*p, e[1]), TangentVector::new(*p, e[2])])
    }

    /// `g(X, Y)` for vectors at the same point.
    pub fn inner(&self, a: &TangentVector<T>, b: &TangentVector<T>) -> Result<T> {
        same_base(a, b)?;
        let g = self.metric_at(&a.base)?;
        Ok(bilinear3(&g, &a.components, &b.components))
    }

    pub fn norm(&self, a: &TangentVector<T>) -> Result<T> {
        Ok(self.inner(a, a)?.max(T::zero()).sqrt())
    }

    /// Components of `v` in the orthonormal frame, `g(v, E_i)`.
    pub fn frame_coefficients(&self, v: &TangentVector<T>) -> Result<[T; 3]> {
        let g = self.metric_at(&v.base)?;
        let e = self.frame(&v.base.coords());
        Ok([
            bilinear3(&g, &v.components, &e[0]),
            bilinear3(&g, &v.components, &e[1]),
            bilinear3(&g, &v.components, &e[2]),
        ])
    }

    /// Builds the vector `Σ aᵢ Eᵢ` at `p`.
    pub fn from_frame_coefficients(&self, p: &ChartPoint<T>, a: [T; 3]) -> Result<TangentVector<T>> {
        self.check_point(p)?;
        let e = self.frame(&p.coords());
        let mut c = [T::zero(); 3];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = a[0] * e[0][k] + a[1] * e[1][k] + a[2] * e[2][k];
        }
        Ok(TangentVector::new(*p, c))
    }

    /// Short label used in error messages and reports.
    pub fn label(&self) -> String {
        match *self {
            MetricModel::Bcv { m, l } => format!("bcv(m={m}, l={l})"),
            MetricModel::Sol => "sol".to_string(),
            MetricModel::SpaceForm { c } => format!("space-form(c={c})"),
        }
    }
}
