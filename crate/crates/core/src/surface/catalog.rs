//! Ready-made test surfaces.

use crate::chart::MetricModel;
use crate::error::{GeometryError, Result};
use crate::hopf::PlaneCurve;
use crate::scalar::Real;

use super::{ParamDomain, SurfaceKind, SurfacePatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Angular margin kept away from the poles of coordinate spheres.
const POLE_MARGIN: f64 = 0.35;

impl<T: Real> SurfacePatch<T> {
    /// The coordinate plane `{axis = offset}`, parametrized by the other two
    /// coordinates in cyclic order over `[−half_width, half_width]²`.
    pub fn coordinate_plane(model: MetricModel<T>, axis: Axis, offset: T, half_width: T) -> Self {
        let (o, z) = (T::one(), T::zero());
        let (origin, du, dv) = match axis {
            Axis::X => ([offset, z, z], [z, o, z], [z, z, o]),
            Axis::Y => ([z, offset, z], [z, z, o], [o, z, z]),
            Axis::Z => ([z, z, offset], [o, z, z], [z, o, z]),
        };
        let r = (-half_width, half_width);
        SurfacePatch::new(model, SurfaceKind::Affine { origin, du, dv }, ParamDomain::new(r, r))
    }

    /// Coordinate sphere in `(θ, φ)`, poles excluded.
    pub fn coordinate_sphere(model: MetricModel<T>, center: [T; 3], radius: T) -> Self {
        let margin = T::lit(POLE_MARGIN);
        SurfacePatch::new(
            model,
            SurfaceKind::CoordinateSphere { center, radius },
            ParamDomain::new((margin, T::PI() - margin), (T::zero(), T::TAU())),
        )
    }

    /// Geodesic sphere of intrinsic radius `d` about the origin of the
    /// space-form chart of curvature `c`.
    pub fn geodesic_sphere(c: T, d: T) -> Result<Self> {
        let model = MetricModel::space_form(c)?;
        let two = T::lit(2.0);
        let radius = if c > T::zero() {
            let k = c.sqrt();
            if !(k * d < T::PI()) {
                return Err(GeometryError::InvalidConfig(format!(
                    "geodesic radius {} reaches the antipode",
                    d.as_f64()
                )));
            }
            two / k * (k * d / two).tan()
        } else if c < T::zero() {
            let k = (-c).sqrt();
            two / k * (k * d / two).tanh()
        } else {
            d
        };
        let patch = Self::coordinate_sphere(model, [T::zero(); 3], radius);
        model.check_point(&patch.point(T::FRAC_PI_2(), T::zero())?)?;
        Ok(patch)
    }

    /// Vertical cylinder `(x(s), y(s), t)` over a coordinate circle.
    pub fn vertical_cylinder(model: MetricModel<T>, center: [T; 2], radius: T, t_range: (T, T)) -> Self {
        let curve = PlaneCurve::circle(center, radius, (-T::PI(), T::PI()));
        SurfacePatch::new(model, SurfaceKind::VerticalCylinder { curve }, ParamDomain::new(curve.interval, t_range))
    }
}

/// `√c·cot(√c·d)` and its flat and hyperbolic analogues.
pub fn geodesic_sphere_mean_curvature<T: Real>(c: T, d: T) -> T {
    if c > T::zero() {
        let k = c.sqrt();
        k / (k * d).tan()
    } else if c < T::zero() {
        let k = (-c).sqrt();
        k / (k * d).tanh()
    } else {
        d.recip()
    }
}
