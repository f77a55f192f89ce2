//! Intrinsic gradient and Laplace–Beltrami of scalar fields on a patch,
//! by central differences in the parameter plane.

use crate::chart::TangentVector;
use crate::error::{GeometryError, Result};
use crate::linalg::{det2, inv2, Mat2};
use crate::scalar::Real;

use super::{first_form_of, SurfacePatch, DEFAULT_FD_STEP};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StencilOptions<T> {
    pub step: T,
    /// Combine steps `h` and `h/2` once to cancel the leading error term.
    pub richardson: bool,
}

impl<T: Real> Default for StencilOptions<T> {
    fn default() -> Self {
        StencilOptions { step: T::lit(DEFAULT_FD_STEP), richardson: true }
    }
}

impl<T: Real> StencilOptions<T> {
    pub fn raw(step: T) -> Self {
        StencilOptions { step, richardson: false }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SurfaceGradient<T> {
    /// Components `I^{ab} ∂_b f` in the `(r_u, r_v)` basis.
    pub param_components: [T; 2],
    /// `(∂_u f, ∂_v f)`.
    pub differential: [T; 2],
    pub vector: TangentVector<T>,
    pub norm: T,
}

fn richardson<T: Real>(coarse: T, fine: T) -> T {
    (T::lit(4.0) * fine - coarse) / T::lit(3.0)
}

impl<T: Real> SurfacePatch<T> {
    fn check_stencil(&self, u: T, v: T, reach: T) -> Result<()> {
        let reach = reach + self.jet_reach();
        if self.domain.contains_stencil(u, v, reach) {
            Ok(())
        } else {
            Err(GeometryError::StencilOutOfDomain { u: u.as_f64(), v: v.as_f64(), reach: reach.as_f64() })
        }
    }

    fn differential_at<F>(&self, f: &F, u: T, v: T, h: T) -> Result<[T; 2]>
    where
        F: Fn(T, T) -> Result<T> + ?Sized,
    {
        let two = T::lit(2.0);
        Ok([(f(u + h, v)? - f(u - h, v)?) / (two * h), (f(u, v + h)? - f(u, v - h)?) / (two * h)])
    }

    pub fn intrinsic_gradient<F>(&self, f: &F, u: T, v: T, opts: StencilOptions<T>) -> Result<SurfaceGradient<T>>
    where
        F: Fn(T, T) -> Result<T> + ?Sized,
    {
        let h = opts.step;
        self.check_stencil(u, v, h)?;
        let coarse = self.differential_at(f, u, v, h)?;
        let differential = if opts.richardson {
            let fine = self.differential_at(f, u, v, h / T::lit(2.0))?;
            [richardson(coarse[0], fine[0]), richardson(coarse[1], fine[1])]
        } else {
            coarse
        };
        let jet = self.immersion_jet(u, v)?;
        let inv = inv2(&first_form_of(&self.model, &jet));
        let w = [
            inv[0][0] * differential[0] + inv[0][1] * differential[1],
            inv[1][0] * differential[0] + inv[1][1] * differential[1],
        ];
        let norm = (w[0] * differential[0] + w[1] * differential[1]).max(T::zero()).sqrt();
        Ok(SurfaceGradient { param_components: w, differential, vector: self.push_forward(&jet, w), norm })
    }

    fn first_form(&self, u: T, v: T) -> Result<Mat2<T>> {
        Ok(first_form_of(&self.model, &self.immersion_jet(u, v)?))
    }

    /// Divergence form `(1/√G) ∂_a(√G I^{ab} ∂_b f)` with nested central differences.
    fn laplace_beltrami_raw<F>(&self, f: &F, u: T, v: T, h: T) -> Result<T>
    where
        F: Fn(T, T) -> Result<T> + ?Sized,
    {
        let two = T::lit(2.0);
        let flux = |uq: T, vq: T, a: usize| -> Result<T> {
            let form = self.first_form(uq, vq)?;
            let sg = det2(&form).sqrt();
            let inv = inv2(&form);
            let d = self.differential_at(f, uq, vq, h)?;
            Ok(sg * (inv[a][0] * d[0] + inv[a][1] * d[1]))
        };
        let div = (flux(u + h, v, 0)? - flux(u - h, v, 0)? + flux(u, v + h, 1)? - flux(u, v - h, 1)?) / (two * h);
        Ok(div / det2(&self.first_form(u, v)?).sqrt())
    }

    pub fn laplace_beltrami<F>(&self, f: &F, u: T, v: T, opts: StencilOptions<T>) -> Result<T>
    where
        F: Fn(T, T) -> Result<T> + ?Sized,
    {
        let h = opts.step;
        self.check_stencil(u, v, T::lit(2.0) * h)?;
        let coarse = self.laplace_beltrami_raw(f, u, v, h)?;
        if !opts.richardson {
            return Ok(coarse);
        }
        let fine = self.laplace_beltrami_raw(f, u, v, h / T::lit(2.0))?;
        Ok(richardson(coarse, fine))
    }

    /// The mean curvature as a scalar field on the parameter domain.
    pub fn mean_curvature_field(&self) -> impl Fn(T, T) -> Result<T> + '_ {
        move |u, v| Ok(self.shape_report(u, v)?.mean_curvature)
    }
}
