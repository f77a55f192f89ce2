//! Riemann and Ricci tensors.
//!
//! Sign conventions: `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z`,
//! `R(X,Y,Z,W) = g(R(Z,W)Y, X)` and `Ric(X,Y) = Σ g(R(X,eᵢ)eᵢ, Y)`, so that
//! `R(X,Y,X,Y)` is the sectional curvature of an orthonormal pair and round
//! spheres have positive Ricci curvature.

use crate::dual::Dual;
use crate::error::Result;
use crate::linalg::{bilinear3, inv3, mat_vec3, Mat3, Vec3};
use crate::scalar::Real;

use super::connection::{christoffel_generic, seed_axis, Christoffel};
use super::{same_base, ChartPoint, MetricModel, TangentVector};

/// Curvature data at one point, in coordinate components.
#[derive(Clone, Debug)]
pub struct CurvatureData<T> {
    pub point: ChartPoint<T>,
    pub metric: Mat3<T>,
    pub metric_inv: Mat3<T>,
    pub christoffel: Christoffel<T>,
    /// `riemann[l][i][j][k]` with `R(∂_i, ∂_j)∂_k = riemann[l][i][j][k] ∂_l`.
    pub riemann: [[Mat3<T>; 3]; 3],
    /// `Ric_jk = R^i_ijk`.
    pub ricci: Mat3<T>,
}

impl<T: Real> CurvatureData<T> {
    pub fn compute(model: &MetricModel<T>, p: &ChartPoint<T>) -> Result<Self> {
        model.check_point(p)?;
        let c = p.coords();
        let metric = model.metric(&c);
        let metric_inv = inv3(&metric);
        let christoffel: Christoffel<T> = christoffel_generic(model, &c);
        let gam = &christoffel.gamma;

        // dgam[d][k][i][j] = ∂_d Γ^k_ij
        let mut dgam = [[[[T::zero(); 3]; 3]; 3]; 3];
        for (d, slot) in dgam.iter_mut().enumerate() {
            let g: Christoffel<Dual<T>> = christoffel_generic(model, &seed_axis(&c, d));
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        slot[k][i][j] = g.gamma[k][i][j].eps;
                    }
                }
            }
        }

        let mut riemann = [[[[T::zero(); 3]; 3]; 3]; 3];
        for (l, rl) in riemann.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let mut v = dgam[i][l][j][k] - dgam[j][l][i][k];
                        for m in 0..3 {
                            v = v + gam[l][i][m] * gam[m][j][k] - gam[l][j][m] * gam[m][i][k];
                        }
                        rl[i][j][k] = v;
                    }
                }
            }
        }

        let mut ricci = [[T::zero(); 3]; 3];
        for (j, row) in ricci.iter_mut().enumerate() {
            for (k, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|i| riemann[i][i][j][k]).sum();
            }
        }

        Ok(CurvatureData { point: *p, metric, metric_inv, christoffel, riemann, ricci })
    }

    /// Coordinate components of `R(X,Y)Z`.
    pub fn curvature_operator(&self, x: &Vec3<T>, y: &Vec3<T>, z: &Vec3<T>) -> Vec3<T> {
        let mut out = [T::zero(); 3];
        for (l, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        *o = *o + self.riemann[l][i][j][k] * x[i] * y[j] * z[k];
                    }
                }
            }
        }
        out
    }

    /// `R(X,Y,Z,W) = g(R(Z,W)Y, X)`.
    pub fn riemann4(&self, x: &Vec3<T>, y: &Vec3<T>, z: &Vec3<T>, w: &Vec3<T>) -> T {
        bilinear3(&self.metric, &self.curvature_operator(z, w, y), x)
    }

    pub fn ricci2(&self, x: &Vec3<T>, y: &Vec3<T>) -> T {
        bilinear3(&self.ricci, x, y)
    }

    /// Components of the Ricci operator applied to `z`: `g^{-1} Ric z`.
    pub fn ricci_op(&self, z: &Vec3<T>) -> Vec3<T> {
        mat_vec3(&self.metric_inv, &mat_vec3(&self.ricci, z))
    }
}

impl<T: Real> MetricModel<T> {
    pub fn curvature_at(&self, p: &ChartPoint<T>) -> Result<CurvatureData<T>> {
        CurvatureData::compute(self, p)
    }

    /// `R(X,Y,Z,W) = g(R(Z,W)Y, X)`; all four vectors must share a base point.
    pub fn riemann_at(
        &self,
        x: &TangentVector<T>,
        y: &TangentVector<T>,
        z: &TangentVector<T>,
        w: &TangentVector<T>,
    ) -> Result<T> {
        same_base(x, y)?;
        same_base(x, z)?;
        same_base(x, w)?;
        let data = self.curvature_at(&x.base)?;
        Ok(data.riemann4(&x.components, &y.components, &z.components, &w.components))
    }

    pub fn ricci_at(&self, x: &TangentVector<T>, y: &TangentVector<T>) -> Result<T> {
        same_base(x, y)?;
        Ok(self.curvature_at(&x.base)?.ricci2(&x.components, &y.components))
    }

    pub fn ricci_operator_at(&self, z: &TangentVector<T>) -> Result<TangentVector<T>> {
        let data = self.curvature_at(&z.base)?;
        Ok(TangentVector::new(z.base, data.ricci_op(&z.components)))
    }
}
