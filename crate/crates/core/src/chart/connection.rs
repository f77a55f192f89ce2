//! Levi-Civita connection from metric derivatives, covariant derivatives of
//! vector fields, and Lie brackets.

use crate::dual::Dual;
use crate::error::{GeometryError, Result};
use crate::linalg::{inv3, Mat3, Vec3};
use crate::scalar::{Real, Scalar};

use super::{ChartPoint, MetricModel, TangentVector};

/// Christoffel symbols `Γ^k_ij`, stored as `gamma[k][i][j]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Christoffel<S> {
    pub gamma: [Mat3<S>; 3],
}

impl<T: Real> Christoffel<T> {
    /// `Γ(X, Y)^k = Γ^k_ij X^i Y^j`.
    pub fn contract(&self, x: &Vec3<T>, y: &Vec3<T>) -> Vec3<T> {
        let mut out = [T::zero(); 3];
        for (k, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    *o = *o + self.gamma[k][i][j] * x[i] * y[j];
                }
            }
        }
        out
    }
}

/// Seeds one coordinate direction with an infinitesimal.
pub(crate) fn seed_axis<T: Real, S: Scalar<T>>(p: &Vec3<S>, axis: usize) -> Vec3<Dual<S>> {
    let mut q = [Dual::new(p[0], S::zero()), Dual::new(p[1], S::zero()), Dual::new(p[2], S::zero())];
    q[axis].eps = S::one();
    q
}

/// Seeds a full direction vector: `p + ε·dir`.
pub(crate) fn seed_direction<T: Real>(p: &Vec3<T>, dir: &Vec3<T>) -> Vec3<Dual<T>> {
    [Dual::new(p[0], dir[0]), Dual::new(p[1], dir[1]), Dual::new(p[2], dir[2])]
}

/// `Γ^k_ij = ½ g^{kl}(∂_i g_lj + ∂_j g_li − ∂_l g_ij)` with exact metric derivatives.
pub(crate) fn christoffel_generic<T: Real, S: Scalar<T>>(model: &MetricModel<T>, p: &Vec3<S>) -> Christoffel<S> {
    let zero = S::zero();
    // dg[d][i][j] = ∂_d g_ij
    let mut dg = [[[zero; 3]; 3]; 3];
    for (d, slot) in dg.iter_mut().enumerate() {
        let g = model.metric(&seed_axis(p, d));
        for i in 0..3 {
            for j in 0..3 {
                slot[i][j] = g[i][j].eps;
            }
        }
    }
    let ginv = inv3(&model.metric(p));
    let half = S::cst(T::lit(0.5));
    let mut gamma = [[[zero; 3]; 3]; 3];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for i in 0..3 {
            for j in i..3 {
                let mut acc = zero;
                for l in 0..3 {
                    acc = acc + ginv[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
                }
                gk[i][j] = half * acc;
                gk[j][i] = gk[i][j];
            }
        }
    }
    Christoffel { gamma }
}

/// A smooth vector field given in coordinate components, evaluated on dual
/// points so that its directional derivatives come out exactly.
pub trait VectorField<T: Real> {
    fn eval_dual(&self, p: &Vec3<Dual<T>>) -> Vec3<Dual<T>>;
}

impl<T: Real, F> VectorField<T> for F
where
    F: Fn(&Vec3<Dual<T>>) -> Vec3<Dual<T>>,
{
    fn eval_dual(&self, p: &Vec3<Dual<T>>) -> Vec3<Dual<T>> {
        self(p)
    }
}

/// The frame field `E_index` (1-based) of a model.
#[derive(Clone, Copy, Debug)]
pub struct FrameVector<'a, T> {
    model: &'a MetricModel<T>,
    index: usize,
}

impl<'a, T: Real> FrameVector<'a, T> {
    pub fn new(model: &'a MetricModel<T>, index: usize) -> Result<Self> {
        if (1..=3).contains(&index) {
            Ok(FrameVector { model, index })
        } else {
            Err(GeometryError::FrameIndex(index))
        }
    }
}

impl<T: Real> VectorField<T> for FrameVector<'_, T> {
    fn eval_dual(&self, p: &Vec3<Dual<T>>) -> Vec3<Dual<T>> {
        self.model.frame(p)[self.index - 1]
    }
}

/// Plain directional derivative `D_X Y` of the coordinate components.
fn directional<T: Real>(field: &dyn VectorField<T>, p: &Vec3<T>, dir: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    let y = field.eval_dual(&seed_direction(p, dir));
    ([y[0].re, y[1].re, y[2].re], [y[0].eps, y[1].eps, y[2].eps])
}

impl<T: Real> MetricModel<T> {
    pub fn christoffels_at(&self, p: &ChartPoint<T>) -> Result<Christoffel<T>> {
        self.check_point(p)?;
        Ok(christoffel_generic(self, &p.coords()))
    }

    /// `∇_X Y = X(Y^k)∂_k + Γ^k_ij X^i Y^j ∂_k`.
    pub fn covariant_derivative_at(
        &self,
        p: &ChartPoint<T>,
        field: &dyn VectorField<T>,
        direction: &TangentVector<T>,
    ) -> Result<TangentVector<T>> {
        if direction.base != *p {
            return Err(GeometryError::MismatchedBase);
        }
        let gamma = self.christoffels_at(p)?;
        let (y, dy) = directional(field, &p.coords(), &direction.components);
        let corr = gamma.contract(&direction.components, &y);
        Ok(TangentVector::new(*p, [dy[0] + corr[0], dy[1] + corr[1], dy[2] + corr[2]]))
    }

    /// `[X, Y] = D_X Y − D_Y X` for fields evaluated at `p`.
    pub fn lie_bracket_at(
        &self,
        p: &ChartPoint<T>,
        x: &dyn VectorField<T>,
        y: &dyn VectorField<T>,
    ) -> Result<TangentVector<T>> {
        self.check_point(p)?;
        let c = p.coords();
        let (xv, _) = directional(x, &c, &[T::zero(); 3]);
        let (yv, _) = directional(y, &c, &[T::zero(); 3]);
        let (_, dxy) = directional(y, &c, &xv);
        let (_, dyx) = directional(x, &c, &yv);
        Ok(TangentVector::new(*p, [dxy[0] - dyx[0], dxy[1] - dyx[1], dxy[2] - dyx[2]]))
    }

    /// `[E_i, E_j]` for 1-based frame indices.
    pub fn lie_bracket_frame_at(&self, p: &ChartPoint<T>, i: usize, j: usize) -> Result<TangentVector<T>> {
        let ei = FrameVector::new(self, i)?;
        let ej = FrameVector::new(self, j)?;
        self.lie_bracket_at(p, &ei, &ej)
    }

    /// `∇_{E_i} E_j` for 1-based frame indices.
    pub fn frame_connection_at(&self, p: &ChartPoint<T>, i: usize, j: usize) -> Result<TangentVector<T>> {
        let frame = self.orthonormal_frame_at(p)?;
        let ei = frame.get(i.wrapping_sub(1)).ok_or(GeometryError::FrameIndex(i))?;
        self.covariant_derivative_at(p, &FrameVector::new(self, j)?, ei)
    }
}
