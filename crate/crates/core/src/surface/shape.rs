use crate::chart::{ChartPoint, TangentVector};
use crate::dual::Dual;
use crate::error::Result;
use crate::linalg::{bilinear3, inv2, mat_mul2, Mat2, Vec3};
use crate::scalar::Real;

use super::{first_form_of, normal_generic, ImmersionJet, SurfacePatch};

/// Extrinsic data at one parameter point.
///
/// `second_form[a][b] = h(r_a, r_b) = −g(∇_{r_a} ξ, r_b)`, computed from the
/// derivative of the normal along the surface, so its symmetry is a genuine
/// check rather than a construction.
#[derive(Clone, Debug)]
pub struct ShapeReport<T> {
    pub param: (T, T),
    pub point: ChartPoint<T>,
    pub jet: ImmersionJet<T>,
    pub normal: TangentVector<T>,
    /// `e₁ ∥ r_u`, `e₂` completing an `I`-orthonormal pair.
    pub tangent_frame: [TangentVector<T>; 2],
    /// Coefficients of `e₁, e₂` in the `(r_u, r_v)` basis, as columns.
    pub gauge: Mat2<T>,
    pub first_form: Mat2<T>,
    pub second_form: Mat2<T>,
    /// Mixed components `A^a_b` with `A(r_b) = A^a_b r_a`.
    pub shape_operator: Mat2<T>,
    /// `h(e_i, e_j)` in the orthonormal gauge.
    pub shape_orthonormal: Mat2<T>,
    pub mean_curvature: T,
    pub norm_a_sq: T,
    pub umbilicity: T,
}

impl<T: Real> ShapeReport<T> {
    pub fn second_form_asymmetry(&self) -> T {
        (self.second_form[0][1] - self.second_form[1][0]).abs()
    }

    pub fn principal_curvatures(&self) -> (T, T) {
        let a = &self.shape_orthonormal;
        let half = T::lit(0.5);
        let (p, q, r) = (a[0][0], half * (a[0][1] + a[1][0]), a[1][1]);
        let mean = half * (p + r);
        let disc = (half * (p - r)).hypot(q);
        (mean - disc, mean + disc)
    }
}

impl<T: Real> SurfacePatch<T> {
    pub fn shape_report(&self, u: T, v: T) -> Result<ShapeReport<T>> {
        let jet = self.immersion_jet(u, v)?;
        let model = &self.model;
        let c = jet.point.coords();
        let xi = normal_generic(model, &c, &jet.ru, &jet.rv);
        let gamma = model.christoffels_at(&jet.point)?;
        let g = model.metric(&c);

        // ∇_{r_a} ξ = ∂_a ξ + Γ(r_a, ξ), with ∂_a ξ from a dual pass along r_a.
        let mut nabla_xi = [[T::zero(); 3]; 2];
        for (a, out) in nabla_xi.iter_mut().enumerate() {
            let ra = jet.partial(a);
            let lift =
                |v: &Vec3<T>, dv: &Vec3<T>| [Dual::new(v[0], dv[0]), Dual::new(v[1], dv[1]), Dual::new(v[2], dv[2])];
            let p_d = lift(&c, ra);
            let ru_d = lift(&jet.ru, jet.second_partial(0, a));
            let rv_d = lift(&jet.rv, jet.second_partial(1, a));
            let xi_d = normal_generic(model, &p_d, &ru_d, &rv_d);
            let corr = gamma.contract(ra, &xi);
            for k in 0..3 {
                out[k] = xi_d[k].eps + corr[k];
            }
        }

        let mut second_form = [[T::zero(); 2]; 2];
        for (a, row) in second_form.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = -bilinear3(&g, &nabla_xi[a], jet.partial(b));
            }
        }

        let first_form = first_form_of(model, &jet);
        let inv = inv2(&first_form);
        let h_t = [[second_form[0][0], second_form[1][0]], [second_form[0][1], second_form[1][1]]];
        let shape_operator = mat_mul2(&inv, &h_t);
        let two = T::lit(2.0);
        let mean_curvature = (shape_operator[0][0] + shape_operator[1][1]) / two;

        // Gram–Schmidt of (r_u, r_v) with respect to I.
        let e11 = first_form[0][0].sqrt().recip();
        let w = [-(first_form[0][1] / first_form[0][0]), T::one()];
        let wn = (first_form[1][1] - first_form[0][1] * first_form[0][1] / first_form[0][0]).sqrt();
        let gauge = [[e11, w[0] / wn], [T::zero(), w[1] / wn]];
        let col = |j: usize| [gauge[0][j], gauge[1][j]];
        let h_bil = |x: [T; 2], y: [T; 2]| {
            let mut s = T::zero();
            for a in 0..2 {
                for b in 0..2 {
                    s = s + x[a] * second_form[a][b] * y[b];
                }
            }
            s
        };
        let mut shape_orthonormal = [[T::zero(); 2]; 2];
        for (i, row) in shape_orthonormal.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = h_bil(col(i), col(j));
            }
        }
        let norm_a_sq = shape_orthonormal.iter().flatten().map(|x| *x * *x).sum();
        let d0 = shape_orthonormal[0][0] - mean_curvature;
        let d1 = shape_orthonormal[1][1] - mean_curvature;
        let umbilicity = (d0 * d0 + d1 * d1 + shape_orthonormal[0][1].powi(2) + shape_orthonormal[1][0].powi(2)).sqrt();

        let tangent_frame = [self.push_forward(&jet, col(0)), self.push_forward(&jet, col(1))];
        Ok(ShapeReport {
            param: (u, v),
            point: jet.point,
            jet,
            normal: TangentVector::new(jet.point, xi),
            tangent_frame,
            gauge,
            first_form,
            second_form,
            shape_operator,
            shape_orthonormal,
            mean_curvature,
            norm_a_sq,
            umbilicity,
        })
    }
}
