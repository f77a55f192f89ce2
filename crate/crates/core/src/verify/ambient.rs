//! Pointwise identities of the ambient connection and curvature, each
//! returned as a defect that vanishes when the identity holds.

use crate::chart::{ChartPoint, CurvatureData, MetricModel, TangentVector, VectorField};
use crate::dual::Dual;
use crate::error::Result;
use crate::linalg::{bilinear3, sub3, Vec3};

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, x| if x.is_nan() || a.is_nan() { f64::NAN } else { a.max(x.abs()) })
}

/// `max |g(E_i, E_j) − δ_ij|`.
pub fn frame_orthonormality_defect(model: &MetricModel<f64>, p: &ChartPoint<f64>) -> Result<f64> {
    let e = model.orthonormal_frame_at(p)?;
    let mut d = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            d.push(model.inner(&e[i], &e[j])? - if i == j { 1.0 } else { 0.0 });
        }
    }
    Ok(max_abs(d))
}

/// `max_{i,j} |∇_{E_i}E_j − ∇_{E_j}E_i − [E_i, E_j]|_g`.
pub fn torsion_defect(model: &MetricModel<f64>, p: &ChartPoint<f64>) -> Result<f64> {
    let mut worst = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            let a = model.frame_connection_at(p, i, j)?;
            let b = model.frame_connection_at(p, j, i)?;
            let c = model.lie_bracket_frame_at(p, i, j)?;
            worst.push(model.norm(&a.sub(&b)?.sub(&c)?)?);
        }
    }
    Ok(max_abs(worst))
}

/// `|X g(Y,Z) − g(∇_X Y, Z) − g(Y, ∇_X Z)|`, with the left side differentiated
/// directly from the metric components.
pub fn metric_compatibility_defect(
    model: &MetricModel<f64>,
    p: &ChartPoint<f64>,
    x: &Vec3<f64>,
    y: &dyn VectorField<f64>,
    z: &dyn VectorField<f64>,
) -> Result<f64> {
    model.check_point(p)?;
    let c = p.coords();
    let pd = [Dual::new(c[0], x[0]), Dual::new(c[1], x[1]), Dual::new(c[2], x[2])];
    let g = model.metric(&pd);
    let (yd, zd) = (y.eval_dual(&pd), z.eval_dual(&pd));
    let lhs = bilinear3(&g, &yd, &zd).eps;
    let dir = TangentVector::new(*p, *x);
    let ny = model.covariant_derivative_at(p, y, &dir)?;
    let nz = model.covariant_derivative_at(p, z, &dir)?;
    let yv = TangentVector::new(*p, yd.map(|d| d.re));
    let zv = TangentVector::new(*p, zd.map(|d| d.re));
    Ok((lhs - model.inner(&ny, &zv)? - model.inner(&yv, &nz)?).abs())
}

fn frame_vectors(model: &MetricModel<f64>, p: &ChartPoint<f64>) -> Result<[Vec3<f64>; 3]> {
    let e = model.orthonormal_frame_at(p)?;
    Ok([e[0].components, e[1].components, e[2].components])
}

/// Largest violation of `R_abcd = −R_bacd = −R_abdc = R_cdab` in the frame.
pub fn riemann_symmetry_defect(model: &MetricModel<f64>, curv: &CurvatureData<f64>) -> Result<f64> {
    let e = frame_vectors(model, &curv.point)?;
    let r = |a: usize, b: usize, c: usize, d: usize| curv.riemann4(&e[a], &e[b], &e[c], &e[d]);
    let mut d = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for dd in 0..3 {
                    let v = r(a, b, c, dd);
                    d.push(v + r(b, a, c, dd));
                    d.push(v + r(a, b, dd, c));
                    d.push(v - r(c, dd, a, b));
                }
            }
        }
    }
    Ok(max_abs(d))
}

/// `max |R(X,Y)Z + R(Y,Z)X + R(Z,X)Y|_g` over frame triples.
pub fn bianchi_defect(model: &MetricModel<f64>, curv: &CurvatureData<f64>) -> Result<f64> {
    let e = frame_vectors(model, &curv.point)?;
    let op = |a: usize, b: usize, c: usize| curv.curvature_operator(&e[a], &e[b], &e[c]);
    let mut d = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let s = sub3(&sub3(&op(a, b, c), &op(b, c, a).map(|x| -x)), &op(c, a, b).map(|x| -x));
                d.push(bilinear3(&curv.metric, &s, &s).max(0.0).sqrt());
            }
        }
    }
    Ok(max_abs(d))
}

/// A fixed smooth test field with polynomial and exponential components.
pub(crate) fn test_field_a(p: &Vec3<Dual<f64>>) -> Vec3<Dual<f64>> {
    use crate::scalar::Scalar;
    let one = Dual::constant(1.0);
    [p[1] * p[2] + one, p[0].sin(), (p[0] * Dual::constant(0.5)).exp() - p[1]]
}

pub(crate) fn test_field_b(p: &Vec3<Dual<f64>>) -> Vec3<Dual<f64>> {
    use crate::scalar::Scalar;
    [p[2].cos(), p[0] * p[0] - p[2], Dual::constant(2.0) + p[1] * p[0]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_for_sample_models() {
        let p = ChartPoint::new(0.3, -0.2, 0.4);
        for model in [MetricModel::bcv(-1.0, 1.0).unwrap(), MetricModel::sol(), MetricModel::space_form(1.0).unwrap()] {
            assert!(frame_orthonormality_defect(&model, &p).unwrap() < 1e-14);
            assert!(torsion_defect(&model, &p).unwrap() < 1e-13);
            let curv = model.curvature_at(&p).unwrap();
            assert!(riemann_symmetry_defect(&model, &curv).unwrap() < 1e-12);
            assert!(bianchi_defect(&model, &curv).unwrap() < 1e-12);
            let d = metric_compatibility_defect(&model, &p, &[0.2, 1.0, -0.5], &test_field_a, &test_field_b).unwrap();
            assert!(d < 1e-12, "{d}");
        }
    }
}
