//! Fixed-size 2×2 and 3×3 helpers over any [`Scalar`].

use crate::scalar::{Real, Scalar};

pub type Vec3<S> = [S; 3];
pub type Mat3<S> = [[S; 3]; 3];
pub type Mat2<S> = [[S; 2]; 2];

pub fn dot3<T: Real, S: Scalar<T>>(a: &Vec3<S>, b: &Vec3<S>) -> S {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3<T: Real, S: Scalar<T>>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn mat_vec3<T: Real, S: Scalar<T>>(m: &Mat3<S>, v: &Vec3<S>) -> Vec3<S> {
    [dot3(&m[0], v), dot3(&m[1], v), dot3(&m[2], v)]
}

/// `aᵀ M b`.
pub fn bilinear3<T: Real, S: Scalar<T>>(m: &Mat3<S>, a: &Vec3<S>, b: &Vec3<S>) -> S {
    dot3(a, &mat_vec3(m, b))
}

pub fn det3<T: Real, S: Scalar<T>>(m: &Mat3<S>) -> S {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse through the adjugate. Callers guarantee non-singularity.
pub fn inv3<T: Real, S: Scalar<T>>(m: &Mat3<S>) -> Mat3<S> {
    let d = det3(m).recip();
    let c = |r0: usize, c0: usize, r1: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 1, 2, 2) * d, -(c(0, 1, 2, 2)) * d, c(0, 1, 1, 2) * d],
        [-(c(1, 0, 2, 2)) * d, c(0, 0, 2, 2) * d, -(c(0, 0, 1, 2)) * d],
        [c(1, 0, 2, 1) * d, -(c(0, 0, 2, 1)) * d, c(0, 0, 1, 1) * d],
    ]
}

pub fn det2<T: Real, S: Scalar<T>>(m: &Mat2<S>) -> S {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn inv2<T: Real, S: Scalar<T>>(m: &Mat2<S>) -> Mat2<S> {
    let d = det2(m).recip();
    [[m[1][1] * d, -(m[0][1]) * d], [-(m[1][0]) * d, m[0][0] * d]]
}

pub fn mat_mul2<T: Real, S: Scalar<T>>(a: &Mat2<S>, b: &Mat2<S>) -> Mat2<S> {
    let mut out = [[S::zero(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn add3<T: Real, S: Scalar<T>>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub3<T: Real, S: Scalar<T>>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale3<T: Real, S: Scalar<T>>(s: S, a: &Vec3<S>) -> Vec3<S> {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn norm3<T: Real>(a: &Vec3<T>) -> T {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}
