//! Base curves in the conformal plane `(ℝ², h = (dx²+dy²)/F²)`,
//! `F = 1 + m(x²+y²)`, their Hopf cylinders `r(s,t) = (x(s), y(s), t)` in the
//! BCV space over them, and the closed-form invariants of those cylinders.

use std::fmt;
use std::sync::Arc;

use crate::chart::{ChartPoint, FrameVector, MetricModel, TangentVector};
use crate::dual::Dual;
use crate::error::{GeometryError, Result};
use crate::scalar::{Real, Scalar};
use crate::surface::{Dual2, ParamDomain, SurfaceKind, SurfacePatch};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveShape<T> {
    /// `center + radius·(cos θ, sin θ)`.
    Circle { center: [T; 2], radius: T },
    /// `point + θ·direction`.
    Line { point: [T; 2], direction: [T; 2] },
}

/// A closed-form plane curve `s ↦ shape(rate·s)` on a parameter interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneCurve<T> {
    pub shape: CurveShape<T>,
    pub rate: T,
    pub interval: (T, T),
    /// Set by constructors that guarantee unit `h`-speed.
    pub arclength: bool,
}

impl<T: Real> PlaneCurve<T> {
    /// Circle parametrized by angle.
    pub fn circle(center: [T; 2], radius: T, interval: (T, T)) -> Self {
        PlaneCurve { shape: CurveShape::Circle { center, radius }, rate: T::one(), interval, arclength: false }
    }

    pub fn line(point: [T; 2], direction: [T; 2], interval: (T, T)) -> Self {
        PlaneCurve { shape: CurveShape::Line { point, direction }, rate: T::one(), interval, arclength: false }
    }

    /// Origin-centered circle of chart radius `rho` at unit `h`-speed, once around.
    pub fn unit_speed_circle(m: T, rho: T) -> Self {
        let f = T::one() + m * rho * rho;
        let half = T::PI() * rho / f;
        PlaneCurve {
            shape: CurveShape::Circle { center: [T::zero(); 2], radius: rho },
            rate: f / rho,
            interval: (-half, half),
            arclength: true,
        }
    }

    /// Line through `point` with unit Euclidean direction; unit `h`-speed when `m = 0`.
    pub fn unit_speed_line(point: [T; 2], angle: T, interval: (T, T)) -> Self {
        PlaneCurve {
            shape: CurveShape::Line { point, direction: [angle.cos(), angle.sin()] },
            rate: T::one(),
            interval,
            arclength: false,
        }
    }

    pub fn eval<S: Scalar<T>>(&self, s: S) -> [S; 2] {
        let th = s * S::cst(self.rate);
        match self.shape {
            CurveShape::Circle { center, radius } => {
                let r = S::cst(radius);
                [S::cst(center[0]) + r * th.cos(), S::cst(center[1]) + r * th.sin()]
            }
            CurveShape::Line { point, direction } => {
                [S::cst(point[0]) + th * S::cst(direction[0]), S::cst(point[1]) + th * S::cst(direction[1])]
            }
        }
    }
}

/// Position, velocity and acceleration of a plane curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveJet<T> {
    pub point: [T; 2],
    pub d1: [T; 2],
    pub d2: [T; 2],
}

pub trait BaseCurve<T: Real>: Send + Sync {
    fn interval(&self) -> (T, T);
    fn jet(&self, s: T) -> Result<CurveJet<T>>;
    fn is_arclength(&self) -> bool;
}

fn check_param<T: Real>(interval: (T, T), s: T) -> Result<()> {
    if s >= interval.0 && s <= interval.1 {
        Ok(())
    } else {
        Err(GeometryError::CurveParamOutOfRange(s.as_f64()))
    }
}

impl<T: Real> BaseCurve<T> for PlaneCurve<T> {
    fn interval(&self) -> (T, T) {
        self.interval
    }

    fn jet(&self, s: T) -> Result<CurveJet<T>> {
        check_param(self.interval, s)?;
        let seed: Dual2<T> = Dual::new(Dual::new(s, T::one()), Dual::new(T::one(), T::zero()));
        let [x, y] = self.eval(seed);
        Ok(CurveJet { point: [x.re.re, y.re.re], d1: [x.re.eps, y.re.eps], d2: [x.eps.eps, y.eps.eps] })
    }

    fn is_arclength(&self) -> bool {
        self.arclength
    }
}

fn conformal_factor<T: Real>(m: T, p: [T; 2]) -> T {
    T::one() + m * (p[0] * p[0] + p[1] * p[1])
}

/// `h`-speed `|α'|/F`.
pub fn base_speed<T: Real>(m: T, jet: &CurveJet<T>) -> T {
    jet.d1[0].hypot(jet.d1[1]) / conformal_factor(m, jet.point)
}

/// Largest deviation of the `h`-speed from 1 over `samples` evenly spaced parameters.
pub fn speed_defect<T: Real>(m: T, curve: &dyn BaseCurve<T>, samples: usize) -> Result<T> {
    let (a, b) = curve.interval();
    let n = samples.max(2);
    let mut worst = T::zero();
    for i in 0..n {
        // Clamp: rounding can push the last sample past `b`.
        let s = (a + (b - a) * T::lit(i as f64) / T::lit((n - 1) as f64)).min(b);
        worst = worst.max((base_speed(m, &curve.jet(s)?) - T::one()).abs());
    }
    Ok(worst)
}

fn adaptive_simpson<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, tol: T) -> T {
    fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
        (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
        let two = T::lit(2.0);
        let m = (a + b) / two;
        let (lm, rm) = ((a + m) / two, (m + b) / two);
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
            return left + right + delta / T::lit(15.0);
        }
        rec(f, a, m, fa, flm, fm, left, tol / two, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
    }
    if a == b {
        return T::zero();
    }
    let (fa, fb) = (f(a), f(b));
    let fm = f((a + b) / T::lit(2.0));
    rec(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 40)
}

/// Tolerance of the arclength quadrature and of its inversion.
pub const ARCLENGTH_TOL: f64 = 1e-10;

/// Unit `h`-speed reparametrization of another curve, by numeric inversion of
/// `s(σ) = ∫ |α'|_h dσ`.
#[derive(Clone)]
pub struct ArclengthCurve<T> {
    inner: Arc<dyn BaseCurve<T>>,
    m: T,
    length: T,
}

impl<T: Real> fmt::Debug for ArclengthCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArclengthCurve").field("m", &self.m).field("length", &self.length).finish()
    }
}

impl<T: Real> ArclengthCurve<T> {
    pub fn new(m: T, inner: Arc<dyn BaseCurve<T>>) -> Result<Self> {
        let (a, b) = inner.interval();
        let mut c = ArclengthCurve { inner, m, length: T::zero() };
        c.length = c.arc(a, b)?;
        Ok(c)
    }

    pub fn length(&self) -> T {
        self.length
    }

    fn speed(&self, sigma: T) -> T {
        self.inner.jet(sigma).map(|j| base_speed(self.m, &j)).unwrap_or(T::nan())
    }

    fn arc(&self, a: T, b: T) -> Result<T> {
        let v = adaptive_simpson(&|x| self.speed(x), a, b, T::lit(ARCLENGTH_TOL));
        if v.is_finite() {
            Ok(v)
        } else {
            Err(GeometryError::ZeroSpeed(a.as_f64()))
        }
    }

    /// Original parameter `σ` at arclength `s` from the start.
    pub fn inverse(&self, s: T) -> Result<T> {
        check_param((T::zero(), self.length), s)?;
        let (a, b) = self.inner.interval();
        let mut sigma = a + (b - a) * s / self.length;
        let mut acc = self.arc(a, sigma)?;
        for _ in 0..50 {
            let sp = self.speed(sigma);
            if !(sp > T::zero()) {
                return Err(GeometryError::ZeroSpeed(sigma.as_f64()));
            }
            let next = (sigma - (acc - s) / sp).max(a).min(b);
            acc = acc + self.arc(sigma, next)?;
            let step = (next - sigma).abs();
            sigma = next;
            if step <= T::lit(ARCLENGTH_TOL) * (T::one() + sigma.abs()) {
                break;
            }
        }
        Ok(sigma)
    }
}

impl<T: Real> BaseCurve<T> for ArclengthCurve<T> {
    fn interval(&self) -> (T, T) {
        (T::zero(), self.length)
    }

    fn jet(&self, s: T) -> Result<CurveJet<T>> {
        let sigma = self.inverse(s)?;
        let j = self.inner.jet(sigma)?;
        let f = conformal_factor(self.m, j.point);
        let n1 = j.d1[0].hypot(j.d1[1]);
        if !(n1 > T::zero()) {
            return Err(GeometryError::ZeroSpeed(s.as_f64()));
        }
        let sp = n1 / f;
        let df = T::lit(2.0) * self.m * (j.point[0] * j.d1[0] + j.point[1] * j.d1[1]);
        let dsp = (j.d1[0] * j.d2[0] + j.d1[1] * j.d2[1]) / (n1 * f) - n1 * df / (f * f);
        let d1 = [j.d1[0] / sp, j.d1[1] / sp];
        let d2 = [(j.d2[0] - j.d1[0] * dsp / sp) / (sp * sp), (j.d2[1] - j.d1[1] * dsp / sp) / (sp * sp)];
        Ok(CurveJet { point: j.point, d1, d2 })
    }

    fn is_arclength(&self) -> bool {
        true
    }
}

/// Signed geodesic curvature in `h`, from the covariant acceleration
/// `h(α'' + Γ(α',α'), Jα')/|α'|_h³`. The formula is invariant under
/// reparametrization, so unit speed is not required.
pub fn base_geodesic_curvature<T: Real>(m: T, curve: &dyn BaseCurve<T>, s: T) -> Result<T> {
    let j = curve.jet(s)?;
    let f = conformal_factor(m, j.point);
    let v = j.d1;
    let v2 = v[0] * v[0] + v[1] * v[1];
    if !(v2 > T::zero()) {
        return Err(GeometryError::ZeroSpeed(s.as_f64()));
    }
    // h = e^{2φ}δ with φ = −ln F: Γ(v,v)^k = 2(v·∇φ)v^k − |v|²∂_kφ.
    let two = T::lit(2.0);
    let dphi = [-two * m * j.point[0] / f, -two * m * j.point[1] / f];
    let vd = v[0] * dphi[0] + v[1] * dphi[1];
    let acc = [j.d2[0] + two * vd * v[0] - v2 * dphi[0], j.d2[1] + two * vd * v[1] - v2 * dphi[1]];
    let jv = [-v[1], v[0]];
    let h_acc_jv = (acc[0] * jv[0] + acc[1] * jv[1]) / (f * f);
    Ok(h_acc_jv / (v2.sqrt() / f).powi(3))
}

/// Gaussian curvature of `(ℝ², h)` at `(x, y)`, `K = F²Δ ln F`.
pub fn base_sectional_curvature<T: Real>(m: T, x: T, y: T) -> T {
    let lap = |axis: usize| {
        let mut p: [Dual2<T>; 2] = [
            Dual::new(Dual::new(x, T::zero()), Dual::new(T::zero(), T::zero())),
            Dual::new(Dual::new(y, T::zero()), Dual::new(T::zero(), T::zero())),
        ];
        p[axis] = Dual::new(Dual::new(p[axis].re.re, T::one()), Dual::new(T::one(), T::zero()));
        let f = Dual2::<T>::one() + <Dual2<T> as Scalar<T>>::cst(m) * (p[0] * p[0] + p[1] * p[1]);
        f.ln().eps.eps
    };
    let f = conformal_factor(m, [x, y]);
    f * f * (lap(0) + lap(1))
}

/// Chart radius of the origin-centered circle with geodesic curvature `kappa`:
/// the positive root of `mρ² + κρ − 1 = 0`.
pub fn circle_for_kg<T: Real>(m: T, kappa: T) -> Result<T> {
    if !(m > T::zero()) {
        return Err(GeometryError::NonPositiveM(m.as_f64()));
    }
    if kappa < T::zero() {
        return Err(GeometryError::NegativeCurvature(kappa.as_f64()));
    }
    Ok(T::lit(2.0) / (kappa + (kappa * kappa + T::lit(4.0) * m).sqrt()))
}

/// The Hopf cylinder `r(s,t) = (x(s), y(s), t)` in BCV(m, l), `t ∈ t_range`.
pub fn lift_cylinder<T: Real>(m: T, l: T, curve: PlaneCurve<T>, t_range: (T, T)) -> Result<SurfacePatch<T>> {
    let model = MetricModel::bcv(m, l)?;
    check_base(&model, &curve)?;
    Ok(SurfacePatch::new(model, SurfaceKind::VerticalCylinder { curve }, ParamDomain::new(curve.interval, t_range)))
}

/// Hopf cylinder over any base curve; jets come from differences.
pub fn lift_base_curve<T: Real>(m: T, l: T, curve: Arc<dyn BaseCurve<T>>, t_range: (T, T)) -> Result<SurfacePatch<T>> {
    let model = MetricModel::bcv(m, l)?;
    check_base(&model, curve.as_ref())?;
    let interval = curve.interval();
    let map = move |s: T, t: T| match curve.jet(s) {
        Ok(j) => [j.point[0], j.point[1], t],
        Err(_) => [T::nan(); 3],
    };
    Ok(SurfacePatch::new(model, SurfaceKind::Sampled(Arc::new(map)), ParamDomain::new(interval, t_range)))
}

fn check_base<T: Real>(model: &MetricModel<T>, curve: &dyn BaseCurve<T>) -> Result<()> {
    let (a, b) = curve.interval();
    let n = 32;
    for i in 0..=n {
        let s = (a + (b - a) * T::lit(i as f64) / T::lit(n as f64)).min(b);
        let p = curve.jet(s)?.point;
        model.check_point(&ChartPoint::new(p[0], p[1], T::zero()))?;
    }
    Ok(())
}

/// `τ_g = −g(∇_X E₃, ξ)` on the fiber over `α(s)`, with `X` the unit horizontal
/// lift of `α'` and `ξ = bE₁ − aE₂`.
pub fn fiber_torsion<T: Real>(m: T, l: T, curve: &dyn BaseCurve<T>, s: T) -> Result<T> {
    let model = MetricModel::bcv(m, l)?;
    let j = curve.jet(s)?;
    let n = j.d1[0].hypot(j.d1[1]);
    if !(n > T::zero()) {
        return Err(GeometryError::ZeroSpeed(s.as_f64()));
    }
    let (a, b) = (j.d1[0] / n, j.d1[1] / n);
    let p = ChartPoint::new(j.point[0], j.point[1], T::zero());
    let x = model.from_frame_coefficients(&p, [a, b, T::zero()])?;
    let xi = model.from_frame_coefficients(&p, [b, -a, T::zero()])?;
    let nabla = model.covariant_derivative_at(&p, &FrameVector::new(&model, 3)?, &x)?;
    Ok(-model.inner(&nabla, &xi)?)
}

/// Unit normal `(y'/F)E₁ − (x'/F)E₂` of the cylinder over an arclength curve,
/// normalized so that it also applies at other speeds.
pub fn hopf_normal<T: Real>(model: &MetricModel<T>, curve: &dyn BaseCurve<T>, s: T, t: T) -> Result<TangentVector<T>> {
    let j = curve.jet(s)?;
    let n = j.d1[0].hypot(j.d1[1]);
    if !(n > T::zero()) {
        return Err(GeometryError::ZeroSpeed(s.as_f64()));
    }
    let p = ChartPoint::new(j.point[0], j.point[1], t);
    model.from_frame_coefficients(&p, [j.d1[1] / n, -j.d1[0] / n, T::zero()])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HopfInvariants<T> {
    pub geodesic_curvature: T,
    pub fiber_torsion: T,
    pub mean_curvature: T,
    pub norm_a_sq: T,
    /// `1/√(κ_g² + 4m)`; defined only for `m > 0`.
    pub extrinsic_radius: Option<T>,
}

impl<T: Real> HopfInvariants<T> {
    pub fn radius(&self, m: T) -> Result<T> {
        self.extrinsic_radius.ok_or(GeometryError::NonPositiveM(m.as_f64()))
    }
}

/// Closed-form invariants of the cylinder over a curve of geodesic curvature `kappa`.
pub fn hopf_invariants<T: Real>(m: T, l: T, kappa: T) -> Result<HopfInvariants<T>> {
    if kappa < T::zero() {
        return Err(GeometryError::NegativeCurvature(kappa.as_f64()));
    }
    let tau = -l / T::lit(2.0);
    let extrinsic_radius = (m > T::zero()).then(|| (kappa * kappa + T::lit(4.0) * m).sqrt().recip());
    Ok(HopfInvariants {
        geodesic_curvature: kappa,
        fiber_torsion: tau,
        mean_curvature: kappa / T::lit(2.0),
        norm_a_sq: kappa * kappa + T::lit(2.0) * tau * tau,
        extrinsic_radius,
    })
}

/// `4m − l²`, the squared curvature of biharmonic base circles when positive.
pub fn window<T: Real>(m: T, l: T) -> T {
    T::lit(4.0) * m - l * l
}

/// A geodesic-curvature function along a base curve.
#[derive(Clone)]
pub enum CurvatureProfile<T> {
    /// Constant `value`, carrying `square = value²` exactly as it was obtained.
    Constant { value: T, square: T },
    /// `Σ cᵢ sⁱ`.
    Polynomial(Vec<T>),
    /// Arbitrary function, differentiated by central differences with `step`.
    Sampled(Arc<dyn Fn(T) -> T + Send + Sync>, T),
}

impl<T: Real> fmt::Debug for CurvatureProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureProfile::Constant { value, square } => {
                f.debug_struct("Constant").field("value", value).field("square", square).finish()
            }
            CurvatureProfile::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            CurvatureProfile::Sampled(_, h) => f.debug_tuple("Sampled").field(h).finish(),
        }
    }
}

impl<T: Real> CurvatureProfile<T> {
    pub fn constant(value: T) -> Self {
        CurvatureProfile::Constant { value, square: value * value }
    }

    /// `κ ≡ √(4m − l²)`, keeping the square in closed form.
    pub fn biharmonic_constant(m: T, l: T) -> Self {
        let square = window(m, l);
        CurvatureProfile::Constant { value: square.max(T::zero()).sqrt(), square }
    }

    /// `(κ, κ', κ'')` at `s`.
    pub fn derivatives(&self, s: T) -> (T, T, T) {
        match self {
            CurvatureProfile::Constant { value, .. } => (*value, T::zero(), T::zero()),
            CurvatureProfile::Polynomial(c) => {
                let (mut p, mut dp, mut ddp) = (T::zero(), T::zero(), T::zero());
                for &ci in c.iter().rev() {
                    ddp = ddp * s + T::lit(2.0) * dp;
                    dp = dp * s + p;
                    p = p * s + ci;
                }
                (p, dp, ddp)
            }
            CurvatureProfile::Sampled(f, h) => {
                let h = *h;
                let (fm, f0, fp) = (f(s - h), f(s), f(s + h));
                (f0, (fp - fm) / (T::lit(2.0) * h), (fp - T::lit(2.0) * f0 + fm) / (h * h))
            }
        }
    }
}

/// `(κ'' − κ³ + (4m − l²)κ, 3κκ', −(l/2)κ')`.
pub fn curve_ode_residual<T: Real>(kappa: &CurvatureProfile<T>, m: T, l: T, s: T) -> [T; 3] {
    let q = window(m, l);
    let (k, dk, ddk) = kappa.derivatives(s);
    let cubic = match kappa {
        CurvatureProfile::Constant { value, square } => *value * *square,
        _ => k * k * k,
    };
    [ddk - cubic + q * k, T::lit(3.0) * k * dk, -(l / T::lit(2.0)) * dk]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Conformal-change formula `κ_h = Fκ_e + ∇F·n` with `n` the left normal.
    fn conformal_oracle(m: f64, j: &CurveJet<f64>) -> f64 {
        let [x, y] = j.point;
        let f = 1.0 + m * (x * x + y * y);
        let sp = j.d1[0].hypot(j.d1[1]);
        let ke = (j.d1[0] * j.d2[1] - j.d1[1] * j.d2[0]) / sp.powi(3);
        let n = [-j.d1[1] / sp, j.d1[0] / sp];
        f * ke + 2.0 * m * (x * n[0] + y * n[1])
    }

    #[test]
    fn euclidean_curvatures() {
        let c = PlaneCurve::<f64>::circle([0.3, -0.2], 1.0, (-3.0, 3.0));
        assert!((base_geodesic_curvature(0.0, &c, 0.7).unwrap() - 1.0).abs() < 1e-14);
        let l = PlaneCurve::line([0.0, 1.0], [0.6, 0.8], (-1.0, 1.0));
        assert_eq!(base_geodesic_curvature(0.0, &l, 0.2).unwrap(), 0.0);
    }

    #[test]
    fn origin_circle_curvature() {
        for &(m, rho) in &[(1.0, 0.4), (1.0, 2.0_f64.sqrt() - 1.0), (0.25, 1.3), (-0.5, 0.6)] {
            let c = PlaneCurve::circle([0.0, 0.0], rho, (-3.0, 3.0));
            let k = base_geodesic_curvature(m, &c, 1.1).unwrap();
            assert!((k - (1.0 - m * rho * rho) / rho).abs() < 1e-13, "m={m} rho={rho}");
        }
    }

    #[test]
    fn off_center_circle_matches_conformal_formula() {
        let c = PlaneCurve::circle([0.4, -0.3], 0.5, (-3.0, 3.0));
        for &s in &[-2.0, 0.0, 1.3] {
            let k = base_geodesic_curvature(0.7, &c, s).unwrap();
            assert!((k - conformal_oracle(0.7, &c.jet(s).unwrap())).abs() < 1e-13);
        }
    }

    #[test]
    fn circle_radius_for_curvature() {
        assert!((circle_for_kg(1.0, 2.0).unwrap() - (2.0_f64.sqrt() - 1.0)).abs() < 1e-15);
        assert_eq!(circle_for_kg(1.0, 0.0).unwrap(), 1.0);
        assert!((circle_for_kg(0.25, 1.0).unwrap() - 2.0 * (2.0_f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!(matches!(circle_for_kg(0.0, 1.0), Err(GeometryError::NonPositiveM(_))));
        assert!(matches!(circle_for_kg(-1.0, 1.0), Err(GeometryError::NonPositiveM(_))));
    }

    #[test]
    fn unit_speed_circle_is_arclength() {
        let c = PlaneCurve::unit_speed_circle(1.0, 0.4);
        assert!(c.is_arclength());
        assert!(speed_defect(1.0, &c, 50).unwrap() < 1e-14);
    }

    #[test]
    fn reparametrized_curve_has_unit_speed() {
        let inner = PlaneCurve::<f64>::circle([0.2, 0.1], 0.5, (-1.0, 2.0));
        let c = ArclengthCurve::new(0.8, Arc::new(inner)).unwrap();
        assert!(speed_defect(0.8, &c, 21).unwrap() < 1e-8);
        // Curvature is a geometric invariant of the trace.
        let s = 0.37 * c.length();
        let sigma = c.inverse(s).unwrap();
        let k0 = base_geodesic_curvature(0.8, &inner, sigma).unwrap();
        let k1 = base_geodesic_curvature(0.8, &c, s).unwrap();
        assert!((k0 - k1).abs() < 1e-7);
    }

    #[test]
    fn torsion_values() {
        let c = PlaneCurve::<f64>::unit_speed_circle(1.0, 0.5);
        assert!((fiber_torsion(1.0, 2.0, &c, 0.3).unwrap() + 1.0).abs() < 1e-14);
        assert!(fiber_torsion(1.0, 0.0, &c, 0.3).unwrap().abs() < 1e-15);
    }

    #[test]
    fn invariant_examples() {
        let a = hopf_invariants(1.0, 0.0, 2.0).unwrap();
        assert_eq!((a.mean_curvature, a.norm_a_sq), (1.0, 4.0));
        assert!((a.extrinsic_radius.unwrap() - 1.0 / 8.0_f64.sqrt()).abs() < 1e-15);
        let b = hopf_invariants(1.0, 1.0, 3.0_f64.sqrt()).unwrap();
        assert!((b.norm_a_sq - 3.5).abs() < 1e-15);
        assert!((b.extrinsic_radius.unwrap() - 1.0 / 7.0_f64.sqrt()).abs() < 1e-15);
        let c = hopf_invariants(0.0, 1.0, 1.0).unwrap();
        assert!(c.extrinsic_radius.is_none() && c.radius(0.0).is_err());
    }

    #[test]
    fn ode_triples() {
        for &(m, l) in &[(1.0, 0.0), (1.0, 1.0), (1.0, 2.0_f64.sqrt()), (0.25, 0.0), (0.7, 0.3)] {
            assert_eq!(curve_ode_residual(&CurvatureProfile::biharmonic_constant(m, l), m, l, 0.4), [0.0, 0.0, -0.0]);
        }
        assert_eq!(curve_ode_residual(&CurvatureProfile::constant(0.0), 1.0, 0.5, 2.0)[0], 0.0);
        let lin = CurvatureProfile::Polynomial(vec![0.0, 1.0]);
        assert_eq!(curve_ode_residual(&lin, 1.0, 0.0, 1.0), [3.0, 3.0, -0.0]);
    }

    #[test]
    fn base_curvature_is_four_m() {
        for &m in &[1.0_f64, 0.25, -0.5, 0.0] {
            assert!((base_sectional_curvature(m, 0.3, -0.4) - 4.0 * m).abs() < 1e-13);
        }
    }
}
