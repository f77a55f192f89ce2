use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::Arc;

use biharm::chart::MetricModel;
use biharm::hopf::{circle_for_kg, lift_cylinder, PlaneCurve};
use biharm::scalar::Scalar;
use biharm::surface::{Axis, Dual2, ParamDomain, StencilOptions, SurfaceKind, SurfacePatch};
use proptest::prelude::*;

type Model = MetricModel<f64>;
type Patch = SurfacePatch<f64>;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn square(r: f64) -> ParamDomain<f64> {
    ParamDomain::new((-r, r), (-r, r))
}

fn affine(model: Model, origin: [f64; 3], du: [f64; 3], dv: [f64; 3]) -> Patch {
    SurfacePatch::new(model, SurfaceKind::Affine { origin, du, dv }, square(0.4))
}

/// `(u, v, a u² + b uv + c sin v + d)` with exact jets.
fn analytic_graph(model: Model, k: [f64; 4]) -> Patch {
    let f = move |u: Dual2<f64>, v: Dual2<f64>| {
        let c = |x: f64| <Dual2<f64> as Scalar<f64>>::cst(x);
        [u, v, c(k[0]) * u * u + c(k[1]) * u * v + c(k[2]) * v.sin() + c(k[3])]
    };
    SurfacePatch::new(model, SurfaceKind::Analytic(Arc::new(f)), square(0.4))
}

/// The same family, differentiated numerically.
fn sampled_graph(model: Model, k: [f64; 4]) -> Patch {
    let f = move |u: f64, v: f64| [u, v, k[0] * u * u + k[1] * u * v + k[2] * v.sin() + k[3]];
    SurfacePatch::new(model, SurfaceKind::Sampled(Arc::new(f)), square(0.4))
}

fn hopf(m: f64, l: f64, kappa: f64) -> (PlaneCurve<f64>, Patch) {
    let rho = circle_for_kg(m, kappa).unwrap();
    let curve = PlaneCurve::unit_speed_circle(m, rho);
    (curve, lift_cylinder(m, l, curve, (-1.0, 1.0)).unwrap())
}

#[test]
fn immersion_jets() {
    let plane = affine(Model::euclidean(), [0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    let j = plane.immersion_jet(0.1, -0.2).unwrap();
    assert_eq!((j.ru, j.rv), ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));

    let (_, cyl) = hopf(1.0, 1.0, 1.5);
    let j = cyl.immersion_jet(0.2, 0.3).unwrap();
    assert_eq!(j.rv, [0.0, 0.0, 1.0]);
    let e3 = cyl.model.orthonormal_frame_at(&j.point).unwrap()[2].components;
    assert_eq!(j.rv, e3);

    let circ = SurfacePatch::vertical_cylinder(Model::euclidean(), [0.0, 0.0], 1.0, (-1.0, 1.0));
    let u: f64 = 0.7;
    let j = circ.immersion_jet(u, 0.0).unwrap();
    for (k, want) in [-u.cos(), -u.sin(), 0.0].into_iter().enumerate() {
        assert!(close(j.ruu[k], want, 1e-14));
    }
}

#[test]
fn first_forms() {
    let plane = affine(Model::euclidean(), [0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    assert_eq!(plane.first_fundamental_form(0.0, 0.0).unwrap(), [[1.0, 0.0], [0.0, 1.0]]);
    let graph = affine(Model::euclidean(), [0.0; 3], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]);
    assert_eq!(graph.first_fundamental_form(0.1, 0.2).unwrap(), [[2.0, 0.0], [0.0, 1.0]]);

    // Cylinder over the κ = 2 circle in BCV(1, 2); cross term from the coframe.
    let (m, l) = (1.0, 2.0);
    let rho = 2f64.sqrt() - 1.0;
    assert!(close(circle_for_kg(m, 2.0).unwrap(), rho, 1e-15));
    let curve = PlaneCurve::unit_speed_circle(m, rho);
    let patch = lift_cylinder(m, l, curve, (-1.0, 1.0)).unwrap();
    let f = 1.0 + m * rho * rho;
    // Unit h-speed circle: x = ρ cos(ωs), y = ρ sin(ωs) with ω = F/ρ.
    let (x, y, dx, dy) = (rho, 0.0, 0.0, f);
    let want = l * (y * dx - x * dy) / (2.0 * f);
    let form = patch.first_fundamental_form(0.0, 0.4).unwrap();
    assert!(close(form[0][1], want, 1e-14), "{} vs {want}", form[0][1]);
    assert!(close(form[1][1], 1.0, 1e-15));
}

#[test]
fn normals() {
    let plane = affine(Model::euclidean(), [0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    assert_eq!(plane.unit_normal(0.1, 0.1).unwrap().components, [0.0, 0.0, 1.0]);
    let sol_plane = SurfacePatch::coordinate_plane(Model::sol(), Axis::Z, -0.4, 1.0);
    assert_eq!(sol_plane.unit_normal(0.3, -0.6).unwrap().components, [0.0, 0.0, 1.0]);

    let (m, l) = (1.0, 1.0);
    let (curve, patch) = hopf(m, l, 3f64.sqrt());
    let rho = circle_for_kg(m, 3f64.sqrt()).unwrap();
    let f = 1.0 + m * rho * rho;
    let w = f / rho;
    for s in [-0.5, 0.0, 0.9] {
        let s = s * curve.interval.1;
        let (x, y) = (rho * (w * s).cos(), rho * (w * s).sin());
        let (dx, dy) = (-rho * w * (w * s).sin(), rho * w * (w * s).cos());
        let p = biharm::chart::ChartPoint::new(x, y, 0.25);
        let want = patch.model.from_frame_coefficients(&p, [dy / f, -dx / f, 0.0]).unwrap().components;
        let got = patch.unit_normal(s, 0.25).unwrap().components;
        let sign = if got[0] * want[0] + got[1] * want[1] + got[2] * want[2] >= 0.0 { 1.0 } else { -1.0 };
        for k in 0..3 {
            assert!(close(got[k], sign * want[k], 1e-12));
        }
    }
}

#[test]
fn shape_examples() {
    let sol_plane = SurfacePatch::coordinate_plane(Model::sol(), Axis::Z, 0.0, 1.0);
    let r = sol_plane.shape_report(0.2, -0.3).unwrap();
    assert!(r.mean_curvature.abs() < 1e-14);
    assert!(close(r.norm_a_sq, 2.0, 1e-12));
    let (k1, k2) = r.principal_curvatures();
    assert!(close(k1, -1.0, 1e-12) && close(k2, 1.0, 1e-12));

    let (_, cyl) = hopf(1.0, 0.0, 2.0);
    let r = cyl.shape_report(0.1, 0.2).unwrap();
    assert!(close(r.mean_curvature.abs(), 1.0, 1e-12));
    assert!(close(r.norm_a_sq, 4.0, 1e-12));

    // Geodesic sphere of radius d in the unit 3-sphere: A = cot(d)·Id.
    let sphere = Patch::geodesic_sphere(1.0, FRAC_PI_4).unwrap();
    let r = sphere.shape_report(1.0, 2.0).unwrap();
    assert!(close(r.mean_curvature.abs(), 1.0 / FRAC_PI_4.tan(), 1e-12));
    assert!(close(r.norm_a_sq, 2.0, 1e-12));
    assert!(r.umbilicity < 1e-12);
}

#[test]
fn gradient_of_constant_mean_curvature() {
    let (_, cyl) = hopf(1.0, 1.0, 3f64.sqrt());
    let field = cyl.mean_curvature_field();
    let g = cyl.intrinsic_gradient(&field, 0.1, 0.2, StencilOptions::default()).unwrap();
    assert!(g.norm <= 1e-6, "{}", g.norm);
}

#[test]
fn laplacian_on_round_sphere() {
    // On a sphere of intrinsic radius R in ℝ³, Δ cos θ = −2 cos θ / R².
    let sphere = Patch::geodesic_sphere(0.0, 0.8).unwrap();
    let f = |t: f64, _: f64| Ok(t.cos());
    let (t, p) = (1.1, 2.0);
    let lap = sphere.laplace_beltrami(&f, t, p, StencilOptions::default()).unwrap();
    assert!(close(lap, -2.0 * t.cos() / 0.64, 1e-7), "{lap}");
}

#[test]
fn jets_need_room() {
    let patch = sampled_graph(Model::euclidean(), [0.1, 0.0, 0.0, 0.0]);
    assert!(patch.immersion_jet(0.5, 0.0).is_err());
    let sphere = Patch::geodesic_sphere(1.0, 1.0).unwrap();
    assert!(sphere.shape_report(0.0, 0.0).is_err());
}

fn model_strategy() -> impl Strategy<Value = Model> {
    prop::sample::select(vec![
        Model::euclidean(),
        Model::bcv(1.0, 1.0).unwrap(),
        Model::bcv(-0.5, 0.8).unwrap(),
        Model::bcv(0.0, 1.0).unwrap(),
        Model::sol(),
        Model::space_form(1.0).unwrap(),
    ])
}

fn coeffs() -> impl Strategy<Value = [f64; 4]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -0.3..0.3f64]
}

fn param() -> impl Strategy<Value = (f64, f64)> {
    (-0.3..0.3f64, -0.3..0.3f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn second_form_symmetric(model in model_strategy(), k in coeffs(), (u, v) in param()) {
        for patch in [analytic_graph(model, k), sampled_graph(model, k)] {
            let r = patch.shape_report(u, v).unwrap();
            prop_assert!(r.second_form_asymmetry() <= 1e-7);
        }
    }

    #[test]
    fn jacobian_has_rank_two(model in model_strategy(), k in coeffs(), (u, v) in param()) {
        let form = analytic_graph(model, k).first_fundamental_form(u, v).unwrap();
        prop_assert!(form[0][0] * form[1][1] - form[0][1] * form[1][0] > 0.0);
    }

    #[test]
    fn swapping_parameters_flips_orientation(model in model_strategy(), k in coeffs(), (u, v) in param()) {
        let patch = analytic_graph(model, k);
        let a = patch.shape_report(u, v).unwrap();
        let b = patch.swapped().shape_report(v, u).unwrap();
        for i in 0..3 {
            prop_assert!(close(a.normal.components[i], -b.normal.components[i], 1e-12));
        }
        prop_assert!(close(a.mean_curvature, -b.mean_curvature, 1e-10));
        prop_assert!(close(a.norm_a_sq, b.norm_a_sq, 1e-10));
        prop_assert!(close(a.umbilicity, b.umbilicity, 1e-10));
    }

    #[test]
    fn norm_a_splits(model in model_strategy(), k in coeffs(), (u, v) in param()) {
        let r = analytic_graph(model, k).shape_report(u, v).unwrap();
        let h = r.mean_curvature;
        let tr = r.shape_operator[0][0] + r.shape_operator[1][1];
        prop_assert!(close(h, 0.5 * tr, 1e-12));
        prop_assert!(r.norm_a_sq + 1e-12 >= 2.0 * h * h);
        prop_assert!(r.umbilicity >= 0.0);
        prop_assert!(close(r.norm_a_sq - 2.0 * h * h, r.umbilicity * r.umbilicity, 1e-9));
    }

    #[test]
    fn sampled_matches_analytic(model in model_strategy(), k in coeffs(), (u, v) in param()) {
        let a = analytic_graph(model, k).shape_report(u, v).unwrap();
        let b = sampled_graph(model, k).shape_report(u, v).unwrap();
        prop_assert!(close(a.mean_curvature, b.mean_curvature, 1e-5));
        prop_assert!(close(a.norm_a_sq, b.norm_a_sq, 1e-5));
    }

    #[test]
    fn hopf_cylinders_are_fiber_invariant(
        (m, l) in prop::sample::select(vec![(1.0, 0.0), (1.0, 1.0), (0.25, 0.0), (0.5, -0.7)]),
        s in -0.9..0.9f64,
        t in -0.8..0.8f64,
    ) {
        let kappa = (4.0 * m - l * l).sqrt();
        let (curve, patch) = hopf(m, l, kappa);
        let s = s * curve.interval.1;
        let a = patch.shape_report(s, t).unwrap();
        let b = patch.shape_report(s, 0.0).unwrap();
        prop_assert!(close(a.mean_curvature, b.mean_curvature, 1e-9));
        prop_assert!(close(a.mean_curvature.abs(), kappa / 2.0, 1e-6));
        prop_assert!(close(a.norm_a_sq, kappa * kappa + l * l / 2.0, 1e-6));
    }
}

#[test]
fn off_center_sphere_in_s3_is_umbilical() {
    let s3 = Model::space_form(1.0).unwrap();
    let patch = Patch::coordinate_sphere(s3, [0.2, 0.1, -0.1], 0.5);
    for (t, p) in [(0.6, 0.3), (1.5, PI), (2.4, 5.0)] {
        assert!(patch.shape_report(t, p).unwrap().umbilicity < 1e-10);
    }
}
