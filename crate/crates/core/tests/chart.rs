use biharm::chart::{ChartPoint, FrameVector, MetricModel, TangentVector};
use biharm::dual::Dual;
use biharm::scalar::Scalar;
use proptest::prelude::*;

type Model = MetricModel<f64>;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn frame_coeffs(model: &Model, v: &TangentVector<f64>) -> [f64; 3] {
    model.frame_coefficients(v).unwrap()
}

fn assert_vec(got: [f64; 3], want: [f64; 3], tol: f64) {
    for k in 0..3 {
        assert!(close(got[k], want[k], tol), "component {k}: got {got:?}, want {want:?}");
    }
}

/// Metric rebuilt from the coframe, written out independently of the library.
fn coframe_metric(model: &Model, p: [f64; 3]) -> [[f64; 3]; 3] {
    let [x, y, z] = p;
    match *model {
        MetricModel::Bcv { m, l } => {
            let f = 1.0 + m * (x * x + y * y);
            let theta = [[1.0 / f, 0.0, 0.0], [0.0, 1.0 / f, 0.0], [0.5 * l * y / f, -0.5 * l * x / f, 1.0]];
            let mut g = [[0.0; 3]; 3];
            for th in &theta {
                for i in 0..3 {
                    for j in 0..3 {
                        g[i][j] += th[i] * th[j];
                    }
                }
            }
            g
        }
        MetricModel::Sol => [[(2.0 * z).exp(), 0.0, 0.0], [0.0, (-2.0 * z).exp(), 0.0], [0.0, 0.0, 1.0]],
        MetricModel::SpaceForm { c } => {
            let psi = 1.0 + 0.25 * c * (x * x + y * y + z * z);
            let d = 1.0 / (psi * psi);
            [[d, 0.0, 0.0], [0.0, d, 0.0], [0.0, 0.0, d]]
        }
    }
}

fn models() -> Vec<Model> {
    let mut v: Vec<Model> =
        [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0), (0.25, 0.0), (-0.125, 0.0), (0.0, 1.0), (-1.0, 1.0)]
            .iter()
            .map(|&(m, l)| Model::bcv(m, l).unwrap())
            .collect();
    v.push(Model::sol());
    v.push(Model::space_form(1.0).unwrap());
    v.push(Model::space_form(-1.0).unwrap());
    v
}

fn model_strategy() -> impl Strategy<Value = Model> {
    prop::sample::select(models())
}

fn point_strategy() -> impl Strategy<Value = [f64; 3]> {
    [-0.6..0.6f64, -0.6..0.6f64, -1.0..1.0f64]
}

fn vec_strategy() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
}

fn field_y(p: &[Dual<f64>; 3]) -> [Dual<f64>; 3] {
    let c = Dual::constant;
    [p[0] * p[1] + c(0.5), p[2] * p[2] - p[0], c(1.0) + p[1] * c(3.0)]
}

fn field_z(p: &[Dual<f64>; 3]) -> [Dual<f64>; 3] {
    let c = Dual::constant;
    [c(2.0) - p[2], p[0] * p[0] * p[1], p[1] * p[2] + c(0.25)]
}

fn eval_plain(f: fn(&[Dual<f64>; 3]) -> [Dual<f64>; 3], p: [f64; 3]) -> [f64; 3] {
    f(&p.map(Dual::constant)).map(|d| d.re)
}

fn g_of(model: &Model, p: [f64; 3], a: [f64; 3], b: [f64; 3]) -> f64 {
    let g = model.metric_at(&ChartPoint::from_coords(p)).unwrap();
    (0..3).map(|i| (0..3).map(|j| g[i][j] * a[i] * b[j]).sum::<f64>()).sum()
}

#[test]
fn metric_examples() {
    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let flat = Model::bcv(0.0, 0.0).unwrap();
    assert_eq!(flat.metric_at(&ChartPoint::new(0.4, -0.3, 0.9)).unwrap(), id);

    let s2r = Model::bcv(1.0, 0.0).unwrap();
    assert!(close(s2r.metric_at(&ChartPoint::new(1.0, 0.0, 0.0)).unwrap()[0][0], 0.25, 1e-15));

    let sol = Model::sol();
    assert!(close(sol.metric_at(&ChartPoint::new(0.0, 0.0, 2f64.ln())).unwrap()[0][0], 4.0, 1e-14));
    assert_eq!(sol.metric_at(&ChartPoint::origin()).unwrap(), id);

    let berger = Model::bcv(1.0, 2.0).unwrap();
    assert!(close(berger.metric_at(&ChartPoint::new(0.0, 1.0, 0.0)).unwrap()[0][2], 0.5, 1e-15));
    for (m, l) in [(1.0, 2.0), (-0.7, 0.3), (0.25, 0.0)] {
        assert_eq!(Model::bcv(m, l).unwrap().metric_at(&ChartPoint::origin()).unwrap(), id);
    }
}

#[test]
fn frame_examples() {
    let o = ChartPoint::origin();
    let e = Model::bcv(0.8, -1.3).unwrap().orthonormal_frame_at(&o).unwrap();
    assert_eq!(e.map(|v| v.components), [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    let e = Model::sol().orthonormal_frame_at(&ChartPoint::new(0.0, 0.0, 1.0)).unwrap();
    assert_vec(e[0].components, [(-1f64).exp(), 0.0, 0.0], 1e-15);

    let e = Model::bcv(1.0, 2.0).unwrap().orthonormal_frame_at(&ChartPoint::new(0.0, 1.0, 0.0)).unwrap();
    assert_vec(e[0].components, [2.0, 0.0, -1.0], 1e-15);
}

#[test]
fn connection_examples() {
    let flat = Model::bcv(0.0, 0.0).unwrap();
    let gamma = flat.christoffels_at(&ChartPoint::new(0.3, 0.2, -0.5)).unwrap();
    assert!(gamma.gamma.iter().flatten().flatten().all(|&g| g == 0.0));

    for l in [0.0, 0.7, -2.0] {
        let model = Model::bcv(1.0, l).unwrap();
        let p = ChartPoint::new(0.0, 1.0, 0.3);
        assert_vec(frame_coeffs(&model, &model.frame_connection_at(&p, 1, 1).unwrap()), [0.0, 2.0, 0.0], 1e-14);
    }

    let berger = Model::bcv(1.0, 2.0).unwrap();
    let p = ChartPoint::new(0.2, -0.4, 0.1);
    assert_vec(frame_coeffs(&berger, &berger.frame_connection_at(&p, 3, 1).unwrap()), [0.0, -1.0, 0.0], 1e-14);
    assert_vec(frame_coeffs(&berger, &berger.frame_connection_at(&p, 1, 3).unwrap()), [0.0, -1.0, 0.0], 1e-14);

    let sol = Model::sol();
    for p in [ChartPoint::new(0.0, 0.0, 0.0), ChartPoint::new(0.5, -0.2, 0.8)] {
        assert_vec(frame_coeffs(&sol, &sol.frame_connection_at(&p, 1, 1).unwrap()), [0.0, 0.0, -1.0], 1e-14);
        assert_vec(frame_coeffs(&sol, &sol.frame_connection_at(&p, 2, 2).unwrap()), [0.0, 0.0, 1.0], 1e-14);
    }

    let constant = |_: &[Dual<f64>; 3]| [Dual::constant(1.0), Dual::constant(-2.0), Dual::constant(0.5)];
    let p = ChartPoint::new(0.1, 0.2, 0.3);
    let d =
        Model::euclidean().covariant_derivative_at(&p, &constant, &TangentVector::new(p, [0.3, 0.1, -0.4])).unwrap();
    assert_eq!(d.components, [0.0; 3]);
}

#[test]
fn bracket_examples() {
    let berger = Model::bcv(1.0, 2.0).unwrap();
    let p = ChartPoint::new(1.0, 0.0, 0.0);
    assert_vec(frame_coeffs(&berger, &berger.lie_bracket_frame_at(&p, 1, 2).unwrap()), [0.0, 2.0, 2.0], 1e-14);
    let q = ChartPoint::new(0.3, -0.5, 0.2);
    for (i, j) in [(1, 3), (2, 3)] {
        assert_vec(frame_coeffs(&berger, &berger.lie_bracket_frame_at(&q, i, j).unwrap()), [0.0; 3], 1e-14);
    }
    let sol = Model::sol();
    assert_vec(frame_coeffs(&sol, &sol.lie_bracket_frame_at(&q, 2, 3).unwrap()), [0.0, -1.0, 0.0], 1e-14);
}

#[test]
fn curvature_examples() {
    let p = ChartPoint::new(0.2, 0.3, -0.1);
    let berger = Model::bcv(1.0, 2.0).unwrap();
    let e = berger.orthonormal_frame_at(&p).unwrap();
    assert!(close(berger.riemann_at(&e[0], &e[1], &e[0], &e[1]).unwrap(), 1.0, 1e-12));
    assert!(close(berger.riemann_at(&e[0], &e[2], &e[0], &e[2]).unwrap(), 1.0, 1e-12));
    assert!(close(berger.ricci_at(&e[2], &e[2]).unwrap(), 2.0, 1e-12));

    let s2r = Model::bcv(1.0, 0.0).unwrap();
    let e = s2r.orthonormal_frame_at(&p).unwrap();
    assert!(close(s2r.ricci_at(&e[0], &e[0]).unwrap(), 4.0, 1e-12));

    let sol = Model::sol();
    let e = sol.orthonormal_frame_at(&p).unwrap();
    assert!(close(sol.riemann_at(&e[0], &e[2], &e[0], &e[2]).unwrap(), -1.0, 1e-12));
    assert!(close(sol.ricci_at(&e[0], &e[0]).unwrap(), 0.0, 1e-12));
    assert!(close(sol.ricci_at(&e[2], &e[2]).unwrap(), -2.0, 1e-12));
}

#[test]
fn negative_m_domain_guard() {
    let model = Model::bcv(-1.0, 0.5).unwrap();
    assert!(model.check_point(&ChartPoint::new(0.5, 0.5, 0.0)).is_ok());
    assert!(model.check_point(&ChartPoint::new(0.7, 0.7, 0.0)).is_err());
    assert!(model.metric_at(&ChartPoint::new(1.0, 0.0, 0.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn metric_matches_coframe(model in model_strategy(), p in point_strategy()) {
        let g = model.metric_at(&ChartPoint::from_coords(p)).unwrap();
        let want = coframe_metric(&model, p);
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(close(g[i][j], want[i][j], 1e-12));
                prop_assert_eq!(g[i][j], g[j][i]);
            }
        }
    }

    #[test]
    fn frame_is_orthonormal(model in model_strategy(), p in point_strategy()) {
        let q = ChartPoint::from_coords(p);
        let e = model.orthonormal_frame_at(&q).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!(close(model.inner(&e[i], &e[j]).unwrap(), want, 1e-10));
            }
        }
    }

    #[test]
    fn norm_is_nonnegative(model in model_strategy(), p in point_strategy(), v in vec_strategy()) {
        let q = ChartPoint::from_coords(p);
        let n = model.norm(&TangentVector::new(q, v)).unwrap();
        prop_assert!(n >= 0.0);
        prop_assert_eq!(model.norm(&TangentVector::zero(q)).unwrap(), 0.0);
    }

    /// `X g(Y, Z)` by central differences along a straight chart line.
    #[test]
    fn metric_compatibility(model in model_strategy(), p in point_strategy(), x in vec_strategy()) {
        let h = 1e-5;
        let shifted = |s: f64| [p[0] + s * x[0], p[1] + s * x[1], p[2] + s * x[2]];
        let gyz = |s: f64| g_of(&model, shifted(s), eval_plain(field_y, shifted(s)), eval_plain(field_z, shifted(s)));
        let lhs = (gyz(h) - gyz(-h)) / (2.0 * h);

        let q = ChartPoint::from_coords(p);
        let dir = TangentVector::new(q, x);
        let ny = model.covariant_derivative_at(&q, &field_y, &dir).unwrap();
        let nz = model.covariant_derivative_at(&q, &field_z, &dir).unwrap();
        let y = TangentVector::new(q, eval_plain(field_y, p));
        let z = TangentVector::new(q, eval_plain(field_z, p));
        let rhs = model.inner(&ny, &z).unwrap() + model.inner(&y, &nz).unwrap();
        // Difference-quotient error grows with the value near the domain edge.
        prop_assert!(close(lhs, rhs, 1e-7 * rhs.abs().max(1.0)), "{lhs} vs {rhs}");
    }

    #[test]
    fn torsion_free(model in model_strategy(), p in point_strategy()) {
        let q = ChartPoint::from_coords(p);
        let e = model.orthonormal_frame_at(&q).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                let a = model.covariant_derivative_at(&q, &FrameVector::new(&model, j).unwrap(), &e[i - 1]).unwrap();
                let b = model.covariant_derivative_at(&q, &FrameVector::new(&model, i).unwrap(), &e[j - 1]).unwrap();
                let br = model.lie_bracket_frame_at(&q, i, j).unwrap();
                let t = a.sub(&b).unwrap().sub(&br).unwrap();
                prop_assert!(model.norm(&t).unwrap() <= 1e-7);
            }
        }
    }

    #[test]
    fn riemann_symmetries(
        model in model_strategy(),
        p in point_strategy(),
        vs in [vec_strategy(), vec_strategy(), vec_strategy(), vec_strategy()],
    ) {
        let q = ChartPoint::from_coords(p);
        let [x, y, z, w] = vs.map(|v| TangentVector::new(q, v));
        let r = |a: &TangentVector<f64>, b: &TangentVector<f64>, c: &TangentVector<f64>, d: &TangentVector<f64>| {
            model.riemann_at(a, b, c, d).unwrap()
        };
        let v = r(&x, &y, &z, &w);
        prop_assert!(close(v, -r(&y, &x, &z, &w), 1e-8));
        prop_assert!(close(v, -r(&x, &y, &w, &z), 1e-8));
        prop_assert!(close(v, r(&z, &w, &x, &y), 1e-8));

        let curv = model.curvature_at(&q).unwrap();
        let op = |a: &TangentVector<f64>, b: &TangentVector<f64>, c: &TangentVector<f64>| {
            curv.curvature_operator(&a.components, &b.components, &c.components)
        };
        let (s1, s2, s3) = (op(&x, &y, &z), op(&y, &z, &x), op(&z, &x, &y));
        let sum = TangentVector::new(q, [0, 1, 2].map(|k| s1[k] + s2[k] + s3[k]));
        prop_assert!(model.norm(&sum).unwrap() <= 1e-8);

        let ric_z = model.ricci_operator_at(&z).unwrap();
        prop_assert!(close(model.inner(&ric_z, &w).unwrap(), model.ricci_at(&z, &w).unwrap(), 1e-10));
    }

    #[test]
    fn space_forms_are_einstein(c in prop::sample::select(vec![1.0, -1.0, 0.5]), p in point_strategy(), v in vec_strategy()) {
        let model = Model::space_form(c).unwrap();
        let x = TangentVector::new(ChartPoint::from_coords(p), v);
        let g = model.inner(&x, &x).unwrap();
        prop_assert!(close(model.ricci_at(&x, &x).unwrap(), 2.0 * c * g, 1e-8));
    }
}

#[test]
fn scalar_generic_f32() {
    let model = MetricModel::<f32>::bcv(1.0, 0.5).unwrap();
    let p = ChartPoint::new(0.2f32, 0.1, 0.0);
    let e = model.orthonormal_frame_at(&p).unwrap();
    assert!((model.inner(&e[0], &e[0]).unwrap() - 1.0).abs() < 1e-5);
    let d: Dual<f32> = Dual::variable(0.5f32);
    assert!((d.sin().eps - 0.5f32.cos()).abs() < 1e-6);
}
