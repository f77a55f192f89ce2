//! Acceptance gate: one line per criterion, run at the pinned tolerances.
//!
//! Runs without the libtest harness so the summary is always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use biharm::chart::{ChartPoint, MetricModel};
use biharm::hopf::{curve_ode_residual, CurvatureProfile};
use biharm::{run_suite, CheckRecord, SuiteConfig, SuiteName, SuiteReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suite(name: SuiteName) -> Result<SuiteReport, String> {
    run_suite(name, &SuiteConfig::default()).map_err(|e| format!("{name} failed to run: {e}"))
}

fn all_pass(report: &SuiteReport) -> Result<(), String> {
    let failed: Vec<String> = report
        .failures()
        .map(|c| {
            format!(
                "{} (residual {:?}, tol {:e}{})",
                c.id,
                c.residual,
                c.tol,
                c.error.as_deref().map(|e| format!(", {e}")).unwrap_or_default()
            )
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(format!("failing checks: {}", failed.join("; ")))
    }
}

fn record<'a>(report: &'a SuiteReport, id: &str) -> Result<&'a CheckRecord, String> {
    report.checks.iter().find(|c| c.id == id).ok_or_else(|| format!("missing check {id}"))
}

fn require(report: &SuiteReport, id: &str, tol: f64) -> Result<f64, String> {
    let c = record(report, id)?;
    if c.tol != tol {
        return Err(format!("{id} ran at tolerance {:e}, expected {tol:e}", c.tol));
    }
    if !c.pass {
        return Err(format!("{id} failed: residual {:?}", c.residual));
    }
    Ok(c.residual.unwrap_or(f64::NAN))
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s {
        Ok(())
    } else {
        Err(format!("took {:.2} s, limit {limit_s} s", elapsed.as_secs_f64()))
    }
}

fn frame_value(
    model: &MetricModel<f64>,
    p: &ChartPoint<f64>,
    f: impl Fn(&biharm::chart::CurvatureData<f64>, &[[f64; 3]; 3]) -> f64,
) -> f64 {
    let curv = model.curvature_at(p).expect("valid point");
    let e = model.orthonormal_frame_at(p).expect("valid point").map(|v| v.components);
    f(&curv, &e)
}

fn geometry_tables() -> Outcome {
    let start = Instant::now();
    let report = suite(SuiteName::GeometryTables)?;
    all_pass(&report)?;
    let tables = report.checks.iter().filter(|c| c.id.starts_with("tables.bcv")).count();
    if tables != 24 {
        return Err(format!("expected 4 table checks for each of 6 settings, found {tables}"));
    }
    // Printed entries evaluated directly at an off-axis point.
    let p = ChartPoint::new(0.3, -0.4, 0.2);
    for (m, l) in [(1.0, 1.0), (0.25, 0.0), (-0.125, 0.0), (1.0, 2.0)] {
        let model = MetricModel::bcv(m, l).map_err(|e| e.to_string())?;
        let k12 = frame_value(&model, &p, |c, e| c.riemann4(&e[0], &e[1], &e[0], &e[1]));
        let ric33 = frame_value(&model, &p, |c, e| c.ricci2(&e[2], &e[2]));
        let ric11 = frame_value(&model, &p, |c, e| c.ricci2(&e[0], &e[0]));
        if (k12 - (4.0 * m - 0.75 * l * l)).abs() > 1e-8
            || (ric33 - 0.5 * l * l).abs() > 1e-8
            || (ric11 - (4.0 * m - 0.5 * l * l)).abs() > 1e-8
        {
            return Err(format!("printed BCV curvature entries differ at m={m}, l={l}"));
        }
    }
    let sol = MetricModel::sol();
    let ric33 = frame_value(&sol, &p, |c, e| c.ricci2(&e[2], &e[2]));
    if (ric33 + 2.0).abs() > 1e-8 {
        return Err(format!("Sol Ric(E3,E3) = {ric33}"));
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("{} checks, {:.2} s", report.checks.len(), start.elapsed().as_secs_f64()))
}

fn hopf_circle() -> Outcome {
    let start = Instant::now();
    let report = suite(SuiteName::HopfCircle)?;
    all_pass(&report)?;
    let mut worst = 0.0f64;
    for tag in ["m=1,l=0", "m=1,l=1", "m=1,l=1.4142", "m=0.25,l=0"] {
        let id = |s: &str| format!("hopf[{tag}].{s}");
        worst = worst.max(require(&report, &id("residual"), 1e-6)?);
        require(&report, &id("mean-curvature"), 1e-6)?;
        require(&report, &id("norm-a"), 1e-6)?;
        require(&report, &id("torsion"), 1e-9)?;
        require(&report, &id("radius"), 1e-9)?;
        require(&report, &id("verdict"), 0.0)?;
        let chn = require(&report, &id("perturbed.chn"), 1e-2)?;
        if chn < 1e-2 {
            return Err(format!("perturbed first entry {chn} at {tag}"));
        }
        require(&report, &id("perturbed.verdict"), 0.0)?;
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!("max residual {worst:.1e}, {:.2} s", start.elapsed().as_secs_f64()))
}

fn sphere_in_s3() -> Outcome {
    let start = Instant::now();
    let report = suite(SuiteName::SphereInS3)?;
    all_pass(&report)?;
    let r = require(&report, "sphere[pi/4].residual", 1e-6)?;
    require(&report, "sphere[pi/4].mean-curvature", 1e-6)?;
    require(&report, "sphere[pi/4].umbilicity", 1e-6)?;
    let third = require(&report, "sphere[pi/3].residual", 0.5)?;
    require(&report, "sphere[pi/6].residual", 0.5)?;
    let oracle = (2.0 - 2.0 / 3.0) / 3f64.sqrt();
    if (third - oracle).abs() > 1e-6 {
        return Err(format!("pi/3 residual {third}, expected {oracle}"));
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("pi/4 residual {r:.1e}, pi/3 residual {third:.4}, {:.2} s", start.elapsed().as_secs_f64()))
}

fn sol_cmc() -> Outcome {
    let start = Instant::now();
    let report = suite(SuiteName::SolCmc)?;
    all_pass(&report)?;
    let candidates = report.checks.iter().filter(|c| c.id.ends_with(".verdict")).count();
    let families = ["plane-z", "plane-x", "plane-y", "cylinder"];
    for f in families {
        if !report.checks.iter().any(|c| c.id.starts_with(&format!("sol.{f}"))) {
            return Err(format!("no {f} candidate"));
        }
    }
    for c in report.checks.iter().filter(|c| c.id.starts_with("sol.plane-z")) {
        let want = if c.id.ends_with("mean-curvature") {
            1e-8
        } else if c.id.ends_with("norm-a") {
            1e-6
        } else {
            c.tol
        };
        require(&report, &c.id, want)?;
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("{candidates} candidates, none proper, {:.2} s", start.elapsed().as_secs_f64()))
}

fn umbilical() -> Outcome {
    let report = suite(SuiteName::UmbilicalCodazzi)?;
    all_pass(&report)?;
    let mut implied = 0;
    for c in &report.checks {
        if c.id.ends_with(".cmc") && c.desc.starts_with("umbilical biharmonic") {
            require(&report, &c.id, 1e-5)?;
            implied += 1;
        }
        if c.id.ends_with(".codazzi") && c.id.contains("geodesic-sphere") {
            require(&report, &c.id, 1e-6)?;
        }
    }
    if implied == 0 {
        return Err("no umbilical patch passed the biharmonic residual".into());
    }
    Ok(format!("{implied} umbilical biharmonic patches with constant H"))
}

fn curve_ode() -> Outcome {
    let report = suite(SuiteName::HopfCircle)?;
    for c in report.checks.iter().filter(|c| c.id.contains("curve-ode")) {
        let want = if c.id.ends_with("numeric") { 1e-9 } else { 0.0 };
        require(&report, &c.id, want)?;
    }
    let exact = curve_ode_residual(&CurvatureProfile::biharmonic_constant(1.0, 1.0), 1.0, 1.0, 0.3);
    let linear = curve_ode_residual(&CurvatureProfile::Polynomial(vec![0.0, 1.0]), 1.0, 0.0, 1.0);
    if exact != [0.0; 3] || linear != [3.0, 3.0, 0.0] {
        return Err(format!("closed form {exact:?}, linear {linear:?}"));
    }
    Ok("closed form exact, numeric within 1e-9, linear profile (3, 3, 0)".into())
}

fn properties() -> Outcome {
    let config = SuiteConfig::default();
    if config.seed != 0 {
        return Err(format!("default seed is {}", config.seed));
    }
    let report = suite(SuiteName::Properties)?;
    all_pass(&report)?;
    for kind in [
        "frame-orthonormality",
        "torsion-free",
        "metric-compatibility",
        "riemann-symmetries",
        "bianchi",
        "h-symmetry",
        "laplacian-order",
    ] {
        if !report.checks.iter().any(|c| c.id.ends_with(kind)) {
            return Err(format!("no {kind} check"));
        }
    }
    let order = report
        .checks
        .iter()
        .filter(|c| c.id.ends_with("laplacian-order"))
        .filter_map(|c| c.residual)
        .fold(f64::INFINITY, f64::min);
    Ok(format!("{} checks, worst Laplacian order {order:.3}", report.checks.len()))
}

fn full_suite() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("full.json");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_biharm"))
        .args(["suite", "full", "--out"])
        .arg(&out)
        .env_remove("BIHARM_OUTPUT_DIR")
        .status()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if status.code() != Some(0) {
        return Err(format!("exit status {status}"));
    }
    within(elapsed, 60.0)?;
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if v["pass"] != serde_json::Value::Bool(true) {
        return Err("report does not pass".into());
    }
    Ok(format!("exit 0 in {:.2} s", elapsed.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("geometry tables", geometry_tables),
        ("hopf circle cylinders", hopf_circle),
        ("spheres in S3", sphere_in_s3),
        ("Sol candidates", sol_cmc),
        ("umbilical patches", umbilical),
        ("curve equations", curve_ode),
        ("property suites", properties),
        ("full suite", full_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
