use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biharm::chart::{MetricModel, ModelKind, ModelParams};
use biharm::hopf::{circle_for_kg, lift_cylinder, window, PlaneCurve};
use biharm::residual::{verdict_with_records, BiharmonicResidual, Classification, Verdict, DEFAULT_MARGIN_FLOOR};
use biharm::verify::{parse_grid, parse_key_values, rows_to_csv, run_sweep, SweepSpec};
use biharm::{Axis, GeometryError, Patch, ResidualOptions, StencilOptions, SuiteConfig, SuiteName};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Environment variable naming the directory reports go to when `--out` is absent.
const OUTPUT_DIR_ENV: &str = "BIHARM_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "biharm", version, about = "Verify biharmonic surfaces in homogeneous 3-manifolds")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// BCV parameter m; restricts suites to a single (m, l) pair.
    #[arg(long, global = true, allow_negative_numbers = true)]
    m: Option<f64>,
    /// BCV parameter l.
    #[arg(long, global = true, allow_negative_numbers = true)]
    l: Option<f64>,
    /// Evaluation grid, `NxM` or `N`.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Residual tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Finite-difference step in parameter space.
    #[arg(long, global = true)]
    fd_step: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Ambient sample points per model for property checks.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Report path; defaults to stdout or the directory in BIHARM_OUTPUT_DIR.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Plain-text `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a named verification suite.
    Suite {
        /// geometry-tables, hopf-circle, sol-cmc, sphere-in-s3, umbilical-codazzi, properties or full.
        name: String,
    },
    /// Sweep Hopf cylinders over an (m, l) grid.
    Sweep(SweepArgs),
    /// Evaluate the biharmonic residual of a single surface.
    Residual(ResidualArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// `lo:hi`.
    #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
    m_range: String,
    #[arg(long, default_value = "0:2", allow_hyphen_values = true)]
    l_range: String,
    /// Steps per axis, `NxM` or `N`.
    #[arg(long, default_value = "5x5")]
    steps: String,
}

#[derive(Args, Debug)]
struct ResidualArgs {
    #[arg(long, default_value = "bcv")]
    model: String,
    /// Space-form curvature.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    c: f64,
    #[arg(long, value_enum)]
    surface: SurfaceChoice,
    /// Sphere or cylinder radius; for spheres in a space form this is the geodesic radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Target geodesic curvature of the Hopf base circle; defaults to √(4m − l²).
    #[arg(long)]
    kappa: Option<f64>,
    /// Plane offset.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    offset: f64,
    /// Expected verdict; the exit status reports whether it matched.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SurfaceChoice {
    HopfCircle,
    PlaneX,
    PlaneY,
    PlaneZ,
    Sphere,
    Cylinder,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expect {
    Minimal,
    ProperBiharmonic,
    NotBiharmonic,
}

impl From<Expect> for Classification {
    fn from(e: Expect) -> Self {
        match e {
            Expect::Minimal => Classification::Minimal,
            Expect::ProperBiharmonic => Classification::ProperBiharmonic,
            Expect::NotBiharmonic => Classification::NotBiharmonic,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

/// Settings after layering defaults, config file and flags.
struct Settings {
    suite: SuiteConfig,
    format: Format,
    out: Option<PathBuf>,
}

fn resolve(common: &Common) -> Result<Settings, CliError> {
    let mut suite = SuiteConfig::default();
    let mut format = Format::Json;
    let mut out = None;
    if let Some(path) = &common.config {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
        for (key, value) in parse_key_values(&text)? {
            if suite.apply(&key, &value)? {
                continue;
            }
            match key.as_str() {
                "format" => {
                    format = Format::from_str(&value, true)
                        .map_err(|_| CliError::Usage(format!("invalid format `{value}` in config")))?
                }
                "out" => out = Some(PathBuf::from(value)),
                other => return Err(CliError::Usage(format!("unknown config key `{other}`"))),
            }
        }
    }
    if common.m.is_some() {
        suite.m = common.m;
    }
    if common.l.is_some() {
        suite.l = common.l;
    }
    if let Some(g) = &common.grid {
        suite.grid = parse_grid(g)?;
    }
    if let Some(t) = common.tol {
        suite.tol = t;
    }
    if let Some(h) = common.fd_step {
        suite.fd_step = h;
    }
    if let Some(s) = common.seed {
        suite.seed = s;
    }
    if let Some(n) = common.samples {
        suite.samples = n;
    }
    if let Some(f) = common.format {
        format = f;
    }
    if common.out.is_some() {
        out = common.out.clone();
    }
    suite.validate()?;
    Ok(Settings { suite, format, out })
}

fn emit(settings: &Settings, stem: &str, body: &str) -> Result<(), CliError> {
    let target = settings.out.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV).map(|dir| Path::new(&dir).join(format!("{stem}.{}", settings.format.ext())))
    });
    match target {
        Some(path) => {
            let write = || -> std::io::Result<()> {
                if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                    fs::create_dir_all(parent)?;
                }
                fs::write(&path, body)
            };
            write().map_err(|source| CliError::Write { path: path.clone(), source })?;
            eprintln!("report written to {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn run_suite_cmd(name: &str, settings: &Settings) -> Result<bool, CliError> {
    let name: SuiteName = name.parse()?;
    let report = biharm::run_suite(name, &settings.suite)?;
    for c in report.failures() {
        eprintln!("FAIL {}: {} (residual {:?}, tol {:e})", c.id, c.desc, c.residual, c.tol);
    }
    eprintln!(
        "{} {}: {} checks, {} failed, {} ms",
        if report.pass { "PASS" } else { "FAIL" },
        report.suite,
        report.checks.len(),
        report.failures().count(),
        report.duration_ms
    );
    let body = match settings.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    emit(settings, &report.suite, &body)?;
    Ok(report.pass)
}

fn parse_range(flag: &str, text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--{flag} expects `lo:hi`, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn run_sweep_cmd(args: &SweepArgs, settings: &Settings) -> Result<bool, CliError> {
    let steps = parse_grid(&args.steps)?;
    let spec = SweepSpec {
        m_range: parse_range("m-range", &args.m_range)?,
        l_range: parse_range("l-range", &args.l_range)?,
        steps: (steps.nu, steps.nv),
    };
    let rows = run_sweep(&spec, &settings.suite)?;
    let agree = rows.iter().all(|r| r.agrees());
    for r in rows.iter().filter(|r| !r.agrees()) {
        eprintln!("MISMATCH m={} l={}: {} (expected {})", r.m, r.l, r.verdict.name(), r.expected.name());
    }
    eprintln!("{} sweep: {} rows", if agree { "PASS" } else { "FAIL" }, rows.len());
    let body = match settings.format {
        Format::Json => {
            let v = json!({ "sweep": spec, "config": settings.suite, "rows": rows });
            serde_json::to_string_pretty(&v).expect("sweep serializes") + "\n"
        }
        Format::Csv => rows_to_csv(&rows)?,
    };
    emit(settings, "sweep", &body)?;
    Ok(agree)
}

fn build_surface(args: &ResidualArgs, cfg: &SuiteConfig) -> Result<Patch, CliError> {
    let kind: ModelKind = args.model.parse()?;
    let (m, l) = (cfg.m.unwrap_or(1.0), cfg.l.unwrap_or(0.0));
    let model = MetricModel::make(kind, ModelParams { m, l, c: args.c })?;
    let plane = |axis| Ok(Patch::coordinate_plane(model, axis, args.offset, 1.0));
    match args.surface {
        SurfaceChoice::PlaneX => plane(Axis::X),
        SurfaceChoice::PlaneY => plane(Axis::Y),
        SurfaceChoice::PlaneZ => plane(Axis::Z),
        SurfaceChoice::Sphere => match model {
            MetricModel::SpaceForm { c } => {
                Ok(Patch::geodesic_sphere(c, args.radius.unwrap_or(std::f64::consts::FRAC_PI_4))?)
            }
            _ => Ok(Patch::coordinate_sphere(model, [0.0; 3], args.radius.unwrap_or(0.5))),
        },
        SurfaceChoice::Cylinder => {
            Ok(Patch::vertical_cylinder(model, [0.0, 0.0], args.radius.unwrap_or(0.5), (-0.5, 0.5)))
        }
        SurfaceChoice::HopfCircle => {
            if kind != ModelKind::Bcv {
                return Err(CliError::Usage("hopf-circle needs --model bcv".into()));
            }
            let rho = match (args.radius, args.kappa) {
                (Some(r), _) => r,
                (None, k) => circle_for_kg(m, k.unwrap_or_else(|| window(m, l).max(0.0).sqrt()))?,
            };
            Ok(lift_cylinder(m, l, PlaneCurve::unit_speed_circle(m, rho), (-1.0, 1.0))?)
        }
    }
}

fn residual_rows_csv(records: &[BiharmonicResidual<f64>]) -> String {
    let mut s = String::from(
        "u,v,mean_curvature,norm_a_sq,ricci_normal,laplacian_h,grad_h_norm,normal_residual,tangential_residual\n",
    );
    for r in records {
        s.push_str(&format!(
            "{},{},{:e},{:e},{:e},{:e},{:e},{:e},{:e}\n",
            r.u,
            r.v,
            r.mean_curvature,
            r.norm_a_sq,
            r.ricci_normal,
            r.laplacian_h,
            r.grad_h_norm,
            r.normal_residual,
            r.tangential_residual
        ));
    }
    s
}

fn run_residual_cmd(args: &ResidualArgs, settings: &Settings) -> Result<bool, CliError> {
    let patch = build_surface(args, &settings.suite)?;
    let opts = ResidualOptions {
        stencil: StencilOptions { step: settings.suite.fd_step, richardson: true },
        tol: settings.suite.tol,
        margin_floor: DEFAULT_MARGIN_FLOOR,
    };
    let (v, records): (Verdict<f64>, _) = verdict_with_records(&patch, settings.suite.grid, &opts)?;
    let ok = args.expect.is_none_or(|e| Classification::from(e) == v.classification);
    eprintln!(
        "{} {}: max residual {:e}, max |H| {:e}",
        if ok { "PASS" } else { "FAIL" },
        v.classification.name(),
        v.max_residual(),
        v.max_abs_h
    );
    let body = match settings.format {
        Format::Json => {
            let value = json!({
                "model": patch.model.label(),
                "surface": format!("{:?}", args.surface),
                "config": settings.suite,
                "verdict": v,
                "expected": args.expect.map(|e| Classification::from(e).name()),
                "pass": ok,
                "points": records,
            });
            serde_json::to_string_pretty(&value).expect("residual serializes") + "\n"
        }
        Format::Csv => residual_rows_csv(&records),
    };
    emit(settings, "residual", &body)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = resolve(&cli.common).and_then(|settings| match &cli.command {
        Command::Suite { name } => run_suite_cmd(name, &settings),
        Command::Sweep(args) => run_sweep_cmd(args, &settings),
        Command::Residual(args) => run_residual_cmd(args, &settings),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
