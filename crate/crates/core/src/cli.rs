//! The `skorohod` command line: one run directory per invocation, each with
//! a `manifest.json` of the configuration and SHA-256 hashes of every file
//! read or written.
//!
//! Failures print `{"error": kind, "message": text}` on stderr and exit
//! with code 2. Completed runs exit 0; pass/fail verdicts live in the
//! written reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analytic::{self, AnalyticError, Density};
use crate::construction::{polyline_svg, synthesize, ConstructionConfig, ConstructionError, DomainArtifact, Sampling};
use crate::geometry::{fixtures, BoundaryCurve, ClipWindow, Domain, GeometryError};
use crate::measures::{MeasureError, MeasureSpec};
use crate::simulate::{verify_embedding, SimulationError, VerifyOptions};
use crate::uniqueness::{check_conditions, compare_artifacts, MomentOptions, UniquenessError};

pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("run directory {0} is not empty; pass --force to overwrite")]
    RunExists(PathBuf),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("exit leakage {fraction} exceeds {limit}; enlarge the clip window")]
    Leakage { fraction: f64, limit: f64 },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Uniqueness(#[from] UniquenessError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::RunExists(_) => "run_exists",
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::Leakage { .. } => "leakage",
            CliError::Measure(_) => "measure",
            CliError::Construction(_) => "construction",
            CliError::Geometry(_) => "geometry",
            CliError::Simulation(_) => "simulation",
            CliError::Analytic(_) => "analytic",
            CliError::Uniqueness(_) => "uniqueness",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "skorohod", version, about = "Build and verify domains whose Brownian exit has a prescribed real-part law")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a domain from a measure file.
    Build(BuildArgs),
    /// Simulate exits from an artifact and test them against its measure.
    Verify(VerifyArgs),
    /// Tabulate a closed-form exit density.
    Density(DensityArgs),
    /// Check the uniqueness conditions on a fixture, artifact or boundary file.
    Check(CheckArgs),
    /// Render an artifact boundary or a density table as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Run directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Overwrite files in a non-empty run directory.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingArg {
    Cell,
    Point,
}

#[derive(Debug, Args, Serialize)]
pub struct BuildArgs {
    /// Measure JSON document.
    #[arg(long)]
    pub measure: PathBuf,
    /// Number of cosine coefficients N.
    #[arg(long, default_value_t = 4096)]
    pub n_coeffs: usize,
    /// Boundary grid size M, a power of two with M >= 2N.
    #[arg(long, default_value_t = 16384)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = SamplingArg::Cell)]
    pub sampling: SamplingArg,
    /// Also write a Fejér-smoothed SVG (display only).
    #[arg(long)]
    pub smooth: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendArg {
    Euler,
    Wos,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Artifact JSON written by `build`.
    #[arg(long)]
    pub artifact: PathBuf,
    #[arg(long, value_enum, default_value_t = BackendArg::Euler)]
    pub backend: BackendArg,
    /// Euler time step.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Walk-on-spheres absorption distance.
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, default_value_t = 10_000)]
    pub paths: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Clip to |Re| < X, |Im| < Y.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub clip: Option<Vec<f64>>,
    /// Disable the Brownian-bridge crossing correction.
    #[arg(long)]
    pub no_bridge: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainArg {
    Disk,
    Strip,
    Parabola,
    Ellipse,
    Hyperbola,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalArg {
    Boundary,
    X,
    Y,
}

#[derive(Debug, Args, Serialize)]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub domain: DomainArg,
    #[arg(long, value_enum, default_value_t = MarginalArg::Boundary)]
    pub marginal: MarginalArg,
    /// Disk starting point.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub center: Option<Vec<f64>>,
    /// Ellipse parameter R.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Hyperbola start is `√delta` on the real axis.
    #[arg(long, default_value_t = 2.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 512)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureArg {
    /// `{|Re z| < 1}`.
    Strip,
    /// `ℂ \ {|Re z| ≤ 1, |Im z| ≥ 1}`.
    Cross,
    /// Square with re-entrant notches.
    Slit,
    /// Quadrant `{0 < arg z < π/2}`.
    Wedge,
    /// Parabola interior turned so its axis of symmetry is vertical.
    Parabola,
    Disk,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    #[arg(long, value_enum, conflicts_with_all = ["artifact", "boundary"])]
    pub fixture: Option<FixtureArg>,
    #[arg(long, conflicts_with = "boundary")]
    pub artifact: Option<PathBuf>,
    /// Boundary CSV of `x,y` rows.
    #[arg(long)]
    pub boundary: Option<PathBuf>,
    /// Artifact to measure the boundary distance against.
    #[arg(long, requires = "artifact")]
    pub reference: Option<PathBuf>,
    /// Moment order; defaults to the artifact's p, else 2.
    #[arg(long)]
    pub p: Option<f64>,
    /// Half-size of the window for unbounded fixtures.
    #[arg(long, default_value_t = 100.0)]
    pub window: f64,
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pub clip: Option<Vec<f64>>,
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub start: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-2)]
    pub dt: f64,
    #[arg(long, default_value_t = 4000)]
    pub paths: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct PlotArgs {
    #[arg(long, required_unless_present = "density", conflicts_with = "density")]
    pub artifact: Option<PathBuf>,
    /// Density CSV written by `density`.
    #[arg(long)]
    pub density: Option<PathBuf>,
    /// Fejér-smoothed boundary.
    #[arg(long)]
    pub smooth: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return 0;
            }
            let err = CliError::Usage(e.to_string());
            eprintln!("{}", err.to_json());
            return EXIT_ERROR;
        }
    };
    match run(&cli.command) {
        Ok(dir) => {
            println!("{}", dir.display());
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            EXIT_ERROR
        }
    }
}

/// Runs one subcommand and returns its run directory.
pub fn run(command: &Command) -> Result<PathBuf, CliError> {
    match command {
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Density(a) => cmd_density(a),
        Command::Check(a) => cmd_check(a),
        Command::Plot(a) => cmd_plot(a),
    }
}

#[derive(Debug, Serialize)]
struct Manifest<'a, C: Serialize> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    config: &'a C,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

/// Collects a run's files and writes them with the manifest.
struct Run {
    dir: PathBuf,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

impl Run {
    fn open(out: &OutputArgs) -> Result<Run, CliError> {
        let dir = out.out.clone();
        if dir.exists() {
            let occupied = fs::read_dir(&dir).map_err(|e| io_error(&dir, e))?.next().is_some();
            if occupied && !out.force {
                return Err(CliError::RunExists(dir));
            }
        }
        fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
        Ok(Run {
            dir,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        })
    }

    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        self.inputs.insert(path.display().to_string(), sha256(text.as_bytes()));
        Ok(text)
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| io_error(&path, e))?;
        self.outputs.insert(name.to_string(), sha256(contents.as_bytes()));
        Ok(())
    }

    fn finish<C: Serialize>(self, subcommand: &'static str, config: &C) -> Result<PathBuf, CliError> {
        let manifest = Manifest {
            tool: "skorohod",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            config,
            inputs: self.inputs,
            outputs: self.outputs,
        };
        let path = self.dir.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        fs::write(&path, text + "\n").map_err(|e| io_error(&path, e))?;
        Ok(self.dir)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn window(clip: &Option<Vec<f64>>) -> Result<Option<ClipWindow>, CliError> {
    match clip.as_deref() {
        None => Ok(None),
        Some(&[x, y]) => Ok(Some(ClipWindow::symmetric(x, y)?)),
        Some(_) => Err(CliError::Usage("--clip takes two values".into())),
    }
}

fn point(values: &Option<Vec<f64>>, default: Complex64) -> Complex64 {
    match values.as_deref() {
        Some(&[re, im]) => Complex64::new(re, im),
        _ => default,
    }
}

fn load_artifact(run: &mut Run, path: &Path) -> Result<DomainArtifact, CliError> {
    Ok(DomainArtifact::from_json(&run.read(path)?)?)
}

pub fn cmd_build(args: &BuildArgs) -> Result<PathBuf, CliError> {
    let config = ConstructionConfig {
        sampling: match args.sampling {
            SamplingArg::Cell => Sampling::CellAverage,
            SamplingArg::Point => Sampling::Point,
        },
        ..ConstructionConfig::new(args.n_coeffs, args.grid)
    };
    config.validate()?;
    let text = fs::read_to_string(&args.measure).map_err(|e| io_error(&args.measure, e))?;
    let spec = MeasureSpec::from_json(&text)?;
    let artifact = synthesize(&spec, config)?;
    let mut run = Run::open(&args.output)?;
    run.inputs.insert(args.measure.display().to_string(), sha256(text.as_bytes()));
    run.write("measure.json", &spec.to_json())?;
    run.write("artifact.json", &artifact.to_json())?;
    run.write("boundary.csv", &artifact.boundary_csv())?;
    run.write("boundary.svg", &artifact.boundary_svg(false))?;
    if args.smooth {
        run.write("boundary_smoothed.svg", &artifact.boundary_svg(true))?;
    }
    run.finish("build", args)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<PathBuf, CliError> {
    let mut run = Run::open(&args.output)?;
    let artifact = load_artifact(&mut run, &args.artifact)?;
    let spec = artifact.measure()?;
    let mut opts = match args.backend {
        BackendArg::Euler => VerifyOptions::euler(args.dt, args.paths, args.seed),
        BackendArg::Wos => VerifyOptions::wos(args.eps, args.paths, args.seed),
    };
    opts.bridge = !args.no_bridge;
    opts.window = window(&args.clip)?;
    let (report, samples) = verify_embedding(&artifact, &spec, opts)?;
    run.write("report.json", &pretty(&report))?;
    run.write("samples.csv", &samples.to_csv())?;
    let dir = run.finish("verify", args)?;
    samples.check_leakage().map_err(|e| match e {
        SimulationError::LeakageExceeded { fraction, limit } => CliError::Leakage { fraction, limit },
        other => other.into(),
    })?;
    Ok(dir)
}

fn density_of(args: &DensityArgs) -> Result<Density, CliError> {
    let center = point(&args.center, Complex64::new(0.0, 0.0));
    let unavailable = || {
        CliError::Usage(format!(
            "no {:?} density for the {:?} domain",
            args.marginal, args.domain
        ))
    };
    Ok(match (args.domain, args.marginal) {
        (DomainArg::Disk, MarginalArg::Boundary) => analytic::disk_boundary(center)?,
        (DomainArg::Disk, MarginalArg::X) => analytic::disk_x(center)?,
        (DomainArg::Disk, MarginalArg::Y) => analytic::disk_y(center)?,
        (DomainArg::Strip, MarginalArg::Boundary) => analytic::strip_boundary(),
        (DomainArg::Strip, MarginalArg::X) => analytic::strip_x(),
        (DomainArg::Parabola, MarginalArg::X) => analytic::parabola_x(),
        (DomainArg::Parabola, MarginalArg::Y) => analytic::parabola_y(),
        (DomainArg::Ellipse, MarginalArg::Boundary) => analytic::ellipse_boundary(args.radius)?,
        (DomainArg::Ellipse, MarginalArg::X) => analytic::ellipse_x(args.radius)?,
        (DomainArg::Hyperbola, MarginalArg::X) => analytic::hyperbola_x(args.delta)?,
        (DomainArg::Hyperbola, MarginalArg::Y) => analytic::hyperbola_y(args.delta)?,
        _ => return Err(unavailable()),
    })
}

pub fn cmd_density(args: &DensityArgs) -> Result<PathBuf, CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let curve = density_of(args)?.curve(args.points)?;
    let mut run = Run::open(&args.output)?;
    run.write("density.csv", &curve.to_csv())?;
    run.write("density.json", &pretty(&curve))?;
    run.write("density.svg", &graph_svg(&curve.param, &curve.values))?;
    run.finish("density", args)
}

fn fixture_domain(f: FixtureArg, size: f64) -> Domain {
    match f {
        FixtureArg::Strip => fixtures::vertical_strip(1.0, size),
        FixtureArg::Cross => fixtures::cross_domain(size),
        FixtureArg::Slit => fixtures::slit_domain(),
        FixtureArg::Wedge => fixtures::wedge(std::f64::consts::FRAC_PI_2, size),
        FixtureArg::Parabola => {
            let n = 2 * (4.0 * size).ceil() as usize + 1;
            fixtures::parabola(size, n.max(2001)).rotated_quarter()
        }
        FixtureArg::Disk => fixtures::unit_disk(),
    }
}

pub fn cmd_check(args: &CheckArgs) -> Result<PathBuf, CliError> {
    let mut run = Run::open(&args.output)?;
    let origin = Complex64::new(0.0, 0.0);
    let (domain, default_p, default_start, artifact) = match (&args.fixture, &args.artifact, &args.boundary) {
        (Some(f), None, None) => {
            let start = match f {
                FixtureArg::Wedge => Complex64::new(1.0, 1.0) / 2f64.sqrt(),
                _ => origin,
            };
            (fixture_domain(*f, args.window), 2.0, start, None)
        }
        (None, Some(path), None) => {
            let art = load_artifact(&mut run, path)?;
            let domain = Domain::new(art.curve()?, window(&args.clip)?);
            (domain, art.p, origin, Some(art))
        }
        (None, None, Some(path)) => {
            let curve = BoundaryCurve::from_csv(&run.read(path)?)?;
            (Domain::new(curve, window(&args.clip)?), 2.0, origin, None)
        }
        _ => return Err(CliError::Usage("pass exactly one of --fixture, --artifact, --boundary".into())),
    };
    let mut opts = MomentOptions::new(
        args.p.unwrap_or(default_p),
        point(&args.start, default_start),
        args.paths,
        args.seed,
    );
    opts.dt = args.dt;
    let mut report = check_conditions(&domain, opts)?;
    if let (Some(art), Some(path)) = (&artifact, &args.reference) {
        let reference = load_artifact(&mut run, path)?;
        report.boundary_match = Some(compare_artifacts(art, &reference)?);
    }
    run.write("report.json", &pretty(&report))?;
    run.write("boundary.svg", &domain_svg(&domain))?;
    run.finish("check", args)
}

pub fn cmd_plot(args: &PlotArgs) -> Result<PathBuf, CliError> {
    let mut run = Run::open(&args.output)?;
    if let Some(path) = &args.artifact {
        let art = load_artifact(&mut run, path)?;
        run.write("boundary.svg", &art.boundary_svg(args.smooth))?;
    } else if let Some(path) = &args.density {
        let (x, y) = parse_density_csv(&run.read(path)?)
            .ok_or_else(|| CliError::Usage(format!("{}: expected param,value rows", path.display())))?;
        run.write("density.svg", &graph_svg(&x, &y))?;
    }
    run.finish("plot", args)
}

fn parse_density_csv(text: &str) -> Option<(Vec<f64>, Vec<f64>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for line in text.lines().skip(1).filter(|l| !l.trim().is_empty()) {
        let (x, y) = line.split_once(',')?;
        xs.push(x.trim().parse().ok()?);
        ys.push(y.trim().parse().ok()?);
    }
    (xs.len() >= 2).then_some((xs, ys))
}

/// Open polyline of `(x, y)` over a 600×400 canvas; non-finite values
/// break the line.
fn graph_svg(x: &[f64], y: &[f64]) -> String {
    let finite = |v: &&f64| v.is_finite();
    let (x0, x1) = (x.first().copied().unwrap_or(0.0), x.last().copied().unwrap_or(1.0));
    let y1 = y.iter().filter(finite).fold(0.0f64, |m, v| m.max(*v)).max(1e-300);
    let sx = 560.0 / (x1 - x0).max(1e-300);
    let sy = 360.0 / y1;
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"400\" viewBox=\"0 0 600 400\">\n",
    );
    let mut open = false;
    for (&a, &b) in x.iter().zip(y) {
        if !b.is_finite() {
            if open {
                out.push_str("\"/>\n");
                open = false;
            }
            continue;
        }
        out.push_str(if open { " " } else { "<polyline fill=\"none\" stroke=\"black\" points=\"" });
        open = true;
        let _ = write!(out, "{:.3},{:.3}", 20.0 + (a - x0) * sx, 380.0 - b * sy);
    }
    if open {
        out.push_str("\"/>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn domain_svg(domain: &Domain) -> String {
    let pts: Vec<(f64, f64)> = domain.curve.points().iter().map(|p| (p.re, p.im)).collect();
    polyline_svg(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("skorohod").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_every_subcommand() {
        let c = cli(&["build", "--measure", "m.json", "--out", "r"]);
        assert!(matches!(c.command, Command::Build(ref b) if b.n_coeffs == 4096 && b.grid == 16384));
        let c = cli(&["verify", "--artifact", "a.json", "--backend", "wos", "--clip", "5", "5", "--out", "r"]);
        assert!(matches!(c.command, Command::Verify(ref v) if v.backend == BackendArg::Wos && v.clip == Some(vec![5.0, 5.0])));
        let c = cli(&["density", "--domain", "disk", "--marginal", "x", "--center", "0.3", "-0.4", "--out", "r"]);
        assert!(matches!(c.command, Command::Density(ref d) if d.center == Some(vec![0.3, -0.4])));
        let c = cli(&["check", "--fixture", "cross", "--out", "r"]);
        assert!(matches!(c.command, Command::Check(ref k) if k.fixture == Some(FixtureArg::Cross)));
        assert!(Cli::try_parse_from(["skorohod", "plot", "--out", "r"]).is_err());
    }

    #[test]
    fn run_directory_is_not_overwritten() {
        let dir = tempfile::tempdir().unwrap();
        let out = OutputArgs {
            out: dir.path().to_path_buf(),
            force: false,
        };
        fs::write(dir.path().join("x"), "1").unwrap();
        assert!(matches!(Run::open(&out), Err(CliError::RunExists(_))));
        let out = OutputArgs { force: true, ..out };
        assert!(Run::open(&out).is_ok());
    }

    #[test]
    fn density_combinations() {
        let mut a = DensityArgs {
            domain: DomainArg::Strip,
            marginal: MarginalArg::Y,
            center: None,
            radius: 1.0,
            delta: 2.0,
            points: 16,
            output: OutputArgs {
                out: PathBuf::from("unused"),
                force: false,
            },
        };
        assert!(matches!(density_of(&a), Err(CliError::Usage(_))));
        a.domain = DomainArg::Parabola;
        assert!(density_of(&a).is_ok());
    }

    #[test]
    fn graph_breaks_on_singular_values() {
        let svg = graph_svg(&[0.0, 1.0, 2.0, 3.0], &[1.0, f64::NAN, 1.0, 2.0]);
        assert_eq!(svg.matches("<polyline").count(), 2);
        let (x, y) = parse_density_csv("param,value\n0,1\n1,2\n").unwrap();
        assert_eq!((x, y), (vec![0.0, 1.0], vec![1.0, 2.0]));
    }
}
