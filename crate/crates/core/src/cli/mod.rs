//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: `0` pass, `1` violation or refutation, `2` usage or I/O error.

mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::boundary::{boundary_radius, extremal_tuple, t_from_theta, tau, uniform_grid, PolarCurve};
use crate::envelope::{envelope_numeric, CurveFamily};
use crate::error::Error;
use crate::geometry::arg;
use crate::invariants::delta_pure;
use crate::verify::suites::{run_suite, SuiteParams, SUITES};
use crate::verify::{
    convex_hull, max_im_search_in, sample_cloud, sample_cloud_reversed, CloudKind, Evidence, SearchSpace,
};

pub use output::{num, svg, Csv, Layer};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest Hilbert-space dimension accepted on the command line.
pub const MAX_DIM: usize = 64;
/// Smallest boundary grid.
pub const MIN_GRID: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "bargmann", version, about = "Bargmann invariants: boundary curves, sampling and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Master seed; per-trial seeds are derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pure,
    Mixed,
}

impl From<Kind> for CloudKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Pure => CloudKind::Pure,
            Kind::Mixed => CloudKind::Mixed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the boundary curve r_n(θ).
    Boundary(BoundaryArgs),
    /// Sample invariants of random tuples.
    Cloud(CloudArgs),
    /// Convex hull of a sampled cloud.
    Hull(CloudArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Numeric envelope of a curve family.
    Envelope(EnvelopeArgs),
    /// Extremal qubit tuple for an angle or a parameter.
    Extremal(ExtremalArgs),
    /// Search for the largest imaginary part of the invariant.
    Maxim(MaximArgs),
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    /// Order(s); several are only accepted with --format svg.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 720)]
    pub grid: usize,
    /// Also emit the unit circle.
    #[arg(long)]
    pub with_circle: bool,
}

#[derive(Debug, Args)]
pub struct CloudArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Kind::Pure)]
    pub kind: Kind,
    /// Take every tuple in reverse order.
    #[arg(long)]
    pub reversed: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of: containment, envelope, bloch, convexity, detbound, dimension, hull, maxim.
    pub suite: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 720)]
    pub grid: usize,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    /// N3, N4_OUTER or N4_INNER.
    #[arg(long, default_value = "N3")]
    pub family: String,
    /// Fixed parameter of N4_INNER.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long, default_value_t = 720)]
    pub grid: usize,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("point").required(true).multiple(false).args(["theta", "t"])))]
pub struct ExtremalArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MaximArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Search over qudits of this dimension instead of qubits when above 2.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
}

/// What a subcommand produced.
struct Outcome {
    /// Written to `--out`, or to standard output without it.
    document: String,
    /// Human-readable text, always on standard output.
    human: Vec<String>,
    code: i32,
}

impl Outcome {
    fn pass(document: String) -> Self {
        Self { document, human: Vec::new(), code: EXIT_PASS }
    }
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn check_dim(d: usize) -> std::result::Result<(), Failure> {
    if !(2..=MAX_DIM).contains(&d) {
        return usage(format!("--d must lie in 2..={MAX_DIM}, got {d}"));
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{text}") } else { write!(stdout, "{text}") };
            return code;
        }
    };
    let invocation = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            let _ = writeln!(stderr, "error: --workers must be at least 1");
            return EXIT_USAGE;
        }
        pool = pool.num_threads(w);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };

    match pool.install(|| execute(&cli, &invocation)) {
        Ok(outcome) => {
            for line in &outcome.human {
                let _ = writeln!(stdout, "{line}");
            }
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &outcome.document) {
                        let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                }
                None => {
                    let _ = write!(stdout, "{}", outcome.document);
                }
            }
            outcome.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            EXIT_VIOLATION
        }
    }
}

fn execute(cli: &Cli, invocation: &str) -> CmdResult {
    match &cli.command {
        Command::Boundary(a) => cmd_boundary(a, cli.format, invocation),
        Command::Cloud(a) => cmd_cloud(a, cli, invocation),
        Command::Hull(a) => cmd_hull(a, cli, invocation),
        Command::Verify(a) => cmd_verify(a, cli, invocation),
        Command::Envelope(a) => cmd_envelope(a, cli.format, invocation),
        Command::Extremal(a) => cmd_extremal(a, cli.format, invocation),
        Command::Maxim(a) => cmd_maxim(a, cli, invocation),
    }
}

fn csv_only(format: Format, what: &str) -> std::result::Result<(), Failure> {
    if format == Format::Svg {
        return usage(format!("{what} has no SVG rendering"));
    }
    Ok(())
}

fn cmd_boundary(a: &BoundaryArgs, format: Format, invocation: &str) -> CmdResult {
    if a.grid < MIN_GRID {
        return usage(format!("--grid must be at least {MIN_GRID}"));
    }
    if a.n.is_empty() {
        return usage("--n is required");
    }
    let curves = a.n.iter().map(|&n| PolarCurve::boundary(n, a.grid)).collect::<crate::Result<Vec<_>>>()?;
    match format {
        Format::Csv => {
            if curves.len() > 1 {
                return usage("CSV output takes a single --n; use --format svg to overlay several");
            }
            let mut csv = Csv::new(invocation, &["theta", "r", "x", "y"]);
            for &(t, r) in curves[0].samples() {
                csv.row(&[t, r, r * t.cos(), r * t.sin()]);
            }
            if a.with_circle {
                for t in uniform_grid(a.grid) {
                    csv.row(&[t, 1.0, t.cos(), t.sin()]);
                }
            }
            Ok(Outcome::pass(csv.finish()))
        }
        Format::Svg => {
            let mut layers: Vec<Layer> = curves
                .iter()
                .enumerate()
                .map(|(k, c)| Layer::Polyline { points: c.points(), closed: true, stroke: output::color(k) })
                .collect();
            if a.with_circle {
                let circle = uniform_grid(a.grid).into_iter().map(|t| Complex64::from_polar(1.0, t)).collect();
                layers.push(Layer::Polyline { points: circle, closed: true, stroke: "#000000" });
            }
            Ok(Outcome::pass(svg(invocation, &layers)))
        }
    }
}

fn sampled(a: &CloudArgs, seed: u64) -> std::result::Result<crate::verify::Cloud, Failure> {
    check_dim(a.d)?;
    let f = if a.reversed { sample_cloud_reversed } else { sample_cloud };
    Ok(f(a.n, a.d, a.count, seed, a.kind.into())?)
}

fn cmd_cloud(a: &CloudArgs, cli: &Cli, invocation: &str) -> CmdResult {
    let cloud = sampled(a, cli.seed)?;
    match cli.format {
        Format::Csv => {
            let mut csv = Csv::new(invocation, &["re", "im"]);
            csv.comment(&format!("seed={} n={} d={} kind={}", cli.seed, a.n, a.d, cloud.kind.name()));
            for z in cloud.points() {
                csv.row(&[z.re, z.im]);
            }
            Ok(Outcome::pass(csv.finish()))
        }
        Format::Svg => {
            let mut layers = vec![Layer::Dots { points: cloud.points().to_vec(), fill: output::color(0) }];
            if a.n >= 3 {
                let b = PolarCurve::boundary(a.n, 720)?;
                layers.push(Layer::Polyline { points: b.points(), closed: true, stroke: output::color(1) });
            }
            Ok(Outcome::pass(svg(invocation, &layers)))
        }
    }
}

fn cmd_hull(a: &CloudArgs, cli: &Cli, invocation: &str) -> CmdResult {
    let cloud = sampled(a, cli.seed)?;
    let hull = convex_hull(&cloud.points().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
    match cli.format {
        Format::Csv => {
            let mut csv = Csv::new(invocation, &["x", "y"]);
            csv.comment(&format!("seed={} n={} d={} area={}", cli.seed, a.n, a.d, num(hull.area())));
            for v in hull.vertices() {
                csv.row(v);
            }
            Ok(Outcome::pass(csv.finish()))
        }
        Format::Svg => {
            let points = hull.vertices().iter().map(|v| Complex64::new(v[0], v[1])).collect();
            Ok(Outcome::pass(svg(invocation, &[Layer::Polyline { points, closed: true, stroke: output::color(0) }])))
        }
    }
}

fn cmd_verify(a: &VerifyArgs, cli: &Cli, invocation: &str) -> CmdResult {
    csv_only(cli.format, "verify")?;
    if !SUITES.contains(&a.suite.as_str()) {
        return usage(format!("unknown suite '{}'; expected one of {}", a.suite, SUITES.join(", ")));
    }
    check_dim(a.d)?;
    let params = SuiteParams {
        n: a.n,
        d: a.d,
        count: a.count,
        seed: cli.seed,
        tol: a.tol,
        grid: a.grid,
        restarts: a.restarts,
        search_dim: Some(a.d),
    };
    let report = run_suite(&a.suite, &params)?;
    let mut csv = Csv::new(invocation, &["key", "value"]);
    csv.raw(&["suite".into(), report.suite.clone()]);
    csv.raw(&["seed".into(), cli.seed.to_string()]);
    for (k, v) in &report.entries {
        csv.raw(&[k.clone(), v.clone()]);
    }
    csv.raw(&["passed".into(), report.passed.to_string()]);
    for dump in &report.dumps {
        csv.comment(dump);
    }
    let mut human = vec![format!("suite {} (seed {})", report.suite, cli.seed)];
    human.extend(report.lines.iter().cloned());
    human.push(if report.passed { "PASS".into() } else { "FAIL".into() });
    Ok(Outcome {
        document: csv.finish(),
        human: if cli.out.is_some() { human } else { Vec::new() },
        code: if report.passed { EXIT_PASS } else { EXIT_VIOLATION },
    })
}

fn cmd_envelope(a: &EnvelopeArgs, format: Format, invocation: &str) -> CmdResult {
    let family = CurveFamily::parse(&a.family, a.t)?;
    if a.grid < MIN_GRID {
        return usage(format!("--grid must be at least {MIN_GRID}"));
    }
    let env = envelope_numeric(&family, &uniform_grid(a.grid))?;
    let document = match format {
        Format::Csv => {
            let mut csv = Csv::new(invocation, &["theta", "r", "param", "x", "y"]);
            csv.comment(&format!("family={}", family.name()));
            for p in &env.points {
                csv.row(&[p.theta, p.r, p.param, p.r * p.theta.cos(), p.r * p.theta.sin()]);
            }
            csv.finish()
        }
        Format::Svg => {
            svg(invocation, &[Layer::Polyline { points: env.curve.points(), closed: true, stroke: output::color(0) }])
        }
    };
    let code = if env.failures.is_empty() { EXIT_PASS } else { EXIT_VIOLATION };
    let human = env.failures.iter().map(|e| format!("envelope failure: {e}")).collect();
    Ok(Outcome { document, human, code })
}

fn cmd_extremal(a: &ExtremalArgs, format: Format, invocation: &str) -> CmdResult {
    csv_only(format, "extremal")?;
    let t = match (a.theta, a.t) {
        (Some(theta), None) => match t_from_theta(a.n, theta) {
            Ok(t) => t,
            Err(e @ Error::OutOfRange { .. }) => return Err(Failure::Violation(e.to_string())),
            Err(e) => return Err(e.into()),
        },
        (None, Some(t)) => t,
        _ => return usage("exactly one of --theta and --t is required"),
    };
    let tuple = extremal_tuple(a.n, t)?;
    let z = delta_pure(&tuple).value();
    let mut csv = Csv::new(invocation, &["key", "value"]);
    csv.raw(&["n".into(), a.n.to_string()]);
    csv.raw(&["t".into(), num(t)]);
    for (k, s) in tuple.states().iter().enumerate() {
        let amps: Vec<String> = s.amplitudes().iter().flat_map(|c| [num(c.re), num(c.im)]).collect();
        csv.raw(&[format!("state{k}"), amps.join(",")]);
    }
    csv.raw(&["delta_re".into(), num(z.re)]);
    csv.raw(&["delta_im".into(), num(z.im)]);
    csv.raw(&["modulus".into(), num(z.norm())]);
    csv.raw(&["argument".into(), num(arg(z))]);
    csv.raw(&["boundary_radius".into(), num(boundary_radius(a.n, arg(z))?)]);
    Ok(Outcome::pass(csv.finish()))
}

fn cmd_maxim(a: &MaximArgs, cli: &Cli, invocation: &str) -> CmdResult {
    csv_only(cli.format, "maxim")?;
    check_dim(a.d)?;
    let space = if a.d > 2 { SearchSpace::Qudit(a.d) } else { SearchSpace::Qubit };
    let res = max_im_search_in(space, a.n, a.restarts, cli.seed)?;
    let bound = tau(a.n)?;
    let evidence = Evidence::for_order(a.n);
    let exceeded = res.best > bound + crate::verify::suites::SEARCH_EXCEED_TOL;
    let mut csv = Csv::new(invocation, &["key", "value"]);
    csv.raw(&["n".into(), a.n.to_string()]);
    csv.raw(&["d".into(), a.d.to_string()]);
    csv.raw(&["seed".into(), cli.seed.to_string()]);
    csv.raw(&["restarts".into(), a.restarts.to_string()]);
    csv.raw(&["evidence".into(), evidence.label().into()]);
    csv.raw(&["best_im".into(), num(res.best)]);
    csv.raw(&["tau".into(), num(bound)]);
    csv.raw(&["gap".into(), num(bound - res.best)]);
    csv.raw(&["evaluations".into(), res.evaluations.to_string()]);
    for (k, s) in res.states.iter().enumerate() {
        let amps: Vec<String> = s.amplitudes().iter().flat_map(|c| [num(c.re), num(c.im)]).collect();
        csv.raw(&[format!("state{k}"), amps.join(",")]);
    }
    let mut human = Vec::new();
    if exceeded {
        human.push(match evidence {
            Evidence::Theorem => format!("VIOLATION: Im = {} exceeds the proven maximum {}", res.best, bound),
            Evidence::Conjecture => format!("conjecture-refuting: Im = {} exceeds tau_{} = {}", res.best, a.n, bound),
        });
    }
    Ok(Outcome { document: csv.finish(), human, code: if exceeded { EXIT_VIOLATION } else { EXIT_PASS } })
}
