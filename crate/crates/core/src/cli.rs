//! Command-line front end.
//!
//! Every subcommand prints exactly one JSON object on stdout (a [`Report`],
//! or the generated space file for `gen` without `--output`). Diagnostics go
//! to stderr. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | malformed input or invalid flags |
//! | 3 | `--method ds` on a space that is not a product grid |
//! | 4 | internal solver failure |
//! | 5 | certificate residuals do not alternate |
//! | 6 | residual is identically zero (`check-best`) |

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bolt::{dvp_bound_with_tol, validate_bolt, Bolt};
use crate::boltgraph::{build_graph, find_extremal_bolt, max_mean_cycle};
use crate::error::Error;
use crate::solver::{solve_ds, solve_lp, ApproxSolution, Method};
use crate::space::{
    build_explicit, build_grid, build_ridge, evaluate_sum, FiniteQuotientSpace, SampledFunction,
    SumElement,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_PRODUCT: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;
pub const EXIT_SIGN_VIOLATION: i32 = 5;
pub const EXIT_ZERO_RESIDUAL: i32 = 6;

/// Space file: labelings, optional samples and coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub s: Vec<i64>,
    pub p: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
}

impl SpaceFile {
    pub fn from_instance(space: &FiniteQuotientSpace, f: Option<&SampledFunction>) -> Self {
        Self {
            s: space.s_class().iter().map(|&c| c as i64).collect(),
            p: space.p_class().iter().map(|&c| c as i64).collect(),
            f: f.map(|f| f.values().to_vec()),
            coords: space.coords().map(<[_]>::to_vec),
        }
    }

    pub fn into_instance(self) -> Result<(FiniteQuotientSpace, Option<SampledFunction>), Error> {
        let mut space = build_explicit(&self.s, &self.p)?;
        if let Some(coords) = self.coords {
            space = space.with_coords(coords)?;
        }
        let f = match self.f {
            Some(values) => {
                let f = SampledFunction::new(values)?;
                space.check_function(&f)?;
                Some(f)
            }
            None => None,
        };
        Ok((space, f))
    }
}

/// Bolt file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoltFile {
    pub points: Vec<usize>,
    pub closed: bool,
}

impl From<&Bolt> for BoltFile {
    fn from(b: &Bolt) -> Self {
        Self {
            points: b.points().to_vec(),
            closed: b.is_closed(),
        }
    }
}

/// Sum-element file: one `g` value per `s`-class, one `h` value per `p`-class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumFile {
    pub g: Vec<f64>,
    pub h: Vec<f64>,
}

impl From<&SumElement> for SumFile {
    fn from(u: &SumElement) -> Self {
        Self {
            g: u.g.clone(),
            h: u.h.clone(),
        }
    }
}

/// Machine-readable result of one subcommand.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub operation: String,
    pub n: usize,
    pub n_s: usize,
    pub n_p: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    /// `bound <= error` (within 1e-9) when `certify` also solved the instance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_le_error: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_norm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_cycle: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bolt: Option<BoltFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SumFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub elapsed_ms: f64,
}

impl Report {
    fn new(operation: &str, space: &FiniteQuotientSpace) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            operation: operation.to_string(),
            n: space.n(),
            n_s: space.n_s(),
            n_p: space.n_p(),
            ..Default::default()
        }
    }

    fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        self
    }
}

/// Failure of a subcommand: exit code, diagnostic, and possibly a report
/// that is still printed on stdout.
#[derive(Debug)]
pub struct CommandError {
    pub code: i32,
    pub message: String,
    pub report: Option<Report>,
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotProductSpace => EXIT_NOT_PRODUCT,
            Error::Solver(_) | Error::NonConvergence { .. } => EXIT_SOLVER,
            Error::SignViolation { .. } => EXIT_SIGN_VIOLATION,
            Error::ZeroResidual => EXIT_ZERO_RESIDUAL,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
            report: None,
        }
    }
}

fn input_error(message: String) -> CommandError {
    CommandError {
        code: EXIT_INPUT,
        message,
        report: None,
    }
}

type CmdResult = std::result::Result<Report, CommandError>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, CommandError> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("malformed {}: {e}", path.display())))
}

/// Loads a space file that must carry `f`.
pub fn load_instance(path: &Path) -> std::result::Result<(FiniteQuotientSpace, SampledFunction), CommandError> {
    let file: SpaceFile = read_json(path)?;
    match file.into_instance()? {
        (space, Some(f)) => Ok((space, f)),
        (_, None) => Err(input_error(format!("{} has no \"f\" array", path.display()))),
    }
}

fn load_sum(path: &Path, space: &FiniteQuotientSpace) -> std::result::Result<SumElement, CommandError> {
    let file: SumFile = read_json(path)?;
    let u = SumElement::new(file.g, file.h)?;
    space.check_sum(&u)?;
    Ok(u)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Lp => "lp",
        Method::Ds => "ds",
    }
}

fn fill_solution(report: &mut Report, sol: &ApproxSolution) {
    report.method = Some(method_name(sol.method).into());
    report.error = Some(sol.error);
    report.dual_value = Some(sol.dual_value);
    report.no_cycle = Some(sol.dual_witness.is_none());
    report.bolt = sol.dual_witness.as_ref().map(BoltFile::from);
    report.witness = Some(SumFile::from(&sol.witness));
    report.iterations = Some(sol.iterations);
}

pub fn cmd_solve(input: &Path, method: Method, tol: f64, max_sweeps: usize) -> CmdResult {
    let started = Instant::now();
    let (space, f) = load_instance(input)?;
    let sol = match method {
        Method::Lp => solve_lp(&space, &f)?,
        Method::Ds => solve_ds(&space, &f, tol, max_sweeps)?,
    };
    let mut report = Report::new("solve", &space);
    fill_solution(&mut report, &sol);
    Ok(report.finish(started))
}

pub fn cmd_dual(input: &Path) -> CmdResult {
    let started = Instant::now();
    let (space, f) = load_instance(input)?;
    let res = max_mean_cycle(&build_graph(&space, &f)?);
    let mut report = Report::new("dual", &space);
    report.dual_value = Some(res.value);
    report.no_cycle = Some(res.no_cycle);
    report.bolt = res.witness.as_ref().map(BoltFile::from);
    Ok(report.finish(started))
}

/// `tol` is the magnitude below which a residual counts as zero in the sign test.
pub fn cmd_certify(input: &Path, bolt_path: &Path, u_path: &Path, tol: f64) -> CmdResult {
    let started = Instant::now();
    let (space, f) = load_instance(input)?;
    let bolt_file: BoltFile = read_json(bolt_path)?;
    let bolt = validate_bolt(&space, &bolt_file.points, bolt_file.closed)?;
    let u = load_sum(u_path, &space)?;
    let bound = dvp_bound_with_tol(&space, &f, &u, &bolt, tol)?;
    let sol = solve_lp(&space, &f)?;
    let mut report = Report::new("certify", &space);
    report.bound = Some(bound);
    report.error = Some(sol.error);
    report.bound_le_error = Some(bound <= sol.error + tol.max(1e-9));
    report.bolt = Some(bolt_file);
    report.witness = Some(SumFile::from(&u));
    Ok(report.finish(started))
}

pub fn cmd_check_best(input: &Path, u_path: &Path, tol: f64) -> CmdResult {
    let started = Instant::now();
    let (space, f) = load_instance(input)?;
    let u = load_sum(u_path, &space)?;
    let residual = f.sub(&evaluate_sum(&space, &u)?)?;
    let mut report = Report::new("check-best", &space);
    report.residual_norm = Some(residual.max_abs());
    report.witness = Some(SumFile::from(&u));
    match find_extremal_bolt(&space, &residual, tol) {
        Ok(found) => {
            report.best = Some(found.is_some());
            report.bolt = found.as_ref().map(BoltFile::from);
            Ok(report.finish(started))
        }
        Err(Error::ZeroResidual) => {
            report.best = Some(true);
            report.error = Some(0.0);
            Err(CommandError {
                code: EXIT_ZERO_RESIDUAL,
                message: "u interpolates f exactly; it is trivially best with E(f) = 0".into(),
                report: Some(report.finish(started)),
            })
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Product grid on [-1, 1]^2.
    Grid,
    /// Lattice on [-1, 1]^2 with ridge directions (1, 1) and (1, -1).
    Ridge,
    /// Random labelings, no coordinates.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFunction {
    /// f(x, y) = x y
    Product,
    /// f(x, y) = 1 / (1 + 25 (x^2 + y^2))
    Runge,
    /// Uniform on [-1, 1].
    Random,
}

#[derive(Debug, Clone)]
pub struct GenOptions {
    pub kind: GenKind,
    pub nx: usize,
    pub ny: usize,
    pub n: usize,
    pub function: GenFunction,
    pub seed: u64,
}

/// Generates a test instance deterministically from `opts`.
pub fn generate(opts: &GenOptions) -> Result<SpaceFile, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let space = match opts.kind {
        GenKind::Grid => build_grid(opts.nx, opts.ny)?,
        GenKind::Ridge => {
            let lattice = build_grid(opts.nx, opts.ny)?;
            let points = lattice.coords().expect("grids carry coordinates").to_vec();
            build_ridge(&points, &[1.0, 1.0], &[1.0, -1.0], 1e-9)?
        }
        GenKind::Random => {
            if opts.n == 0 {
                return Err(Error::InvalidInput("--n must be positive".into()));
            }
            let k_s = rng.gen_range(1..=opts.n) as i64;
            let k_p = rng.gen_range(1..=opts.n) as i64;
            let s: Vec<i64> = (0..opts.n).map(|_| rng.gen_range(0..k_s)).collect();
            let p: Vec<i64> = (0..opts.n).map(|_| rng.gen_range(0..k_p)).collect();
            build_explicit(&s, &p)?
        }
    };
    let values: Vec<f64> = match opts.function {
        GenFunction::Random => (0..space.n()).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
        GenFunction::Product | GenFunction::Runge => {
            let coords = space.coords().ok_or_else(|| {
                Error::InvalidInput("product and runge functions need coordinates (use grid or ridge)".into())
            })?;
            coords
                .iter()
                .map(|c| match opts.function {
                    GenFunction::Product => c[0] * c[1],
                    _ => 1.0 / (1.0 + 25.0 * (c[0] * c[0] + c[1] * c[1])),
                })
                .collect()
        }
    };
    let f = SampledFunction::new(values)?;
    Ok(SpaceFile::from_instance(&space, Some(&f)))
}

/// What a subcommand prints on stdout.
#[derive(Debug)]
pub enum Output {
    Report(Report),
    /// Verbatim text (a generated space file).
    Text(String),
}

/// `gen`: writes the space file to `output` and reports, or hands back the
/// serialized space file when `output` is absent.
pub fn cmd_gen(opts: &GenOptions, output: Option<&Path>) -> std::result::Result<Output, CommandError> {
    let started = Instant::now();
    let file = generate(opts)?;
    let text = serde_json::to_string(&file).map_err(|e| input_error(e.to_string()))? + "\n";
    let Some(path) = output else {
        return Ok(Output::Text(text));
    };
    fs::write(path, &text).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    let (space, _) = file.into_instance()?;
    let mut report = Report::new("gen", &space);
    report.output = Some(path.display().to_string());
    Ok(Output::Report(report.finish(started)))
}

#[derive(Debug, Parser)]
#[command(name = "bolt-approx", version, about = "Best uniform approximation by sums of two algebras on finite spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Lp,
    Ds,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute E(f) and a best approximation.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "lp")]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_sweeps: usize,
    },
    /// Maximum of the bolt functional over closed bolts.
    Dual { input: PathBuf },
    /// Lower bound from a closed bolt and an alternating residual.
    Certify {
        input: PathBuf,
        #[arg(long)]
        bolt: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Decide whether u is a best approximation by searching an extremal closed bolt.
    CheckBest {
        input: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Write a generated instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 4)]
        nx: usize,
        #[arg(long, default_value_t = 4)]
        ny: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long = "fn", value_enum, default_value = "random")]
        function: GenFunction,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve {
            input,
            method,
            tol,
            max_sweeps,
        } => {
            let method = match method {
                MethodArg::Lp => Method::Lp,
                MethodArg::Ds => Method::Ds,
            };
            cmd_solve(&input, method, tol, max_sweeps).map(Output::Report)
        }
        Command::Dual { input } => cmd_dual(&input).map(Output::Report),
        Command::Certify { input, bolt, u, tol } => cmd_certify(&input, &bolt, &u, tol).map(Output::Report),
        Command::CheckBest { input, u, tol } => cmd_check_best(&input, &u, tol).map(Output::Report),
        Command::Gen {
            kind,
            nx,
            ny,
            n,
            function,
            seed,
            output,
        } => {
            let opts = GenOptions {
                kind,
                nx,
                ny,
                n,
                function,
                seed,
            };
            cmd_gen(&opts, output.as_deref())
        }
    };
    match result {
        Ok(Output::Report(report)) => {
            print_report(out, &report);
            EXIT_OK
        }
        Ok(Output::Text(text)) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            if let Some(report) = &e.report {
                print_report(out, report);
            }
            e.code
        }
    }
}

fn print_report(out: &mut impl Write, report: &Report) {
    let text = serde_json::to_string(report).expect("reports hold finite numbers");
    let _ = writeln!(out, "{text}");
}
