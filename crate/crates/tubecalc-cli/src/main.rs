//! Command-line front end for tubecalc.
//!
//! Exit codes: 0 on success, 1 on an internal failure, 2 on bad flags,
//! 3 when a category or fixture fails to load or validate, and 4 when a
//! decomposition, a center comparison or a self-test check fails.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use tubecalc::category::CategorySpec;
use tubecalc::center::CenterFixture;
use tubecalc::tube::TubeAlgebra;
use tubecalc::{Cyclotomic, Error, MpComplex, Scalar, TolerancePolicy};

#[derive(Parser, Debug)]
#[command(name = "tubecalc", version, about = "Tube algebras of spherical multifusion categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient backend.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Float)]
    backend: BackendArg,
    /// Mantissa length in bits for the float backend.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    precision: u32,
    /// Absolute and relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-20, value_parser = parse_tolerance)]
    tol: f64,
    /// Seed for randomized decompositions and checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the pentagon, unit, dimension, duality and trace conditions of a category.
    Validate { spec: PathBuf },
    /// Summarize the simples, duals, dimensions and fusion rules of a category.
    Info { spec: PathBuf },
    /// List the blocks of the tube algebra.
    Tube { spec: PathBuf },
    /// Decompose the regular representation into simple modules.
    Irreps { spec: PathBuf },
    /// Decompose the product of two simple modules.
    Fuse {
        spec: PathBuf,
        /// Index of the left factor in the canonical order.
        #[arg(long)]
        left: usize,
        /// Index of the right factor in the canonical order.
        #[arg(long)]
        right: usize,
    },
    /// Compute twists, quantum dimensions, fusion rules and the S- and T-matrices.
    Modular { spec: PathBuf },
    /// Compare explicit half-braidings with the simple modules.
    Center {
        spec: PathBuf,
        /// Center fixture listing the half-braidings.
        #[arg(long)]
        fixture: PathBuf,
    },
    /// Run every property suite, including center fixtures next to the spec.
    Selftest { spec: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("tolerance must be a positive number".into())
    }
}

/// A command failure with its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Decomposition(_) | Error::HalfBraiding(_) => 4,
            Error::WordMismatch(_) | Error::Precision(_) => 1,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

/// The text to print and the exit code of a completed command.
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

/// Resolves a fixture path, falling back to the directory in `TUBECALC_FIXTURES`.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    if let Some(dir) = std::env::var_os("TUBECALC_FIXTURES") {
        let dir = PathBuf::from(dir);
        for candidate in [Some(dir.join(path)), path.file_name().map(|f| dir.join(f))].into_iter().flatten() {
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

fn read_spec<S: Scalar>(path: &Path) -> Result<CategorySpec<S>, Failure> {
    CategorySpec::<S>::load_path(resolve(path)).map_err(|e| {
        let f = Failure::from(e);
        Failure { message: format!("{}: {}", path.display(), f.message), ..f }
    })
}

/// Loads a category and checks it, failing with exit code 3 on a violated condition.
fn load<S: Scalar>(path: &Path, pol: &TolerancePolicy) -> Result<Arc<CategorySpec<S>>, Failure> {
    let spec = read_spec::<S>(path)?;
    let report = spec.validate(pol);
    if !report.passed() {
        return Err(Failure { code: 3, message: format!("{} fails validation\n{report}", path.display()) });
    }
    Ok(Arc::new(spec))
}

/// Center fixtures in the directory of `spec` that refer to it, sorted by file name.
fn sibling_fixtures(spec: &Path) -> Vec<(String, CenterFixture)> {
    let spec = resolve(spec);
    let Some(dir) = spec.parent() else { return Vec::new() };
    let dir = if dir.as_os_str().is_empty() { Path::new(".") } else { dir };
    let Ok(entries) = std::fs::read_dir(dir) else { return Vec::new() };
    let target = spec.canonicalize().ok();
    let mut paths: Vec<PathBuf> =
        entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
    paths.sort();
    paths
        .into_iter()
        .filter_map(|p| {
            let fixture = CenterFixture::load(&p).ok()?;
            let refers = fixture.spec_path(&p).canonicalize().ok();
            (refers.is_some() && refers == target).then(|| {
                (p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned()), fixture)
            })
        })
        .collect()
}

fn run<S: Scalar>(cli: &Cli) -> Result<Outcome, Failure> {
    let pol = TolerancePolicy::uniform(cli.tol)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { spec } => {
            let spec = read_spec::<S>(spec)?;
            let report = spec.validate(&pol);
            let code = if report.passed() { 0 } else { 3 };
            Ok(Outcome { output: render::validation(&report, fmt), code })
        }
        Command::Info { spec } => {
            let spec = load::<S>(spec, &pol)?;
            let t = TubeAlgebra::build(spec.clone(), pol);
            Ok(Outcome { output: render::info(&spec, t.dim(), fmt), code: 0 })
        }
        Command::Tube { spec } => {
            let t = TubeAlgebra::build(load::<S>(spec, &pol)?, pol);
            Ok(Outcome { output: render::tube(&t, fmt), code: 0 })
        }
        Command::Irreps { spec } => {
            let t = TubeAlgebra::build(load::<S>(spec, &pol)?, pol);
            let simples = tubecalc::rep::decompose(&t, &tubecalc::rep::regular(&t)?, cli.seed)?;
            Ok(Outcome { output: render::irreps(&t, &simples, fmt), code: 0 })
        }
        Command::Fuse { spec, left, right } => {
            let t = TubeAlgebra::build(load::<S>(spec, &pol)?, pol);
            let simples = tubecalc::rep::decompose(&t, &tubecalc::rep::regular(&t)?, cli.seed)?;
            for (flag, &i) in [("--left", left), ("--right", right)] {
                if i >= simples.len() {
                    return Err(Failure {
                        code: 2,
                        message: format!("{flag} {i} is out of range: there are {} simple modules", simples.len()),
                    });
                }
            }
            let product = tubecalc::monoidal::tensor(&t, &simples[*left].rep, &simples[*right].rep)?;
            let mult = tubecalc::monoidal::multiplicities(&t, &simples, &product.rep);
            Ok(Outcome { output: render::fuse(&t, (*left, *right), &product, &mult, fmt), code: 0 })
        }
        Command::Modular { spec } => {
            let t = TubeAlgebra::build(load::<S>(spec, &pol)?, pol);
            let simples = tubecalc::rep::decompose(&t, &tubecalc::rep::regular(&t)?, cli.seed)?;
            let data = tubecalc::monoidal::modular_data(&t, &simples)?;
            Ok(Outcome { output: render::modular(&data, &pol, fmt), code: 0 })
        }
        Command::Center { spec, fixture } => {
            let t = TubeAlgebra::build(load::<S>(spec, &pol)?, pol);
            let fixture = CenterFixture::load(resolve(fixture)).map_err(|e| {
                let f = Failure::from(e);
                Failure { message: format!("{}: {}", fixture.display(), f.message), ..f }
            })?;
            let simples = tubecalc::rep::decompose(&t, &tubecalc::rep::regular(&t)?, cli.seed)?;
            let report = tubecalc::center::compare(&t, &simples, &fixture)?;
            let code = if report.passed(cli.tol) { 0 } else { 4 };
            Ok(Outcome { output: render::center(&report, fmt), code })
        }
        Command::Selftest { spec } => {
            let fixtures = sibling_fixtures(spec);
            let t = TubeAlgebra::build(load::<S>(spec, &pol)?, pol);
            let opts = tubecalc::suite::SuiteOptions { seed: cli.seed, ..Default::default() };
            let report = tubecalc::suite::run(&t, &opts, &fixtures)?;
            let code = if report.passed() { 0 } else { 4 };
            Ok(Outcome { output: render::selftest(&report, fmt), code })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    tubecalc::scalars::set_precision(cli.precision as usize);
    let result = match cli.backend {
        BackendArg::Exact => run::<Cyclotomic>(&cli),
        BackendArg::Float => run::<MpComplex>(&cli),
    };
    match result {
        Ok(Outcome { output, code }) => {
            print!("{output}");
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
