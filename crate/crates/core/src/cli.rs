//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::bounds::{BendingHypothesis, BoundError, Verdict};
use crate::extremal::{el_discrete, estimate_curve, DiscreteOptions, ElError, ElMethod};
use crate::lemmas::verify_lemmas;
use crate::report::{evaluate, PipelineError, Real};
use crate::surface::{load_surface, Surface, SurfaceError, SurfaceModel, SCHEMA_HELP};
use crate::systems::SystemError;

pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const INCONCLUSIVE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const VALIDATION: u8 = 4;
    pub const GENUS_MISMATCH: u8 = 5;
    pub const IO: u8 = 6;
    pub const ESTIMATE: u8 = 7;
    pub const SYSTEMS: u8 = 8;
    pub const BOUNDS: u8 = 9;
    pub const USAGE: u8 = 64;
}

#[derive(Debug, Parser)]
#[command(name = "vrbound", version, about = "Extremal-length bounds on the renormalized volume")]
pub struct Cli {
    /// Surface file (JSON).
    #[arg(long, global = true)]
    pub surface: Option<PathBuf>,
    /// Maximum number of curve systems to enumerate.
    #[arg(long, global = true, default_value_t = 1000)]
    pub budget: usize,
    /// Relative tolerance of the discrete solver.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub tol: f64,
    /// Write the JSON output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full bound report for the surface.
    Eval {
        /// Total bending of the convex-core boundary, enabling the polynomial bound.
        #[arg(long)]
        bending: Option<f64>,
    },
    /// Print the verdict line, then the report.
    Certify,
    /// Extremal-length interval for one named curve.
    El {
        #[arg(long)]
        curve: String,
        /// Write the solver trace as JSON lines (mesh surfaces only).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the geometric lemma suite.
    VerifyLemmas,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl std::fmt::Display) -> Self {
        Self { code, message: message.to_string() }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Self::new(exit::USAGE, format!("{message}\n\n{SCHEMA_HELP}"))
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        let code = match e {
            SurfaceError::Io { .. } => exit::IO,
            SurfaceError::Parse(_) => exit::PARSE,
            SurfaceError::Validation(_) | SurfaceError::OddCharacteristic(_) => exit::VALIDATION,
            SurfaceError::GenusMismatch { .. } => exit::GENUS_MISMATCH,
        };
        Self::new(code, e)
    }
}

impl From<ElError> for Failure {
    fn from(e: ElError) -> Self {
        Self::new(exit::ESTIMATE, e)
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Systems(SystemError::Estimate(e)) => e.into(),
            PipelineError::Systems(e) => Self::new(exit::SYSTEMS, e),
            PipelineError::Bounds(e) => e.into(),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        Self::new(exit::BOUNDS, e)
    }
}

#[derive(Serialize)]
struct ElOutput<'a> {
    schema: &'static str,
    schema_version: u32,
    curve: &'a str,
    lower: Real,
    upper: Real,
    lower_method: ElMethod,
    upper_method: ElMethod,
}

fn options(cli: &Cli) -> Result<DiscreteOptions, Failure> {
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(Failure::new(exit::USAGE, format!("--tol must lie in (0, 1), got {}", cli.tol)));
    }
    if cli.budget == 0 {
        return Err(Failure::new(exit::USAGE, "--budget must be at least 1"));
    }
    Ok(DiscreteOptions::with_tol(cli.tol))
}

fn surface(cli: &Cli) -> Result<Surface, Failure> {
    let path = cli.surface.as_deref().ok_or_else(|| Failure::usage("--surface is required"))?;
    Ok(load_surface(path)?)
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut impl Write) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::new(exit::IO, format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::new(exit::IO, e)),
    }
}

/// Executes one command; output goes to `stdout` or the `--out` file.
pub fn run(cli: &Cli, stdout: &mut impl Write) -> Result<u8, Failure> {
    let opts = options(cli)?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Eval { bending } => {
            let s = surface(cli)?;
            let b = bending.map(BendingHypothesis::new).transpose()?;
            let report = evaluate(&s, cli.budget, opts, b)?;
            emit(out, &report.to_json(), stdout)?;
            Ok(exit::OK)
        }
        Command::Certify => {
            let s = surface(cli)?;
            let report = evaluate(&s, cli.budget, opts, None)?;
            writeln!(stdout, "verdict: {}", report.verdict.as_str()).map_err(|e| Failure::new(exit::IO, e))?;
            emit(out, &report.to_json(), stdout)?;
            Ok(if report.verdict == Verdict::Inconclusive { exit::INCONCLUSIVE } else { exit::OK })
        }
        Command::El { curve, trace } => {
            let s = surface(cli)?;
            let c = s.curve(curve).ok_or_else(|| Failure::new(exit::USAGE, format!("no curve named {curve:?}")))?;
            let est = match trace {
                Some(path) => {
                    if !matches!(s.model, SurfaceModel::TriangulatedMesh(_)) {
                        return Err(Failure::new(exit::USAGE, "--trace needs a triangulated_mesh surface"));
                    }
                    let r = match el_discrete(&s, c, &opts) {
                        Ok(r) => r,
                        Err(ElError::NonconvergenceWithinBudget { best }) => *best,
                        Err(e) => return Err(e.into()),
                    };
                    let mut buf = Vec::new();
                    r.write_trace(&mut buf).map_err(|e| Failure::new(exit::IO, e))?;
                    std::fs::write(path, buf)
                        .map_err(|e| Failure::new(exit::IO, format!("cannot write {}: {e}", path.display())))?;
                    r.estimate
                }
                None => estimate_curve(&s, c, &opts)?,
            };
            let o = ElOutput {
                schema: "vrbound.el_estimate",
                schema_version: 1,
                curve,
                lower: Real(est.lower),
                upper: Real(est.upper),
                lower_method: est.lower_method,
                upper_method: est.upper_method,
            };
            emit(out, &(serde_json::to_string_pretty(&o).expect("serializes") + "\n"), stdout)?;
            Ok(exit::OK)
        }
        Command::VerifyLemmas => {
            let suite = verify_lemmas(cli.seed);
            emit(out, &suite.to_json(), stdout)?;
            Ok(if suite.all_pass { exit::OK } else { exit::CHECK_FAILED })
        }
    }
}

/// Parses `args`, runs, and reports failures on standard error.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return exit::OK;
            }
            eprint!("{e}\n{SCHEMA_HELP}");
            return exit::USAGE;
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
