//! Argument parsing and dispatch for the `g2forge` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use g2forge_core::charts::{FdConfig, DEFAULT_SAMPLES, DEFAULT_STEP, DEFAULT_TOL};
use g2forge_core::flow::{Method, DEFAULT_BLOWUP_BOUND};
use g2forge_core::{fixtures, Error, Rational};
use serde_json::{json, Value};

use crate::commands::{self, FlowParams, Output};
use crate::fixture::{Fixture, FixtureError};
use crate::registry::Registry;
use crate::report::Report;
use crate::reproduce::reproduce;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "g2forge", version, about = "Left-invariant G2-structures on 7-dimensional Lie algebras")]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Arithmetic backend; the default depends on the command.
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,
    #[arg(long, global = true, default_value_t = g2forge_core::charts::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    fn as_str(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Float => "float",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lie algebra commands.
    #[command(subcommand)]
    Alg(AlgCommand),
    /// G2-structure commands.
    #[command(subcommand)]
    G2(G2Command),
    /// Laplacian soliton commands.
    #[command(subcommand)]
    Soliton(SolitonCommand),
    /// Laplacian flow commands.
    #[command(subcommand)]
    Flow(FlowCommand),
    /// Checks on the explicit matrix group.
    #[command(subcommand)]
    Charts(ChartsCommand),
    /// The reference construction.
    #[command(subcommand)]
    Paper(PaperCommand),
}

#[derive(Subcommand, Debug)]
enum AlgCommand {
    /// Validate an algebra and report its invariants.
    Check(AlgebraArgs),
}

#[derive(Subcommand, Debug)]
enum G2Command {
    /// Classify a 3-form and compute its torsion and Laplacian.
    Analyze(StructureArgs),
}

#[derive(Subcommand, Debug)]
enum SolitonCommand {
    /// Solve for (lambda, X) by least squares.
    Solve(StructureArgs),
    /// Soliton type, gradient test and divergence trichotomy.
    Classify(StructureArgs),
}

#[derive(Subcommand, Debug)]
enum FlowCommand {
    /// Integrate the Laplacian flow.
    Run(FlowArgs),
}

#[derive(Subcommand, Debug)]
enum ChartsCommand {
    /// Finite-difference checks of the structure equations in coordinates.
    Verify(ChartsArgs),
}

#[derive(Subcommand, Debug)]
enum PaperCommand {
    /// Run the full exact pipeline on h and check every value.
    Reproduce,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// A `.lie` file or fixture name (default: h).
    algebra: Option<String>,
    /// Inline structure equations, e.g. "(0,0,0,12,13)".
    #[arg(long)]
    salamon: Option<String>,
}

#[derive(Args, Debug)]
struct StructureArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Inline 3-form, e.g. "e127 + e347 + ...".
    #[arg(long)]
    phi: Option<String>,
    /// File holding the 3-form.
    #[arg(long)]
    phi_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FlowArgs {
    #[command(flatten)]
    structure: StructureArgs,
    #[arg(long, default_value_t = 0.5)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Rk4)]
    method: MethodArg,
    /// Largest admissible coefficient before the run is stopped.
    #[arg(long, default_value_t = DEFAULT_BLOWUP_BOUND)]
    blowup_bound: f64,
    /// CSV file for the trace.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Rk4,
    Euler,
}

#[derive(Args, Debug)]
struct ChartsArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Failed(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Failed(_) => EXIT_FAILURE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Self::Usage(m) | Self::Failed(m) => m,
        }
    }
}

fn input_error(e: Error) -> Failure {
    match e {
        Error::Parse { .. }
        | Error::Degree { .. }
        | Error::Dimension { .. }
        | Error::IndexOutOfRange { .. }
        | Error::Config(_) => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Failed(other.to_string()),
    }
}

/// Result of a successful dispatch.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.summary.passed {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }
}

/// Runs `argv` (including the program name) and writes to `out` and `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, echo) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let _ = if cli.json { writeln!(out, "{}", outcome.report.to_json()) } else { write!(out, "{}", outcome.text) };
            outcome.exit_code()
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

pub fn execute(cli: &Cli, command: Vec<String>) -> Result<Outcome, Failure> {
    let registry = Registry::from_env().map_err(|(p, e)| Failure::Usage(format!("{}: {e}", p.display())))?;
    let mut warnings = Vec::new();
    let (inputs, backend, output) = match &cli.command {
        Command::Alg(AlgCommand::Check(a)) => {
            if cli.backend == Some(Backend::Float) {
                return Err(Failure::Usage("alg check runs only in the exact backend".into()));
            }
            let name = if a.salamon.is_some() { "inline" } else { a.algebra.as_deref().unwrap_or("h") }.to_string();
            let output = match resolve_algebra(&registry, a, &mut warnings) {
                Ok(f) => commands::alg_check(&f),
                Err(AlgebraFailure::Invalid(e)) => commands::alg_invalid(&name, &e),
                Err(AlgebraFailure::Other(f)) => return Err(f),
            };
            let salamon = output.results.get("salamon").cloned().unwrap_or(Value::Null);
            (json!({ "command": "alg check", "algebra": salamon, "name": name }), Backend::Exact, output)
        }
        Command::G2(G2Command::Analyze(s)) => structure_command(cli, &registry, s, &mut warnings, "g2 analyze")?,
        Command::Soliton(SolitonCommand::Solve(s)) => structure_command(cli, &registry, s, &mut warnings, "soliton solve")?,
        Command::Soliton(SolitonCommand::Classify(s)) => {
            structure_command(cli, &registry, s, &mut warnings, "soliton classify")?
        }
        Command::Flow(FlowCommand::Run(f)) => {
            if cli.backend == Some(Backend::Exact) {
                return Err(Failure::Usage("flow run supports only the float backend".into()));
            }
            let fixture = resolve(&registry, &f.structure.algebra, &mut warnings)?;
            let phi_text = resolve_phi(&fixture, &f.structure, &mut warnings)?;
            let alg = fixture.algebra::<f64>();
            let phi = commands::parse_phi::<f64>(&phi_text).map_err(input_error)?;
            let method = match f.method {
                MethodArg::Rk4 => Method::Rk4,
                MethodArg::Euler => Method::Euler,
            };
            let params =
                FlowParams { t_end: f.t_end, dt: f.dt, method, blowup_bound: f.blowup_bound, out: f.out.as_deref() };
            let output = commands::flow_run(&alg, &phi, &params).map_err(input_error)?;
            let inputs = json!({
                "command": "flow run",
                "algebra": fixture.salamon,
                "phi": phi_text,
                "t_end": f.t_end,
                "dt": f.dt,
                "method": method.as_str(),
                "blowup_bound": f.blowup_bound,
            });
            (inputs, Backend::Float, output)
        }
        Command::Charts(ChartsCommand::Verify(c)) => {
            if cli.backend == Some(Backend::Exact) {
                return Err(Failure::Usage("charts verify supports only the float backend".into()));
            }
            let fixture = resolve(&registry, &c.algebra, &mut warnings)?;
            let cfg = FdConfig { samples: c.samples, step: c.step, tol: c.tol, seed: cli.seed };
            let output = commands::charts_verify(&fixture.salamon, &cfg).map_err(input_error)?;
            let inputs = json!({
                "command": "charts verify",
                "algebra": fixture.salamon,
                "samples": c.samples,
                "step": c.step,
                "tol": c.tol,
                "seed": cli.seed,
            });
            (inputs, Backend::Float, output)
        }
        Command::Paper(PaperCommand::Reproduce) => {
            if cli.backend == Some(Backend::Float) {
                return Err(Failure::Usage("paper reproduce runs only in the exact backend".into()));
            }
            let r = reproduce().map_err(|e| Failure::Failed(e.to_string()))?;
            let mut text = String::new();
            for (n, c) in r.checks.iter().enumerate() {
                text.push_str(&format!("[{}] {}. {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, n + 1, c.name, c.detail));
            }
            let passed = r.checks.iter().filter(|c| c.passed).count();
            text.push_str(&format!("{passed}/{} checks passed\n", r.checks.len()));
            let inputs = json!({ "command": "paper reproduce", "algebra": fixtures::SOLITON_ALGEBRA, "phi": fixtures::MODEL_PHI });
            (inputs, Backend::Exact, Output { results: r.results, checks: r.checks, text })
        }
    };
    let report = Report::new(command, &inputs, backend.as_str(), output.results, output.checks);
    Ok(Outcome { report, text: output.text, warnings })
}

fn structure_command(
    cli: &Cli,
    registry: &Registry,
    s: &StructureArgs,
    warnings: &mut Vec<String>,
    name: &str,
) -> Result<(Value, Backend, Output), Failure> {
    let backend = cli.backend.unwrap_or(Backend::Exact);
    let fixture = resolve(registry, &s.algebra, warnings)?;
    if fixture.dim() != g2forge_core::DIM {
        return Err(Failure::Usage(format!("{name} needs a 7-dimensional algebra, {} has dimension {}", fixture.name, fixture.dim())));
    }
    let phi_text = resolve_phi(&fixture, s, warnings)?;
    let output = match backend {
        Backend::Exact => dispatch::<Rational>(name, &fixture, &phi_text),
        Backend::Float => dispatch::<f64>(name, &fixture, &phi_text),
    }?;
    let inputs = json!({ "command": name, "algebra": fixture.salamon, "phi": phi_text });
    Ok((inputs, backend, output))
}

fn dispatch<S: crate::report::JsonScalar>(name: &str, fixture: &Fixture, phi_text: &str) -> Result<Output, Failure> {
    let alg = fixture.algebra::<S>();
    let phi = commands::parse_phi::<S>(phi_text).map_err(input_error)?;
    let result = match name {
        "g2 analyze" => commands::g2_analyze(&alg, &phi),
        "soliton solve" => commands::soliton_solve_cmd(&alg, &phi),
        _ => commands::soliton_classify_cmd(&alg, &phi),
    };
    result.map_err(input_error)
}

enum AlgebraFailure {
    Invalid(Error),
    Other(Failure),
}

fn resolve_algebra(registry: &Registry, a: &AlgebraArgs, warnings: &mut Vec<String>) -> Result<Fixture, AlgebraFailure> {
    let base = match &a.algebra {
        Some(arg) => Some(registry.resolve(arg).map_err(|m| match reparse_invalid(arg) {
            Some(e) => AlgebraFailure::Invalid(e),
            None => AlgebraFailure::Other(Failure::Usage(m)),
        })?),
        None => None,
    };
    let Some(inline) = &a.salamon else {
        return match base {
            Some(f) => Ok(f),
            None => registry.get("h").cloned().ok_or(AlgebraFailure::Other(Failure::Usage("no default fixture h".into()))),
        };
    };
    if let Some(f) = &base {
        warnings.push(format!("inline --salamon overrides the algebra in {}", f.name));
    }
    let phi = base.as_ref().and_then(|f| f.phi_text.clone());
    let notes = base.map(|f| f.notes).unwrap_or_default();
    Fixture::new("inline", inline, phi.as_deref(), notes).map_err(|e| match e {
        FixtureError::Algebra(e @ (Error::NotALieAlgebra { .. } | Error::NotAntisymmetric { .. })) => AlgebraFailure::Invalid(e),
        other => AlgebraFailure::Other(Failure::Usage(other.to_string())),
    })
}

/// The Lie-algebra error behind a failed file load, if that was the cause.
fn reparse_invalid(arg: &str) -> Option<Error> {
    let path = std::path::Path::new(arg);
    if !path.is_file() {
        return None;
    }
    match Fixture::load(path) {
        Err(FixtureError::Algebra(e @ (Error::NotALieAlgebra { .. } | Error::NotAntisymmetric { .. }))) => Some(e),
        _ => None,
    }
}

fn resolve(registry: &Registry, a: &AlgebraArgs, warnings: &mut Vec<String>) -> Result<Fixture, Failure> {
    resolve_algebra(registry, a, warnings).map_err(|e| match e {
        AlgebraFailure::Invalid(e) => Failure::Usage(e.to_string()),
        AlgebraFailure::Other(f) => f,
    })
}

/// Inline `--phi` beats `--phi-file`, which beats the fixture's `phi:` line;
/// the model form is the fallback.
fn resolve_phi(fixture: &Fixture, s: &StructureArgs, warnings: &mut Vec<String>) -> Result<String, Failure> {
    let from_file = match &s.phi_file {
        Some(p) => Some(read_form_file(p)?),
        None => None,
    };
    if let Some(inline) = &s.phi {
        if let Some(p) = &s.phi_file {
            warnings.push(format!("inline --phi overrides --phi-file {}", p.display()));
        } else if fixture.phi_text.as_deref().is_some_and(|f| f != inline.trim()) {
            warnings.push(format!("inline --phi overrides the phi in {}", fixture.name));
        }
        return Ok(inline.trim().to_string());
    }
    if let Some(text) = from_file {
        if fixture.phi_text.as_deref().is_some_and(|f| f != text) {
            warnings.push(format!("--phi-file overrides the phi in {}", fixture.name));
        }
        return Ok(text);
    }
    Ok(fixture.phi_text.clone().unwrap_or_else(|| fixtures::MODEL_PHI.to_string()))
}

fn read_form_file(path: &std::path::Path) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let body: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.strip_prefix("phi:").map_or(l, str::trim))
        .collect();
    Ok(body.join(" "))
}
