//! Command-line front end: solve for roots through the inverse-function
//! rectangle identity, verify the identity on random samples, compare
//! against a bisection oracle, and run batch jobs.
//!
//! Exit codes are part of the interface: 0 success, 2 no root in the
//! bracket, 3 parse error, 4 admissibility error, 5 convergence error.

pub mod exec;
pub mod job;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use exec::{CommandOutput, VerifyJob};
use job::{parse_h, resolve_tolerance, FunctionSource, HChoice, ResolvedSolve};
use report::Failure;

#[derive(Parser)]
#[command(
    name = "invroot",
    version,
    about = "Find roots of monotone functions via the inverse-function rectangle identity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the root of f inside a bracket
    Solve(SolveArgs),
    /// Check the rectangle identity and offset invariance on random samples
    Verify(VerifyArgs),
    /// Run the identity solver and the bisection oracle side by side
    Compare(SolveArgs),
    /// Execute jobs from a file, one JSON object per line
    Batch(BatchArgs),
    /// List the built-in function families
    Families(OutputArgs),
}

#[derive(Args)]
struct SourceArgs {
    /// Expression in x, e.g. "ln(x)" or "2*x - 4"
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    function: Option<String>,

    /// Built-in family id (run `invroot families` for the list)
    #[arg(long, value_name = "ID")]
    family: Option<String>,

    /// Family parameters, e.g. --params 2 -4
    #[arg(
        long,
        value_name = "REAL",
        num_args = 1..,
        allow_negative_numbers = true
    )]
    params: Vec<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the machine-readable JSON report
    #[arg(long)]
    json: bool,

    /// Trim text output to the bare result; JSON output is unaffected
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Interval on which f is monotone
    #[arg(
        long,
        value_names = ["LO", "HI"],
        num_args = 2,
        required = true,
        allow_negative_numbers = true
    )]
    domain: Vec<f64>,

    /// Subinterval of the domain to search for the root
    #[arg(
        long,
        value_names = ["LO", "HI"],
        num_args = 2,
        required = true,
        allow_negative_numbers = true
    )]
    bracket: Vec<f64>,

    /// Residual offset: a nonzero real, or "auto" to pick one per bracket
    #[arg(
        long,
        value_name = "REAL|auto",
        default_value = "auto",
        allow_hyphen_values = true,
        value_parser = parse_h
    )]
    h: HChoice,

    /// Absolute and relative tolerance (default 1e-12 or $INVROOT_DEFAULT_TOL)
    #[arg(long, value_name = "REAL")]
    tol: Option<f64>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,

    /// Interval on which f is monotone
    #[arg(
        long,
        value_names = ["LO", "HI"],
        num_args = 2,
        required = true,
        allow_negative_numbers = true
    )]
    domain: Vec<f64>,

    /// Number of random (a, b) pairs to test
    #[arg(long, value_name = "N", default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    samples: u32,

    /// Absolute and relative tolerance (default 1e-12 or $INVROOT_DEFAULT_TOL)
    #[arg(long, value_name = "REAL")]
    tol: Option<f64>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BatchArgs {
    /// File with one JSON job object per line
    #[arg(value_name = "FILE")]
    file: String,

    #[command(flatten)]
    output: OutputArgs,
}

fn resolve_solve(args: &SolveArgs) -> Result<ResolvedSolve, Failure> {
    let source = FunctionSource::from_options(
        args.source.function.clone(),
        args.source.family.clone(),
        args.source.params.clone(),
    )?;
    let tol = resolve_tolerance(args.tol)?;
    Ok(ResolvedSolve {
        source,
        domain: [args.domain[0], args.domain[1]],
        bracket: [args.bracket[0], args.bracket[1]],
        h: args.h,
        tol,
    })
}

fn resolve_verify(args: &VerifyArgs) -> Result<VerifyJob, Failure> {
    let source = FunctionSource::from_options(
        args.source.function.clone(),
        args.source.family.clone(),
        args.source.params.clone(),
    )?;
    let tol = resolve_tolerance(args.tol)?;
    Ok(VerifyJob {
        source,
        domain: [args.domain[0], args.domain[1]],
        samples: args.samples,
        tol,
    })
}

fn failure_output(failure: Failure) -> CommandOutput {
    CommandOutput {
        stdout: String::new(),
        stderr: format!("invroot: {}", failure.message),
        exit: failure.status.exit_code(),
    }
}

/// Parses arguments and runs the selected command, returning the
/// process exit code. Split from `run` so tests can drive the full
/// pipeline without spawning a process.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };

    let out = match &cli.command {
        Command::Solve(args) => match resolve_solve(args) {
            Ok(job) => exec::run_solve(&job, args.output.json, args.output.quiet),
            Err(failure) => failure_output(failure),
        },
        Command::Verify(args) => match resolve_verify(args) {
            Ok(job) => exec::run_verify(&job, args.output.json, args.output.quiet),
            Err(failure) => failure_output(failure),
        },
        Command::Compare(args) => match resolve_solve(args) {
            Ok(job) => exec::run_compare(&job, args.output.json, args.output.quiet),
            Err(failure) => failure_output(failure),
        },
        Command::Batch(args) => exec::run_batch(&args.file, args.output.json, args.output.quiet),
        Command::Families(output) => exec::run_families(output.json, output.quiet),
    };

    if !out.stdout.is_empty() {
        println!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    out.exit
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}
