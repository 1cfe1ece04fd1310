//! The five operations behind the subcommands. Each returns a fully
//! rendered `CommandOutput`, so the binary's main is a thin dispatcher
//! and tests can drive everything in process.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invroot_core::catalog::list_families;
use invroot_core::identity::{admissible_offset, h_sweep, rectangle_residual_full};
use invroot_core::model::FunctionModel;
use invroot_core::numerics::{Interval, Tolerance};
use invroot_core::solver::{solve_identity, solve_oracle_bisect, RootResult, SolverConfig};

use crate::job::{
    classify_solve_error, make_interval, FunctionSource, JobFormat, JobSpec, ResolvedSolve,
};
use crate::report::{
    to_json, CompareReport, Failure, FamilyReport, SolveReport, StatusKind, VerifyReport,
};

/// Normalized allowance on the rectangle identity: residuals divided
/// by 1 + |b f(b)| + |a f(a)| must stay below this.
pub const RECTANGLE_ALLOWANCE: f64 = 1e-8;
/// Normalized allowance on the offset-sweep spread: (max - min) over
/// the sweep divided by 1 + max |R| must stay below this.
pub const SWEEP_ALLOWANCE: f64 = 1e-8;
/// The two methods must agree to this times 1 + |root|.
pub const COMPARE_ALLOWANCE: f64 = 1e-9;
/// Offsets for the verification sweep span two orders of magnitude,
/// as fractions of the largest admissible offset at each alpha.
pub const SWEEP_FRACTIONS: [f64; 5] = [0.01, 0.0316, 0.1, 0.316, 1.0];
/// Seed for verify's sampling; fixed so runs are reproducible.
const VERIFY_SEED: u64 = 42;

pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl CommandOutput {
    fn failure_free(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            exit: 0,
        }
    }
}

struct SolveOutcome {
    report: SolveReport,
    detail: Option<String>,
}

fn solve_failure(job: &ResolvedSolve, failure: Failure) -> SolveOutcome {
    SolveOutcome {
        report: SolveReport::failed(
            job.source.describe(),
            job.domain,
            job.bracket,
            "identity",
            failure.status,
        ),
        detail: Some(failure.message),
    }
}

fn report_from_result(
    label: &str,
    domain: [f64; 2],
    bracket: [f64; 2],
    result: &RootResult,
) -> SolveReport {
    SolveReport {
        function: label.to_string(),
        domain,
        bracket,
        h_used: result.h_used,
        root: Some(result.root),
        residual_at_root: Some(result.residual_at_root),
        f_at_root: Some(result.f_at_root),
        iterations: result.iterations,
        spurious_filtered: result.spurious_filtered,
        method: result.method.to_string(),
        status: StatusKind::Ok,
    }
}

fn build_model(job: &ResolvedSolve) -> Result<(Interval, Interval, FunctionModel), Failure> {
    let domain = make_interval(job.domain, "domain")?;
    let bracket = make_interval(job.bracket, "bracket")?;
    let model = job.source.build(domain)?.with_tolerance(job.tol);
    Ok((domain, bracket, model))
}

fn execute_solve(job: &ResolvedSolve) -> SolveOutcome {
    let (_, bracket, model) = match build_model(job) {
        Ok(parts) => parts,
        Err(failure) => return solve_failure(job, failure),
    };
    let config = SolverConfig {
        bracket,
        h_policy: job.h.to_policy(),
        tol: job.tol,
        filter_spurious: true,
    };
    match solve_identity(&model, &config) {
        Ok(result) => SolveOutcome {
            report: report_from_result(model.label(), job.domain, job.bracket, &result),
            detail: None,
        },
        Err(e) => {
            let failure = classify_solve_error(&e);
            SolveOutcome {
                report: SolveReport::failed(
                    model.label().to_string(),
                    job.domain,
                    job.bracket,
                    "identity",
                    failure.status,
                ),
                detail: Some(failure.message),
            }
        }
    }
}

pub fn run_solve(job: &ResolvedSolve, json: bool, quiet: bool) -> CommandOutput {
    let outcome = execute_solve(job);
    render_solve(outcome, json, quiet)
}

fn render_solve(outcome: SolveOutcome, json: bool, quiet: bool) -> CommandOutput {
    let stdout = if json {
        to_json(&outcome.report)
    } else {
        outcome.report.render_text(quiet)
    };
    CommandOutput {
        stdout,
        stderr: outcome
            .detail
            .map(|m| format!("invroot: {m}"))
            .unwrap_or_default(),
        exit: outcome.report.status.exit_code(),
    }
}

pub struct VerifyJob {
    pub source: FunctionSource,
    pub domain: [f64; 2],
    pub samples: u32,
    pub tol: Tolerance,
}

pub fn run_verify(job: &VerifyJob, json: bool, quiet: bool) -> CommandOutput {
    let (report, detail) = execute_verify(job);
    let stdout = if json {
        to_json(&report)
    } else {
        report.render_text(quiet)
    };
    CommandOutput {
        stdout,
        stderr: detail.map(|m| format!("invroot: {m}")).unwrap_or_default(),
        exit: report.status.exit_code(),
    }
}

fn verify_failure(job: &VerifyJob, failure: Failure) -> (VerifyReport, Option<String>) {
    (
        VerifyReport {
            function: job.source.describe(),
            domain: job.domain,
            samples: job.samples,
            max_rectangle_residual: None,
            rectangle_allowance: RECTANGLE_ALLOWANCE,
            max_sweep_spread: None,
            sweep_allowance: SWEEP_ALLOWANCE,
            status: failure.status,
        },
        Some(failure.message),
    )
}

fn execute_verify(job: &VerifyJob) -> (VerifyReport, Option<String>) {
    let domain = match make_interval(job.domain, "domain") {
        Ok(d) => d,
        Err(f) => return verify_failure(job, f),
    };
    let model = match job.source.build(domain) {
        Ok(m) => m.with_tolerance(job.tol),
        Err(f) => return verify_failure(job, f),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    let mut max_rectangle = 0.0f64;
    for _ in 0..job.samples {
        let a = rng.gen_range(domain.lo()..domain.hi());
        let b = rng.gen_range(domain.lo()..domain.hi());
        let residual = match rectangle_residual_full(&model, a, b) {
            Ok(r) => r,
            Err(e) => {
                return verify_failure(
                    job,
                    Failure::new(
                        StatusKind::Convergence,
                        format!("rectangle evaluation failed at ({a}, {b}): {e}"),
                    ),
                )
            }
        };
        let fa = model.eval_f(a).unwrap_or(f64::NAN);
        let fb = model.eval_f(b).unwrap_or(f64::NAN);
        let scale = 1.0 + (b * fb).abs() + (a * fa).abs();
        max_rectangle = max_rectangle.max(residual.abs() / scale);
    }

    let sweeps = job.samples.min(20);
    let mut max_spread = 0.0f64;
    for _ in 0..sweeps {
        let alpha = rng.gen_range(domain.lo()..domain.hi());
        let Some(h_max) = admissible_offset(&domain, alpha, 0.25) else {
            continue;
        };
        let offsets: Vec<f64> = SWEEP_FRACTIONS.iter().map(|s| s * h_max).collect();
        let sweep = match h_sweep(&model, alpha, &offsets) {
            Ok(s) => s,
            Err(e) => {
                return verify_failure(
                    job,
                    Failure::new(
                        StatusKind::Convergence,
                        format!("offset sweep failed at alpha = {alpha}: {e}"),
                    ),
                )
            }
        };
        let magnitude = sweep
            .samples
            .iter()
            .map(|s| s.value.abs())
            .fold(0.0, f64::max);
        max_spread = max_spread.max(sweep.spread / (1.0 + magnitude));
    }

    let rectangle_ok = max_rectangle <= RECTANGLE_ALLOWANCE;
    let sweep_ok = max_spread <= SWEEP_ALLOWANCE;
    let status = if rectangle_ok && sweep_ok {
        StatusKind::Ok
    } else {
        StatusKind::Convergence
    };
    let detail = if status == StatusKind::Ok {
        None
    } else {
        Some(format!(
            "identity verification failed: max rectangle residual {max_rectangle:.3e} \
             (allowed {RECTANGLE_ALLOWANCE:.1e}), max sweep spread {max_spread:.3e} \
             (allowed {SWEEP_ALLOWANCE:.1e})"
        ))
    };
    (
        VerifyReport {
            function: model.label().to_string(),
            domain: job.domain,
            samples: job.samples,
            max_rectangle_residual: Some(max_rectangle),
            rectangle_allowance: RECTANGLE_ALLOWANCE,
            max_sweep_spread: Some(max_spread),
            sweep_allowance: SWEEP_ALLOWANCE,
            status,
        },
        detail,
    )
}

pub fn run_compare(job: &ResolvedSolve, json: bool, quiet: bool) -> CommandOutput {
    let (report, detail) = execute_compare(job);
    let stdout = if json {
        to_json(&report)
    } else {
        report.render_text(quiet)
    };
    CommandOutput {
        stdout,
        stderr: detail.map(|m| format!("invroot: {m}")).unwrap_or_default(),
        exit: report.status.exit_code(),
    }
}

fn execute_compare(job: &ResolvedSolve) -> (CompareReport, Option<String>) {
    let (_, bracket, model) = match build_model(job) {
        Ok(parts) => parts,
        Err(failure) => {
            let skeleton = |method: &str| {
                SolveReport::failed(
                    job.source.describe(),
                    job.domain,
                    job.bracket,
                    method,
                    failure.status,
                )
            };
            return (
                CompareReport {
                    function: job.source.describe(),
                    domain: job.domain,
                    bracket: job.bracket,
                    identity: skeleton("identity"),
                    oracle: skeleton("oracle"),
                    difference: None,
                    allowance: None,
                    status: failure.status,
                },
                Some(failure.message),
            );
        }
    };

    let config = SolverConfig {
        bracket,
        h_policy: job.h.to_policy(),
        tol: job.tol,
        filter_spurious: true,
    };
    let mut details = Vec::new();

    let identity = match solve_identity(&model, &config) {
        Ok(result) => report_from_result(model.label(), job.domain, job.bracket, &result),
        Err(e) => {
            let failure = classify_solve_error(&e);
            details.push(format!("identity method: {}", failure.message));
            SolveReport::failed(
                model.label().to_string(),
                job.domain,
                job.bracket,
                "identity",
                failure.status,
            )
        }
    };

    let oracle = match solve_oracle_bisect(&model, bracket, job.tol) {
        Ok(result) => report_from_result(model.label(), job.domain, job.bracket, &result),
        Err(e) => {
            let failure = classify_solve_error(&e);
            details.push(format!("oracle method: {}", failure.message));
            SolveReport::failed(
                model.label().to_string(),
                job.domain,
                job.bracket,
                "oracle",
                failure.status,
            )
        }
    };

    let (difference, allowance, status) = match (identity.root, oracle.root) {
        (Some(r1), Some(r2)) => {
            let diff = (r1 - r2).abs();
            let allow = COMPARE_ALLOWANCE * (1.0 + r1.abs());
            if diff <= allow {
                (Some(diff), Some(allow), StatusKind::Ok)
            } else {
                details.push(format!(
                    "methods disagree: |{r1} - {r2}| = {diff:.3e} > {allow:.3e}"
                ));
                (Some(diff), Some(allow), StatusKind::Convergence)
            }
        }
        _ => {
            let status = if identity.status != StatusKind::Ok {
                identity.status
            } else {
                oracle.status
            };
            (None, None, status)
        }
    };

    let detail = if details.is_empty() {
        None
    } else {
        Some(details.join("; "))
    };
    (
        CompareReport {
            function: model.label().to_string(),
            domain: job.domain,
            bracket: job.bracket,
            identity,
            oracle,
            difference,
            allowance,
            status,
        },
        detail,
    )
}

pub fn run_batch(path: &str, json: bool, quiet: bool) -> CommandOutput {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            return CommandOutput {
                stdout: String::new(),
                stderr: format!("invroot: cannot read batch file {path}: {e}"),
                exit: StatusKind::Admissibility.exit_code(),
            }
        }
    };

    let mut lines_out = Vec::new();
    let mut details = Vec::new();
    let mut first_failure: Option<i32> = None;
    let mut jobs = 0usize;

    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        jobs += 1;
        let number = idx + 1;

        let (report, detail, format) = match serde_json::from_str::<JobSpec>(line) {
            Err(e) => (
                SolveReport::failed(
                    format!("(malformed job on line {number})"),
                    [0.0, 0.0],
                    [0.0, 0.0],
                    "identity",
                    StatusKind::ParseError,
                ),
                Some(format!("line {number}: {e}")),
                None,
            ),
            Ok(spec) => match spec.resolve() {
                Err(failure) => (
                    SolveReport::failed(
                        format!("(invalid job on line {number})"),
                        [0.0, 0.0],
                        [0.0, 0.0],
                        "identity",
                        failure.status,
                    ),
                    Some(format!("line {number}: {}", failure.message)),
                    None,
                ),
                Ok((resolved, format)) => {
                    let outcome = execute_solve(&resolved);
                    (
                        outcome.report,
                        outcome.detail.map(|m| format!("line {number}: {m}")),
                        format,
                    )
                }
            },
        };

        let as_json = match format {
            Some(JobFormat::Json) => true,
            Some(JobFormat::Text) => false,
            None => json,
        };
        lines_out.push(if as_json {
            to_json(&report)
        } else if quiet {
            match report.root {
                Some(root) => format!("{root:.16e}"),
                None => report.status.as_str().to_string(),
            }
        } else {
            report.render_line()
        });
        if report.status != StatusKind::Ok && first_failure.is_none() {
            first_failure = Some(report.status.exit_code());
        }
        if let Some(d) = detail {
            details.push(format!("invroot: {d}"));
        }
    }

    let mut stderr = details.join("\n");
    if jobs == 0 {
        stderr = "invroot: batch file contains no jobs".to_string();
    }
    CommandOutput {
        stdout: lines_out.join("\n"),
        stderr,
        exit: first_failure.unwrap_or(0),
    }
}

pub fn run_families(json: bool, quiet: bool) -> CommandOutput {
    let reports: Vec<FamilyReport> = list_families()
        .into_iter()
        .map(|info| FamilyReport {
            id: info.id.to_string(),
            summary: info.summary.to_string(),
            parameters: info.parameters.to_string(),
            default_params: info.default_spec.params.clone(),
            default_domain: [
                info.default_spec.domain.lo(),
                info.default_spec.domain.hi(),
            ],
        })
        .collect();

    if json {
        return CommandOutput::failure_free(to_json(&reports));
    }
    if quiet {
        let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
        return CommandOutput::failure_free(ids.join("\n"));
    }

    let mut blocks = Vec::new();
    for r in &reports {
        let params: Vec<String> = r.default_params.iter().map(|p| p.to_string()).collect();
        blocks.push(format!(
            "{}\n  summary:    {}\n  parameters: {}\n  defaults:   params [{}], domain [{}, {}]",
            r.id,
            r.summary,
            r.parameters,
            params.join(", "),
            r.default_domain[0],
            r.default_domain[1],
        ));
    }
    CommandOutput::failure_free(blocks.join("\n\n"))
}
