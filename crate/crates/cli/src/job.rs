//! Job resolution: turning CLI flags or batch JSON lines into a model
//! plus solver settings, with every failure mapped to an exit class.

use serde::Deserialize;

use invroot_core::catalog::{instantiate, list_families, CatalogError, FamilyId, FamilySpec};
use invroot_core::expr::{model_from_source, ExprError, ExprModelError};
use invroot_core::model::FunctionModel;
use invroot_core::numerics::{Interval, NumericsError, Tolerance};
use invroot_core::solver::{HPolicy, SolveError};

use crate::report::{Failure, StatusKind};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const TOL_ENV_VAR: &str = "INVROOT_DEFAULT_TOL";

/// Where the function comes from. Exactly one source per job.
#[derive(Debug, Clone)]
pub enum FunctionSource {
    Expression(String),
    Family { id: String, params: Vec<f64> },
}

impl FunctionSource {
    /// Validates the exactly-one-source rule from loose optionals.
    pub fn from_options(
        function: Option<String>,
        family: Option<String>,
        params: Vec<f64>,
    ) -> Result<Self, Failure> {
        match (function, family) {
            (Some(expr), None) => {
                if !params.is_empty() {
                    return Err(Failure::new(
                        StatusKind::ParseError,
                        "--params only applies to --family",
                    ));
                }
                Ok(FunctionSource::Expression(expr))
            }
            (None, Some(id)) => Ok(FunctionSource::Family { id, params }),
            (Some(_), Some(_)) => Err(Failure::new(
                StatusKind::ParseError,
                "exactly one of --function or --family is required, not both",
            )),
            (None, None) => Err(Failure::new(
                StatusKind::ParseError,
                "exactly one of --function or --family is required",
            )),
        }
    }

    /// Label for reports when the model could not be built.
    pub fn describe(&self) -> String {
        match self {
            FunctionSource::Expression(text) => text.clone(),
            FunctionSource::Family { id, params } => {
                if params.is_empty() {
                    id.clone()
                } else {
                    let rendered: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                    format!("{}({})", id, rendered.join(", "))
                }
            }
        }
    }

    pub fn build(&self, domain: Interval) -> Result<FunctionModel, Failure> {
        match self {
            FunctionSource::Expression(text) => {
                model_from_source(text, domain).map_err(classify_expr_model_error)
            }
            FunctionSource::Family { id, params } => {
                let family: FamilyId = id
                    .parse()
                    .map_err(|e: CatalogError| classify_catalog_error(&e))?;
                let params = if params.is_empty() {
                    default_params(family)
                } else {
                    params.clone()
                };
                let spec = FamilySpec::new(family, params, domain);
                instantiate(&spec).map_err(|e| classify_catalog_error(&e))
            }
        }
    }
}

/// Catalog defaults fill in when a family is named without --params.
fn default_params(family: FamilyId) -> Vec<f64> {
    list_families()
        .into_iter()
        .find(|info| info.id == family)
        .map(|info| info.default_spec.params)
        .unwrap_or_default()
}

/// Offset policy as it appears on the command line and in batch jobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HChoice {
    Auto,
    Fixed(f64),
}

impl HChoice {
    pub fn to_policy(self) -> HPolicy {
        match self {
            HChoice::Auto => HPolicy::Auto,
            HChoice::Fixed(v) => HPolicy::Fixed(v),
        }
    }
}

/// clap value parser for `--h`.
pub fn parse_h(raw: &str) -> Result<HChoice, String> {
    if raw.eq_ignore_ascii_case("auto") {
        return Ok(HChoice::Auto);
    }
    raw.parse::<f64>()
        .map(HChoice::Fixed)
        .map_err(|_| format!("expected a real number or \"auto\", got {raw:?}"))
}

/// Tolerance precedence: explicit value, then the environment default,
/// then the built-in default. The chosen scalar sets both the absolute
/// and relative tolerance.
pub fn resolve_tolerance(explicit: Option<f64>) -> Result<Tolerance, Failure> {
    let scalar = match explicit {
        Some(v) => v,
        None => match std::env::var(TOL_ENV_VAR) {
            Ok(raw) => raw.trim().parse::<f64>().map_err(|_| {
                Failure::new(
                    StatusKind::ParseError,
                    format!("{TOL_ENV_VAR} must be a real number, got {raw:?}"),
                )
            })?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(scalar.is_finite() && scalar > 0.0) {
        return Err(Failure::new(
            StatusKind::ParseError,
            format!("tolerance must be a positive finite real, got {scalar}"),
        ));
    }
    Tolerance::new(scalar, scalar, 200).map_err(|e| {
        Failure::new(StatusKind::ParseError, format!("invalid tolerance: {e}"))
    })
}

pub fn make_interval(pairs: [f64; 2], what: &str) -> Result<Interval, Failure> {
    Interval::new(pairs[0], pairs[1]).map_err(|e| {
        Failure::new(
            StatusKind::Admissibility,
            format!("invalid {what}: {e}"),
        )
    })
}

/// A solve-shaped job with everything resolved except the model.
#[derive(Debug, Clone)]
pub struct ResolvedSolve {
    pub source: FunctionSource,
    pub domain: [f64; 2],
    pub bracket: [f64; 2],
    pub h: HChoice,
    pub tol: Tolerance,
}

/// One line of a batch file. `h` accepts a number or the string
/// "auto"; `format` optionally overrides the batch-level output mode
/// for this job's line.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default)]
    pub function: Option<String>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub params: Option<Vec<f64>>,
    pub domain: [f64; 2],
    pub bracket: [f64; 2],
    #[serde(default)]
    pub h: Option<HField>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub format: Option<JobFormat>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum HField {
    Keyword(String),
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobFormat {
    Text,
    Json,
}

impl JobSpec {
    pub fn resolve(self) -> Result<(ResolvedSolve, Option<JobFormat>), Failure> {
        let source = FunctionSource::from_options(
            self.function,
            self.family,
            self.params.unwrap_or_default(),
        )?;
        let h = match self.h {
            None => HChoice::Auto,
            Some(HField::Value(v)) => HChoice::Fixed(v),
            Some(HField::Keyword(word)) => {
                parse_h(&word).map_err(|msg| Failure::new(StatusKind::ParseError, msg))?
            }
        };
        let tol = resolve_tolerance(self.tol)?;
        Ok((
            ResolvedSolve {
                source,
                domain: self.domain,
                bracket: self.bracket,
                h,
                tol,
            },
            self.format,
        ))
    }
}

/// Expression-language failures split into user-input parse errors
/// (exit 3) and domain admissibility errors (exit 4): an expression
/// that parses but cannot be evaluated or is not monotone on the
/// requested domain is a property of the domain, not the text.
pub fn classify_expr_model_error(e: ExprModelError) -> Failure {
    let status = match &e {
        ExprModelError::Eval(ExprError::EvalDomain { .. }) => StatusKind::Admissibility,
        ExprModelError::Eval(_) => StatusKind::ParseError,
        ExprModelError::NotMonotone { .. } => StatusKind::Admissibility,
        ExprModelError::Model(_) => StatusKind::Admissibility,
    };
    Failure::new(status, e.to_string())
}

pub fn classify_catalog_error(e: &CatalogError) -> Failure {
    Failure::new(StatusKind::Admissibility, e.to_string())
}

pub fn classify_solve_error(e: &SolveError) -> Failure {
    let status = match e {
        SolveError::NoSignChange { .. } | SolveError::NoRootInBracket => StatusKind::NoRoot,
        SolveError::InvalidModel { .. }
        | SolveError::BracketOutsideDomain { .. }
        | SolveError::InvalidOffset { .. } => StatusKind::Admissibility,
        SolveError::Convergence { .. } | SolveError::Identity(_) => StatusKind::Convergence,
        SolveError::Numerics(inner) => classify_numerics(inner),
    };
    Failure::new(status, e.to_string())
}

fn classify_numerics(e: &NumericsError) -> StatusKind {
    match e {
        NumericsError::InvalidInterval { .. }
        | NumericsError::InvalidTolerance
        | NumericsError::TooFewSamples { .. }
        | NumericsError::InvalidScale { .. } => StatusKind::Admissibility,
        _ => StatusKind::Convergence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_lines_parse_with_either_source() {
        let line = r#"{"function": "ln(x)", "domain": [0.1, 10], "bracket": [0.2, 5]}"#;
        let job: JobSpec = serde_json::from_str(line).unwrap();
        let (resolved, format) = job.resolve().unwrap();
        assert!(matches!(resolved.source, FunctionSource::Expression(_)));
        assert_eq!(resolved.h, HChoice::Auto);
        assert!(format.is_none());

        let line = r#"{"family": "affine", "params": [2, -4], "domain": [-5, 5], "bracket": [-1, 3], "h": 0.5, "format": "json"}"#;
        let job: JobSpec = serde_json::from_str(line).unwrap();
        let (resolved, format) = job.resolve().unwrap();
        assert!(matches!(resolved.source, FunctionSource::Family { .. }));
        assert_eq!(resolved.h, HChoice::Fixed(0.5));
        assert_eq!(format, Some(JobFormat::Json));
    }

    #[test]
    fn h_field_accepts_the_auto_keyword() {
        let line = r#"{"function": "ln(x)", "domain": [0.1, 10], "bracket": [0.2, 5], "h": "auto"}"#;
        let job: JobSpec = serde_json::from_str(line).unwrap();
        let (resolved, _) = job.resolve().unwrap();
        assert_eq!(resolved.h, HChoice::Auto);

        let line = r#"{"function": "ln(x)", "domain": [0.1, 10], "bracket": [0.2, 5], "h": "soon"}"#;
        let job: JobSpec = serde_json::from_str(line).unwrap();
        let failure = job.resolve().unwrap_err();
        assert_eq!(failure.status, StatusKind::ParseError);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let line = r#"{"function": "ln(x)", "domain": [0.1, 10], "bracket": [0.2, 5], "extra": 1}"#;
        assert!(serde_json::from_str::<JobSpec>(line).is_err());
    }

    #[test]
    fn both_sources_rejected() {
        let line = r#"{"function": "ln(x)", "family": "log", "domain": [0.1, 10], "bracket": [0.2, 5]}"#;
        let job: JobSpec = serde_json::from_str(line).unwrap();
        let failure = job.resolve().unwrap_err();
        assert_eq!(failure.status, StatusKind::ParseError);
    }

    #[test]
    fn h_parser_accepts_reals_and_auto() {
        assert_eq!(parse_h("auto").unwrap(), HChoice::Auto);
        assert_eq!(parse_h("AUTO").unwrap(), HChoice::Auto);
        assert_eq!(parse_h("-0.25").unwrap(), HChoice::Fixed(-0.25));
        assert!(parse_h("later").is_err());
    }

    #[test]
    fn source_descriptions_are_readable() {
        let expr = FunctionSource::Expression("ln(x)".into());
        assert_eq!(expr.describe(), "ln(x)");
        let family = FunctionSource::Family {
            id: "affine".into(),
            params: vec![2.0, -4.0],
        };
        assert_eq!(family.describe(), "affine(2, -4)");
    }

    #[test]
    fn tolerance_resolution_validates_the_scalar() {
        let failure = resolve_tolerance(Some(-1.0)).unwrap_err();
        assert_eq!(failure.status, StatusKind::ParseError);
        let failure = resolve_tolerance(Some(f64::NAN)).unwrap_err();
        assert_eq!(failure.status, StatusKind::ParseError);
        let tol = resolve_tolerance(Some(1e-10)).unwrap();
        assert_eq!(tol.abs_tol(), 1e-10);
        assert_eq!(tol.rel_tol(), 1e-10);
    }
}
