//! Analytic function families with exact f, f′, f⁻¹, F, and G, used as
//! ground truth for every synthesized capability and as ready-made CLI
//! functions. The five families cover increasing and decreasing
//! directions, positive and negative slopes, roots away from and near
//! zero, and a fractional-power inverse.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{FunctionModel, ModelError};
use crate::numerics::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// f(x) = ln x on a positive domain; root at 1.
    Log,
    /// f(x) = m·x + b with m ≠ 0; root at −b/m.
    Affine,
    /// f(x) = eˣ − c with c > 0; root at ln c.
    ExpShift,
    /// f(x) = x³ − c; root at c^(1/3).
    CubeShift,
    /// f(x) = 1/x − c with c > 0 on a positive domain; decreasing,
    /// root at 1/c.
    Reciprocal,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [
        FamilyId::Log,
        FamilyId::Affine,
        FamilyId::ExpShift,
        FamilyId::CubeShift,
        FamilyId::Reciprocal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::Log => "log",
            FamilyId::Affine => "affine",
            FamilyId::ExpShift => "exp-shift",
            FamilyId::CubeShift => "cube-shift",
            FamilyId::Reciprocal => "reciprocal",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| CatalogError::UnknownFamily {
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, Error)]
pub enum CatalogError {
    #[error("unknown family '{name}' (expected one of: log, affine, exp-shift, cube-shift, reciprocal)")]
    UnknownFamily { name: String },

    #[error("family {family} expects {expected} parameter(s), got {got}")]
    WrongParameterCount {
        family: FamilyId,
        expected: usize,
        got: usize,
    },

    #[error("family {family} is inadmissible here: {why}")]
    Inadmissible { family: FamilyId, why: &'static str },

    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A family instantiation request: which family, its parameters, and
/// the domain interval.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: FamilyId,
    pub params: Vec<f64>,
    pub domain: Interval,
}

impl FamilySpec {
    pub fn new(family: FamilyId, params: Vec<f64>, domain: Interval) -> Self {
        Self {
            family,
            params,
            domain,
        }
    }

    /// The root of f in closed form. Callers are responsible for
    /// choosing domains and brackets that contain it.
    pub fn known_root(&self) -> Result<f64, CatalogError> {
        let p = checked_params(self.family, &self.params)?;
        Ok(match self.family {
            FamilyId::Log => 1.0,
            FamilyId::Affine => -p[1] / p[0],
            FamilyId::ExpShift => p[0].ln(),
            FamilyId::CubeShift => p[0].cbrt(),
            FamilyId::Reciprocal => 1.0 / p[0],
        })
    }
}

fn expected_param_count(family: FamilyId) -> usize {
    match family {
        FamilyId::Log => 0,
        FamilyId::Affine => 2,
        FamilyId::ExpShift | FamilyId::CubeShift | FamilyId::Reciprocal => 1,
    }
}

fn checked_params(family: FamilyId, params: &[f64]) -> Result<Vec<f64>, CatalogError> {
    let expected = expected_param_count(family);
    if params.len() != expected {
        return Err(CatalogError::WrongParameterCount {
            family,
            expected,
            got: params.len(),
        });
    }
    if params.iter().any(|p| !p.is_finite()) {
        return Err(CatalogError::Inadmissible {
            family,
            why: "parameters must be finite",
        });
    }
    match family {
        FamilyId::Affine if params[0] == 0.0 => Err(CatalogError::Inadmissible {
            family,
            why: "slope m must be nonzero",
        }),
        FamilyId::ExpShift if params[0] <= 0.0 => Err(CatalogError::Inadmissible {
            family,
            why: "offset c must be positive",
        }),
        FamilyId::Reciprocal if params[0] <= 0.0 => Err(CatalogError::Inadmissible {
            family,
            why: "offset c must be positive",
        }),
        _ => Ok(params.to_vec()),
    }
}

/// Builds the fully analytic model for a family spec.
pub fn instantiate(spec: &FamilySpec) -> Result<FunctionModel, CatalogError> {
    let family = spec.family;
    let p = checked_params(family, &spec.params)?;
    let domain = spec.domain;
    let needs_positive_domain = matches!(family, FamilyId::Log | FamilyId::Reciprocal);
    if needs_positive_domain && domain.lo() <= 0.0 {
        return Err(CatalogError::Inadmissible {
            family,
            why: "domain must lie inside (0, +inf)",
        });
    }

    let model = match family {
        FamilyId::Log => FunctionModel::builder("log", domain, |x: f64| x.ln())
            .derivative(|x| 1.0 / x)
            .inverse(|y: f64| y.exp())
            .antiderivative(|x: f64| x * x.ln() - x)
            .inverse_antiderivative(|y: f64| y.exp())
            .build()?,
        FamilyId::Affine => {
            let (m, b) = (p[0], p[1]);
            FunctionModel::builder(format!("affine(m={m}, b={b})"), domain, move |x| m * x + b)
                .derivative(move |_| m)
                .inverse(move |y| (y - b) / m)
                .antiderivative(move |x| 0.5 * m * x * x + b * x)
                .inverse_antiderivative(move |y| y * y / (2.0 * m) - b * y / m)
                .build()?
        }
        FamilyId::ExpShift => {
            let c = p[0];
            FunctionModel::builder(format!("exp-shift(c={c})"), domain, move |x: f64| {
                x.exp() - c
            })
            .derivative(|x: f64| x.exp())
            .inverse(move |y: f64| (y + c).ln())
            .antiderivative(move |x: f64| x.exp() - c * x)
            .inverse_antiderivative(move |y: f64| {
                let t = y + c;
                t * t.ln() - t
            })
            .build()?
        }
        FamilyId::CubeShift => {
            let c = p[0];
            FunctionModel::builder(format!("cube-shift(c={c})"), domain, move |x| {
                x * x * x - c
            })
            .derivative(|x| 3.0 * x * x)
            .inverse(move |y: f64| (y + c).cbrt())
            .antiderivative(move |x| 0.25 * x * x * x * x - c * x)
            .inverse_antiderivative(move |y: f64| {
                let t = y + c;
                0.75 * t * t.cbrt()
            })
            .build()?
        }
        FamilyId::Reciprocal => {
            let c = p[0];
            FunctionModel::builder(format!("reciprocal(c={c})"), domain, move |x| 1.0 / x - c)
                .derivative(|x| -1.0 / (x * x))
                .inverse(move |y| 1.0 / (y + c))
                .antiderivative(move |x: f64| x.ln() - c * x)
                .inverse_antiderivative(move |y: f64| (y + c).ln())
                .build()?
        }
    };
    Ok(model)
}

/// A family template: identity, parameter documentation, and a default
/// spec whose domain and bracket exercise the family's root.
#[derive(Debug, Clone)]
pub struct FamilyInfo {
    pub id: FamilyId,
    pub summary: &'static str,
    pub parameters: &'static str,
    pub default_spec: FamilySpec,
}

/// The five families in stable order.
pub fn list_families() -> Vec<FamilyInfo> {
    let iv = |lo, hi| Interval::new(lo, hi).expect("static interval");
    vec![
        FamilyInfo {
            id: FamilyId::Log,
            summary: "f(x) = ln x, increasing on (0, +inf); root alpha = 1",
            parameters: "none",
            default_spec: FamilySpec::new(FamilyId::Log, vec![], iv(0.1, 10.0)),
        },
        FamilyInfo {
            id: FamilyId::Affine,
            summary: "f(x) = m*x + b, slope of either sign; root alpha = -b/m",
            parameters: "m (nonzero slope), b (intercept)",
            default_spec: FamilySpec::new(FamilyId::Affine, vec![2.0, -4.0], iv(-5.0, 5.0)),
        },
        FamilyInfo {
            id: FamilyId::ExpShift,
            summary: "f(x) = exp(x) - c, increasing; root alpha = ln c",
            parameters: "c (positive offset)",
            default_spec: FamilySpec::new(FamilyId::ExpShift, vec![2.0], iv(-1.0, 3.0)),
        },
        FamilyInfo {
            id: FamilyId::CubeShift,
            summary: "f(x) = x^3 - c, increasing with a cube-root inverse; root alpha = c^(1/3)",
            parameters: "c (shift)",
            default_spec: FamilySpec::new(FamilyId::CubeShift, vec![8.0], iv(0.25, 3.5)),
        },
        FamilyInfo {
            id: FamilyId::Reciprocal,
            summary: "f(x) = 1/x - c, decreasing on (0, +inf); root alpha = 1/c",
            parameters: "c (positive offset)",
            default_spec: FamilySpec::new(FamilyId::Reciprocal, vec![1.0], iv(0.1, 5.0)),
        },
    ]
}
