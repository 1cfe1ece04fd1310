//! Report types, their JSON serialization, and text rendering.
//!
//! The solve report's field names and order are a stable interface:
//! function, domain, bracket, h_used, root, residual_at_root,
//! f_at_root, iterations, spurious_filtered, method, status. Numbers
//! are serialized with 17 significant digits so every double round
//! trips losslessly.

use std::io;

use serde::{Deserialize, Serialize};

/// Outcome class carried in every report. Doubles as the process exit
/// code through `exit_code`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatusKind {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "no-root")]
    NoRoot,
    #[serde(rename = "parse-error")]
    ParseError,
    #[serde(rename = "admissibility-error")]
    Admissibility,
    #[serde(rename = "convergence-error")]
    Convergence,
}

impl StatusKind {
    pub fn exit_code(self) -> i32 {
        match self {
            StatusKind::Ok => 0,
            StatusKind::NoRoot => 2,
            StatusKind::ParseError => 3,
            StatusKind::Admissibility => 4,
            StatusKind::Convergence => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StatusKind::Ok => "ok",
            StatusKind::NoRoot => "no-root",
            StatusKind::ParseError => "parse-error",
            StatusKind::Admissibility => "admissibility-error",
            StatusKind::Convergence => "convergence-error",
        }
    }
}

/// A failure on its way to becoming a report: the class decides the
/// exit code, the message goes to stderr.
#[derive(Debug, Clone)]
pub struct Failure {
    pub status: StatusKind,
    pub message: String,
}

impl Failure {
    pub fn new(status: StatusKind, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub function: String,
    pub domain: [f64; 2],
    pub bracket: [f64; 2],
    pub h_used: Option<f64>,
    pub root: Option<f64>,
    pub residual_at_root: Option<f64>,
    pub f_at_root: Option<f64>,
    pub iterations: u32,
    pub spurious_filtered: bool,
    pub method: String,
    pub status: StatusKind,
}

impl SolveReport {
    /// An all-null skeleton for failures, keeping the schema intact.
    pub fn failed(
        function: String,
        domain: [f64; 2],
        bracket: [f64; 2],
        method: &str,
        status: StatusKind,
    ) -> Self {
        Self {
            function,
            domain,
            bracket,
            h_used: None,
            root: None,
            residual_at_root: None,
            f_at_root: None,
            iterations: 0,
            spurious_filtered: false,
            method: method.to_string(),
            status,
        }
    }

    pub fn render_text(&self, quiet: bool) -> String {
        if quiet {
            return match self.root {
                Some(root) => format!("{root:.16e}"),
                None => String::new(),
            };
        }
        let mut out = String::new();
        out.push_str(&format!("function:  {}\n", self.function));
        out.push_str(&format!("domain:    {}\n", pair(self.domain)));
        out.push_str(&format!("bracket:   {}\n", pair(self.bracket)));
        out.push_str(&format!("method:    {}\n", self.method));
        out.push_str(&format!("h:         {}\n", opt(self.h_used)));
        out.push_str(&format!("root:      {}\n", opt(self.root)));
        out.push_str(&format!("f(root):   {}\n", opt(self.f_at_root)));
        out.push_str(&format!("residual:  {}\n", opt(self.residual_at_root)));
        out.push_str(&format!("iterations: {}\n", self.iterations));
        out.push_str(&format!("spurious_filtered: {}\n", self.spurious_filtered));
        out.push_str(&format!("status:    {}", self.status.as_str()));
        out
    }

    /// One-line summary for batch aggregation.
    pub fn render_line(&self) -> String {
        match self.root {
            Some(root) => format!(
                "{}: root = {root:.16e} (method {}, status {})",
                self.function,
                self.method,
                self.status.as_str()
            ),
            None => format!("{}: status {}", self.function, self.status.as_str()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub function: String,
    pub domain: [f64; 2],
    pub samples: u32,
    /// max over pairs of |rectangle residual| / (1 + |b f(b)| + |a f(a)|)
    pub max_rectangle_residual: Option<f64>,
    pub rectangle_allowance: f64,
    /// max over alphas of (sweep spread) / (1 + max |R|)
    pub max_sweep_spread: Option<f64>,
    pub sweep_allowance: f64,
    pub status: StatusKind,
}

impl VerifyReport {
    pub fn render_text(&self, quiet: bool) -> String {
        if quiet {
            return String::new();
        }
        let mut out = String::new();
        out.push_str(&format!("function:  {}\n", self.function));
        out.push_str(&format!("domain:    {}\n", pair(self.domain)));
        out.push_str(&format!("samples:   {}\n", self.samples));
        out.push_str(&format!(
            "max rectangle residual: {} (allowed {:.1e})\n",
            opt_short(self.max_rectangle_residual),
            self.rectangle_allowance
        ));
        out.push_str(&format!(
            "max offset-sweep spread: {} (allowed {:.1e})\n",
            opt_short(self.max_sweep_spread),
            self.sweep_allowance
        ));
        out.push_str(&format!("status:    {}", self.status.as_str()));
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    pub function: String,
    pub domain: [f64; 2],
    pub bracket: [f64; 2],
    pub identity: SolveReport,
    pub oracle: SolveReport,
    pub difference: Option<f64>,
    pub allowance: Option<f64>,
    pub status: StatusKind,
}

impl CompareReport {
    pub fn render_text(&self, quiet: bool) -> String {
        if quiet {
            return match self.difference {
                Some(d) => format!("{d:.16e}"),
                None => String::new(),
            };
        }
        let mut out = String::new();
        out.push_str(&format!("function:   {}\n", self.function));
        out.push_str(&format!("domain:     {}\n", pair(self.domain)));
        out.push_str(&format!("bracket:    {}\n", pair(self.bracket)));
        out.push_str(&format!(
            "identity:   root = {} (status {})\n",
            opt(self.identity.root),
            self.identity.status.as_str()
        ));
        out.push_str(&format!(
            "oracle:     root = {} (status {})\n",
            opt(self.oracle.root),
            self.oracle.status.as_str()
        ));
        out.push_str(&format!(
            "difference: {} (allowed {})\n",
            opt_short(self.difference),
            opt_short(self.allowance)
        ));
        out.push_str(&format!("status:     {}", self.status.as_str()));
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyReport {
    pub id: String,
    pub summary: String,
    pub parameters: String,
    pub default_params: Vec<f64>,
    pub default_domain: [f64; 2],
}

fn pair(v: [f64; 2]) -> String {
    format!("[{:.16e}, {:.16e}]", v[0], v[1])
}

fn opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.16e}"),
        None => "-".to_string(),
    }
}

fn opt_short(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.3e}"),
        None => "-".to_string(),
    }
}

/// JSON with every float written as `{:.16e}`: 17 significant digits,
/// enough to reconstruct the exact double.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits17);
    value
        .serialize(&mut ser)
        .expect("report serialization is infallible");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

struct SignificantDigits17;

impl serde_json::ser::Formatter for SignificantDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> SolveReport {
        SolveReport {
            function: "ln(x)".into(),
            domain: [0.1, 10.0],
            bracket: [0.2, 5.0],
            h_used: Some(1.2),
            root: Some(0.999_999_999_999_999_9),
            residual_at_root: Some(-3.1e-17),
            f_at_root: Some(1.1e-16),
            iterations: 23,
            spurious_filtered: false,
            method: "identity".into(),
            status: StatusKind::Ok,
        }
    }

    #[test]
    fn json_round_trips_every_double_exactly() {
        let report = sample_report();
        let text = to_json(&report);
        let back: SolveReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.root, report.root);
        assert_eq!(back.h_used, report.h_used);
        assert_eq!(back.residual_at_root, report.residual_at_root);
        assert_eq!(back.status, report.status);
    }

    #[test]
    fn json_field_names_are_the_published_schema() {
        let text = to_json(&sample_report());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let obj = value.as_object().unwrap();
        let schema = [
            "function",
            "domain",
            "bracket",
            "h_used",
            "root",
            "residual_at_root",
            "f_at_root",
            "iterations",
            "spurious_filtered",
            "method",
            "status",
        ];
        assert_eq!(obj.len(), schema.len());
        let mut cursor = 0;
        for key in schema {
            assert!(obj.contains_key(key), "missing key {key}");
            let at = text[cursor..]
                .find(&format!("\"{key}\""))
                .unwrap_or_else(|| panic!("{key} out of order in {text}"));
            cursor += at + key.len();
        }
    }

    #[test]
    fn floats_carry_seventeen_significant_digits() {
        let text = to_json(&sample_report());
        assert!(
            text.contains("9.9999999999999989e-1"),
            "root not fully expanded: {text}"
        );
    }

    #[test]
    fn status_strings_are_stable() {
        assert_eq!(StatusKind::Ok.as_str(), "ok");
        assert_eq!(StatusKind::NoRoot.as_str(), "no-root");
        assert_eq!(StatusKind::ParseError.as_str(), "parse-error");
        assert_eq!(StatusKind::Admissibility.as_str(), "admissibility-error");
        assert_eq!(StatusKind::Convergence.as_str(), "convergence-error");
        for kind in [
            StatusKind::Ok,
            StatusKind::NoRoot,
            StatusKind::ParseError,
            StatusKind::Admissibility,
            StatusKind::Convergence,
        ] {
            let json = to_json(&kind);
            assert_eq!(json, format!("\"{}\"", kind.as_str()));
            let back: StatusKind = serde_json::from_str(&json).unwrap();
            assert_eq!(back, kind);
        }
    }

    #[test]
    fn exit_codes_are_pinned() {
        assert_eq!(StatusKind::Ok.exit_code(), 0);
        assert_eq!(StatusKind::NoRoot.exit_code(), 2);
        assert_eq!(StatusKind::ParseError.exit_code(), 3);
        assert_eq!(StatusKind::Admissibility.exit_code(), 4);
        assert_eq!(StatusKind::Convergence.exit_code(), 5);
    }

    #[test]
    fn quiet_text_is_the_bare_root()  {
        let report = sample_report();
        assert_eq!(report.render_text(true), "9.9999999999999989e-1");
        let mut failed = report;
        failed.root = None;
        assert_eq!(failed.render_text(true), "");
    }
}
