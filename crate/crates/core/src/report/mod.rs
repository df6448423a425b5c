//! Verification reports shared by the CLI subcommands.
//!
//! A report is a flat list of [`ReportRecord`]s; it passes iff every record
//! passes. Serialization is deterministic: fields keep declaration order,
//! maps are sorted, and every number is written in full precision next to a
//! 12-significant-digit display string.

mod commands;
mod config;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use commands::{
    cmd_classical, cmd_spectrum, cmd_table1, cmd_verify, cmd_verify_with, trajectory_csv, ClassicalOutput,
    TRAJECTORY_HEADER,
};
pub use config::{ClassicalRun, OutputFormat, RunConfig, Tolerances};

/// Which independent computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Quadrature,
    Fock,
    ClassicalClosedForm,
    ClassicalRk4,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Quadrature => "quadrature",
            Route::Fock => "fock",
            Route::ClassicalClosedForm => "classical-closed-form",
            Route::ClassicalRk4 => "classical-rk4",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteValue {
    pub route: Route,
    pub value: Option<f64>,
    pub display: String,
}

impl RouteValue {
    pub fn new(route: Route, value: f64) -> Self {
        Self {
            route,
            value: Some(value),
            display: display(value),
        }
    }

    pub fn missing(route: Route) -> Self {
        Self {
            route,
            value: None,
            display: "n/a".into(),
        }
    }
}

/// Expected value and where it comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: f64,
    pub display: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub check: String,
    pub inputs: BTreeMap<String, f64>,
    pub expected: Expected,
    pub computed: Vec<RouteValue>,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportRecord {
    /// Record whose residual is the worst `|computed - expected|` over routes;
    /// a missing route value fails the record.
    pub fn compare(
        check: impl Into<String>,
        inputs: &[(&str, f64)],
        expected: f64,
        provenance: &str,
        computed: Vec<RouteValue>,
        tolerance: f64,
    ) -> Self {
        let residual = computed
            .iter()
            .map(|rv| rv.value.map(|v| (v - expected).abs()))
            .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)));
        Self::with_residual(check, inputs, expected, provenance, computed, residual, tolerance)
    }

    pub fn with_residual(
        check: impl Into<String>,
        inputs: &[(&str, f64)],
        expected: f64,
        provenance: &str,
        computed: Vec<RouteValue>,
        residual: Option<f64>,
        tolerance: f64,
    ) -> Self {
        let pass = matches!(residual, Some(r) if r <= tolerance);
        Self {
            check: check.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            expected: Expected {
                value: expected,
                display: display(expected),
                provenance: provenance.into(),
            },
            computed,
            residual,
            tolerance,
            pass,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, f64>,
    pub records: Vec<ReportRecord>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
    pub summary: Summary,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, parameters: BTreeMap<String, f64>, records: Vec<ReportRecord>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let total = records.len();
        Self {
            command: command.into(),
            parameters,
            records,
            extras: BTreeMap::new(),
            summary: Summary {
                total,
                passed,
                failed: total - passed,
            },
            pass: passed == total,
        }
    }

    /// Process exit status: 0 iff every record passes.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per record:
    /// `check,inputs,expected,provenance,<route values>,residual,tolerance,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,inputs,expected,provenance,computed,residual,tolerance,pass\n");
        for r in &self.records {
            let inputs = r
                .inputs
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            let computed = r
                .computed
                .iter()
                .map(|c| {
                    format!(
                        "{}={}",
                        c.route.as_str(),
                        c.value.map_or("n/a".to_string(), |v| v.to_string())
                    )
                })
                .collect::<Vec<_>>()
                .join(";");
            let residual = r.residual.map_or("n/a".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                csv_field(&r.check),
                csv_field(&inputs),
                r.expected.value,
                csv_field(&r.expected.provenance),
                csv_field(&computed),
                residual,
                r.tolerance,
                r.pass
            );
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Rounded display form with 12 significant digits.
pub fn display(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        v.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_has_twelve_significant_digits() {
        assert_eq!(display(2.5), "2.50000000000e0");
        assert_eq!(display(-1.0 / 3.0), "-3.33333333333e-1");
    }

    #[test]
    fn compare_takes_worst_route() {
        let r = ReportRecord::compare(
            "x",
            &[("n", 1.0)],
            1.0,
            "unit",
            vec![
                RouteValue::new(Route::Quadrature, 1.0 + 1e-9),
                RouteValue::new(Route::Fock, 1.0 - 3e-9),
            ],
            1e-8,
        );
        assert!(r.pass);
        assert!((r.residual.unwrap() - 3e-9).abs() < 1e-15);
        let r = ReportRecord::compare("x", &[], 1.0, "unit", vec![RouteValue::missing(Route::Fock)], 1.0);
        assert!(!r.pass);
        assert_eq!(r.residual, None);
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("ab"), "ab");
    }
}
