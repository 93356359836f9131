//! Worked examples bundled as JSON: a document plus expected values.

use std::fmt::Write as _;

use grassmann_core::angles::vector_angle;
use grassmann_core::scalar::Scalar;
use grassmann_core::{Complex64, Field};
use serde::{Deserialize, Serialize};

use crate::commands::{angle_typed, AngleRequest, MethodArg};
use crate::document::InputDocument;
use crate::error::{CliError, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

const BUNDLED: [(&str, &str); 8] = [
    ("3.2", include_str!("../data/examples/3.2.json")),
    ("3.5", include_str!("../data/examples/3.5.json")),
    ("3.8", include_str!("../data/examples/3.8.json")),
    ("3.9", include_str!("../data/examples/3.9.json")),
    ("4.2", include_str!("../data/examples/4.2.json")),
    ("4.6", include_str!("../data/examples/4.6.json")),
    ("4.8", include_str!("../data/examples/4.8.json")),
    ("4.9", include_str!("../data/examples/4.9.json")),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Expected {
    Degrees(f64),
    Cos(f64),
    CosSquared(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Check {
    Angle {
        label: String,
        v: String,
        w: String,
        #[serde(default)]
        method: MethodArg,
        #[serde(default)]
        complementary: bool,
        expected: Expected,
    },
    Principal {
        label: String,
        v: String,
        w: String,
        expected_degrees: Vec<f64>,
    },
    /// Hermitian angle between the first vectors of two bases.
    Hermitian {
        label: String,
        v: String,
        w: String,
        expected: Expected,
    },
    CosSquaredSum {
        label: String,
        pairs: Vec<[String; 2]>,
        expected: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example {
    pub id: String,
    pub title: String,
    pub document: InputDocument,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub label: String,
    /// `degrees`, `cos`, `cos_squared` or `sum`.
    pub unit: String,
    pub expected: Vec<f64>,
    pub computed: Vec<f64>,
    /// Largest deviation, in radians for angles.
    pub error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleOutcome {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

pub fn bundled() -> Result<Vec<Example>> {
    BUNDLED
        .iter()
        .map(|(id, text)| {
            let ex: Example = serde_json::from_str(text)
                .map_err(|e| CliError::Input(format!("bundled example {id}: {e}")))?;
            ex.document.validate()?;
            Ok(ex)
        })
        .collect()
}

pub fn ids() -> Vec<&'static str> {
    BUNDLED.iter().map(|(id, _)| *id).collect()
}

/// Runs the selected examples (all of them when `only` is empty).
pub fn run(only: &[String], tolerance: f64) -> Result<Vec<ExampleOutcome>> {
    if let Some(bad) = only.iter().find(|id| !ids().contains(&id.as_str())) {
        return Err(CliError::Input(format!(
            "unknown example {bad:?}; available: {}",
            ids().join(", ")
        )));
    }
    bundled()?
        .into_iter()
        .filter(|ex| only.is_empty() || only.contains(&ex.id))
        .map(|ex| run_example(&ex, tolerance))
        .collect()
}

pub fn run_example(ex: &Example, tolerance: f64) -> Result<ExampleOutcome> {
    let checks = ex
        .checks
        .iter()
        .map(|c| match ex.document.field {
            Field::Real => evaluate::<f64>(&ex.document, c, tolerance),
            Field::Complex => evaluate::<Complex64>(&ex.document, c, tolerance),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExampleOutcome {
        id: ex.id.clone(),
        title: ex.title.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn outcome(
    label: &str,
    unit: &str,
    expected: Vec<f64>,
    computed: Vec<f64>,
    error: f64,
    tol: f64,
) -> CheckOutcome {
    CheckOutcome {
        label: label.to_string(),
        unit: unit.to_string(),
        expected,
        computed,
        error,
        passed: error.is_finite() && error <= tol,
    }
}

fn compare(label: &str, expected: Expected, value: f64, cos: f64, tol: f64) -> CheckOutcome {
    match expected {
        Expected::Degrees(d) => outcome(
            label,
            "degrees",
            vec![d],
            vec![value.to_degrees()],
            (value - d.to_radians()).abs(),
            tol,
        ),
        Expected::Cos(c) => outcome(label, "cos", vec![c], vec![cos], (cos - c).abs(), tol),
        Expected::CosSquared(c) => outcome(
            label,
            "cos_squared",
            vec![c],
            vec![cos * cos],
            (cos * cos - c).abs(),
            tol,
        ),
    }
}

fn evaluate<T: Scalar>(doc: &InputDocument, check: &Check, tol: f64) -> Result<CheckOutcome> {
    let request = |v: &str, w: &str, method: MethodArg, complementary: bool| AngleRequest {
        v: v.to_string(),
        w: w.to_string(),
        method,
        complementary,
        ..AngleRequest::default()
    };
    match check {
        Check::Angle {
            label,
            v,
            w,
            method,
            complementary,
            expected,
        } => {
            let out = angle_typed::<T>(doc, &request(v, w, *method, *complementary))?;
            Ok(compare(label, *expected, out.value_radians, out.cos, tol))
        }
        Check::Principal {
            label,
            v,
            w,
            expected_degrees,
        } => {
            let p = crate::commands::principal(doc, v, w, Some(T::FIELD), true)?;
            let error = if p.angles_radians.len() == expected_degrees.len() {
                p.angles_radians
                    .iter()
                    .zip(expected_degrees)
                    .map(|(a, e)| (a - e.to_radians()).abs())
                    .fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            let computed = p.angles_degrees.unwrap_or_default();
            Ok(outcome(
                label,
                "degrees",
                expected_degrees.clone(),
                computed,
                error,
                tol,
            ))
        }
        Check::Hermitian {
            label,
            v,
            w,
            expected,
        } => {
            let t = doc.tolerance(None)?;
            let (bv, bw) = (doc.basis::<T>(v, &t)?, doc.basis::<T>(w, &t)?);
            let (x, y) = match (bv.first(), bw.first()) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(CliError::Input(format!("{label}: empty basis"))),
            };
            let a = vector_angle(x, y)?.hermitian.ok_or_else(|| {
                CliError::Input(format!("{label}: Hermitian angle needs a complex document"))
            })?;
            Ok(compare(label, *expected, a, a.cos(), tol))
        }
        Check::CosSquaredSum {
            label,
            pairs,
            expected,
        } => {
            let mut sum = 0.0;
            for [v, w] in pairs {
                sum += angle_typed::<T>(doc, &request(v, w, MethodArg::Projection, false))?
                    .cos_squared;
            }
            Ok(outcome(
                label,
                "sum",
                vec![*expected],
                vec![sum],
                (sum - expected).abs(),
                tol,
            ))
        }
    }
}

pub fn render(outcomes: &[ExampleOutcome]) -> String {
    let mut s = String::new();
    for ex in outcomes {
        let _ = writeln!(s, "Example {}: {}", ex.id, ex.title);
        for c in &ex.checks {
            let _ = writeln!(
                s,
                "  {:<52} expected {:<34} computed {:<34} {}",
                c.label,
                list(&c.expected, &c.unit),
                list(&c.computed, &c.unit),
                if c.passed { "ok" } else { "MISMATCH" }
            );
        }
    }
    let failed = outcomes.iter().filter(|e| !e.passed).count();
    let _ = writeln!(
        s,
        "{} examples, {} matching, {failed} mismatched",
        outcomes.len(),
        outcomes.len() - failed
    );
    s
}

fn list(values: &[f64], unit: &str) -> String {
    let body: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    let body = if values.len() == 1 {
        body[0].clone()
    } else {
        format!("[{}]", body.join(", "))
    };
    match unit {
        "degrees" => format!("{body}°"),
        "cos" | "cos_squared" => format!("{unit} {body}"),
        _ => body,
    }
}
