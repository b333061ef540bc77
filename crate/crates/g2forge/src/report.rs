//! Machine-readable command reports.

use g2forge_core::exterior::KForm;
use g2forge_core::linalg::Matrix;
use g2forge_core::{Rational, Scalar, Vector};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn new(checks: Vec<Check>) -> Self {
        Self { passed: checks.iter().all(|c| c.passed), checks }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    /// SHA-256 of the canonical JSON of the resolved inputs.
    pub inputs_hash: String,
    pub backend: String,
    pub results: Value,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: Vec<String>, inputs: &Value, backend: &str, results: Value, checks: Vec<Check>) -> Self {
        Self {
            command,
            inputs_hash: inputs_hash(inputs),
            backend: backend.to_string(),
            results,
            summary: Summary::new(checks),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn inputs_hash(inputs: &Value) -> String {
    let canonical = serde_json::to_string(inputs).expect("inputs serialize");
    Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Scalars as JSON: rationals as `"p/q"` strings, floats as numbers.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        if self.is_finite() {
            json!(self)
        } else {
            Value::String(self.to_string())
        }
    }
}

pub fn form_json<S: JsonScalar>(a: &KForm<S>) -> Value {
    let terms: Map<String, Value> = a.terms().map(|(m, c)| (m.to_string(), c.to_json())).collect();
    json!({ "degree": a.degree(), "display": a.to_string(), "terms": terms })
}

pub fn vector_json<S: JsonScalar>(v: &Vector<S>) -> Value {
    Value::Array(v.components().iter().map(JsonScalar::to_json).collect())
}

pub fn matrix_json<S: JsonScalar>(m: &Matrix<S>) -> Value {
    Value::Array(
        (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| m[(i, j)].to_json()).collect())).collect(),
    )
}

pub fn scalars_json<S: JsonScalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(JsonScalar::to_json).collect())
}
