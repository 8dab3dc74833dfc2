//! Result and diagnostic documents. Numbers are written with the shortest
//! representation that parses back to the same `f64`.

use cvphase_core::{ApproxInfo, Complex64, NormEstimate};
use serde::Serialize;

use crate::oracle::OracleComparison;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxFields {
    pub epsilon: f64,
    pub p_fail: f64,
    pub energy_bound: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "L")]
    pub samples: u64,
    pub seed: u64,
}

impl From<ApproxInfo> for ApproxFields {
    fn from(a: ApproxInfo) -> Self {
        Self {
            epsilon: a.epsilon,
            p_fail: a.p_fail,
            energy_bound: a.energy_bound,
            radius: a.radius,
            samples: a.samples,
            seed: a.seed,
        }
    }
}

impl From<&NormEstimate> for ApproxFields {
    fn from(e: &NormEstimate) -> Self {
        Self {
            epsilon: e.epsilon,
            p_fail: e.p_fail,
            energy_bound: e.energy,
            radius: e.radius,
            samples: e.samples,
            seed: e.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationDoc {
    pub p: f64,
    pub method: &'static str,
    #[serde(flatten)]
    pub approx: Option<ApproxFields>,
    /// Largest difference to the number-basis backend, with `--oracle-check`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_discrepancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormDoc {
    pub norm: f64,
    pub method: &'static str,
    #[serde(flatten)]
    pub approx: Option<ApproxFields>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapResult {
    pub overlap: [f64; 2],
}

impl From<Complex64> for OverlapResult {
    fn from(z: Complex64) -> Self {
        Self { overlap: [z.re, z.im] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_density: Option<f64>,
    pub norm: f64,
    pub oracle_norm: f64,
    pub state_diff: f64,
    pub max_abs_diff: f64,
    pub cutoff: usize,
    pub tol: f64,
    pub pass: bool,
}

impl OracleDoc {
    pub fn new(c: &OracleComparison, tol: f64) -> Self {
        let max_abs_diff = c.max_abs_diff();
        Self {
            density: c.density.map(|d| d.0),
            oracle_density: c.density.map(|d| d.1),
            norm: c.norm,
            oracle_norm: c.oracle_norm,
            state_diff: c.state_diff,
            max_abs_diff,
            cutoff: c.cutoff,
            tol,
            pass: max_abs_diff <= tol,
        }
    }
}

/// Written to standard error on failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub error: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl From<&Error> for Diagnostic {
    fn from(e: &Error) -> Self {
        let (path, line, column, message) = match e {
            Error::Validation { path, message, line, column } => {
                ((!path.is_empty()).then(|| path.clone()), *line, *column, message.clone())
            }
            other => (None, None, None, other.to_string()),
        };
        Self { error: e.kind(), message, path, line, column }
    }
}

pub fn to_line<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("reports serialize")
}
