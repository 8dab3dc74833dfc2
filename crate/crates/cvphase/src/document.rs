//! JSON circuit documents.
//!
//! ```json
//! { "modes": 1,
//!   "state": {"type": "cat", "alpha": [1.0, 0.0], "parity": "even"},
//!   "gates": [{"op": "squeeze", "mode": 1, "z": 0.3}],
//!   "measure": {"k": 1, "beta": [[0.2, -0.1]]} }
//! ```
//!
//! Complex numbers are `[re, im]`, covariance matrices are row-major lists of
//! rows and mode indices are 1-based. Constructor states (`cat`, `gkp`,
//! `appendixD`) occupy the leading modes; any further modes start in vacuum.

use cvphase_core::{
    appendix_d_state, cat_state, gkp_comb, CVec, CircuitSpec, Complex64, GateSpec, GaussianDescription,
    GaussianSuperposition, HeterodyneOutcome, Parity, RMat,
};
use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cplx(pub [f64; 2]);

impl From<Complex64> for Cplx {
    fn from(z: Complex64) -> Self {
        Cplx([z.re, z.im])
    }
}

impl From<Cplx> for Complex64 {
    fn from(c: Cplx) -> Self {
        Complex64::new(c.0[0], c.0[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDoc {
    pub modes: usize,
    pub state: StateDoc,
    #[serde(default)]
    pub gates: Vec<GateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureDoc>,
}

/// One branch `c·|Γ, α, r⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub c: Cplx,
    pub cov: Vec<Vec<f64>>,
    pub alpha: Vec<Cplx>,
    pub r: Cplx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityDoc {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum StateDoc {
    #[serde(rename = "terms")]
    Terms { terms: Vec<TermDoc> },
    #[serde(rename = "cat")]
    Cat { alpha: Cplx, parity: ParityDoc },
    #[serde(rename = "gkp")]
    Gkp { z: f64, m: usize, step: f64, envelope: f64 },
    #[serde(rename = "appendixD")]
    AppendixD { p: f64, r: f64, z: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum GateDoc {
    Displacement { alpha: Vec<Cplx> },
    Phaseshift { mode: usize, phi: f64 },
    Beamsplitter { modes: [usize; 2], omega: f64 },
    Squeeze { mode: usize, z: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDoc {
    pub k: usize,
    pub beta: Vec<Cplx>,
}

/// `{"modes": n, "left": state, "right": state}` for the overlap command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapDoc {
    pub modes: usize,
    pub left: StateDoc,
    pub right: StateDoc,
}

/// Validated contents of a [`CircuitDoc`].
#[derive(Debug, Clone)]
pub struct Circuit {
    pub state: GaussianSuperposition,
    pub gates: Vec<GateSpec>,
    pub measure: Option<HeterodyneOutcome>,
}

impl Circuit {
    pub fn modes(&self) -> usize {
        self.state.modes()
    }

    /// The circuit with its measurement, or a validation error at `measure`.
    pub fn spec(&self) -> Result<CircuitSpec, Error> {
        let m = self.measure.clone().ok_or_else(|| invalid("measure", "this command needs a measurement block"))?;
        CircuitSpec::new(self.modes(), self.gates.clone(), m).map_err(|e| invalid("measure", e))
    }
}

fn invalid(path: impl Into<String>, message: impl ToString) -> Error {
    Error::Validation { path: path.into(), message: message.to_string(), line: None, column: None }
}

/// Parses any document type, reporting the field path and position of the
/// first error.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Validation {
            path: if path == "." { String::new() } else { path },
            message: inner.to_string(),
            line: Some(inner.line()),
            column: Some(inner.column()),
        }
    })?;
    Ok(value)
}

/// Full-precision canonical JSON.
pub fn emit<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn check_finite(path: &str, xs: &[f64]) -> Result<(), Error> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(invalid(path, "non-finite number"))
    }
}

fn check_mode(path: String, mode: usize, n: usize) -> Result<(), Error> {
    if mode == 0 || mode > n {
        return Err(invalid(path, format!("mode {mode} out of range 1..={n}")));
    }
    Ok(())
}

fn complex_vec(v: &[Cplx]) -> Vec<Complex64> {
    v.iter().map(|&c| c.into()).collect()
}

fn term(path: &str, t: &TermDoc, n: usize) -> Result<(Complex64, GaussianDescription), Error> {
    if t.alpha.len() != n {
        return Err(invalid(format!("{path}.alpha"), format!("expected {n} entries, found {}", t.alpha.len())));
    }
    if t.cov.len() != 2 * n {
        return Err(invalid(format!("{path}.cov"), format!("expected {} rows, found {}", 2 * n, t.cov.len())));
    }
    for (i, row) in t.cov.iter().enumerate() {
        if row.len() != 2 * n {
            return Err(invalid(
                format!("{path}.cov[{i}]"),
                format!("expected {} entries, found {}", 2 * n, row.len()),
            ));
        }
        check_finite(&format!("{path}.cov[{i}]"), row)?;
    }
    check_finite(&format!("{path}.c"), &t.c.0)?;
    check_finite(&format!("{path}.r"), &t.r.0)?;
    for (i, a) in t.alpha.iter().enumerate() {
        check_finite(&format!("{path}.alpha[{i}]"), &a.0)?;
    }
    let cov = RMat::from_fn(2 * n, 2 * n, |i, j| t.cov[i][j]);
    let d = GaussianDescription::new(cov, CVec::from_vec(complex_vec(&t.alpha)), t.r.into())
        .map_err(|e| invalid(path, e))?;
    Ok((t.c.into(), d))
}

/// Builds the state of a document with `n` modes; `path` prefixes field
/// names in errors.
pub fn build_state(path: &str, doc: &StateDoc, n: usize) -> Result<GaussianSuperposition, Error> {
    let built = match doc {
        StateDoc::Terms { terms } => {
            if terms.is_empty() {
                return Err(invalid(format!("{path}.terms"), "at least one term is required"));
            }
            let terms = terms
                .iter()
                .enumerate()
                .map(|(i, t)| term(&format!("{path}.terms[{i}]"), t, n))
                .collect::<Result<Vec<_>, _>>()?;
            GaussianSuperposition::new(terms)
        }
        StateDoc::Cat { alpha, parity } => {
            check_finite(&format!("{path}.alpha"), &alpha.0)?;
            let parity = match parity {
                ParityDoc::Even => Parity::Even,
                ParityDoc::Odd => Parity::Odd,
            };
            cat_state((*alpha).into(), parity)
        }
        StateDoc::Gkp { z, m, step, envelope } => {
            check_finite(path, &[*z, *step, *envelope])?;
            gkp_comb(*z, *m, *step, *envelope)
        }
        StateDoc::AppendixD { p, r, z } => {
            check_finite(path, &[*p, *r, *z])?;
            appendix_d_state(*p, *r, *z)
        }
    }
    .map_err(|e| invalid(path, e))?;
    if built.modes() > n {
        return Err(invalid(path, format!("state has {} modes but the document declares {n}", built.modes())));
    }
    Ok(built.with_vacuum_modes(n - built.modes()))
}

pub fn build_gate(path: &str, g: &GateDoc, n: usize) -> Result<GateSpec, Error> {
    let spec = match g {
        GateDoc::Displacement { alpha } => {
            if alpha.len() != n {
                return Err(invalid(format!("{path}.alpha"), format!("expected {n} entries, found {}", alpha.len())));
            }
            for (i, a) in alpha.iter().enumerate() {
                check_finite(&format!("{path}.alpha[{i}]"), &a.0)?;
            }
            GateSpec::Displacement { alpha: complex_vec(alpha) }
        }
        GateDoc::Phaseshift { mode, phi } => {
            check_mode(format!("{path}.mode"), *mode, n)?;
            check_finite(&format!("{path}.phi"), &[*phi])?;
            GateSpec::PhaseShift { phi: *phi, mode: *mode }
        }
        GateDoc::Beamsplitter { modes: [j, k], omega } => {
            check_mode(format!("{path}.modes[0]"), *j, n)?;
            check_mode(format!("{path}.modes[1]"), *k, n)?;
            if j == k {
                return Err(invalid(format!("{path}.modes"), "modes must differ"));
            }
            check_finite(&format!("{path}.omega"), &[*omega])?;
            GateSpec::Beamsplitter { omega: *omega, modes: (*j, *k) }
        }
        GateDoc::Squeeze { mode, z } => {
            check_mode(format!("{path}.mode"), *mode, n)?;
            check_finite(&format!("{path}.z"), &[*z])?;
            if *z == 0.0 {
                return Err(invalid(format!("{path}.z"), "squeezing must be nonzero"));
            }
            GateSpec::Squeeze { z: *z, mode: *mode }
        }
    };
    spec.validate(n).map_err(|e| invalid(path, e))?;
    Ok(spec)
}

fn check_modes(n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(invalid("modes", "at least one mode is required"));
    }
    Ok(())
}

impl CircuitDoc {
    pub fn build(&self) -> Result<Circuit, Error> {
        let n = self.modes;
        check_modes(n)?;
        let state = build_state("state", &self.state, n)?;
        let gates = self
            .gates
            .iter()
            .enumerate()
            .map(|(i, g)| build_gate(&format!("gates[{i}]"), g, n))
            .collect::<Result<Vec<_>, _>>()?;
        let measure = match &self.measure {
            None => None,
            Some(m) => {
                if m.k == 0 || m.k > n {
                    return Err(invalid("measure.k", format!("k = {} must lie in 1..={n}", m.k)));
                }
                if m.beta.len() != m.k {
                    return Err(invalid("measure.beta", format!("expected {} outcomes, found {}", m.k, m.beta.len())));
                }
                for (i, b) in m.beta.iter().enumerate() {
                    check_finite(&format!("measure.beta[{i}]"), &b.0)?;
                }
                Some(HeterodyneOutcome::new(complex_vec(&m.beta)).map_err(|e| invalid("measure.beta", e))?)
            }
        };
        Ok(Circuit { state, gates, measure })
    }
}

impl OverlapDoc {
    pub fn build(&self) -> Result<(GaussianSuperposition, GaussianSuperposition), Error> {
        check_modes(self.modes)?;
        Ok((build_state("left", &self.left, self.modes)?, build_state("right", &self.right, self.modes)?))
    }
}

/// Inline form of a superposition.
pub fn terms_doc(psi: &GaussianSuperposition) -> StateDoc {
    let terms = psi
        .terms()
        .iter()
        .map(|(c, d)| {
            let cov = d.cov();
            TermDoc {
                c: (*c).into(),
                cov: (0..cov.nrows()).map(|i| cov.row(i).iter().copied().collect()).collect(),
                alpha: d.alpha().iter().map(|&a| a.into()).collect(),
                r: d.r().into(),
            }
        })
        .collect();
    StateDoc::Terms { terms }
}

impl From<&GateSpec> for GateDoc {
    fn from(g: &GateSpec) -> Self {
        match g {
            GateSpec::Displacement { alpha } => {
                GateDoc::Displacement { alpha: alpha.iter().map(|&a| a.into()).collect() }
            }
            GateSpec::PhaseShift { phi, mode } => GateDoc::Phaseshift { mode: *mode, phi: *phi },
            GateSpec::Beamsplitter { omega, modes: (j, k) } => GateDoc::Beamsplitter { modes: [*j, *k], omega: *omega },
            GateSpec::Squeeze { z, mode } => GateDoc::Squeeze { mode: *mode, z: *z },
        }
    }
}
