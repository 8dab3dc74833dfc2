//! Differential check of a circuit against the number-basis backend.

use cvphase_core::{
    apply_unitary, exact_norm, measureprob_exact, GateSpec, GaussianDescription, GaussianSuperposition,
};
use cvphase_fock::{Cutoff, FockVector, GaussianSpec, OracleGate};

use crate::document::Circuit;
use crate::Error;

/// Relative norm loss tolerated when a gate is applied on the truncated space.
const GATE_LOSS_TOL: f64 = 1e-8;

/// Tail mass allowed when choosing the cutoff. Vector differences scale with
/// the square root of the tail, so this is much tighter than the default.
const TAIL_TOL: f64 = 1e-16;

pub fn spec(d: &GaussianDescription) -> GaussianSpec {
    GaussianSpec { cov: d.cov().clone(), alpha: d.alpha().iter().copied().collect(), r: d.r() }
}

pub fn oracle_gate(g: &GateSpec) -> OracleGate {
    match g {
        GateSpec::Displacement { alpha } => OracleGate::Displacement(alpha.clone()),
        GateSpec::PhaseShift { phi, mode } => OracleGate::PhaseShift { phi: *phi, mode: mode - 1 },
        GateSpec::Beamsplitter { omega, modes: (j, k) } => {
            OracleGate::Beamsplitter { omega: *omega, modes: (j - 1, k - 1) }
        }
        GateSpec::Squeeze { z, mode } => OracleGate::Squeeze { z: *z, mode: mode - 1 },
    }
}

fn terms(psi: &GaussianSuperposition) -> Vec<(cvphase_core::Complex64, GaussianSpec)> {
    psi.terms().iter().map(|(c, d)| (*c, spec(d))).collect()
}

/// Both backends' answers for one document.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub cutoff: usize,
    pub norm: f64,
    pub oracle_norm: f64,
    /// `(covariance-formalism, number-basis)` outcome densities.
    pub density: Option<(f64, f64)>,
    /// `‖v_gates − v_evolved‖`: the initial vector pushed through the gate
    /// matrices versus the expansion of the evolved descriptions.
    pub state_diff: f64,
}

impl OracleComparison {
    pub fn max_abs_diff(&self) -> f64 {
        let d = self.density.map_or(0.0, |(a, b)| (a - b).abs());
        d.max((self.norm - self.oracle_norm).abs()).max(self.state_diff)
    }
}

/// Runs `circuit` on both backends. The cutoff is the largest automatic
/// cutoff over every branch at every step, so each gate acts on a vector
/// whose tail is already negligible.
pub fn compare(circuit: &Circuit) -> Result<OracleComparison, Error> {
    let mut stages = vec![circuit.state.clone()];
    for g in &circuit.gates {
        let next = stages.last().expect("nonempty").try_map(|d| apply_unitary(d, g))?;
        stages.push(next);
    }
    let mut cutoff = 0;
    for psi in &stages {
        for (_, d) in psi.terms() {
            cutoff =
                cutoff.max(cvphase_fock::from_gaussian(&spec(d), Cutoff::Auto { start: 32, tol: TAIL_TOL })?.cutoff());
        }
    }
    let fixed = Cutoff::Fixed(cutoff);
    let mut v = cvphase_fock::superposition(&terms(&circuit.state), fixed)?;
    for g in &circuit.gates {
        v = v.apply(&oracle_gate(g), GATE_LOSS_TOL)?;
    }
    let evolved = stages.last().expect("nonempty");
    let direct: FockVector = cvphase_fock::superposition(&terms(evolved), fixed)?;
    let state_diff = v.add(&direct.scaled((-1.0).into()))?.norm_sqr().sqrt();
    let density = match &circuit.measure {
        Some(m) => Some((measureprob_exact(evolved, m)?, v.heterodyne_density(m.beta())?)),
        None => None,
    };
    Ok(OracleComparison { cutoff, norm: exact_norm(evolved)?, oracle_norm: v.norm_sqr().sqrt(), density, state_diff })
}
