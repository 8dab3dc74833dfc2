//! Circuit representation and the exact / randomized simulation drivers.

use alloc::vec::Vec;

use crate::evolution::apply_unitary;
use crate::gates::GateSpec;
use crate::measurement::HeterodyneOutcome;
use crate::moments::superposition_energy_exact;
use crate::sampling::{FastNormPlan, SampleRunner};
use crate::superposition::{
    circuit_energy_bound_with, exact_norm, measureprob_approx, measureprob_exact, typical_parameters, EnergyRule,
    GaussianSuperposition,
};
use crate::{Error, Result};

/// `n` modes, a gate sequence and a final heterodyne measurement of the
/// leading `k` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitSpec {
    modes: usize,
    gates: Vec<GateSpec>,
    measurement: HeterodyneOutcome,
}

impl CircuitSpec {
    pub fn new(modes: usize, gates: Vec<GateSpec>, measurement: HeterodyneOutcome) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParameter { name: "modes", reason: "at least one mode is required" });
        }
        for g in &gates {
            g.validate(modes)?;
        }
        measurement.check(modes)?;
        Ok(Self { modes, gates, measurement })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }
    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }
    pub fn measurement(&self) -> &HeterodyneOutcome {
        &self.measurement
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Approx,
}

/// Parameters that produced a randomized density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxInfo {
    pub epsilon: f64,
    pub p_fail: f64,
    /// Energy bound `Ẽ` handed to the norm estimator.
    pub energy_bound: f64,
    pub radius: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    pub density: f64,
    pub method: Method,
    pub approx: Option<ApproxInfo>,
}

/// Options of [`simulate_approx`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxOptions {
    pub epsilon: f64,
    pub p_fail: f64,
    pub seed: u64,
    /// Bound on the initial mean photon number; when absent the exact initial
    /// energy is used.
    pub photon_bound: Option<f64>,
    /// Atypicality budget δ of the outcome.
    pub delta: f64,
    /// Skips the derivation and uses this `Ẽ` directly.
    pub energy_override: Option<f64>,
    pub rule: EnergyRule,
}

impl ApproxOptions {
    pub fn new(epsilon: f64, p_fail: f64, seed: u64) -> Self {
        Self {
            epsilon,
            p_fail,
            seed,
            photon_bound: None,
            delta: 0.25,
            energy_override: None,
            rule: EnergyRule::Literal,
        }
    }
}

fn check_modes(psi: &GaussianSuperposition, circuit: &CircuitSpec) -> Result<()> {
    if psi.modes() != circuit.modes() {
        return Err(Error::DimensionMismatch { expected: circuit.modes(), found: psi.modes() });
    }
    Ok(())
}

/// Applies the gates to every branch in order.
pub fn evolve(psi: &GaussianSuperposition, gates: &[GateSpec]) -> Result<GaussianSuperposition> {
    psi.try_map(|d| gates.iter().try_fold(d.clone(), |acc, g| apply_unitary(&acc, g)))
}

pub fn simulate_exact(psi: &GaussianSuperposition, circuit: &CircuitSpec) -> Result<SimulationResult> {
    check_modes(psi, circuit)?;
    let norm = exact_norm(psi)?;
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::NotNormalized { norm });
    }
    let out = evolve(psi, circuit.gates())?;
    let density = measureprob_exact(&out, circuit.measurement())?;
    Ok(SimulationResult { density, method: Method::Exact, approx: None })
}

/// `Ẽ` used by [`simulate_approx`] unless overridden.
pub fn derived_energy_bound(psi: &GaussianSuperposition, circuit: &CircuitSpec, opts: &ApproxOptions) -> Result<f64> {
    if let Some(e) = opts.energy_override {
        return Ok(e);
    }
    let initial = match opts.photon_bound {
        Some(nb) => 2.0 * (nb + psi.modes() as f64),
        None => superposition_energy_exact(psi)?,
    };
    let e = circuit_energy_bound_with(initial, circuit.gates(), opts.rule);
    Ok(typical_parameters(e, opts.delta)?.post_energy)
}

pub fn simulate_approx(
    psi: &GaussianSuperposition,
    circuit: &CircuitSpec,
    opts: &ApproxOptions,
    runner: &dyn SampleRunner,
) -> Result<SimulationResult> {
    check_modes(psi, circuit)?;
    let energy = derived_energy_bound(psi, circuit, opts)?;
    let plan = FastNormPlan::new(psi.modes(), opts.epsilon, opts.p_fail, energy)?;
    let out = evolve(psi, circuit.gates())?;
    let est = measureprob_approx(&out, circuit.measurement(), &plan, opts.seed, runner)?;
    Ok(SimulationResult {
        density: est.value,
        method: Method::Approx,
        approx: Some(ApproxInfo {
            epsilon: est.epsilon,
            p_fail: est.p_fail,
            energy_bound: est.energy,
            radius: est.radius,
            samples: est.samples,
            seed: est.seed,
        }),
    })
}
