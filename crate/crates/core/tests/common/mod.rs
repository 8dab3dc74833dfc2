//! Bridge from phase-space descriptions to the number-basis reference.
#![allow(dead_code)]

use cvphase_core::{CVec, Complex64, GateSpec, GaussianDescription, GaussianSuperposition, RMat, RVec};
use cvphase_fock::{Cutoff, FockVector, GaussianSpec, OracleGate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn spec(d: &GaussianDescription) -> GaussianSpec {
    GaussianSpec { cov: d.cov().clone(), alpha: d.alpha().iter().copied().collect(), r: d.r() }
}

/// Spec with a canonical phase, for quantities that do not depend on `r`.
pub fn spec_of_moments(g: &RMat, d: &RVec) -> GaussianSpec {
    let n = d.len() / 2;
    let alpha = (0..n).map(|j| c(d[2 * j], d[2 * j + 1]) / 2f64.sqrt()).collect();
    GaussianSpec { cov: g.clone(), alpha, r: c(1.0, 0.0) }
}

pub fn fock(d: &GaussianDescription) -> FockVector {
    cvphase_fock::from_gaussian(&spec(d), Cutoff::default()).expect("oracle expansion")
}

pub fn fock_at(d: &GaussianDescription, cutoff: usize) -> FockVector {
    cvphase_fock::from_gaussian(&spec(d), Cutoff::Fixed(cutoff)).expect("oracle expansion")
}

pub fn fock_superposition(psi: &GaussianSuperposition) -> FockVector {
    let terms: Vec<_> = psi.terms().iter().map(|(w, d)| (*w, spec(d))).collect();
    cvphase_fock::superposition(&terms, Cutoff::default()).expect("oracle expansion")
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

/// Inner product of two oracle vectors after padding to a common cutoff.
pub fn inner(a: &FockVector, b: &FockVector) -> Complex64 {
    let n = a.cutoff().max(b.cutoff());
    a.resized(n).unwrap().inner(&b.resized(n).unwrap()).unwrap()
}

pub fn random_complex(rng: &mut ChaCha8Rng, max: f64) -> Complex64 {
    Complex64::from_polar(max * rng.random::<f64>().sqrt(), std::f64::consts::TAU * rng.random::<f64>())
}

pub fn random_alpha(rng: &mut ChaCha8Rng, n: usize, max: f64) -> CVec {
    CVec::from_fn(n, |_, _| random_complex(rng, max))
}

/// Random gate on `n` modes with squeezing up to `z_max`.
pub fn random_gate(rng: &mut ChaCha8Rng, n: usize, z_max: f64) -> GateSpec {
    let mode = rng.random_range(1..=n);
    match rng.random_range(0..if n > 1 { 4 } else { 3 }) {
        0 => GateSpec::Displacement { alpha: (0..n).map(|_| random_complex(rng, 1.0)).collect() },
        1 => GateSpec::PhaseShift { phi: rng.random_range(-3.0..3.0), mode },
        2 => {
            let mut z = rng.random_range(-z_max..z_max);
            if z == 0.0 {
                z = 0.1;
            }
            GateSpec::Squeeze { z, mode }
        }
        _ => {
            let other = (mode + rng.random_range(0..n - 1)) % n + 1;
            GateSpec::Beamsplitter { omega: rng.random_range(-3.0..3.0), modes: (mode, other) }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
