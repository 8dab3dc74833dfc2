//! Updating descriptions under the gate set.

// Inherent when std is linked anywhere in the build.
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::gates::{gate_symplectic, GateSpec};
use crate::overlaps::overlaptriple;
use crate::phase_space::{hat_d, GaussianDescription};
use crate::{CVec, Error, RMat, Result};

fn congruence(s: &RMat, cov: &RMat) -> RMat {
    let m = s * cov * s.transpose();
    (&m + m.transpose()) * 0.5
}

/// `D(β)|ψ⟩`. The label moves to `α − β`; the phase `e^{i Im(αᵀβ̄)}` picked up
/// by the reference coherent state is folded into `r`.
pub fn apply_displacement(d: &GaussianDescription, beta: &CVec) -> Result<GaussianDescription> {
    if beta.len() != d.modes() {
        return Err(Error::DimensionMismatch { expected: d.modes(), found: beta.len() });
    }
    let theta: Complex64 = d.alpha().iter().zip(beta.iter()).map(|(a, b)| a * b.conj()).sum();
    Ok(GaussianDescription::from_parts(d.cov().clone(), d.alpha() - beta, d.r() * Complex64::from_polar(1.0, theta.im)))
}

/// `F_j(φ)|ψ⟩`; `mode` is 1-based.
pub fn apply_phaseshift(d: &GaussianDescription, phi: f64, mode: usize) -> Result<GaussianDescription> {
    let (s, _) = gate_symplectic(&GateSpec::PhaseShift { phi, mode }, d.modes())?;
    let mut alpha = d.alpha().clone();
    alpha[mode - 1] *= Complex64::from_polar(1.0, -phi);
    Ok(GaussianDescription::from_parts(congruence(&s, d.cov()), alpha, d.r()))
}

/// `B_{j,k}(ω)|ψ⟩`; modes are 1-based.
pub fn apply_beamsplitter(d: &GaussianDescription, omega: f64, j: usize, k: usize) -> Result<GaussianDescription> {
    let (s, _) = gate_symplectic(&GateSpec::Beamsplitter { omega, modes: (j, k) }, d.modes())?;
    let (sn, cs) = omega.sin_cos();
    let mi = Complex64::new(0.0, -sn);
    let mut alpha = d.alpha().clone();
    let (aj, ak) = (alpha[j - 1], alpha[k - 1]);
    alpha[j - 1] = aj * cs + mi * ak;
    alpha[k - 1] = mi * aj + ak * cs;
    Ok(GaussianDescription::from_parts(congruence(&s, d.cov()), alpha, d.r()))
}

/// `S_j(z)|ψ⟩`; the new `r` is recovered from the triple
/// `(S_j(z)|α⟩, |α'⟩, S_j(z)|ψ⟩)`, all of which share the displacement `d̂(α')`.
pub fn apply_squeeze(d: &GaussianDescription, z: f64, mode: usize) -> Result<GaussianDescription> {
    let n = d.modes();
    let (s, _) = gate_symplectic(&GateSpec::Squeeze { z, mode }, n)?;
    let mut alpha = d.alpha().clone();
    let a = alpha[mode - 1];
    alpha[mode - 1] = a * z.cosh() - a.conj() * z.sinh();
    let cov = congruence(&s, d.cov());
    let disp = hat_d(&alpha);
    let squeezed_coherent = &s * s.transpose();
    let eye = RMat::identity(2 * n, 2 * n);
    let u = d.r().conj();
    let v = Complex64::new(1.0 / z.cosh().sqrt(), 0.0);
    let r = overlaptriple([(&squeezed_coherent, &disp), (&eye, &disp), (&cov, &disp)], u, v, &CVec::zeros(n))?;
    Ok(GaussianDescription::from_parts(cov, alpha, r))
}

pub fn apply_unitary(d: &GaussianDescription, g: &GateSpec) -> Result<GaussianDescription> {
    g.validate(d.modes())?;
    match g {
        GateSpec::Displacement { alpha } => apply_displacement(d, &CVec::from_column_slice(alpha)),
        GateSpec::PhaseShift { phi, mode } => apply_phaseshift(d, *phi, *mode),
        GateSpec::Beamsplitter { omega, modes: (j, k) } => apply_beamsplitter(d, *omega, *j, *k),
        GateSpec::Squeeze { z, mode } => apply_squeeze(d, *z, *mode),
    }
}
