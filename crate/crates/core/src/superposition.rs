//! Superpositions `Σ c_j ψ(Δ_j)`: norms, outcome densities, energy bounds.

// Inherent when std is linked anywhere in the build.
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::gates::GateSpec;
use crate::measurement::{postmeasure, HeterodyneOutcome};
use crate::overlaps::overlap;
use crate::phase_space::{hat_d, GaussianDescription};
use crate::sampling::{fast_norm_with, FastNormPlan, NormEstimate, SampleRunner, Sequential};
use crate::{CMat, CVec, Error, Result};

/// `Σ c_j ψ(Δ_j)`; not necessarily normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSuperposition {
    terms: Vec<(Complex64, GaussianDescription)>,
}

impl GaussianSuperposition {
    pub fn new(terms: Vec<(Complex64, GaussianDescription)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidParameter { name: "terms", reason: "at least one term is required" });
        };
        let n = first.modes();
        for (c, d) in &terms {
            if d.modes() != n {
                return Err(Error::DimensionMismatch { expected: n, found: d.modes() });
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidParameter { name: "c", reason: "must be finite" });
            }
        }
        Ok(Self { terms })
    }

    pub fn single(d: GaussianDescription) -> Self {
        Self { terms: alloc::vec![(Complex64::new(1.0, 0.0), d)] }
    }

    pub fn modes(&self) -> usize {
        self.terms[0].1.modes()
    }

    /// Number of terms χ.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terms(&self) -> &[(Complex64, GaussianDescription)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Complex64, GaussianDescription)> {
        self.terms
    }

    /// Multiplies every coefficient by `s`.
    pub fn scaled(mut self, s: Complex64) -> Self {
        for (c, _) in &mut self.terms {
            *c *= s;
        }
        self
    }

    /// Applies `f` to every description, keeping coefficients.
    pub fn try_map(&self, f: impl Fn(&GaussianDescription) -> Result<GaussianDescription>) -> Result<Self> {
        let terms = self.terms.iter().map(|(c, d)| Ok((*c, f(d)?))).collect::<Result<Vec<_>>>()?;
        Ok(Self { terms })
    }

    /// `self ⊗ |0…0⟩` on `extra` trailing vacuum modes.
    pub fn with_vacuum_modes(&self, extra: usize) -> Self {
        if extra == 0 {
            return self.clone();
        }
        let vac = crate::phase_space::coherent_description(CVec::zeros(extra));
        let terms = self.terms.iter().map(|(c, d)| (*c, d.tensor(&vac))).collect();
        Self { terms }
    }
}

/// `G_kj = ⟨ψ_k, ψ_j⟩`.
pub fn gram_matrix(psi: &GaussianSuperposition) -> Result<CMat> {
    let t = psi.terms();
    let mut g = CMat::zeros(t.len(), t.len());
    for (k, (_, dk)) in t.iter().enumerate() {
        for (j, (_, dj)) in t.iter().enumerate() {
            g[(k, j)] = overlap(dk, dj)?;
        }
    }
    Ok(g)
}

/// `‖Ψ‖²` summed over all χ² ordered pairs.
pub fn norm_squared(psi: &GaussianSuperposition) -> Result<f64> {
    let t = psi.terms();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (ck, dk) in t {
        for (cj, dj) in t {
            let term = ck.conj() * cj * overlap(dk, dj)?;
            scale += term.norm();
            sum += term;
        }
    }
    if sum.im.abs() > 1e-8 * scale.max(1.0) {
        return Err(Error::Inconsistent("Gram sum has a non-negligible imaginary part"));
    }
    if sum.re < -1e-8 * scale.max(1.0) {
        return Err(Error::Inconsistent("Gram sum is negative"));
    }
    Ok(sum.re.max(0.0))
}

/// `‖Ψ‖`.
pub fn exact_norm(psi: &GaussianSuperposition) -> Result<f64> {
    Ok(norm_squared(psi)?.sqrt())
}

/// Randomized estimate of `‖Ψ‖²`; `energy` must bound `⟨Ψ,HΨ⟩/‖Ψ‖²`.
pub fn fast_norm(
    psi: &GaussianSuperposition,
    epsilon: f64,
    p_fail: f64,
    energy: f64,
    seed: u64,
) -> Result<NormEstimate> {
    fast_norm_with(psi, &FastNormPlan::new(psi.modes(), epsilon, p_fail, energy)?, seed, &Sequential)
}

/// A branch removed because its outcome density fell below the floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DroppedBranch {
    pub index: usize,
    pub density: f64,
    /// `|c_j|·‖Π_β ψ_j‖`, an upper bound on the branch's contribution to
    /// `‖Π_β Ψ‖`.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PostMeasurement {
    /// `Σ c_j ‖Π_β ψ_j‖ ψ'_j`, i.e. `Π_β Ψ` with normalized branches.
    pub state: GaussianSuperposition,
    pub dropped: Vec<DroppedBranch>,
}

impl PostMeasurement {
    pub fn dropped_weight(&self) -> f64 {
        self.dropped.iter().map(|d| d.weight).sum()
    }
}

pub fn post_measurement_superposition(psi: &GaussianSuperposition, out: &HeterodyneOutcome) -> Result<PostMeasurement> {
    out.check(psi.modes())?;
    let pik = PI.powi(out.k() as i32);
    let mut terms = Vec::with_capacity(psi.len());
    let mut dropped = Vec::new();
    for (index, (c, d)) in psi.terms().iter().enumerate() {
        match postmeasure(d, out) {
            Ok((post, p)) => terms.push((c * (pik * p).sqrt(), post)),
            Err(Error::DensityBelowFloor { density }) => {
                let weight = c.norm() * (pik * density.max(0.0)).sqrt();
                dropped.push(DroppedBranch { index, density, weight });
            }
            Err(e) => return Err(e),
        }
    }
    if terms.is_empty() {
        return Err(Error::AllBranchesDropped);
    }
    Ok(PostMeasurement { state: GaussianSuperposition { terms }, dropped })
}

/// `p_Ψ(β) = ‖Π_β Ψ‖²/πᵏ`.
pub fn measureprob_exact(psi: &GaussianSuperposition, out: &HeterodyneOutcome) -> Result<f64> {
    let post = post_measurement_superposition(psi, out)?;
    Ok(norm_squared(&post.state)? / PI.powi(out.k() as i32))
}

/// Randomized `p_Ψ(β)`; `energy` bounds the normalized post-measurement
/// energy. The returned estimate's `value` is the density.
pub fn measureprob_approx(
    psi: &GaussianSuperposition,
    out: &HeterodyneOutcome,
    plan: &FastNormPlan,
    seed: u64,
    runner: &dyn SampleRunner,
) -> Result<NormEstimate> {
    let post = post_measurement_superposition(psi, out)?;
    let mut est = fast_norm_with(&post.state, plan, seed, runner)?;
    est.value /= PI.powi(out.k() as i32);
    Ok(est)
}

/// Energy bound for the post-measurement state of a typical outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypicalityParams {
    pub energy: f64,
    pub delta: f64,
    /// `Ẽ = 2(E+1)/δ`
    pub post_energy: f64,
    /// `R = √(E/δ)`
    pub radius: f64,
}

pub fn typical_parameters(energy: f64, delta: f64) -> Result<TypicalityParams> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::InvalidParameter { name: "energy", reason: "must be positive" });
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter { name: "delta", reason: "must lie in (0, 1]" });
    }
    Ok(TypicalityParams { energy, delta, post_energy: 2.0 * (energy + 1.0) / delta, radius: (energy / delta).sqrt() })
}

/// How passive gates enter the total squeezing `z_tot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyRule {
    /// Every non-squeezing gate counts as `z = 1`.
    #[default]
    Literal,
    /// Passive gates count as 0; displacements enter only additively.
    Tight,
}

/// Bound on `⟨H⟩` after the gates, starting from a bound `initial`.
pub fn circuit_energy_bound(initial: f64, gates: &[GateSpec]) -> f64 {
    circuit_energy_bound_with(initial, gates, EnergyRule::Literal)
}

/// Squeezing multiplies the bound by `e^{2|z|}`, a displacement by `α` maps
/// `E ↦ (√E + ‖d̂(α)‖)²`.
pub fn circuit_energy_bound_with(initial: f64, gates: &[GateSpec], rule: EnergyRule) -> f64 {
    // Squeezing is accumulated and applied as one factor e^{2 z_tot} between
    // displacements, so squeeze-only circuits give exactly N·e^{2 z_tot}.
    let mut e = initial;
    let mut z_tot = 0.0;
    for g in gates {
        z_tot += match (g, rule) {
            (GateSpec::Squeeze { z, .. }, _) => z.abs(),
            (_, EnergyRule::Literal) => 1.0,
            (_, EnergyRule::Tight) => 0.0,
        };
        if let GateSpec::Displacement { alpha } = g {
            e *= (2.0 * z_tot).exp();
            z_tot = 0.0;
            let shift = hat_d(&CVec::from_column_slice(alpha)).norm();
            e = (e.sqrt() + shift) * (e.sqrt() + shift);
        }
    }
    e * (2.0 * z_tot).exp()
}

/// A heterodyne measurement followed by averaging over outcomes adds 2.
pub fn energy_after_heterodyne(e: f64) -> f64 {
    e + 2.0
}
