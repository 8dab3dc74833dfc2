//! Randomized norm estimation by uniform coherent-state probes in a ball.
//!
//! Sample `ℓ` draws from its own ChaCha8 stream `(seed, ℓ)`, samples are
//! grouped into fixed-size blocks summed in index order, and block sums are
//! combined in block order. The result therefore does not depend on how a
//! [`SampleRunner`] schedules blocks.

// Inherent when std is linked anywhere in the build.
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::overlaps::overlap;
use crate::phase_space::coherent_description;
use crate::superposition::GaussianSuperposition;
use crate::{CVec, Error, Result};

/// Samples per block.
pub const BLOCK: u64 = 256;

/// Executes independent blocks; implementations may run them in parallel but
/// must return results in block order.
pub trait SampleRunner {
    fn run_blocks(&self, blocks: u64, f: &(dyn Fn(u64) -> Result<f64> + Sync)) -> Result<Vec<f64>>;
}

/// Runs blocks one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl SampleRunner for Sequential {
    fn run_blocks(&self, blocks: u64, f: &(dyn Fn(u64) -> Result<f64> + Sync)) -> Result<Vec<f64>> {
        (0..blocks).map(f).collect()
    }
}

/// Radius and sample count for a target `(ε, p_f)` given an energy bound `E`.
///
/// The single-sample variance is at most `w‖Ψ‖⁴` with `w` the ball weight,
/// so for `n` modes the one-mode count is scaled by `w/R² = R^{2(n−1)}/n!`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FastNormPlan {
    pub modes: usize,
    pub epsilon: f64,
    pub p_fail: f64,
    pub energy: f64,
    /// `R = √(E/ε)`
    pub radius: f64,
    /// `L = ⌈E/(4π p_f ε³) · R^{2(n−1)}/n!⌉`
    pub samples: u64,
}

impl FastNormPlan {
    pub fn new(modes: usize, epsilon: f64, p_fail: f64, energy: f64) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParameter { name: "modes", reason: "at least one mode is required" });
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter { name: "epsilon", reason: "must be positive" });
        }
        if !(p_fail > 0.0 && p_fail < 1.0) {
            return Err(Error::InvalidParameter { name: "p_fail", reason: "must lie in (0, 1)" });
        }
        if !(energy > 0.0) || !energy.is_finite() {
            return Err(Error::InvalidParameter { name: "energy", reason: "must be positive" });
        }
        let radius = (energy / epsilon).sqrt();
        let scale = ball_weight(modes, radius) / (radius * radius);
        let l = (energy / (4.0 * PI * p_fail * epsilon * epsilon * epsilon) * scale).ceil();
        if !(l < 1e15) {
            return Err(Error::InvalidParameter { name: "energy", reason: "sample count exceeds 1e15" });
        }
        Ok(Self { modes, epsilon, p_fail, energy, radius, samples: l as u64 })
    }
}

/// Estimate of `‖Ψ‖²` with the parameters that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub epsilon: f64,
    pub p_fail: f64,
    pub energy: f64,
    pub radius: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Uniform point of the ball `|α| ≤ radius` in `ℂⁿ ≅ ℝ²ⁿ`, drawn from stream
/// `(seed, index)`.
pub fn probe(n: usize, radius: f64, seed: u64, index: u64) -> CVec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let g: Vec<f64> = (0..2 * n).map(|_| rng.sample(StandardNormal)).collect();
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u: f64 = rng.random();
    let rad = radius * u.powf(1.0 / (2 * n) as f64);
    CVec::from_fn(n, |j, _| Complex64::new(g[2 * j], g[2 * j + 1]) * (rad / norm))
}

/// `vol(B_R)/πⁿ = R²ⁿ/n!`.
pub(crate) fn ball_weight(n: usize, radius: f64) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * radius * radius / j as f64)
}

pub(crate) fn sample(psi: &GaussianSuperposition, plan: &FastNormPlan, seed: u64, index: u64) -> Result<f64> {
    let n = plan.modes;
    let probe_state = coherent_description(probe(n, plan.radius, seed, index));
    let mut amp = Complex64::new(0.0, 0.0);
    for (c, d) in psi.terms() {
        amp += c * overlap(&probe_state, d)?;
    }
    Ok(ball_weight(n, plan.radius) * amp.norm_sqr())
}

pub fn fast_norm_with(
    psi: &GaussianSuperposition,
    plan: &FastNormPlan,
    seed: u64,
    runner: &dyn SampleRunner,
) -> Result<NormEstimate> {
    if psi.modes() != plan.modes {
        return Err(Error::DimensionMismatch { expected: plan.modes, found: psi.modes() });
    }
    let l = plan.samples;
    let blocks = l.div_ceil(BLOCK);
    let sums = runner.run_blocks(blocks, &|b| {
        let mut s = 0.0;
        for i in b * BLOCK..((b + 1) * BLOCK).min(l) {
            s += sample(psi, plan, seed, i)?;
        }
        Ok(s)
    })?;
    if sums.len() as u64 != blocks {
        return Err(Error::Inconsistent("runner returned the wrong number of blocks"));
    }
    let total: f64 = sums.iter().sum();
    Ok(NormEstimate {
        value: total / l as f64,
        epsilon: plan.epsilon,
        p_fail: plan.p_fail,
        energy: plan.energy,
        radius: plan.radius,
        samples: l,
        seed,
    })
}
