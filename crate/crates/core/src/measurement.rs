//! Heterodyne measurement of the leading `k` modes.

// Inherent when std is linked anywhere in the build.
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::linalg::spd_inverse;
use crate::overlaps::overlaptriple_with_floor;
use crate::phase_space::{hat_d, hat_d_inv, GaussianDescription};
use crate::{CVec, Error, RMat, RVec, Result};

/// Densities below this are treated as zero: the post-measurement phase would
/// be built from underflowed numbers.
pub const DENSITY_FLOOR: f64 = 1e-280;

/// Outcome `β ∈ ℂᵏ` of a heterodyne measurement of modes `1..=k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeterodyneOutcome {
    beta: Vec<Complex64>,
}

impl HeterodyneOutcome {
    pub fn new(beta: Vec<Complex64>) -> Result<Self> {
        if beta.is_empty() {
            return Err(Error::InvalidParameter { name: "beta", reason: "at least one mode must be measured" });
        }
        if beta.iter().any(|b| !b.re.is_finite() || !b.im.is_finite()) {
            return Err(Error::InvalidParameter { name: "beta", reason: "must be finite" });
        }
        Ok(Self { beta })
    }

    pub fn k(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if self.k() > n {
            return Err(Error::ModeOutOfRange { mode: self.k(), modes: n });
        }
        Ok(())
    }
}

struct Split {
    /// `(Γ_A + I)⁻¹`
    inv: RMat,
    det_half: f64,
    /// `d̂(β) − s_A`
    delta: RVec,
}

fn split(d: &GaussianDescription, out: &HeterodyneOutcome) -> Result<Split> {
    out.check(d.modes())?;
    let a = 2 * out.k();
    let shifted = d.cov().view((0, 0), (a, a)) + RMat::identity(a, a);
    let inv = spd_inverse(&shifted, "Γ_A + I")?;
    let det_half = (shifted * 0.5).determinant();
    let delta = hat_d(&CVec::from_column_slice(out.beta())) - d.displacement().rows(0, a);
    Ok(Split { inv, det_half, delta })
}

fn density_of(sp: &Split, k: usize) -> f64 {
    (-(sp.delta.dot(&(&sp.inv * &sp.delta)))).exp() / (PI.powi(k as i32) * sp.det_half.sqrt())
}

/// Outcome density with respect to Lebesgue measure on `ℂᵏ`.
pub fn heterodyne_density(d: &GaussianDescription, out: &HeterodyneOutcome) -> Result<f64> {
    Ok(density_of(&split(d, out)?, out.k()))
}

/// Normalized post-measurement description and the outcome density.
pub fn postmeasure(d: &GaussianDescription, out: &HeterodyneOutcome) -> Result<(GaussianDescription, f64)> {
    let sp = split(d, out)?;
    let k = out.k();
    let p = density_of(&sp, k);
    if !(p >= DENSITY_FLOOR) {
        return Err(Error::DensityBelowFloor { density: p });
    }
    let n = d.modes();
    let (a, b) = (2 * k, 2 * (n - k));
    let cov = d.cov();
    let disp = d.displacement();

    let mut new_cov = RMat::identity(2 * n, 2 * n);
    let mut new_disp = RVec::zeros(2 * n);
    new_disp.rows_mut(0, a).copy_from(&hat_d(&CVec::from_column_slice(out.beta())));
    if b > 0 {
        let gab = cov.view((0, a), (a, b));
        let gbb = cov.view((a, a), (b, b));
        let t = gab.transpose() * &sp.inv;
        let schur = gbb - &t * gab;
        new_cov.view_mut((a, a), (b, b)).copy_from(&((&schur + schur.transpose()) * 0.5));
        let sb = disp.rows(a, b) + &t * &sp.delta;
        new_disp.rows_mut(a, b).copy_from(&sb);
    }
    let new_alpha = hat_d_inv(&new_disp)?;
    let eye = RMat::identity(2 * n, 2 * n);
    let lambda = d.alpha() - &new_alpha;
    let cross: Complex64 = new_alpha.iter().zip(d.alpha().iter()).map(|(x, y)| x * y.conj()).sum();
    let u = Complex64::from_polar(1.0, cross.im) * d.r();
    let v = Complex64::new((PI.powi(k as i32) * p).sqrt(), 0.0);
    // ⟨ψ', α'⟩; the reference overlap is its conjugate.
    let floor = (PI.powi(k as i32) * DENSITY_FLOOR).sqrt();
    let back = overlaptriple_with_floor(
        [(cov, &disp), (&new_cov, &new_disp), (&eye, &new_disp)],
        u,
        v,
        &lambda,
        floor.min(crate::overlaps::REFERENCE_FLOOR),
    )?;
    Ok((GaussianDescription::from_parts(new_cov, new_alpha, back.conj()), p))
}
