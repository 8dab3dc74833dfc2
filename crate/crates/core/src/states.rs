//! Constructors for cat states, finite GKP-like combs and the two-mode
//! variance fixture.

// Inherent when std is linked anywhere in the build.
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::evolution::{apply_displacement, apply_squeeze};
use crate::phase_space::{coherent_description, GaussianDescription};
use crate::superposition::{exact_norm, GaussianSuperposition};
use crate::{CVec, Error, RMat, RVec, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// `N_±(|α⟩ ± |−α⟩)`, normalized.
pub fn cat_state(alpha: Complex64, parity: Parity) -> Result<GaussianSuperposition> {
    let sign = match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    let overlap = (-2.0 * alpha.norm_sqr()).exp();
    let norm2 = 2.0 * (1.0 + sign * overlap);
    if !(norm2 > 1e-14) {
        return Err(Error::InvalidParameter { name: "alpha", reason: "odd cat state vanishes at alpha = 0" });
    }
    let c = 1.0 / norm2.sqrt();
    GaussianSuperposition::new(alloc::vec![
        (Complex64::new(c, 0.0), coherent_description(CVec::from_column_slice(&[alpha]))),
        (Complex64::new(sign * c, 0.0), coherent_description(CVec::from_column_slice(&[-alpha]))),
    ])
}

/// `Σ_{t=−m}^{m} w_t D(−t·step) S(z)|0⟩`, renormalized, with the Gaussian
/// envelope `w_t = exp(−(t·step)²/(2·envelope²))`. Term `t` is centred at
/// the coherent label `t·step` (position `√2·t·step`).
pub fn gkp_comb(z: f64, m: usize, step: f64, envelope: f64) -> Result<GaussianSuperposition> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidParameter { name: "z", reason: "must be positive" });
    }
    if !step.is_finite() || !(envelope > 0.0) || !envelope.is_finite() {
        return Err(Error::InvalidParameter { name: "envelope", reason: "step must be finite and envelope positive" });
    }
    let squeezed = apply_squeeze(&coherent_description(CVec::zeros(1)), z, 1)?;
    let mi = m as i64;
    let terms = (-mi..=mi)
        .map(|t| {
            let x = t as f64 * step;
            let w = (-(x * x) / (2.0 * envelope * envelope)).exp();
            let d = apply_displacement(&squeezed, &CVec::from_column_slice(&[Complex64::new(-x, 0.0)]))?;
            Ok((Complex64::new(w, 0.0), d))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi = GaussianSuperposition::new(terms)?;
    let norm = exact_norm(&psi)?;
    Ok(psi.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// `√(1−p)|0⟩|0⟩ + i√p |r⟩ S(z)|0⟩`.
pub fn appendix_d_state(p: f64, r: f64, z: f64) -> Result<GaussianSuperposition> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter { name: "p", reason: "must lie in [0, 1]" });
    }
    if !r.is_finite() || !z.is_finite() {
        return Err(Error::InvalidParameter { name: "r", reason: "must be finite" });
    }
    let vac = coherent_description(CVec::zeros(2));
    let coh = coherent_description(CVec::from_column_slice(&[Complex64::new(r, 0.0)]));
    let sq = GaussianDescription::from_parts(
        RMat::from_diagonal(&RVec::from_column_slice(&[(-2.0 * z).exp(), (2.0 * z).exp()])),
        CVec::zeros(1),
        Complex64::new(1.0 / z.cosh().sqrt(), 0.0),
    );
    GaussianSuperposition::new(alloc::vec![
        (Complex64::new((1.0 - p).sqrt(), 0.0), vac),
        (Complex64::new(0.0, p.sqrt()), coh.tensor(&sq)),
    ])
}
