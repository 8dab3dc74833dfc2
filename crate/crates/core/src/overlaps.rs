//! Phase-exact inner products between pure Gaussian states.

// Inherent when std is linked anywhere in the build.
use core::f64::consts::{FRAC_PI_2, PI};
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::linalg::{bilinear, complexify, complexify_vec, solve_c, spd_det, spd_inverse, I};
use crate::phase_space::{hat_d, omega, GaussianDescription};
use crate::{CMat, CVec, Error, RMat, RVec, Result};

/// Below this magnitude the reference overlaps `u`, `v` of [`overlaptriple`]
/// are rejected.
pub const REFERENCE_FLOOR: f64 = 1e-12;

/// Covariance matrix and displacement vector of one pure state.
pub type Moments<'a> = (&'a RMat, &'a RVec);

/// `⟨α₁, α₂⟩ = exp(−½‖α₁‖² − ½‖α₂‖² + α₁ᴴα₂)`.
pub fn coherent_overlap(a1: &CVec, a2: &CVec) -> Complex64 {
    let cross: Complex64 = a1.iter().zip(a2.iter()).map(|(x, y)| x.conj() * y).sum();
    (cross - 0.5 * a1.norm_squared() - 0.5 * a2.norm_squared()).exp()
}

/// `tr(ρ₁ρ₂)` for Gaussian states; equals `|⟨ψ₁,ψ₂⟩|²` for pure states.
pub fn pair_fidelity(g1: &RMat, d1: &RVec, g2: &RMat, d2: &RVec) -> Result<f64> {
    let sum = g1 + g2;
    let det = spd_det(&(&sum * 0.5), "Γ₁ + Γ₂")?;
    let inv = spd_inverse(&sum, "Γ₁ + Γ₂")?;
    let delta = d2 - d1;
    Ok((-(delta.dot(&(inv * &delta)))).exp() / det.sqrt())
}

/// Square root of a complex determinant with its branch fixed by continuity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedSqrtDet {
    pub value: Complex64,
    /// Number of accepted path steps (0 for a real input).
    pub steps: u32,
}

const MIN_STEP: f64 = 1.0 / (1u64 << 20) as f64;

/// `√det M` for `M = A + iB` with `A` real invertible, continued along
/// `A + itB`, `t ∈ [0, 1]`, from the positive root of `det A`.
///
/// A step is accepted when the phase increment of `det` is below `π/2` and
/// agrees with the sum over two half steps, which rules out a hidden wrap.
pub fn branched_sqrt_det(m: &CMat) -> Result<BranchedSqrtDet> {
    let a = m.map(|z| z.re);
    let b = m.map(|z| z.im);
    let det_a = a.clone().lu().determinant();
    if det_a == 0.0 || !det_a.is_finite() {
        return Err(Error::Singular("real part of determinant argument"));
    }
    let base = Complex64::new(det_a.abs().ln(), if det_a < 0.0 { PI } else { 0.0 });
    if b.iter().all(|&x| x == 0.0) {
        return Ok(BranchedSqrtDet { value: (0.5 * base).exp(), steps: 0 });
    }
    let ac = complexify(&a);
    let bc = complexify(&b);
    let det_at = |t: f64| (&ac + &bc * Complex64::new(0.0, t)).lu().determinant();

    let mut acc = Complex64::new(0.0, 0.0);
    let mut t = 0.0;
    let mut h = 0.25;
    let mut d0 = Complex64::new(det_a, 0.0);
    let mut steps = 0;
    while t < 1.0 {
        h = h.min(1.0 - t);
        let d1 = det_at(t + h);
        let dm = det_at(t + 0.5 * h);
        let ok = d1 != Complex64::new(0.0, 0.0) && dm != Complex64::new(0.0, 0.0) && {
            let full = (d1 / d0).arg();
            let split = (dm / d0).arg() + (d1 / dm).arg();
            full.abs() <= FRAC_PI_2 && (full - split).abs() <= 1e-9
        };
        if !ok {
            h *= 0.5;
            if h < MIN_STEP {
                return Err(Error::BranchTracking);
            }
            continue;
        }
        acc += (d1 / d0).ln();
        d0 = d1;
        t += h;
        steps += 1;
        h *= 2.0;
    }
    Ok(BranchedSqrtDet { value: (0.5 * (base + acc)).exp(), steps })
}

/// `⟨ψ₃, D(α)ψ₁⟩⟨ψ₁,ψ₂⟩⟨ψ₂,ψ₃⟩` for pure Gaussian states given by their
/// moments.
pub fn triple_overlap_product(states: [Moments<'_>; 3], alpha: &CVec) -> Result<Complex64> {
    let [(g1, d1), (g2, d2), (g3, d3)] = states;
    let n2 = g1.nrows();
    let n = n2 / 2;
    if alpha.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: alpha.len() });
    }
    for (g, d) in [(g2, d2), (g3, d3)].iter().chain([(g1, d1)].iter()) {
        if g.nrows() != n2 || d.len() != n2 {
            return Err(Error::DimensionMismatch { expected: n2, found: g.nrows().max(d.len()) });
        }
    }
    let om = complexify(&omega(n));
    let i_om = &om * I;
    let eye = CMat::identity(n2, n2);
    let (g1c, g3c) = (complexify(g1), complexify(g3));

    let s23 = g2 + g3;
    let inv23 = complexify(&spd_inverse(&s23, "Γ₂ + Γ₃")?);
    let g3p = &g3c + &i_om;
    let g3m = &g3c - &i_om;
    let g4 = &g3c - &g3p * &inv23 * &g3m;
    let s14 = &g1c + &g4;
    let g1m = &g1c - &i_om;
    let g1p = &g1c + &i_om;

    // inv14 · [Γ₁+iΩ | (Γ₃+iΩ)inv23 | I]
    let x = &g3p * &inv23;
    let mut rhs = CMat::zeros(n2, 3 * n2);
    rhs.view_mut((0, 0), (n2, n2)).copy_from(&g1p);
    rhs.view_mut((0, n2), (n2, n2)).copy_from(&x);
    rhs.view_mut((0, 2 * n2), (n2, n2)).copy_from(&eye);
    let sol = solve_c(&s14, &rhs, "Γ₁ + Γ₄")?;
    let inv14_g1p = sol.columns(0, n2).into_owned();
    let inv14_x = sol.columns(n2, n2).into_owned();
    let w1 = sol.columns(2 * n2, n2).into_owned();

    let g5 = (&g1c - &g1m * &inv14_g1p) * Complex64::new(0.25, 0.0);
    let w2 = &inv23 + &inv23 * &g3m * &inv14_x;
    let w3 = &inv14_x * Complex64::new(2.0, 0.0);
    let w4 = &eye - &g1m * &w1;
    let w5 = &g1m * &inv14_x;

    let e1 = complexify_vec(&(d1 - d3));
    let e2 = complexify_vec(&(d2 - d3));
    let d3c = complexify_vec(d3);
    let a = complexify_vec(&hat_d(alpha));
    let oa = &om * &a; // so that oaᵀ = d̂(α)ᵀΩᵀ
    let lin = &w4 * &e1 + &w5 * &e2 + &d3c;
    let lin_term: Complex64 = oa.iter().zip(lin.iter()).map(|(p, q)| p * q).sum();
    let exponent = -bilinear(&e1, &w1, &e1) - bilinear(&e2, &w2, &e2) + bilinear(&e1, &w3, &e2)
        - bilinear(&oa, &g5, &oa)
        - I * lin_term;

    let den23 = spd_det(&(&s23 * 0.5), "Γ₂ + Γ₃")?.sqrt();
    let den14 = branched_sqrt_det(&(&s14 * Complex64::new(0.5, 0.0)))?.value;
    Ok(exponent.exp() / (den14 * den23))
}

/// `⟨ψ₂,ψ₃⟩` recovered from the triple product, given `u = ⟨ψ₃, D(λ)ψ₁⟩` and
/// `v = ⟨ψ₁,ψ₂⟩`.
pub fn overlaptriple(states: [Moments<'_>; 3], u: Complex64, v: Complex64, lambda: &CVec) -> Result<Complex64> {
    overlaptriple_with_floor(states, u, v, lambda, REFERENCE_FLOOR)
}

/// [`overlaptriple`] with a caller-chosen floor on `|u|` and `|v|`.
pub fn overlaptriple_with_floor(
    states: [Moments<'_>; 3],
    u: Complex64,
    v: Complex64,
    lambda: &CVec,
    floor: f64,
) -> Result<Complex64> {
    if !(u.norm() >= floor) {
        return Err(Error::OverlapUnderflow { which: "u", magnitude: u.norm() });
    }
    if !(v.norm() >= floor) {
        return Err(Error::OverlapUnderflow { which: "v", magnitude: v.norm() });
    }
    Ok(triple_overlap_product(states, lambda)? / (u * v))
}

/// `⟨ψ(Δ₁), ψ(Δ₂)⟩`, referenced through the coherent state `|α₁⟩`.
pub fn overlap(a: &GaussianDescription, b: &GaussianDescription) -> Result<Complex64> {
    let n = a.modes();
    if b.modes() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.modes() });
    }
    let eye = RMat::identity(2 * n, 2 * n);
    let (da, db) = (a.displacement(), b.displacement());
    let lambda = a.alpha() - b.alpha();
    let cross: Complex64 = a.alpha().iter().zip(b.alpha().iter()).map(|(x, y)| x * y.conj()).sum();
    let u = Complex64::from_polar(1.0, -cross.im) * b.r().conj();
    overlaptriple([(&eye, &da), (a.cov(), &da), (b.cov(), &db)], u, a.r(), &lambda)
}
