//! First and second moments of superpositions, computed from transition
//! ("weak") moments between branches.
//!
//! For pure Gaussian states `ψ_j`, `ψ_k` with nonzero overlap the quantities
//! `⟨ψ_k|R_a|ψ_j⟩/⟨ψ_k|ψ_j⟩ = m_a` and
//! `⟨ψ_k|{R_a,R_b}|ψ_j⟩/⟨ψ_k|ψ_j⟩ = S_ab + 2 m_a m_b` follow from the linear
//! annihilators of each state: `ψ_j` is killed by `vᵀ(R − d_j)` for
//! `v ∈ ker(Γ_j + iΩ)`, and `⟨ψ_k|` by the conjugate family.

use num_complex::Complex64;

use crate::linalg::{complexify, complexify_vec, solve_c, I};
use crate::overlaps::overlap;
use crate::phase_space::{omega, GaussianDescription};
use crate::superposition::GaussianSuperposition;
use crate::{CMat, CVec, Error, RMat, RVec, Result};

pub(crate) struct Transition {
    pub overlap: Complex64,
    /// Weak mean `m`.
    pub mean: CVec,
    /// Symmetrized weak covariance `S` (equals `Γ` when `k = j`).
    pub sym: CMat,
}

/// Moments of `⟨ψ_k| · |ψ_j⟩`.
pub(crate) fn transition(k: &GaussianDescription, j: &GaussianDescription) -> Result<Option<Transition>> {
    let ov = overlap(k, j)?;
    if ov.norm() < 1e-300 {
        return Ok(None);
    }
    let n = j.modes();
    let om = complexify(&omega(n));
    let eye = CMat::identity(2 * n, 2 * n);
    let half = Complex64::new(0.5, 0.0);
    // Range of P_j is ker(Γ_j + iΩ); range of Q_k is ker(Γ_k − iΩ).
    let p = (&eye - &om * complexify(j.cov()) * I) * half;
    let q = (&eye + &om * complexify(k.cov()) * I) * half;
    let sum = &p + &q;
    let rhs = (&om * &p * (-I)) + (&om * &q * I);
    // S · sum = rhs  ⇔  sumᵀ Sᵀ = rhsᵀ
    let sym = solve_c(&sum.transpose(), &rhs.transpose(), "weak covariance")?.transpose();
    let b = p.transpose() * complexify_vec(&j.displacement()) + q.transpose() * complexify_vec(&k.displacement());
    let mean = solve_c(&sum.transpose(), &CMat::from_column_slice(2 * n, 1, b.as_slice()), "weak mean")?;
    Ok(Some(Transition { overlap: ov, mean: mean.column(0).into_owned(), sym }))
}

/// `⟨Ψ, HΨ⟩ / ‖Ψ‖²` with `H = Σ_j (Q_j² + P_j² + 1)`.
pub fn superposition_energy_exact(psi: &GaussianSuperposition) -> Result<f64> {
    let n = psi.modes() as f64;
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = Complex64::new(0.0, 0.0);
    for (ck, dk) in psi.terms() {
        for (cj, dj) in psi.terms() {
            if let Some(t) = transition(dk, dj)? {
                let w = ck.conj() * cj * t.overlap;
                let kernel = t.sym.trace() * 0.5 + t.mean.iter().map(|m| m * m).sum::<Complex64>() + n;
                num += w * kernel;
                den += w;
            }
        }
    }
    if !(den.re > 0.0) {
        return Err(Error::Inconsistent("superposition has zero norm"));
    }
    Ok(num.re / den.re)
}

/// Displacement vector and covariance matrix of the (normalized) state `Ψ`.
pub fn superposition_moments(psi: &GaussianSuperposition) -> Result<(RVec, RMat)> {
    let dim = 2 * psi.modes();
    let mut first = CVec::zeros(dim);
    let mut second = CMat::zeros(dim, dim);
    let mut den = Complex64::new(0.0, 0.0);
    for (ck, dk) in psi.terms() {
        for (cj, dj) in psi.terms() {
            if let Some(t) = transition(dk, dj)? {
                let w = ck.conj() * cj * t.overlap;
                first += &t.mean * w;
                second += (&t.sym + &t.mean * t.mean.transpose() * Complex64::new(2.0, 0.0)) * w;
                den += w;
            }
        }
    }
    if !(den.re > 0.0) {
        return Err(Error::Inconsistent("superposition has zero norm"));
    }
    let d = first.map(|z| z.re / den.re);
    let g = second.map(|z| z.re / den.re) - &d * d.transpose() * 2.0;
    Ok((d, (&g + g.transpose()) * 0.5))
}
