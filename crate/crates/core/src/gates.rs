//! Gate set and its phase-space action.

// Inherent when std is linked anywhere in the build.
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::phase_space::hat_d;
use crate::{CVec, Error, RMat, RVec, Result};

/// A Gaussian unitary from the generator set. Mode indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    /// `D(α) = exp(i d̂(α)ᵀ Ω R)`; maps `|β⟩` to `|β − α⟩` up to phase.
    Displacement { alpha: Vec<Complex64> },
    /// `F_j(φ) = exp(−iφ a_j†a_j)`.
    PhaseShift { phi: f64, mode: usize },
    /// Mixes modes `j` and `k`: `α_j → α_j cos ω − iα_k sin ω`.
    Beamsplitter { omega: f64, modes: (usize, usize) },
    /// `S_j(z) = exp(z/2 (a_j² − a_j†²))`; `z ≠ 0`.
    Squeeze { z: f64, mode: usize },
}

fn check_mode(mode: usize, n: usize) -> Result<usize> {
    if mode == 0 || mode > n {
        return Err(Error::ModeOutOfRange { mode, modes: n });
    }
    Ok(mode - 1)
}

fn finite(x: f64, name: &'static str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, reason: "must be finite" })
    }
}

impl GateSpec {
    /// Checks parameters against an `n`-mode register.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            GateSpec::Displacement { alpha } => {
                if alpha.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: alpha.len() });
                }
                for a in alpha {
                    finite(a.re, "alpha")?;
                    finite(a.im, "alpha")?;
                }
            }
            GateSpec::PhaseShift { phi, mode } => {
                finite(*phi, "phi")?;
                check_mode(*mode, n)?;
            }
            GateSpec::Beamsplitter { omega, modes: (j, k) } => {
                finite(*omega, "omega")?;
                check_mode(*j, n)?;
                check_mode(*k, n)?;
                if j == k {
                    return Err(Error::InvalidParameter { name: "modes", reason: "beamsplitter modes must differ" });
                }
            }
            GateSpec::Squeeze { z, mode } => {
                finite(*z, "z")?;
                if *z == 0.0 {
                    return Err(Error::InvalidParameter { name: "z", reason: "zero squeezing is a degenerate no-op" });
                }
                check_mode(*mode, n)?;
            }
        }
        Ok(())
    }

    pub fn is_squeeze(&self) -> bool {
        matches!(self, GateSpec::Squeeze { .. })
    }
}

pub(crate) fn phase_block(phi: f64) -> [[f64; 2]; 2] {
    let (s, c) = phi.sin_cos();
    [[c, s], [-s, c]]
}

/// Symplectic matrix `S` and vector `s` such that the gate maps
/// `(Γ, d) ↦ (SΓSᵀ, Sd + s)`.
///
/// For a displacement `s = −d̂(α)`, matching `D(α)|β⟩ ∝ |β − α⟩`.
pub fn gate_symplectic(g: &GateSpec, n: usize) -> Result<(RMat, RVec)> {
    g.validate(n)?;
    let mut s = RMat::identity(2 * n, 2 * n);
    let mut v = RVec::zeros(2 * n);
    match g {
        GateSpec::Displacement { alpha } => {
            v = -hat_d(&CVec::from_column_slice(alpha));
        }
        GateSpec::PhaseShift { phi, mode } => {
            let j = 2 * (mode - 1);
            let b = phase_block(*phi);
            for (a, row) in b.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    s[(j + a, j + c)] = *x;
                }
            }
        }
        GateSpec::Beamsplitter { omega, modes: (j, k) } => {
            let (sn, cs) = omega.sin_cos();
            let (qj, pj, qk, pk) = (2 * (j - 1), 2 * (j - 1) + 1, 2 * (k - 1), 2 * (k - 1) + 1);
            s[(qj, qj)] = cs;
            s[(pj, pj)] = cs;
            s[(qk, qk)] = cs;
            s[(pk, pk)] = cs;
            s[(qj, pk)] = sn;
            s[(pj, qk)] = -sn;
            s[(qk, pj)] = sn;
            s[(pk, qj)] = -sn;
        }
        GateSpec::Squeeze { z, mode } => {
            let j = 2 * (mode - 1);
            s[(j, j)] = (-z).exp();
            s[(j + 1, j + 1)] = z.exp();
        }
    }
    Ok((s, v))
}
