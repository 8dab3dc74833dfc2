//! Truncated number-basis backend for one and two modes.
//!
//! Everything here is brute force: states are dense amplitude vectors over
//! occupation tuples `(n₁, …)` with `n_j < cutoff`. Squeezing is the
//! exponential of the truncated generator; displacement, phase shift and
//! beamsplitter use exact recurrences for their matrix elements (checked
//! against the exponentials in the unit tests). Gaussian states are assembled
//! from squeezed vacua, a passive transform and a displacement. The crate
//! shares no code with the phase-space engine and is meant to be used as a
//! reference in tests and cross-checks.
//!
//! Conventions: `Q = (a + a†)/√2`, `P = −i(a − a†)/√2`, covariance
//! `Γ_ab = ⟨{ΔR_a, ΔR_b}⟩` (vacuum `Γ = I`), phase-space order
//! `(Q₁,P₁,Q₂,P₂)`. Mode indices are 0-based.

mod gates;
mod gaussian;
mod vector;

pub use gates::{gate_matrix, unitarity_defect, OracleGate};
pub use gaussian::{from_gaussian, superposition, Cutoff, GaussianSpec};
pub use vector::{coherent, squeezed_vacuum, FockVector};

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

/// Highest supported number of modes.
pub const MAX_MODES: usize = 2;

/// Default bound on the mass in the top tenth of the occupation range.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// Largest per-mode cutoff tried by automatic cutoff selection.
pub fn cutoff_cap(modes: usize) -> usize {
    if modes <= 1 {
        1024
    } else {
        384
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("the oracle supports at most {MAX_MODES} modes, got {0}")]
    TooManyModes(usize),
    #[error("mode {mode} out of range for {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error("tail mass {mass:e} at cutoff {cutoff} exceeds tolerance {tol:e}")]
    TailMass { mass: f64, cutoff: usize, tol: f64 },
    #[error("no cutoff up to {cap} meets the tail tolerance")]
    CutoffCap { cap: usize },
    #[error("gate lost norm {loss:e} to truncation (tolerance {tol:e})")]
    NormLoss { loss: f64, tol: f64 },
    #[error("not a pure Gaussian state: {0}")]
    NotPure(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_modes(modes: usize) -> Result<()> {
    if modes > MAX_MODES {
        return Err(Error::TooManyModes(modes));
    }
    Ok(())
}
