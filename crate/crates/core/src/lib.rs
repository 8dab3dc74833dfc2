//! Strong simulation of bosonic linear-optics circuits acting on
//! superpositions of pure Gaussian states.
//!
//! A pure Gaussian state is carried as a [`GaussianDescription`]
//! `(Γ, α, r)`: covariance matrix, the label of the coherent state with the
//! same displacement, and the overlap `r = ⟨α, ψ⟩`. The extra scalar pins the
//! global phase, which is what makes overlaps between *different* branches of
//! a superposition — and hence norms and outcome densities — computable.
//!
//! Conventions: phase space is ordered `(Q₁,P₁,…,Qₙ,Pₙ)`, the vacuum has
//! `Γ = I`, coherent states are `|α⟩ = D(−α)|0⟩`, and mode indices in
//! [`GateSpec`] are 1-based.

#![no_std]
#![allow(clippy::many_single_char_names)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod linalg;

pub mod circuit;
pub mod evolution;
pub mod gates;
pub mod measurement;
pub mod moments;
pub mod overlaps;
pub mod phase_space;
pub mod sampling;
pub mod states;
pub mod superposition;

pub use circuit::{
    evolve, simulate_approx, simulate_exact, ApproxInfo, ApproxOptions, CircuitSpec, Method, SimulationResult,
};
pub use error::{Error, Result};
pub use evolution::{apply_beamsplitter, apply_displacement, apply_phaseshift, apply_squeeze, apply_unitary};
pub use gates::{gate_symplectic, GateSpec};
pub use measurement::{heterodyne_density, postmeasure, HeterodyneOutcome, DENSITY_FLOOR};
pub use moments::{superposition_energy_exact, superposition_moments};
pub use overlaps::{
    branched_sqrt_det, coherent_overlap, overlap, overlaptriple, pair_fidelity, triple_overlap_product, BranchedSqrtDet,
};
pub use phase_space::{
    coherent_description, energy_of_gaussian, hat_d, hat_d_inv, omega, random_pure_description, validate_description,
    GaussianDescription, ValidityReport,
};
pub use sampling::{FastNormPlan, NormEstimate, SampleRunner, Sequential};
pub use states::{appendix_d_state, cat_state, gkp_comb, Parity};
pub use superposition::{
    circuit_energy_bound, circuit_energy_bound_with, exact_norm, fast_norm, measureprob_approx, measureprob_exact,
    post_measurement_superposition, typical_parameters, EnergyRule, GaussianSuperposition, PostMeasurement,
    TypicalityParams,
};

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

/// Real matrix.
pub type RMat = DMatrix<f64>;
/// Real vector.
pub type RVec = DVector<f64>;
/// Complex matrix.
pub type CMat = DMatrix<Complex64>;
/// Complex vector.
pub type CVec = DVector<Complex64>;
