//! Phase-space conventions and the pure-state description type.

// Inherent when std is linked anywhere in the build.
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::linalg::QR;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::max_abs;
use crate::{CMat, CVec, Error, RMat, RVec, Result};

const SQRT2: f64 = core::f64::consts::SQRT_2;

/// Block-diagonal symplectic form with `n` copies of `[[0,1],[-1,0]]`.
pub fn omega(n: usize) -> RMat {
    let mut m = RMat::zeros(2 * n, 2 * n);
    for j in 0..n {
        m[(2 * j, 2 * j + 1)] = 1.0;
        m[(2 * j + 1, 2 * j)] = -1.0;
    }
    m
}

/// `d̂(α) = √2 (Re α₁, Im α₁, …)`.
pub fn hat_d(alpha: &CVec) -> RVec {
    RVec::from_fn(2 * alpha.len(), |i, _| {
        let a = alpha[i / 2];
        SQRT2 * if i % 2 == 0 { a.re } else { a.im }
    })
}

/// Inverse of [`hat_d`].
pub fn hat_d_inv(d: &RVec) -> Result<CVec> {
    if d.len() % 2 != 0 {
        return Err(Error::DimensionMismatch { expected: d.len() + 1, found: d.len() });
    }
    Ok(CVec::from_fn(d.len() / 2, |j, _| Complex64::new(d[2 * j], d[2 * j + 1]) / SQRT2))
}

/// A pure Gaussian state together with its phase: `(Γ, α, r)` where `r` is
/// the overlap of the canonical coherent state `|α⟩` with the state.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianDescription {
    cov: RMat,
    alpha: CVec,
    r: Complex64,
}

impl GaussianDescription {
    /// Checks shapes and finiteness only; use [`validate_description`] for
    /// physical validity.
    pub fn new(cov: RMat, alpha: CVec, r: Complex64) -> Result<Self> {
        let n = alpha.len();
        if n == 0 {
            return Err(Error::InvalidParameter { name: "alpha", reason: "at least one mode is required" });
        }
        if cov.nrows() != 2 * n || cov.ncols() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, found: cov.nrows() });
        }
        if cov.iter().any(|x| !x.is_finite())
            || alpha.iter().any(|a| !a.re.is_finite() || !a.im.is_finite())
            || !r.re.is_finite()
            || !r.im.is_finite()
        {
            return Err(Error::InvalidParameter { name: "description", reason: "non-finite entry" });
        }
        if r == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter { name: "r", reason: "reference overlap must be nonzero" });
        }
        Ok(Self::from_parts(cov, alpha, r))
    }

    pub(crate) fn from_parts(cov: RMat, alpha: CVec, r: Complex64) -> Self {
        Self { cov, alpha, r }
    }

    pub fn modes(&self) -> usize {
        self.alpha.len()
    }
    pub fn cov(&self) -> &RMat {
        &self.cov
    }
    pub fn alpha(&self) -> &CVec {
        &self.alpha
    }
    pub fn r(&self) -> Complex64 {
        self.r
    }
    /// Displacement vector `d̂(α)`.
    pub fn displacement(&self) -> RVec {
        hat_d(&self.alpha)
    }

    pub fn into_parts(self) -> (RMat, CVec, Complex64) {
        (self.cov, self.alpha, self.r)
    }

    /// `self ⊗ other`, with `self` occupying the leading modes.
    pub fn tensor(&self, other: &GaussianDescription) -> GaussianDescription {
        let (a, b) = (2 * self.modes(), 2 * other.modes());
        let mut cov = RMat::zeros(a + b, a + b);
        cov.view_mut((0, 0), (a, a)).copy_from(&self.cov);
        cov.view_mut((a, a), (b, b)).copy_from(&other.cov);
        let alpha =
            CVec::from_iterator(self.modes() + other.modes(), self.alpha.iter().chain(other.alpha.iter()).copied());
        Self::from_parts(cov, alpha, self.r * other.r)
    }
}

/// Outcome of [`validate_description`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    /// `Γ + iΩ ⪰ −tol`.
    pub valid: bool,
    /// `‖ΓΩΓ − Ω‖_max ≤ tol`.
    pub pure: bool,
    /// `| |r|² − 2ⁿ/√det(I+Γ) | ≤ tol`.
    pub r_consistent: bool,
    pub min_eigenvalue: f64,
    pub purity_defect: f64,
    pub r_defect: f64,
}

impl ValidityReport {
    pub fn all(&self) -> bool {
        self.valid && self.pure && self.r_consistent
    }
}

/// `|r|²` implied by the covariance matrix.
pub(crate) fn r_norm_sqr(cov: &RMat) -> Result<f64> {
    let n = cov.nrows() / 2;
    let det = (RMat::identity(2 * n, 2 * n) + cov).determinant();
    if !(det > 0.0) {
        return Err(Error::Singular("I + Γ"));
    }
    Ok(f64::powi(2.0, n as i32) / det.sqrt())
}

pub fn validate_description(d: &GaussianDescription, tol: f64) -> Result<ValidityReport> {
    let n = d.modes();
    let cov = d.cov();
    if cov.nrows() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, found: cov.nrows() });
    }
    let om = omega(n);
    // Γ + iΩ is Hermitian; its spectrum (doubled) is that of the real
    // symmetric embedding [[Γ, −Ω], [Ω, Γ]].
    let m = 2 * n;
    let mut emb = RMat::zeros(2 * m, 2 * m);
    emb.view_mut((0, 0), (m, m)).copy_from(cov);
    emb.view_mut((m, m), (m, m)).copy_from(cov);
    emb.view_mut((0, m), (m, m)).copy_from(&(-&om));
    emb.view_mut((m, 0), (m, m)).copy_from(&om);
    let sym = (&emb + emb.transpose()) * 0.5;
    let min_eigenvalue = sym.symmetric_eigenvalues().min();
    let purity_defect = max_abs(&(cov * &om * cov - &om));
    let r_defect = match r_norm_sqr(cov) {
        Ok(expected) => (d.r().norm_sqr() - expected).abs(),
        Err(_) => f64::INFINITY,
    };
    Ok(ValidityReport {
        valid: min_eigenvalue >= -tol,
        pure: purity_defect <= tol,
        r_consistent: r_defect <= tol,
        min_eigenvalue,
        purity_defect,
        r_defect,
    })
}

/// `⟨H⟩ = ½ tr Γ + dᵀd + n` for `H = Σ_j (Q_j² + P_j² + 1)`.
pub fn energy_of_gaussian(cov: &RMat, d: &RVec) -> f64 {
    0.5 * cov.trace() + d.norm_squared() + (cov.nrows() / 2) as f64
}

/// `(I, α, 1)`.
pub fn coherent_description(alpha: CVec) -> GaussianDescription {
    let n = alpha.len();
    GaussianDescription::from_parts(RMat::identity(2 * n, 2 * n), alpha, Complex64::new(1.0, 0.0))
}

/// Real representation of a unitary acting on annihilation operators, in the
/// interleaved ordering. Orthogonal and symplectic.
pub(crate) fn passive_symplectic(u: &CMat) -> RMat {
    let n = u.nrows();
    let mut k = RMat::zeros(2 * n, 2 * n);
    for j in 0..n {
        for l in 0..n {
            let z = u[(j, l)];
            k[(2 * j, 2 * l)] = z.re;
            k[(2 * j, 2 * l + 1)] = -z.im;
            k[(2 * j + 1, 2 * l)] = z.im;
            k[(2 * j + 1, 2 * l + 1)] = z.re;
        }
    }
    k
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let g = CMat::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let qr = QR::new(g);
    let (mut q, r) = qr.unpack();
    // Fix the phase freedom of QR so the law is Haar.
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Default bound on `|α_j|` used by [`random_pure_description`].
pub const RANDOM_ALPHA_MAX: f64 = 1.5;

/// Random pure description `Γ = K Z Kᵀ` with squeezing log-factors uniform in
/// `[−z_max, z_max]`, labels uniform in the disc of radius
/// [`RANDOM_ALPHA_MAX`] per mode and `r` real positive.
pub fn random_pure_description(n: usize, z_max: f64, seed: u64) -> Result<GaussianDescription> {
    random_pure_description_with(n, z_max, RANDOM_ALPHA_MAX, seed)
}

pub fn random_pure_description_with(n: usize, z_max: f64, alpha_max: f64, seed: u64) -> Result<GaussianDescription> {
    if n == 0 {
        return Err(Error::InvalidParameter { name: "n", reason: "at least one mode is required" });
    }
    if !(z_max >= 0.0) || !(alpha_max >= 0.0) {
        return Err(Error::InvalidParameter { name: "z_max", reason: "must be non-negative" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = passive_symplectic(&random_unitary(n, &mut rng));
    let mut z = RMat::zeros(2 * n, 2 * n);
    for j in 0..n {
        let t = z_max * (2.0 * rng.random::<f64>() - 1.0);
        z[(2 * j, 2 * j)] = (-2.0 * t).exp();
        z[(2 * j + 1, 2 * j + 1)] = (2.0 * t).exp();
    }
    let cov = &k * z * k.transpose();
    let cov = (&cov + cov.transpose()) * 0.5;
    let alpha: Vec<Complex64> = (0..n)
        .map(|_| {
            let rad = alpha_max * rng.random::<f64>().sqrt();
            let th = core::f64::consts::TAU * rng.random::<f64>();
            Complex64::from_polar(rad, th)
        })
        .collect();
    let r = r_norm_sqr(&cov)?.sqrt();
    Ok(GaussianDescription::from_parts(cov, CVec::from_vec(alpha), Complex64::new(r, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hat_d_examples() {
        assert_eq!(hat_d(&CVec::from_vec(alloc::vec![c(0.0, 0.0)])).as_slice(), &[0.0, 0.0]);
        let d = hat_d(&CVec::from_vec(alloc::vec![c(1.0, 2.0)]));
        assert!((d[0] - SQRT2).abs() < 1e-15 && (d[1] - 2.0 * SQRT2).abs() < 1e-15);
        let a = hat_d_inv(&RVec::from_vec(alloc::vec![SQRT2, 0.0, 0.0, SQRT2])).unwrap();
        assert!((a[0] - c(1.0, 0.0)).norm() < 1e-15 && (a[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn omega_identities() {
        let om = omega(3);
        assert_eq!(om.transpose(), -&om);
        assert_eq!(&om * &om, -RMat::identity(6, 6));
    }

    #[test]
    fn validity_examples() {
        let vac = coherent_description(CVec::zeros(1));
        assert!(validate_description(&vac, 1e-8).unwrap().all());

        let z = 1.0f64;
        let sq = GaussianDescription::new(
            RMat::from_diagonal(&RVec::from_vec(alloc::vec![(-2.0 * z).exp(), (2.0 * z).exp()])),
            CVec::zeros(1),
            c(1.0 / z.cosh().sqrt(), 0.0),
        )
        .unwrap();
        assert!(validate_description(&sq, 1e-8).unwrap().all());

        let bad = GaussianDescription::new(RMat::identity(2, 2) * 0.1, CVec::zeros(1), c(1.0, 0.0)).unwrap();
        assert!(!validate_description(&bad, 1e-8).unwrap().valid);
    }

    #[test]
    fn energy_examples() {
        let e = energy_of_gaussian(&RMat::identity(2, 2), &RVec::zeros(2));
        assert_eq!(e, 2.0);
        let d = hat_d(&CVec::from_vec(alloc::vec![c(1.0, 0.0)]));
        assert!((energy_of_gaussian(&RMat::identity(2, 2), &d) - 4.0).abs() < 1e-14);
        let sq = RMat::from_diagonal(&RVec::from_vec(alloc::vec![(-2.0f64).exp(), 2.0f64.exp()]));
        assert!((energy_of_gaussian(&sq, &RVec::zeros(2)) - 4.76220).abs() < 1e-5);
    }

    #[test]
    fn random_descriptions_are_valid_and_deterministic() {
        for n in 1..=3 {
            for seed in 0..20 {
                let d = random_pure_description(n, 1.5, seed).unwrap();
                let rep = validate_description(&d, 1e-9).unwrap();
                assert!(rep.all(), "{rep:?}");
                assert_eq!(d, random_pure_description(n, 1.5, seed).unwrap());
            }
        }
        let d = random_pure_description(2, 0.0, 3).unwrap();
        assert!(max_abs(&(d.cov() - RMat::identity(4, 4))) < 1e-12);
    }
}
