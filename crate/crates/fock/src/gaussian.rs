//! Pure Gaussian states in the number basis.
//!
//! A pure covariance factors as `Γ = O Z Oᵀ` with `O` orthogonal symplectic
//! and `Z = ⊕ diag(e^{−2z_j}, e^{2z_j})`, so the state is a passive unitary
//! applied to a product of squeezed vacua, then displaced.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::gates::{apply_passive, displace};
use crate::vector::{coherent_unchecked, squeezed_vacuum_unchecked, FockVector};
use crate::{check_modes, cutoff_cap, Error, Result, DEFAULT_TAIL_TOL};

/// `(Γ, α, r)`: covariance, coherent label of the displacement, and the
/// reference overlap `r = ⟨α, ψ⟩` that fixes the global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpec {
    pub cov: DMatrix<f64>,
    pub alpha: Vec<Complex64>,
    pub r: Complex64,
}

/// Cutoff policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cutoff {
    Fixed(usize),
    /// Start at `start` and grow by half until the tail mass is below `tol`.
    Auto {
        start: usize,
        tol: f64,
    },
}

impl Default for Cutoff {
    fn default() -> Self {
        Cutoff::Auto { start: 32, tol: DEFAULT_TAIL_TOL }
    }
}

/// Squeezing parameters and the complex form `u` of `O`
/// (`u_jk = O_{2j,2k} + i O_{2j+1,2k}`).
struct Euler {
    z: Vec<f64>,
    u: DMatrix<Complex64>,
}

fn omega(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(2 * n, 2 * n, |p, q| {
        if p / 2 != q / 2 {
            0.0
        } else if p % 2 == 0 && q == p + 1 {
            1.0
        } else if p % 2 == 1 && q + 1 == p {
            -1.0
        } else {
            0.0
        }
    })
}

fn euler(spec: &GaussianSpec) -> Result<Euler> {
    let n = spec.alpha.len();
    check_modes(n)?;
    let g = &spec.cov;
    if g.nrows() != 2 * n || g.ncols() != 2 * n {
        return Err(Error::Shape("covariance is not 2n × 2n"));
    }
    let om = omega(n);
    let scale = g.norm().max(1.0);
    if (g * &om * g - &om).norm() > 1e-8 * scale * scale {
        return Err(Error::NotPure("Γ is not symplectic"));
    }
    // Eigenvectors with eigenvalue λ ≥ 1 are pairwise Ω-orthogonal and Ωᵀv has
    // eigenvalue 1/λ. Gram–Schmidt over (v, Ωᵀv) keeps the frame symplectic
    // when eigenvalues are (nearly) degenerate.
    let eig = SymmetricEigen::new(g.clone());
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let mut o = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let mut filled = 0;
    for &k in &order {
        if filled == n {
            break;
        }
        let mut v = eig.eigenvectors.column(k).into_owned();
        for c in 0..2 * filled {
            let col = o.column(c).into_owned();
            v -= &col * col.dot(&v);
        }
        let norm = v.norm();
        if norm < 0.5 {
            continue;
        }
        v /= norm;
        let w = om.transpose() * &v;
        o.set_column(2 * filled, &v);
        o.set_column(2 * filled + 1, &w);
        filled += 1;
    }
    if filled < n {
        return Err(Error::NotPure("no symplectic frame diagonalizes Γ"));
    }
    let d = o.transpose() * g * &o;
    let offdiag = d.iter().enumerate().filter(|(i, _)| i % (2 * n + 1) != 0).map(|(_, x)| x.abs()).fold(0.0, f64::max);
    if offdiag > 1e-7 * scale {
        return Err(Error::NotPure("Γ is not diagonal in its symplectic frame"));
    }
    let z = (0..n).map(|j| -0.5 * d[(2 * j, 2 * j)].ln()).collect();
    let u = DMatrix::from_fn(n, n, |j, k| Complex64::new(o[(2 * j, 2 * k)], o[(2 * j + 1, 2 * k)]));
    Ok(Euler { z, u })
}

fn expand(e: &Euler, alpha: &[Complex64], cutoff: usize) -> Result<FockVector> {
    let mut v = FockVector::vacuum(0, cutoff)?;
    for &z in &e.z {
        v = v.tensor(&squeezed_vacuum_unchecked(z, cutoff)?)?;
    }
    let v = apply_passive(&v, &e.u)?;
    // exp(−βa† + β̄a) shifts ⟨a⟩ by −β.
    let beta: Vec<Complex64> = alpha.iter().map(|a| -a).collect();
    displace(&v, &beta)
}

fn fix_phase(v: FockVector, spec: &GaussianSpec) -> Result<FockVector> {
    let v = v.normalized()?;
    let ov = coherent_unchecked(&spec.alpha, v.cutoff())?.inner(&v)?;
    if !(ov.norm() > 0.0) || !(spec.r.norm() > 0.0) {
        return Err(Error::InvalidParameter("reference overlap vanishes"));
    }
    Ok(v.scaled((spec.r / spec.r.norm()) * (ov.norm() / ov)))
}

/// Normalized number-basis vector of `ψ(Γ, α, r)`, with the phase chosen so
/// that `⟨coherent(α), v⟩` has the argument of `r`.
pub fn from_gaussian(spec: &GaussianSpec, cutoff: Cutoff) -> Result<FockVector> {
    let n = spec.alpha.len();
    let e = euler(spec)?;
    match cutoff {
        Cutoff::Fixed(c) => {
            let v = expand(&e, &spec.alpha, c)?;
            v.check_tail(DEFAULT_TAIL_TOL)?;
            fix_phase(v, spec)
        }
        Cutoff::Auto { start, tol } => {
            let cap = cutoff_cap(n);
            let mut c = start.max(4);
            loop {
                let v = expand(&e, &spec.alpha, c)?;
                if v.tail_mass() <= tol {
                    return fix_phase(v, spec);
                }
                if c >= cap {
                    return Err(Error::CutoffCap { cap });
                }
                c = (c + c / 2).min(cap);
            }
        }
    }
}

/// `Σ_t c_t ψ(Δ_t)` at a common cutoff (not normalized).
pub fn superposition(terms: &[(Complex64, GaussianSpec)], cutoff: Cutoff) -> Result<FockVector> {
    let Some((_, first)) = terms.first() else {
        return Err(Error::InvalidParameter("empty superposition"));
    };
    let n = first.alpha.len();
    let common = match cutoff {
        Cutoff::Fixed(c) => c,
        Cutoff::Auto { .. } => {
            let mut c = 0;
            for (_, s) in terms {
                c = c.max(from_gaussian(s, cutoff)?.cutoff());
            }
            c
        }
    };
    let mut acc = FockVector::zeros(n, common)?;
    for (w, s) in terms {
        if s.alpha.len() != n {
            return Err(Error::Shape("terms differ in mode count"));
        }
        let v = fix_phase(expand(&euler(s)?, &s.alpha, common)?, s)?;
        acc = acc.add(&v.scaled(*w))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::{coherent, squeezed_vacuum};
    use nalgebra::DVector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_and_coherent() {
        let vac = GaussianSpec { cov: DMatrix::identity(2, 2), alpha: vec![c(0.0, 0.0)], r: c(1.0, 0.0) };
        let v = from_gaussian(&vac, Cutoff::Fixed(12)).unwrap();
        assert!((v.amp(&[0]) - c(1.0, 0.0)).norm() < 1e-14);
        let a = [c(0.4, -0.9)];
        let coh = GaussianSpec { cov: DMatrix::identity(2, 2), alpha: a.to_vec(), r: c(0.0, 1.0) };
        let v = from_gaussian(&coh, Cutoff::default()).unwrap();
        let expect = coherent(&a, v.cutoff()).unwrap().scaled(c(0.0, 1.0));
        assert!((v.inner(&expect).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn squeezed_vacuum_from_covariance() {
        let z = 0.9f64;
        let cov = DMatrix::from_diagonal(&DVector::from_vec(vec![(-2.0 * z).exp(), (2.0 * z).exp()]));
        let spec = GaussianSpec { cov, alpha: vec![c(0.0, 0.0)], r: c(1.0, 0.0) };
        let v = from_gaussian(&spec, Cutoff::Fixed(120)).unwrap();
        let s = squeezed_vacuum(z, 120).unwrap();
        assert!((v.inner(&s).unwrap() - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn rejects_mixed_covariance() {
        let spec = GaussianSpec { cov: DMatrix::identity(2, 2) * 2.0, alpha: vec![c(0.0, 0.0)], r: c(1.0, 0.0) };
        assert!(matches!(from_gaussian(&spec, Cutoff::default()), Err(Error::NotPure(_))));
    }
}
