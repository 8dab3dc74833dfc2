use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{check_modes, Error, Result, DEFAULT_TAIL_TOL};

/// Amplitudes over occupation tuples, mode 0 most significant:
/// index `Σ_j n_j · cutoff^(modes−1−j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    modes: usize,
    cutoff: usize,
    amps: DVector<Complex64>,
}

impl FockVector {
    pub fn new(modes: usize, cutoff: usize, amps: DVector<Complex64>) -> Result<Self> {
        check_modes(modes)?;
        if cutoff == 0 {
            return Err(Error::InvalidParameter("cutoff must be positive"));
        }
        if amps.len() != cutoff.pow(modes as u32) {
            return Err(Error::Shape("amplitude count is not cutoff^modes"));
        }
        Ok(Self { modes, cutoff, amps })
    }

    pub fn zeros(modes: usize, cutoff: usize) -> Result<Self> {
        Self::new(modes, cutoff, DVector::zeros(cutoff.pow(modes as u32)))
    }

    pub fn vacuum(modes: usize, cutoff: usize) -> Result<Self> {
        let mut v = Self::zeros(modes, cutoff)?;
        v.amps[0] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    /// Number state `|n₁, …⟩`.
    pub fn basis(occupations: &[usize], cutoff: usize) -> Result<Self> {
        let mut v = Self::zeros(occupations.len(), cutoff)?;
        if occupations.iter().any(|&n| n >= cutoff) {
            return Err(Error::InvalidParameter("occupation exceeds cutoff"));
        }
        let idx = v.index(occupations);
        v.amps[idx] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn index(&self, occ: &[usize]) -> usize {
        occ.iter().fold(0, |acc, &n| acc * self.cutoff + n)
    }

    pub fn occupations(&self, mut idx: usize) -> Vec<usize> {
        let mut occ = vec![0; self.modes];
        for j in (0..self.modes).rev() {
            occ[j] = idx % self.cutoff;
            idx /= self.cutoff;
        }
        occ
    }

    pub fn amp(&self, occ: &[usize]) -> Complex64 {
        self.amps[self.index(occ)]
    }

    pub(crate) fn amps_mut(&mut self) -> &mut DVector<Complex64> {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if !(n > 0.0) {
            return Err(Error::InvalidParameter("cannot normalize a zero vector"));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { amps: &self.amps * c, ..self.clone() }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.modes != other.modes || self.cutoff != other.cutoff {
            return Err(Error::Shape("vectors differ in modes or cutoff"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self { amps: &self.amps + &other.amps, ..self.clone() })
    }

    /// `⟨self, other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_shape(other)?;
        Ok(self.amps.dotc(&other.amps))
    }

    /// Zero-pads or truncates to a new cutoff.
    pub fn resized(&self, cutoff: usize) -> Result<Self> {
        let mut out = Self::zeros(self.modes, cutoff)?;
        for i in 0..self.len() {
            let occ = self.occupations(i);
            if occ.iter().all(|&n| n < cutoff) {
                let j = out.index(&occ);
                out.amps[j] = self.amps[i];
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.cutoff != other.cutoff {
            return Err(Error::Shape("tensor factors differ in cutoff"));
        }
        let amps =
            DVector::from_fn(self.len() * other.len(), |i, _| self.amps[i / other.len()] * other.amps[i % other.len()]);
        Self::new(self.modes + other.modes, self.cutoff, amps)
    }

    /// Mass on tuples with some `n_j` in the top tenth of `0..cutoff`,
    /// relative to the total.
    pub fn tail_mass(&self) -> f64 {
        let total = self.norm_sqr();
        if self.modes == 0 || !(total > 0.0) {
            return 0.0;
        }
        let edge = self.cutoff - (self.cutoff / 10).max(1);
        let tail: f64 = (0..self.len())
            .filter(|&i| self.occupations(i).iter().any(|&n| n >= edge))
            .map(|i| self.amps[i].norm_sqr())
            .sum();
        tail / total
    }

    pub fn check_tail(&self, tol: f64) -> Result<()> {
        let mass = self.tail_mass();
        if !(mass <= tol) {
            return Err(Error::TailMass { mass, cutoff: self.cutoff, tol });
        }
        Ok(())
    }

    /// `a_j ψ`; exact on the truncated space.
    pub fn lower(&self, mode: usize) -> Result<Self> {
        if mode >= self.modes {
            return Err(Error::ModeOutOfRange { mode, modes: self.modes });
        }
        let mut out = Self::zeros(self.modes, self.cutoff)?;
        let stride = self.cutoff.pow((self.modes - 1 - mode) as u32);
        for i in 0..self.len() {
            let n = (i / stride) % self.cutoff;
            if n + 1 < self.cutoff {
                out.amps[i] = self.amps[i + stride] * ((n + 1) as f64).sqrt();
            }
        }
        Ok(out)
    }

    /// `⟨ψ, H ψ⟩ / ‖ψ‖²` with `H = Σ_j (Q_j² + P_j² + 1) = Σ_j (2n_j + 2)`.
    pub fn energy(&self) -> Result<f64> {
        let norm = self.norm_sqr();
        let mut e = 0.0;
        for j in 0..self.modes {
            e += 2.0 * self.lower(j)?.norm_sqr() / norm + 2.0;
        }
        Ok(e)
    }

    /// Mean vector `d = ⟨R⟩` and covariance `Γ = ⟨{ΔR, ΔRᵀ}⟩` of the
    /// normalized state.
    pub fn moments(&self) -> Result<(DVector<f64>, DMatrix<f64>)> {
        let n = self.modes;
        let norm = self.norm_sqr();
        let low: Vec<Self> = (0..n).map(|j| self.lower(j)).collect::<Result<_>>()?;
        let ev = |x: &Self, y: &Self| x.amps.dotc(&y.amps) / norm;
        let mean_a: Vec<Complex64> = low.iter().map(|l| ev(self, l)).collect();
        // aa[i][j] = ⟨a_i a_j⟩, ad[i][j] = ⟨a_i† a_j⟩
        let mut aa = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        let mut ad = aa.clone();
        for i in 0..n {
            for j in 0..n {
                aa[i][j] = ev(self, &low[j].lower(i)?);
                ad[i][j] = ev(&low[i], &low[j]);
            }
        }
        // R_a = u a_m + ū a_m† with m the mode of a.
        let coef = |a: usize| {
            if a % 2 == 0 {
                Complex64::new(FRAC_1_SQRT_2, 0.0)
            } else {
                Complex64::new(0.0, -FRAC_1_SQRT_2)
            }
        };
        let d = DVector::from_fn(2 * n, |a, _| {
            let u = coef(a);
            2.0 * (u * mean_a[a / 2]).re
        });
        let mut g = DMatrix::zeros(2 * n, 2 * n);
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (i, j) = (a / 2, b / 2);
                let (ua, ub) = (coef(a), coef(b));
                let delta = if i == j { 1.0 } else { 0.0 };
                let rr = ua * ub * aa[i][j]
                    + ua * ub.conj() * (ad[j][i] + delta)
                    + ua.conj() * ub * ad[i][j]
                    + ua.conj() * ub.conj() * aa[j][i].conj();
                g[(a, b)] = 2.0 * rr.re - 2.0 * d[a] * d[b];
            }
        }
        Ok((d, g))
    }

    /// `(⟨β| ⊗ I) ψ` on the unmeasured modes; `β` addresses the leading
    /// modes. Not normalized.
    pub fn project(&self, beta: &[Complex64]) -> Result<Self> {
        let k = beta.len();
        if k == 0 || k > self.modes {
            return Err(Error::InvalidParameter("outcome length must be in 1..=modes"));
        }
        let bra = coherent_unchecked(beta, self.cutoff)?;
        let rest = self.modes - k;
        let inner = self.cutoff.pow(rest as u32);
        let amps =
            DVector::from_fn(inner, |i, _| (0..bra.len()).map(|o| bra.amps[o].conj() * self.amps[o * inner + i]).sum());
        Self::new(rest, self.cutoff, amps)
    }

    /// Heterodyne density `‖(⟨β| ⊗ I) ψ‖² / πᵏ` (not divided by `‖ψ‖²`).
    pub fn heterodyne_density(&self, beta: &[Complex64]) -> Result<f64> {
        Ok(self.project(beta)?.norm_sqr() / PI.powi(beta.len() as i32))
    }

    /// `Π_β ψ / ‖Π_β ψ‖` with `Π_β = |β⟩⟨β| ⊗ I`.
    pub fn post_measurement(&self, beta: &[Complex64]) -> Result<Self> {
        let rest = self.project(beta)?.normalized()?;
        coherent_unchecked(beta, self.cutoff)?.tensor(&rest)
    }
}

pub(crate) fn coherent_unchecked(alpha: &[Complex64], cutoff: usize) -> Result<FockVector> {
    check_modes(alpha.len())?;
    let mut v = FockVector::vacuum(0, cutoff)?;
    for &a in alpha {
        let mut col = DVector::zeros(cutoff);
        col[0] = Complex64::new((-0.5 * a.norm_sqr()).exp(), 0.0);
        for j in 1..cutoff {
            col[j] = col[j - 1] * a / (j as f64).sqrt();
        }
        v = v.tensor(&FockVector::new(1, cutoff, col)?)?;
    }
    Ok(v)
}

/// Coherent state `e^{−|α|²/2} Σ αⁿ/√n! |n⟩` per mode.
pub fn coherent(alpha: &[Complex64], cutoff: usize) -> Result<FockVector> {
    let v = coherent_unchecked(alpha, cutoff)?;
    v.check_tail(DEFAULT_TAIL_TOL)?;
    Ok(v)
}

/// `exp(z/2 (a² − a†²))|0⟩` from its even-number series.
pub fn squeezed_vacuum(z: f64, cutoff: usize) -> Result<FockVector> {
    let v = squeezed_vacuum_unchecked(z, cutoff)?;
    v.check_tail(DEFAULT_TAIL_TOL)?;
    Ok(v)
}

pub(crate) fn squeezed_vacuum_unchecked(z: f64, cutoff: usize) -> Result<FockVector> {
    if !z.is_finite() {
        return Err(Error::InvalidParameter("z must be finite"));
    }
    let mut col = DVector::zeros(cutoff);
    let t = z.tanh();
    let mut c = 1.0 / z.cosh().sqrt();
    let mut k = 0usize;
    while 2 * k < cutoff {
        col[2 * k] = Complex64::new(c, 0.0);
        c *= -t * (((2 * k + 1) as f64) / ((2 * k + 2) as f64)).sqrt();
        k += 1;
    }
    FockVector::new(1, cutoff, col)
}
