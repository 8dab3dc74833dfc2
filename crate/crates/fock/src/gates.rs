use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::vector::FockVector;
use crate::{Error, Result};

/// Generator-level description of a gate; modes are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleGate {
    /// `exp(−β·a† + β̄·a)` per mode, i.e. `|α⟩ ↦ e^{i Im(α β̄)} |α − β⟩`.
    Displacement(Vec<Complex64>),
    /// `exp(−iφ a†a)`.
    PhaseShift { phi: f64, mode: usize },
    /// `exp(−iω (a_j† a_k + a_k† a_j))`.
    Beamsplitter { omega: f64, modes: (usize, usize) },
    /// `exp(z/2 (a² − a†²))`.
    Squeeze { z: f64, mode: usize },
}

fn real_ladder(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 })
}

/// `exp(−iK)` for real symmetric `K`.
fn expm_symmetric(k: DMatrix<f64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(k);
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l)));
    &v * phases * v.transpose()
}

/// Extra levels beyond the cutoff kept while exponentiating a truncated
/// single-mode generator. Whatever reaches the padding edge has also left the
/// retained block, so it shows up as norm loss in [`FockVector::apply`].
fn padding(cutoff: usize) -> usize {
    cutoff + 64
}

/// Upper-left `cutoff × cutoff` block of `T exp(−iK_M) T†` with
/// `T = diag(e^{iθn})`, `K_M` a real symmetric generator on `M` levels.
fn single_mode(k: impl Fn(&DMatrix<f64>) -> DMatrix<f64>, theta: f64, cutoff: usize) -> DMatrix<Complex64> {
    let m = cutoff + padding(cutoff);
    let u = expm_symmetric(k(&real_ladder(m)));
    DMatrix::from_fn(cutoff, cutoff, |i, j| u[(i, j)] * Complex64::from_polar(1.0, theta * (i as f64 - j as f64)))
}

// With T = diag(e^{iθn}) one has T†aT = e^{iθ}a, which turns both generators
// below into real symmetric ones.

/// `⟨m|exp(−βa† + β̄a)|n⟩` for `m, n < cutoff`; exact on the truncated
/// block, no padding needed.
///
/// With `γ = −β` and `x = |γ|²`, the entries on the diagonal `m = n + k`,
/// `k ≥ 0`, are `γᵏ e^{−x/2} √(n!/m!) L_n^{(k)}(x)`, which obey the real
/// three-term recurrence
/// `√((n+1)(n+1+k)) D_{n+1} = (2n+1+k−x) D_n − √(n(n+k)) D_{n−1}`
/// started from the coherent amplitude `D_{k,0}`. Along each diagonal the
/// sequence only grows out of its forbidden region, so the recurrence is
/// stable. Entries above the diagonal follow from `D(γ)† = D(−γ)`.
fn displacement_matrix(beta: Complex64, cutoff: usize) -> DMatrix<Complex64> {
    let mut d = DMatrix::zeros(cutoff, cutoff);
    let lower = |g: Complex64, d: &mut DMatrix<Complex64>, transpose_conj: bool| {
        let x = g.norm_sqr();
        let mut head = Complex64::new((-0.5 * x).exp(), 0.0);
        for k in 0..cutoff {
            if k > 0 {
                head *= g / (k as f64).sqrt();
            }
            if transpose_conj && k == 0 {
                continue;
            }
            let kf = k as f64;
            let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), head);
            for n in 0..cutoff - k {
                let (row, col) = if transpose_conj { (n, n + k) } else { (n + k, n) };
                d[(row, col)] = if transpose_conj { cur.conj() } else { cur };
                let nf = n as f64;
                let next = (cur * (2.0 * nf + 1.0 + kf - x) - prev * (nf * (nf + kf)).sqrt())
                    / ((nf + 1.0) * (nf + 1.0 + kf)).sqrt();
                (prev, cur) = (cur, next);
            }
        }
    };
    lower(-beta, &mut d, false);
    lower(beta, &mut d, true);
    d
}

/// Same block through the padded exponential of the generator; kept to
/// cross-check the recurrence.
#[cfg(test)]
fn displacement_matrix_expm(beta: Complex64, cutoff: usize) -> DMatrix<Complex64> {
    // exp(−βa† + β̄a) = exp(−iG), G = i(β̄a − βa†). θ = arg β − π/2 gives
    // T†GT = |β|(a + a†).
    let theta = beta.arg() - std::f64::consts::FRAC_PI_2;
    let b = beta.norm();
    single_mode(|a| (a + a.transpose()) * b, theta, cutoff)
}

fn squeeze_matrix(z: f64, cutoff: usize) -> DMatrix<Complex64> {
    // exp(z/2 (a² − a†²)) = exp(−iG), G = i z/2 (a² − a†²). θ = π/4 gives
    // T†GT = −z/2 (a² + a†²).
    single_mode(
        |a| {
            let a2 = a * a;
            (&a2 + a2.transpose()) * (-z / 2.0)
        },
        std::f64::consts::FRAC_PI_4,
        cutoff,
    )
}

/// Complex product through four real products, which take the fast real
/// kernel.
fn cmul(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = ar * bi + ai * br;
    re.zip_map(&im, Complex64::new)
}

fn apply_single(v: &FockVector, mode: usize, u: &DMatrix<Complex64>) -> Result<FockVector> {
    let (n, cut) = (v.modes(), v.cutoff());
    if mode >= n {
        return Err(Error::ModeOutOfRange { mode, modes: n });
    }
    let stride = cut.pow((n - 1 - mode) as u32);
    let outer = cut.pow(mode as u32);
    let mut out = v.clone();
    if stride == 1 {
        // the last mode varies fastest: columns of a cut × outer matrix
        let x = DMatrix::from_column_slice(cut, outer, v.amplitudes().as_slice());
        out.amps_mut().as_mut_slice().copy_from_slice(cmul(u, &x).as_slice());
        return Ok(out);
    }
    let ut = u.transpose();
    let len = cut * stride;
    // Each outer slice, read column-major, is a stride × cut matrix X with
    // X[i, k] = amplitude of n_mode = k; the gate maps X to X Uᵀ.
    for o in 0..outer {
        let x = DMatrix::from_column_slice(stride, cut, &v.amplitudes().as_slice()[o * len..(o + 1) * len]);
        let y = cmul(&x, &ut);
        out.amps_mut().as_mut_slice()[o * len..(o + 1) * len].copy_from_slice(y.as_slice());
    }
    Ok(out)
}

/// `exp(−iω(a_j†a_k + a_k†a_j))` on each block of fixed `n_j + n_k = t`,
/// where the generator is tridiagonal in `|m, t−m⟩` and exponentiated exactly.
/// O(N⁴) overall; kept to cross-check the passive recursion.
#[cfg(test)]
fn beamsplitter_blocks(omega: f64, cut: usize) -> Vec<DMatrix<Complex64>> {
    (0..=2 * (cut - 1))
        .map(|t| {
            let g = DMatrix::from_fn(t + 1, t + 1, |p, q| {
                let x = if p == q + 1 {
                    ((q + 1) as f64 * (t - q) as f64).sqrt()
                } else if q == p + 1 {
                    ((p + 1) as f64 * (t - p) as f64).sqrt()
                } else {
                    0.0
                };
                omega * x
            });
            expm_symmetric(g)
        })
        .collect()
}

fn check_pair(v: &FockVector, j: usize, k: usize) -> Result<()> {
    let n = v.modes();
    if j >= n || k >= n {
        return Err(Error::ModeOutOfRange { mode: j.max(k), modes: n });
    }
    if j == k || n != 2 {
        return Err(Error::InvalidParameter("beamsplitter needs two distinct modes of a two-mode vector"));
    }
    Ok(())
}

/// The beamsplitter as the passive transform `a_j → cos ω a_j − i sin ω a_k`.
fn beamsplitter(v: &FockVector, omega: f64, j: usize, k: usize) -> Result<FockVector> {
    check_pair(v, j, k)?;
    let (c, s) = (Complex64::new(omega.cos(), 0.0), Complex64::new(0.0, -omega.sin()));
    // symmetric, so the order of (j, k) does not matter
    apply_passive(v, &DMatrix::from_row_slice(2, 2, &[c, s, s, c]))
}

#[cfg(test)]
fn apply_beamsplitter(v: &FockVector, blocks: &[DMatrix<Complex64>], j: usize, k: usize) -> Result<FockVector> {
    check_pair(v, j, k)?;
    let (n, cut) = (v.modes(), v.cutoff());
    let mut out = FockVector::zeros(n, cut)?;
    let idx = |nj: usize, nk: usize| {
        let mut occ = [0usize; 2];
        occ[j] = nj;
        occ[k] = nk;
        occ[0] * cut + occ[1]
    };
    for (t, u) in blocks.iter().enumerate() {
        let inside = |m: usize| m < cut && t - m < cut;
        let x =
            DVector::from_fn(
                t + 1,
                |m, _| if inside(m) { v.amplitudes()[idx(m, t - m)] } else { Complex64::new(0.0, 0.0) },
            );
        let y = u * x;
        for m in (0..=t).filter(|&m| inside(m)) {
            out.amps_mut()[idx(m, t - m)] = y[m];
        }
    }
    Ok(out)
}

/// `exp(−βa† + β̄a)` per mode, without a norm-loss check.
pub(crate) fn displace(v: &FockVector, beta: &[Complex64]) -> Result<FockVector> {
    run(&prepare(&OracleGate::Displacement(beta.to_vec()), v.modes(), v.cutoff())?, v)
}

/// Multiplies the amplitude of `(m₀, m₁, …)` by `e^{i Σ φ_j m_j}`.
fn phase_modes(v: &mut FockVector, phi: &[f64]) {
    let cut = v.cutoff();
    let tables: Vec<Vec<Complex64>> =
        phi.iter().map(|&f| (0..cut).map(|m| Complex64::from_polar(1.0, f * m as f64)).collect()).collect();
    for i in 0..v.len() {
        let mut rest = i;
        let mut p = Complex64::new(1.0, 0.0);
        for t in tables.iter().rev() {
            p *= t[rest % cut];
            rest /= cut;
        }
        v.amps_mut()[i] *= p;
    }
}

/// `u = diag(e^{ia}) R(θ) diag(e^{ib})` with `R = [[cos θ, sin θ], [−sin θ, cos θ]]`.
fn factor_unitary(u: &DMatrix<Complex64>) -> Result<([f64; 2], f64, [f64; 2])> {
    let (c, s) = (u[(0, 0)].norm(), u[(0, 1)].norm());
    let theta = s.atan2(c);
    let pi = std::f64::consts::PI;
    let (a, b) = if c >= s {
        let a0 = u[(0, 0)].arg();
        let b1 = if s > 0.0 { u[(0, 1)].arg() - a0 } else { 0.0 };
        ([a0, u[(1, 1)].arg() - b1], [0.0, b1])
    } else {
        let a0 = u[(0, 1)].arg();
        let b0 = if c > 0.0 { u[(0, 0)].arg() - a0 } else { 0.0 };
        ([a0, u[(1, 0)].arg() - pi - b0], [b0, 0.0])
    };
    let r = [[theta.cos(), theta.sin()], [-theta.sin(), theta.cos()]];
    let err = (0..2)
        .flat_map(|j| (0..2).map(move |k| (j, k)))
        .map(|(j, k)| (u[(j, k)] - Complex64::from_polar(r[j][k], a[j] + b[k])).norm())
        .fold(0.0, f64::max);
    if !(err < 1e-9) {
        return Err(Error::InvalidParameter("passive matrix is not unitary"));
    }
    Ok((a, theta, b))
}

/// The passive unitary `W` with `W† a_j W = Σ_k u_jk a_k`, so that
/// `W a_j† W† = Σ_k u_kj a_k†` and `W|0⟩ = |0⟩`.
pub(crate) fn apply_passive(v: &FockVector, u: &DMatrix<Complex64>) -> Result<FockVector> {
    let n = v.modes();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::Shape("passive matrix is not n × n"));
    }
    match n {
        0 => Ok(v.clone()),
        1 => {
            let mut out = v.clone();
            phase_modes(&mut out, &[u[(0, 0)].arg()]);
            Ok(out)
        }
        _ => {
            // W(u₁u₂) = W(u₁)W(u₂)
            let (a, theta, b) = factor_unitary(u)?;
            let mut w = v.clone();
            phase_modes(&mut w, &b);
            let mut out = rotate(&w, theta)?;
            phase_modes(&mut out, &a);
            Ok(out)
        }
    }
}

/// Two-mode passive transform for the real rotation `R(θ)`.
///
/// Block `t` (total photon number) follows from block `t − 1` through
/// `t|m, t−m⟩ = √m a†|m−1, t−m⟩ + √(t−m) b†|m, t−m−1⟩`. Using both terms
/// makes each step a contraction, so rounding errors do not grow with `t`;
/// only rows and columns inside the cutoff are ever needed.
fn rotate(v: &FockVector, theta: f64) -> Result<FockVector> {
    let cut = v.cutoff();
    let (c, s) = (theta.cos(), theta.sin());
    let u = [[c, s], [-s, c]];
    let mut out = FockVector::zeros(2, cut)?;
    let zero = Complex64::new(0.0, 0.0);
    let sq: Vec<f64> = (0..2 * cut).map(|k| (k as f64).sqrt()).collect();
    // prev[(p − plo + 1, m − plo + 1)] = ⟨p, t−1−p| W |m, t−1−m⟩ for p, m in
    // plo..=phi, with a zero border on every side.
    let mut prev = DMatrix::<f64>::zeros(3, 3);
    prev[(1, 1)] = 1.0;
    let mut plo = 0usize;
    out.amps_mut()[0] = v.amplitudes()[0];
    for t in 1..=2 * (cut - 1) {
        let lo = t.saturating_sub(cut - 1);
        let hi = t.min(cut - 1);
        let w = hi - lo + 1;
        let inv_t = 1.0 / t as f64;
        let mut cur = DMatrix::<f64>::zeros(w + 2, w + 2);
        let mut y = vec![zero; w];
        for m in lo..=hi {
            // previous columns m − 1 and m; the border stands in for entries
            // outside the block, whose coefficients vanish
            let col_l = prev.column(m - plo);
            let col_r = prev.column(m - plo + 1);
            let (x, z) = (sq[m] * inv_t, sq[t - m] * inv_t);
            let (c10, c11, c00, c01) = (u[1][0] * x, u[1][1] * z, u[0][0] * x, u[0][1] * z);
            let xm = v.amplitudes()[m * cut + (t - m)];
            let mut dst = cur.column_mut(m - lo + 1);
            for p in lo..=hi {
                let (r1, r0) = (p - plo + 1, p - plo);
                let e = (c10 * col_l[r1] + c11 * col_r[r1]) * sq[t - p] + (c00 * col_l[r0] + c01 * col_r[r0]) * sq[p];
                dst[p - lo + 1] = e;
                y[p - lo] += xm * e;
            }
        }
        for (k, yk) in y.into_iter().enumerate() {
            let p = lo + k;
            out.amps_mut()[p * cut + (t - p)] = yk;
        }
        plo = lo;
        prev = cur;
    }
    Ok(out)
}

enum Prepared {
    Single(Vec<(usize, DMatrix<Complex64>)>),
    Beamsplitter(f64, usize, usize),
}

fn prepare(g: &OracleGate, modes: usize, cut: usize) -> Result<Prepared> {
    Ok(match g {
        OracleGate::Displacement(beta) => {
            if beta.len() != modes {
                return Err(Error::Shape("displacement length differs from mode count"));
            }
            let mut ops = Vec::new();
            for (m, b) in beta.iter().enumerate() {
                if b.norm() > 0.0 {
                    ops.push((m, displacement_matrix(*b, cut)));
                }
            }
            Prepared::Single(ops)
        }
        OracleGate::PhaseShift { phi, mode } => {
            let u = DMatrix::from_diagonal(&DVector::from_fn(cut, |k, _| Complex64::from_polar(1.0, -phi * k as f64)));
            Prepared::Single(vec![(*mode, u)])
        }
        OracleGate::Beamsplitter { omega, modes: (j, k) } => Prepared::Beamsplitter(*omega, *j, *k),
        OracleGate::Squeeze { z, mode } => Prepared::Single(vec![(*mode, squeeze_matrix(*z, cut))]),
    })
}

fn run(p: &Prepared, v: &FockVector) -> Result<FockVector> {
    match p {
        Prepared::Single(ops) => {
            let mut v = v.clone();
            for (m, u) in ops {
                v = apply_single(&v, *m, u)?;
            }
            Ok(v)
        }
        Prepared::Beamsplitter(omega, j, k) => beamsplitter(v, *omega, *j, *k),
    }
}

impl FockVector {
    /// Applies a gate on the truncated space. Fails when the norm lost to the
    /// truncation exceeds `tol` (relative to the input norm).
    pub fn apply(&self, g: &OracleGate, tol: f64) -> Result<FockVector> {
        let out = run(&prepare(g, self.modes(), self.cutoff())?, self)?;
        let before = self.norm_sqr();
        let loss = (before - out.norm_sqr()) / before;
        if !(loss.abs() <= tol) {
            return Err(Error::NormLoss { loss, tol });
        }
        Ok(out)
    }
}

/// Matrix of a gate on the full truncated space of `modes` modes.
pub fn gate_matrix(g: &OracleGate, modes: usize, cutoff: usize) -> Result<DMatrix<Complex64>> {
    let dim = cutoff.pow(modes as u32);
    let p = prepare(g, modes, cutoff)?;
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut e = FockVector::zeros(modes, cutoff)?;
        e.amps_mut()[col] = Complex64::new(1.0, 0.0);
        let img = run(&p, &e)?;
        u.set_column(col, img.amplitudes());
    }
    Ok(u)
}

/// `max |(U†U − I)_ab|` over number states with every occupation below
/// `keep` (the retained block).
pub fn unitarity_defect(u: &DMatrix<Complex64>, modes: usize, cutoff: usize, keep: usize) -> f64 {
    let probe = FockVector::zeros(modes, cutoff).expect("shape");
    let cols: Vec<usize> = (0..u.ncols()).filter(|&i| probe.occupations(i).iter().all(|&n| n < keep)).collect();
    let mut worst = 0.0f64;
    for &a in &cols {
        for &b in &cols {
            let mut x = u.column(a).dotc(&u.column(b));
            if a == b {
                x -= 1.0;
            }
            worst = worst.max(x.norm());
        }
    }
    worst
}
