//! Small dense helpers shared by the modules.

use nalgebra::Cholesky;
use num_complex::Complex64;

use crate::{CMat, CVec, Error, RMat, RVec, Result};

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub(crate) fn complexify(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

pub(crate) fn complexify_vec(v: &RVec) -> CVec {
    v.map(|x| Complex64::new(x, 0.0))
}

/// `xᵀ M y` without conjugation.
pub(crate) fn bilinear(x: &CVec, m: &CMat, y: &CVec) -> Complex64 {
    x.iter().zip((m * y).iter()).map(|(a, b)| a * b).sum()
}

pub(crate) fn max_abs(m: &RMat) -> f64 {
    m.iter().fold(0.0, |a, &x| if x.abs() > a { x.abs() } else { a })
}

pub(crate) fn spd_inverse(m: &RMat, what: &'static str) -> Result<RMat> {
    Cholesky::new(m.clone()).map(|c| c.inverse()).ok_or(Error::Singular(what))
}

/// Determinant of a real symmetric positive definite matrix.
pub(crate) fn spd_det(m: &RMat, what: &'static str) -> Result<f64> {
    Cholesky::new(m.clone()).map(|c| c.determinant()).ok_or(Error::Singular(what))
}

pub(crate) fn solve_c(m: &CMat, rhs: &CMat, what: &'static str) -> Result<CMat> {
    m.clone().lu().solve(rhs).ok_or(Error::Singular(what))
}
