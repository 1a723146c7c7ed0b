//! Complex eigenvalue utilities.

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;

use super::laurent::LaurentPoly;
use super::matrix::RingMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;

/// QR sweeps allowed per unit of matrix size.
pub const SWEEPS_PER_SIZE: usize = 500;

/// Eigenvalues of a complex square matrix from its Schur form.
pub fn eigenvalues(m: &DMatrix<Complex64>, tol: f64) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::InvalidArgument("eigenvalues of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), tol, SWEEPS_PER_SIZE * n)
        .ok_or(Error::NoConvergence { size: n })?;
    let (_, t) = schur.unpack();
    // A complex Schur form is triangular; any 2x2 block left behind is
    // resolved by its characteristic polynomial.
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if k + 1 < n && t[(k + 1, k)].norm() > tol * (t[(k, k)].norm() + t[(k + 1, k + 1)].norm() + 1.0) {
            let (a, b, c, d) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k)], t[(k + 1, k + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = (half_tr * half_tr - (a * d - b * c)).sqrt();
            out.push(half_tr + disc);
            out.push(half_tr - disc);
            k += 2;
        } else {
            out.push(t[(k, k)]);
            k += 1;
        }
    }
    Ok(out)
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(m: &DMatrix<Complex64>, tol: f64) -> Result<f64> {
    Ok(eigenvalues(m, tol)?.into_iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Evaluates a Laurent matrix at a complex point `(x, d, s, u)`.
pub fn evaluate(m: &RingMatrix, point: &[Complex64; 4]) -> DMatrix<Complex64> {
    let mut out = DMatrix::from_element(m.rows(), m.cols(), Complex::new(0.0, 0.0));
    for (r, c, v) in m.entries() {
        out[(r, c)] = LaurentPoly::eval_complex(v, point);
    }
    out
}
