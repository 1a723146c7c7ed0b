//! Numerical check of `Σ_i tr Sym^i(A) = 1 / det(I - A)` on Burau matrices.
//!
//! The Burau matrix of a braid with `det = ±1` has spectral radius at least
//! one for every `x`, so samples are pairs `(x, t)` and the identity is
//! checked for `A = t · B(x)` with `ρ(A) < 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::eigen::{evaluate, spectral_radius, DEFAULT_TOL};
use crate::algebra::{symmetric_power, SparseMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::lawrence::{lawrence_word, LawrenceRep};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Errors below this are rounding noise and are not required to decrease.
pub const NOISE_FLOOR: f64 = 1e-11;

/// Spectral radius targeted by [`admissible_samples`].
pub const SAMPLE_RADIUS: f64 = 0.5;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SamplePoint {
    pub x: (f64, f64),
    pub t: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub point: SamplePoint,
    pub spectral_radius: f64,
    /// `(cutoff, |partial sum - 1/det|)` at a quarter, half and all of the
    /// cutoff.
    pub errors: Vec<(usize, f64)>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MacMahonReport {
    pub cutoff: usize,
    pub tolerance: f64,
    pub samples: Vec<SampleReport>,
    pub passed: bool,
}

fn burau(beta: &BraidWord) -> Result<crate::algebra::RingMatrix> {
    lawrence_word(&LawrenceRep::new(beta.strands(), 1)?, beta)
}

fn numeric(beta_matrix: &crate::algebra::RingMatrix, point: SamplePoint) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    evaluate(beta_matrix, &[Complex64::new(point.x.0, point.x.1), one, one, one]) * Complex64::new(point.t, 0.0)
}

/// `count` seeded points `x` on the circle of radius 0.9, each with `t`
/// scaled so that `ρ(t B(x)) = 0.5`.
pub fn admissible_samples(beta: &BraidWord, count: usize, seed: u64) -> Result<Vec<SamplePoint>> {
    let b = burau(beta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = Complex64::from_polar(0.9, angle);
        let rho = spectral_radius(&numeric(&b, SamplePoint { x: (x.re, x.im), t: 1.0 }), DEFAULT_TOL)?;
        if rho > 1e-6 {
            out.push(SamplePoint { x: (x.re, x.im), t: SAMPLE_RADIUS / rho });
        }
    }
    Ok(out)
}

pub fn macmahon_check(beta: &BraidWord, cutoff: usize, samples: &[SamplePoint], tolerance: f64) -> Result<MacMahonReport> {
    let b = burau(beta)?;
    let mut reports = Vec::with_capacity(samples.len());
    for &point in samples {
        let a = numeric(&b, point);
        let rho = spectral_radius(&a, DEFAULT_TOL)?;
        if rho >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "sample x = {:?}, t = {} has spectral radius {rho} >= 1",
                point.x, point.t
            )));
        }
        let dim = a.nrows();
        let target = Complex64::new(1.0, 0.0) / (DMatrix::<Complex64>::identity(dim, dim) - &a).determinant();
        let sparse = SparseMatrix::from_dense(
            &(0..dim).map(|r| (0..dim).map(|c| a[(r, c)]).collect()).collect::<Vec<Vec<_>>>(),
        );
        let checkpoints = [cutoff / 4, cutoff / 2, cutoff];
        let mut errors = Vec::new();
        let mut partial = Complex64::new(0.0, 0.0);
        for i in 0..=cutoff {
            partial += symmetric_power(&sparse, i).trace();
            if checkpoints.contains(&i) && errors.last().is_none_or(|(k, _)| *k != i) {
                errors.push((i, (partial - target).norm()));
            }
        }
        let decreasing = errors.windows(2).all(|w| w[1].1 <= w[0].1 || w[0].1.max(w[1].1) < NOISE_FLOOR);
        let passed = decreasing && errors.last().is_some_and(|(_, e)| *e < tolerance);
        reports.push(SampleReport { point, spectral_radius: rho, errors, passed });
    }
    let passed = !reports.is_empty() && reports.iter().all(|r| r.passed);
    Ok(MacMahonReport { cutoff, tolerance, samples: reports, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn geometric_series() {
        // B(σ_1) = (-x); at x = 0.3 the sum is Σ (-0.3)^i = 1/1.3
        let point = SamplePoint { x: (0.3, 0.0), t: 1.0 };
        let r = macmahon_check(&word(2, &[1]), 60, &[point], DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed);
        assert!(r.samples[0].errors.last().unwrap().1 < 1e-14);
    }

    #[test]
    fn figure_eight_needs_scaling() {
        let beta = word(3, &[1, -2, 1, -2]);
        let unscaled = SamplePoint { x: (0.2, 0.1), t: 1.0 };
        assert!(macmahon_check(&beta, 20, &[unscaled], DEFAULT_TOLERANCE).is_err());
        let samples = admissible_samples(&beta, 3, 5).unwrap();
        let r = macmahon_check(&beta, 80, &samples, DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn identity_braid_is_rejected() {
        let point = SamplePoint { x: (0.5, 0.0), t: 1.0 };
        assert!(macmahon_check(&BraidWord::identity(3).unwrap(), 10, &[point], DEFAULT_TOLERANCE).is_err());
    }
}
