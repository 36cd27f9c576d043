//! Floating point matrix exponential and characteristic polynomials.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 16;
pub const MAX_SPECTRAL_RADIUS: f64 = 50.0;

pub fn spectral_radius(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `exp(t C)` by scaling and squaring. Refuses inputs with `n > 16` or with
/// spectral radius of `t C` above 50.
pub fn exp_ad(c: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch { expected: c.nrows(), got: c.ncols() });
    }
    if c.nrows() > MAX_DIM {
        return Err(Error::EnvelopeExceeded(format!("dimension {} > {MAX_DIM}", c.nrows())));
    }
    if !t.is_finite() {
        return Err(Error::EnvelopeExceeded(format!("t = {t}")));
    }
    let tc = c * t;
    let rho = spectral_radius(&tc);
    if rho > MAX_SPECTRAL_RADIUS {
        return Err(Error::EnvelopeExceeded(format!("spectral radius {rho:.3} > {MAX_SPECTRAL_RADIUS}")));
    }
    if tc.is_empty() {
        return Ok(tc);
    }
    Ok(tc.exp())
}

/// Characteristic polynomial `det(x I - M)`, coefficients from the constant
/// term up (monic), by the Faddeev-LeVerrier recursion.
pub fn charpoly_f64(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let id = DMatrix::<f64>::identity(n, n);
    let mut mk = DMatrix::<f64>::zeros(n, n);
    for k in 1..=n {
        mk = m * &mk + &id * c[n - k + 1];
        c[n - k] = -(m * &mk).trace() / k as f64;
    }
    c
}
