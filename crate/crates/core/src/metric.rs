//! Inner products and linear forms on a fixed basis.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, unit_vec, vec_scale, QMatrix, QVec};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// A positive definite symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    gram: QMatrix,
    inverse: QMatrix,
}

impl Metric {
    pub fn new(gram: QMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), got: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = gram.rows();
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            if !gram.submatrix(&idx, &idx).det().is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        let inverse = gram.inverse().ok_or(Error::NotPositiveDefinite)?;
        Ok(Metric { gram, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Metric { gram: QMatrix::identity(n), inverse: QMatrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn inverse_gram(&self) -> &QMatrix {
        &self.inverse
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.gram.bilinear(x, y)
    }

    pub fn norm_sq(&self, x: &[Scalar]) -> Scalar {
        self.inner(x, x)
    }

    /// The metric dual `x ↦ g(x, ·)`.
    pub fn flat(&self, x: &[Scalar]) -> OneForm {
        OneForm::new(self.gram.mul_vec(x))
    }

    /// The vector `θ♯` with `g(θ♯, ·) = θ`.
    pub fn sharp(&self, theta: &OneForm) -> QVec {
        self.inverse.mul_vec(theta.coeffs())
    }

    /// `|θ|²` for the dual metric.
    pub fn form_norm_sq(&self, theta: &OneForm) -> Scalar {
        self.inverse.bilinear(theta.coeffs(), theta.coeffs())
    }

    pub fn scaled(&self, lambda: &Scalar) -> Result<Self> {
        Metric::new(self.gram.scale(lambda))
    }

    pub fn block_diag(&self, other: &Metric) -> Metric {
        Metric {
            gram: QMatrix::block_diag(&self.gram, &other.gram),
            inverse: QMatrix::block_diag(&self.inverse, &other.inverse),
        }
    }

    /// Gram matrix of the given vectors.
    pub fn restrict(&self, basis: &[QVec]) -> Result<Metric> {
        let k = basis.len();
        Metric::new(QMatrix::from_fn(k, k, |i, j| self.inner(&basis[i], &basis[j])))
    }

    /// The pulled-back metric `P^T G P` for a change of basis whose columns are
    /// the new basis vectors.
    pub fn pull_back(&self, p: &QMatrix) -> Result<Metric> {
        Metric::new(&(&p.transpose() * &self.gram) * p)
    }
}

/// A linear form given by its coordinates in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm {
    coeffs: QVec,
}

impl OneForm {
    pub fn new(coeffs: QVec) -> Self {
        OneForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        OneForm { coeffs: vec![Scalar::zero(); n] }
    }

    /// The dual basis form `e^i`.
    pub fn dual_basis(n: usize, i: usize) -> Self {
        OneForm { coeffs: unit_vec(n, i) }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        dot(&self.coeffs, x)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> OneForm {
        OneForm { coeffs: vec_scale(&self.coeffs, s) }
    }

    pub fn vanishes_on(&self, u: &Subspace) -> bool {
        u.basis().iter().all(|v| self.eval(v).is_zero())
    }

    /// Extend by zero to a direct sum with `extra` trailing coordinates.
    pub fn extend_by_zero(&self, extra: usize) -> OneForm {
        let mut c = self.coeffs.clone();
        c.extend(std::iter::repeat_n(Scalar::zero(), extra));
        OneForm { coeffs: c }
    }

    /// Pull back along a change of basis whose columns are the new basis vectors.
    pub fn pull_back(&self, p: &QMatrix) -> OneForm {
        OneForm { coeffs: p.vec_mul(&self.coeffs) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::scalar::{int, q};

    #[test]
    fn rejects_bad_grams() {
        assert_eq!(Metric::new(QMatrix::from_i64(&[&[1, 1], &[0, 1]])), Err(Error::NotSymmetric));
        assert_eq!(
            Metric::new(QMatrix::from_i64(&[&[1, 2], &[2, 1]])),
            Err(Error::NotPositiveDefinite)
        );
    }

    #[test]
    fn sharp_inverts_flat() {
        let g = Metric::new(QMatrix::from_i64(&[&[2, 1], &[1, 3]])).unwrap();
        let theta = OneForm::new(int_vec(&[1, -1]));
        let s = g.sharp(&theta);
        assert_eq!(g.flat(&s), theta);
        assert_eq!(g.form_norm_sq(&theta), theta.eval(&s));
        assert_eq!(g.form_norm_sq(&theta), q(7, 5));
        assert_eq!(g.norm_sq(&int_vec(&[1, 0])), int(2));
    }
}
