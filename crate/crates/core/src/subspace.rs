//! Linear subspaces of Q^n in canonical reduced echelon form.

use crate::linalg::{is_zero_vec, unit_vec, QMatrix, QVec};
use crate::scalar::Scalar;

/// A subspace of `Q^n`, stored as the nonzero rows of the reduced row echelon
/// form of any spanning set. Two subspaces are equal iff they have the same
/// span.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<QVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[QVec]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let (r, pivots) = QMatrix::from_rows(vectors, ambient).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vec(ambient, i)).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let vs: Vec<QVec> = idx.iter().map(|&i| unit_vec(ambient, i)).collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    /// `n x k` matrix whose columns are the canonical basis.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_cols(&self.basis, self.ambient)
    }

    fn row_matrix(&self) -> QMatrix {
        QMatrix::from_rows(&self.basis, self.ambient)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<QVec> {
        let c: QVec = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            crate::linalg::axpy(&mut rebuilt, &-ci.clone(), b);
        }
        is_zero_vec(&rebuilt).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Row vectors of linear forms vanishing exactly on this subspace.
    pub fn annihilator(&self) -> Vec<QVec> {
        self.row_matrix().kernel()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut forms = self.annihilator();
        forms.extend(other.annihilator());
        Subspace::span(self.ambient, &QMatrix::from_rows(&forms, self.ambient).kernel())
    }

    /// Common kernel of a family of linear forms.
    pub fn from_forms(ambient: usize, forms: &[QVec]) -> Subspace {
        Subspace::span(ambient, &QMatrix::from_rows(forms, ambient).kernel())
    }

    /// Orthogonal complement with respect to the Gram matrix `gram`.
    pub fn orthogonal_complement(&self, gram: &QMatrix) -> Subspace {
        let forms = &self.row_matrix() * gram;
        Subspace::span(self.ambient, &forms.kernel())
    }

    /// `{v in self : M v in self}`.
    pub fn preimage_within(&self, m: &QMatrix) -> Subspace {
        let ann = self.annihilator();
        let mut forms = ann.clone();
        for f in &ann {
            forms.push(m.vec_mul(f));
        }
        Subspace::from_forms(self.ambient, &forms)
    }

    pub fn image(&self, m: &QMatrix) -> Subspace {
        let vs: Vec<QVec> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &vs)
    }

    pub fn is_invariant(&self, m: &QMatrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// Matrix of `M|_U` in the canonical basis; `None` if `U` is not invariant.
    pub fn restrict(&self, m: &QMatrix) -> Option<QMatrix> {
        let cols: Option<Vec<QVec>> = self.basis.iter().map(|v| self.coords(&m.mul_vec(v))).collect();
        Some(QMatrix::from_cols(&cols?, self.dim()))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(n={}, {:?})", self.ambient, QMatrix::from_rows(&self.basis, self.ambient))
    }
}

/// Coordinates of `v` in an arbitrary independent family `basis`.
pub fn coords_in(basis: &[QVec], v: &[Scalar]) -> Option<QVec> {
    QMatrix::from_cols(basis, v.len()).solve(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(3, &[int_vec(&[1, 1, 0]), int_vec(&[0, 1, 0])]);
        let b = Subspace::coordinate(3, &[0, 1]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn complement_and_intersection() {
        let g = QMatrix::identity(3);
        let u = Subspace::coordinate(3, &[2]);
        let perp = u.orthogonal_complement(&g);
        assert_eq!(perp, Subspace::coordinate(3, &[0, 1]));
        assert!(u.intersect(&perp).is_zero());
        assert_eq!(perp.orthogonal_complement(&g), u);
        let w = Subspace::span(3, &[int_vec(&[1, 0, 1])]);
        assert!(w.intersect(&u).is_zero());
        assert_eq!(w.sum(&u), Subspace::coordinate(3, &[0, 2]));
    }

    #[test]
    fn coords_round_trip() {
        let s = Subspace::span(3, &[int_vec(&[1, 2, 3]), int_vec(&[0, 1, 1])]);
        let v = int_vec(&[2, 5, 7]);
        let c = s.coords(&v).unwrap();
        let mut r = crate::linalg::zero_vec(3);
        for (ci, b) in c.iter().zip(s.basis()) {
            crate::linalg::axpy(&mut r, ci, b);
        }
        assert_eq!(r, v);
        assert!(s.coords(&int_vec(&[0, 0, 1])).is_none());
    }
}
