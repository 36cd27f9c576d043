//! Lie algebras given by exact structure constants.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, vec_scale, zero_vec, QMatrix, QVec};
use crate::metric::{Metric, OneForm};
use crate::scalar::Scalar;
use crate::subspace::{coords_in, Subspace};

/// A finite-dimensional Lie algebra over Q with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Construction enforces antisymmetry only; the Jacobi identity is reported
/// by [`LieAlgebra::audit`] rather than assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Scalar>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub jacobi_ok: bool,
    /// First basis triple violating Jacobi, 0-based.
    pub jacobi_failure: Option<(usize, usize, usize)>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub unimodular: bool,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspacePredicates {
    pub is_subalgebra: bool,
    pub is_ideal: bool,
    pub is_abelian: bool,
    pub orthogonal_complement: Subspace,
    pub in_centre_of_derived: bool,
}

/// A codimension one abelian ideal `k = ker φ` together with a transversal
/// `b ⟂ k` normalised by `φ(b) = 1`.
///
/// `b` is generally not a unit vector; its squared norm is carried exactly
/// and a unit transversal is `b / sqrt(b_norm_sq)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostAbelian {
    pub b: QVec,
    pub b_norm_sq: Scalar,
    pub phi: OneForm,
    pub ideal: Subspace,
    /// Matrix of `ad_b|_k` in the canonical basis of `k`.
    pub c: QMatrix,
}

impl AlmostAbelian {
    /// Squared unit-normalised action `(ad_{b/|b|}|_k)²`, which stays rational.
    pub fn unit_c_squared(&self) -> QMatrix {
        (&self.c * &self.c).scale(&self.b_norm_sq.recip())
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    /// From a flat table `c[(i * n + j) * n + k]`.
    pub fn new(dim: usize, c: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: c.len() });
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if c[(i * dim + j) * dim + k] != -c[(j * dim + i) * dim + k].clone() {
                        return Err(Error::NotAntisymmetric { i, j });
                    }
                }
            }
        }
        Ok(LieAlgebra { dim, c, labels: default_labels(dim) })
    }

    /// From the brackets `[e_i, e_j] = v` (0-based); unlisted pairs are zero.
    /// A pair may be given in either order; conflicting entries are rejected.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, QVec)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut c = vec![Scalar::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: i.max(j) + 1 });
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            if i == j {
                if !is_zero_vec(v) {
                    return Err(Error::NotAntisymmetric { i, j });
                }
                continue;
            }
            for k in 0..dim {
                let fwd = &mut c[(i * dim + j) * dim + k];
                if seen[i * dim + j] && *fwd != v[k] {
                    return Err(Error::NotAntisymmetric { i, j });
                }
                *fwd = v[k].clone();
                c[(j * dim + i) * dim + k] = -v[k].clone();
            }
            seen[i * dim + j] = true;
            seen[j * dim + i] = true;
        }
        Ok(LieAlgebra { dim, c, labels: default_labels(dim) })
    }

    /// Shorthand for integer brackets with 1-based indices, as printed in tables.
    pub fn from_int_brackets(dim: usize, brackets: &[(usize, usize, &[i64])]) -> Self {
        let bs: Vec<(usize, usize, QVec)> = brackets
            .iter()
            .map(|(i, j, v)| (i - 1, j - 1, crate::linalg::int_vec(v)))
            .collect();
        Self::from_brackets(dim, &bs).expect("well-formed integer brackets")
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra { dim: n, c: vec![Scalar::zero(); n * n * n], labels: default_labels(n) }
    }

    /// `[e1, e2] = e3`.
    pub fn heisenberg3() -> Self {
        Self::from_int_brackets(3, &[(1, 2, &[0, 0, 1])])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> QVec {
        let n = self.dim;
        self.c[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    /// Brackets of all basis pairs with `i < j` that are nonzero, 0-based.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, QVec)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if !is_zero_vec(&v) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<QVec> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        Ok(self.br(x, y))
    }

    /// Unchecked bracket; panics on length mismatch.
    pub fn br(&self, x: &[Scalar], y: &[Scalar]) -> QVec {
        let n = self.dim;
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.c[(i * n + j) * n..(i * n + j + 1) * n]);
            }
        }
        out
    }

    /// Matrix of `ad_x`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> QMatrix {
        let cols: Vec<QVec> = (0..self.dim).map(|j| self.br(x, &unit_vec(self.dim, j))).collect();
        QMatrix::from_cols(&cols, self.dim)
    }

    pub fn ad_basis(&self, i: usize) -> QMatrix {
        let cols: Vec<QVec> = (0..self.dim).map(|j| self.bracket_basis(i, j)).collect();
        QMatrix::from_cols(&cols, self.dim)
    }

    /// Component 2-forms: `B_k(x, y)` is the `k`-th coordinate of `[x, y]`.
    pub fn component_forms(&self) -> Vec<QMatrix> {
        let n = self.dim;
        (0..n)
            .map(|k| QMatrix::from_fn(n, n, |i, j| self.structure_constant(i, j, k).clone()))
            .collect()
    }

    /// Jacobiator of a basis triple.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> QVec {
        let n = self.dim;
        let e = |a: usize| unit_vec(n, a);
        let mut s = self.br(&e(i), &self.bracket_basis(j, k));
        let t = self.br(&e(j), &self.bracket_basis(k, i));
        let u = self.br(&e(k), &self.bracket_basis(i, j));
        for a in 0..n {
            s[a] = &s[a] + &t[a] + &u[a];
        }
        s
    }

    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !is_zero_vec(&self.jacobiator(i, j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> Result<()> {
        match self.jacobi_failure() {
            Some((i, j, k)) => Err(Error::JacobiViolated { i, j, k }),
            None => Ok(()),
        }
    }

    /// `[U, V]`
    pub fn bracket_span(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in u.basis() {
            for y in v.basis() {
                vs.push(self.br(x, y));
            }
        }
        Subspace::span(self.dim, &vs)
    }

    pub fn derived(&self) -> Subspace {
        let vs: Vec<QVec> = self.nonzero_brackets().into_iter().map(|(_, _, v)| v).collect();
        Subspace::span(self.dim, &vs)
    }

    /// `g ⊇ g' ⊇ g'' ⊇ ...` until the series reaches zero or stabilises.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.dim)];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_span(last, last);
            if next == *last {
                return out;
            }
            let stop = next.is_zero();
            out.push(next);
            if stop {
                return out;
            }
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut out = vec![full.clone()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_span(&full, last);
            if next == *last {
                return out;
            }
            let stop = next.is_zero();
            out.push(next);
            if stop {
                return out;
            }
        }
    }

    /// `{x : [x, U] = 0}`
    pub fn centralizer(&self, u: &Subspace) -> Subspace {
        // Linear conditions on x: coordinates of [x, u] vanish for each basis u.
        let n = self.dim;
        let mut forms = Vec::new();
        for v in u.basis() {
            // [x, v] = -ad_v x
            let m = self.ad(v);
            forms.extend(m.row_vecs());
        }
        Subspace::from_forms(n, &forms)
    }

    pub fn centre(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim))
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    /// `H(x) = tr(ad_x)`.
    pub fn trace_form(&self) -> OneForm {
        OneForm::new((0..self.dim).map(|i| self.ad_basis(i).trace()).collect())
    }

    pub fn is_unimodular(&self) -> bool {
        self.trace_form().is_zero()
    }

    /// `θ` vanishes on `g'`.
    pub fn is_closed(&self, theta: &OneForm) -> bool {
        theta.vanishes_on(&self.derived())
    }

    pub fn audit(&self) -> AuditReport {
        let jacobi_failure = self.jacobi_failure();
        let ds = self.derived_series();
        let lc = self.lower_central_series();
        AuditReport {
            jacobi_ok: jacobi_failure.is_none(),
            jacobi_failure,
            solvable: ds.last().unwrap().is_zero(),
            nilpotent: lc.last().unwrap().is_zero(),
            unimodular: self.is_unimodular(),
            derived_series_dims: ds.iter().map(Subspace::dim).collect(),
            lower_central_dims: lc.iter().map(Subspace::dim).collect(),
        }
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> bool {
        u.contains_subspace(&self.bracket_span(u, u))
    }

    pub fn is_ideal(&self, u: &Subspace) -> bool {
        u.contains_subspace(&self.bracket_span(&Subspace::full(self.dim), u))
    }

    pub fn is_abelian_subspace(&self, u: &Subspace) -> bool {
        self.bracket_span(u, u).is_zero()
    }

    pub fn subspace_predicates(&self, metric: &Metric, u: &Subspace) -> SubspacePredicates {
        let derived = self.derived();
        SubspacePredicates {
            is_subalgebra: self.is_subalgebra(u),
            is_ideal: self.is_ideal(u),
            is_abelian: self.is_abelian_subspace(u),
            orthogonal_complement: u.orthogonal_complement(metric.gram()),
            in_centre_of_derived: derived.contains_subspace(u)
                && self.bracket_span(u, &derived).is_zero(),
        }
    }

    /// Values of the trace form of the subalgebra `U` on the canonical basis of
    /// `U`. `None` if `U` is not a subalgebra.
    pub fn subalgebra_trace_form(&self, u: &Subspace) -> Option<QVec> {
        u.basis().iter().map(|x| u.restrict(&self.ad(x)).map(|m| m.trace())).collect()
    }

    /// The algebra structure on `span(basis)`, expressed in that basis.
    /// Fails if the span is not closed under the bracket.
    pub fn restrict_to_basis(&self, basis: &[QVec]) -> Result<LieAlgebra> {
        let k = basis.len();
        if k == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let v = self.br(&basis[i], &basis[j]);
                let c = coords_in(basis, &v)
                    .ok_or_else(|| Error::PreconditionViolated("span is not a subalgebra".into()))?;
                brackets.push((i, j, c));
            }
        }
        LieAlgebra::from_brackets(k, &brackets)
    }

    /// The same algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &QMatrix) -> Result<LieAlgebra> {
        if p.rows() != self.dim || !p.is_square() {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.rows() });
        }
        if p.rank() < self.dim {
            return Err(Error::SingularMatrix);
        }
        self.restrict_to_basis(&p.col_vecs())
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut brackets = Vec::new();
        for (i, j, v) in self.nonzero_brackets() {
            let mut w = v;
            w.extend(zero_vec(n2));
            brackets.push((i, j, w));
        }
        for (i, j, v) in other.nonzero_brackets() {
            let mut w = zero_vec(n1);
            w.extend(v);
            brackets.push((i + n1, j + n1, w));
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        LieAlgebra::from_brackets(n, &brackets).unwrap().with_labels(labels).unwrap()
    }

    /// `k = ker φ` is an abelian ideal iff `φ` vanishes on `g'` and every
    /// component form `B_k` vanishes on `ker φ × ker φ`, i.e. `B_k = φ ∧ D_k`.
    /// The latter holds iff each nonzero `B_k` has rank 2 and `φ` lies in its
    /// row space. So the admissible `φ` form the subspace
    /// `ann(g') ∩ ⋂ row(B_k)` minus zero, provided all ranks are at most 2.
    /// Returns `None` when no codimension one abelian ideal exists.
    pub fn abelian_hyperplane_forms(&self) -> Option<Subspace> {
        let n = self.dim;
        if n < 2 {
            return None;
        }
        if self.is_abelian() {
            return Some(Subspace::full(n));
        }
        let mut s = Subspace::span(n, &self.derived().annihilator());
        for bk in self.component_forms() {
            if bk.is_zero() {
                continue;
            }
            if bk.rank() > 2 {
                return None;
            }
            s = s.intersect(&Subspace::span(n, &bk.row_vecs()));
        }
        (!s.is_zero()).then_some(s)
    }

    /// Finds a codimension one abelian ideal, if one exists.
    pub fn almost_abelian_presentation(&self, metric: &Metric) -> Option<AlmostAbelian> {
        let n = self.dim;
        let forms = self.abelian_hyperplane_forms()?;
        let phi = if self.is_abelian() {
            metric.gram().mul_vec(&unit_vec(n, 0))
        } else {
            forms.basis()[0].clone()
        };
        let phi = OneForm::new(phi);
        let ideal = Subspace::from_forms(n, &[phi.coeffs().to_vec()]);
        debug_assert!(self.is_ideal(&ideal) && self.is_abelian_subspace(&ideal));
        let sharp = metric.sharp(&phi);
        let b = vec_scale(&sharp, &phi.eval(&sharp).recip());
        let b_norm_sq = metric.norm_sq(&b);
        let c = ideal.restrict(&self.ad(&b)).expect("ideal is ad-invariant");
        Some(AlmostAbelian { b, b_norm_sq, phi, ideal, c })
    }
}
