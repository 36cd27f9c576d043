//! Levi-Civita and Weyl connections of left-invariant metrics, and curvature.

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{axpy, unit_vec, zero_vec, QMatrix, QVec};
use crate::metric::{Metric, OneForm};
use crate::scalar::{self, Scalar};

/// A left-invariant connection: `gamma[i]` is the matrix of `∇_{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gamma: Vec<QMatrix>,
}

impl Connection {
    pub fn new(gamma: Vec<QMatrix>) -> Self {
        Connection { gamma }
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma(&self) -> &[QMatrix] {
        &self.gamma
    }

    /// Matrix of `∇_x`.
    pub fn along(&self, x: &[Scalar]) -> QMatrix {
        let n = self.dim();
        let mut out = QMatrix::zeros(n, n);
        for (xi, g) in x.iter().zip(&self.gamma) {
            if !xi.is_zero() {
                out = &out + &g.scale(xi);
            }
        }
        out
    }

    /// `∇_x y`
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> QVec {
        let mut out = zero_vec(self.dim());
        for (xi, g) in x.iter().zip(&self.gamma) {
            if !xi.is_zero() {
                axpy(&mut out, xi, &g.mul_vec(y));
            }
        }
        out
    }

    /// `∇_{e_i} e_j - ∇_{e_j} e_i - [e_i, e_j]`
    pub fn torsion_basis(&self, l: &LieAlgebra, i: usize, j: usize) -> QVec {
        let a = self.gamma[i].col(j);
        let b = self.gamma[j].col(i);
        let c = l.bracket_basis(i, j);
        (0..self.dim()).map(|k| &a[k] - &b[k] - &c[k]).collect()
    }
}

/// Curvature operators `r[i][j] = R_{e_i, e_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvature {
    r: Vec<Vec<QMatrix>>,
}

impl Curvature {
    pub fn r(&self, i: usize, j: usize) -> &QMatrix {
        &self.r[i][j]
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    /// `R_{x,y}` by bilinear extension.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> QMatrix {
        let n = self.dim();
        let mut out = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let s = &x[i] * &y[j];
                if !s.is_zero() && i != j {
                    out = &out + &self.r[i][j].scale(&s);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().flatten().all(QMatrix::is_zero)
    }

    /// All operators with `i < j`.
    pub fn operators(&self) -> impl Iterator<Item = (usize, usize, &QMatrix)> {
        let n = self.dim();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, &self.r[i][j])))
    }
}

/// The Levi-Civita connection from the Koszul formula
/// `2g(∇_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)`.
pub fn levi_civita(l: &LieAlgebra, g: &Metric) -> Result<Connection> {
    let n = l.dim();
    if g.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: g.dim() });
    }
    let gram = g.gram();
    // gb[i][j] = G [e_i, e_j] as a covector
    let gb: Vec<Vec<QVec>> = (0..n)
        .map(|i| (0..n).map(|j| gram.mul_vec(&l.bracket_basis(i, j))).collect())
        .collect();
    let half = scalar::half();
    let gamma = (0..n)
        .map(|i| {
            let cols: Vec<QVec> = (0..n)
                .map(|j| {
                    let k: QVec = (0..n)
                        .map(|z| (&gb[i][j][z] - &gb[j][z][i] + &gb[z][i][j]) * &half)
                        .collect();
                    g.inverse_gram().mul_vec(&k)
                })
                .collect();
            QMatrix::from_cols(&cols, n)
        })
        .collect();
    Ok(Connection { gamma })
}

/// The Weyl connection
/// `∇^θ_x y = ∇^g_x y + θ(x) y + θ(y) x - g(x, y) θ♯`.
pub fn weyl_connection(l: &LieAlgebra, g: &Metric, theta: &OneForm) -> Result<Connection> {
    let n = l.dim();
    if theta.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: theta.dim() });
    }
    if !l.is_closed(theta) {
        return Err(Error::NonClosedLeeForm);
    }
    let lc = levi_civita(l, g)?;
    let sharp = g.sharp(theta);
    let gamma = lc
        .gamma
        .iter()
        .enumerate()
        .map(|(i, gi)| {
            let mut m = gi + &QMatrix::scalar_identity(n, &theta.coeffs()[i]);
            m = &m + &QMatrix::outer(&unit_vec(n, i), theta.coeffs());
            &m - &QMatrix::outer(&sharp, &g.gram().row(i))
        })
        .collect();
    Ok(Connection { gamma })
}

/// `R_{x,y} = [∇_x, ∇_y] - ∇_{[x,y]}` on all basis pairs.
pub fn curvature(l: &LieAlgebra, conn: &Connection) -> Curvature {
    let n = l.dim();
    let mut r = vec![vec![QMatrix::zeros(n, n); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let m = &conn.gamma[i].commutator(&conn.gamma[j]) - &conn.along(&l.bracket_basis(i, j));
            r[j][i] = -&m;
            r[i][j] = m;
        }
    }
    Curvature { r }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_vec, is_zero_vec};
    use crate::scalar::int;

    fn e11() -> LieAlgebra {
        LieAlgebra::from_int_brackets(3, &[(1, 2, &[0, 1, 0]), (1, 3, &[0, 0, -1])])
    }

    /// Direct evaluation of the Koszul formula with metric inner products on
    /// basis vectors, solved for `∇_{e_i} e_j` by inverting the Gram matrix.
    fn koszul_oracle(l: &LieAlgebra, g: &Metric, i: usize, j: usize) -> QVec {
        let n = l.dim();
        let e = |a: usize| unit_vec(n, a);
        let rhs: QVec = (0..n)
            .map(|z| {
                let t1 = g.inner(&l.br(&e(i), &e(j)), &e(z));
                let t2 = g.inner(&l.br(&e(j), &e(z)), &e(i));
                let t3 = g.inner(&l.br(&e(z), &e(i)), &e(j));
                (t1 - t2 + t3) / int(2)
            })
            .collect();
        g.gram().solve(&rhs).unwrap()
    }

    #[test]
    fn abelian_levi_civita_vanishes() {
        let c = levi_civita(&LieAlgebra::abelian(3), &Metric::identity(3)).unwrap();
        assert!(c.gamma().iter().all(QMatrix::is_zero));
    }

    #[test]
    fn e11_levi_civita_matches_koszul() {
        let l = e11();
        let g = Metric::identity(3);
        let c = levi_civita(&l, &g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.gamma()[i].col(j), koszul_oracle(&l, &g, i, j));
            }
        }
        // Torsion-free sign: ∇_{e2} e2 = e1 and ∇_{e2} e1 = -e2.
        assert_eq!(c.gamma()[1].col(1), int_vec(&[1, 0, 0]));
        assert_eq!(c.gamma()[1].col(0), int_vec(&[0, -1, 0]));
    }

    #[test]
    fn skew_ad_gives_half_bracket() {
        // so(3) with the identity metric has skew ad_x, so ∇_x y = ½[x, y].
        let l = LieAlgebra::from_int_brackets(
            3,
            &[(1, 2, &[0, 0, 1]), (2, 3, &[1, 0, 0]), (3, 1, &[0, 1, 0])],
        );
        let c = levi_civita(&l, &Metric::identity(3)).unwrap();
        for i in 0..3 {
            assert_eq!(c.gamma()[i], l.ad_basis(i).scale(&scalar::half()));
        }
    }

    #[test]
    fn weyl_with_zero_form_is_levi_civita() {
        let l = e11();
        let g = Metric::identity(3);
        assert_eq!(
            weyl_connection(&l, &g, &OneForm::zero(3)).unwrap(),
            levi_civita(&l, &g).unwrap()
        );
    }

    #[test]
    fn abelian_weyl_example() {
        let l = LieAlgebra::abelian(3);
        let c = weyl_connection(&l, &Metric::identity(3), &OneForm::dual_basis(3, 0)).unwrap();
        assert_eq!(c.gamma()[1].col(0), int_vec(&[0, 1, 0]));
        assert_eq!(c.gamma()[1].col(1), int_vec(&[-1, 0, 0]));
        assert_eq!(c.gamma()[0], QMatrix::identity(3));
        let r = curvature(&l, &c);
        // R_{e2,e3} e2 = e3
        assert_eq!(r.r(1, 2).col(1), int_vec(&[0, 0, 1]));
    }

    #[test]
    fn weyl_rejects_non_closed() {
        let err = weyl_connection(&e11(), &Metric::identity(3), &OneForm::dual_basis(3, 1));
        assert_eq!(err, Err(Error::NonClosedLeeForm));
    }

    #[test]
    fn abelian_zero_form_is_flat() {
        let l = LieAlgebra::abelian(3);
        let c = weyl_connection(&l, &Metric::identity(3), &OneForm::zero(3)).unwrap();
        assert!(curvature(&l, &c).is_zero());
    }

    #[test]
    fn e11_curvature_kills_e3() {
        let l = e11();
        let theta = OneForm::dual_basis(3, 0).scale(&int(-1));
        let c = weyl_connection(&l, &Metric::identity(3), &theta).unwrap();
        let r = curvature(&l, &c);
        for i in 0..3 {
            for j in 0..3 {
                assert!(is_zero_vec(&r.r(i, j).col(2)));
            }
        }
    }
}
