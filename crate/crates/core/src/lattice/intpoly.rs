//! Integer polynomials, companion matrices and the simple-root diagnostics
//! for characteristic polynomials of unimodular integer matrices.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::linalg::QMatrix;
use crate::poly::{divisors, QPoly};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Rounds float coefficients, provided each is within `tol * max(1, |c|)`
    /// of an integer.
    pub fn from_f64(c: &[f64], tol: f64) -> Option<Self> {
        let mut out = Vec::with_capacity(c.len());
        for &x in c {
            let r = x.round();
            if !x.is_finite() || (x - r).abs() > tol * x.abs().max(1.0) {
                return None;
            }
            out.push(BigInt::from(r as i128));
        }
        Some(Self::new(out))
    }

    /// Coefficients from the constant term up.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(One::is_one)
    }

    pub fn constant(&self) -> BigInt {
        self.c.first().cloned().unwrap_or_default()
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.c.iter().map(|a| Scalar::from(a.clone())).collect())
    }

    /// Exact conversion back from a rational polynomial with integer coefficients.
    pub fn from_qpoly(p: &QPoly) -> Option<Self> {
        p.coeffs().iter().map(|a| a.is_integer().then(|| a.to_integer())).collect::<Option<Vec<_>>>().map(Self::new)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Companion matrix with ones on the subdiagonal and last column
    /// `-c_0, ..., -c_{n-1}`; its characteristic polynomial is `self`.
    /// Requires a monic polynomial of degree at least one.
    pub fn companion(&self) -> QMatrix {
        assert!(self.is_monic() && self.degree() > 0, "companion needs a monic polynomial");
        let n = self.degree();
        let mut z = QMatrix::zeros(n, n);
        for i in 1..n {
            z[(i, i - 1)] = Scalar::one();
        }
        for i in 0..n {
            z[(i, n - 1)] = Scalar::from(-&self.c[i]);
        }
        z
    }

    pub fn companion_f64(&self) -> DMatrix<f64> {
        self.companion().to_f64()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_qpoly().fmt(f)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Combination budget for the Kronecker search; beyond it irreducibility is
/// left undecided.
const KRONECKER_BUDGET: usize = 200_000;
pub const MAX_FACTOR_DEGREE: usize = 8;

fn lagrange(xs: &[BigInt], ys: &[BigInt]) -> QPoly {
    let mut out = QPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = QPoly::new(vec![Scalar::from(yi.clone())]);
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = QPoly::linear(&Scalar::from(xj.clone()));
                let d = Scalar::from(xi - xj);
                term = term.mul(&lin).scale(&(Scalar::one() / d));
            }
        }
        out = out.add(&term);
    }
    out
}

/// Irreducibility over Q for degree at most 8, by rational roots and
/// Kronecker's interpolation search. `None` when undecided.
pub fn is_irreducible(p: &IntPoly) -> Option<bool> {
    let d = p.degree();
    if d == 0 {
        return Some(false);
    }
    if d == 1 {
        return Some(true);
    }
    let q = p.to_qpoly();
    if !q.rational_roots().is_empty() {
        return Some(false);
    }
    if d > MAX_FACTOR_DEGREE {
        return None;
    }
    for fd in 2..=d / 2 {
        let mut xs = Vec::new();
        let mut k = 0i64;
        while xs.len() < fd + 1 {
            // 0, 1, -1, 2, -2, ...
            let x = BigInt::from(if k % 2 == 1 { k.div_euclid(2) + 1 } else { -(k / 2) });
            k += 1;
            if !p.eval(&x).is_zero() {
                xs.push(x);
            }
        }
        let choices: Vec<Vec<BigInt>> = xs
            .iter()
            .map(|x| {
                let ds = divisors(&p.eval(x));
                ds.iter().flat_map(|v| [v.clone(), -v.clone()]).collect()
            })
            .collect();
        let total: usize = choices.iter().map(Vec::len).product();
        if total > KRONECKER_BUDGET {
            return None;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let ys: Vec<BigInt> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            let f = lagrange(&xs, &ys);
            if f.degree() == fd && f.coeffs().iter().all(|a| a.is_integer()) && q.div_rem(&f).1.is_zero() {
                return Some(false);
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Some(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoubleRootCheck {
    /// Monic, `|P(0)| = 1`, and some repeated root is not `±1`.
    pub hypothesis: bool,
    /// Monic polynomial whose roots are the repeated roots of `P`.
    pub repeated_root_poly: String,
    pub repeated_root_count: usize,
    /// Numerical values `(re, im)` of the repeated roots.
    pub repeated_roots: Vec<(f64, f64)>,
    /// Under the hypothesis there must be at least two repeated roots.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntPolyReport {
    pub poly: String,
    pub squarefree: bool,
    pub irreducible: Option<bool>,
    pub double_roots: DoubleRootCheck,
}

fn numeric_roots(p: &QPoly) -> Vec<(f64, f64)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let n = p.degree();
    let c: Vec<f64> = p.monic().coeffs().iter().map(crate::scalar::to_f64).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i];
    }
    let mut out: Vec<(f64, f64)> = m.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    out
}

pub fn int_poly_diagnostics(p: &IntPoly) -> IntPolyReport {
    let q = p.to_qpoly();
    let squarefree = q.is_squarefree();
    let irreducible = is_irreducible(p);
    if irreducible == Some(true) {
        assert!(squarefree, "irreducible polynomial {p} with a repeated root");
    }
    let g = if q.degree() == 0 { QPoly::one() } else { q.gcd(&q.derivative()) };
    let repeated = if g.degree() == 0 { QPoly::one() } else { g.squarefree_part() };
    // strip the roots +1 and -1
    let mut rest = repeated.clone();
    for r in [Scalar::one(), -Scalar::one()] {
        let (qq, rem) = rest.div_rem(&QPoly::linear(&r));
        if rem.is_zero() {
            rest = qq;
        }
    }
    let hypothesis = p.is_monic() && p.constant().abs().is_one() && rest.degree() > 0;
    let count = repeated.degree();
    IntPolyReport {
        poly: p.to_string(),
        squarefree,
        irreducible,
        double_roots: DoubleRootCheck {
            hypothesis,
            repeated_root_poly: repeated.to_string(),
            repeated_root_count: count,
            repeated_roots: numeric_roots(&repeated),
            consistent: !hypothesis || count >= 2,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_has_the_right_charpoly() {
        let p = IntPoly::from_i64(&[1, -3, 1]);
        assert_eq!(p.companion(), QMatrix::from_i64(&[&[0, -1], &[1, 3]]));
        let p = IntPoly::from_i64(&[-1, 2, 0, -5, 1]);
        assert_eq!(QPoly::new(p.companion().charpoly()), p.to_qpoly());
    }

    #[test]
    fn rounding_from_floats() {
        assert_eq!(IntPoly::from_f64(&[1.0 + 1e-12, -3.0, 1.0], 1e-9), Some(IntPoly::from_i64(&[1, -3, 1])));
        assert_eq!(IntPoly::from_f64(&[1.1, -3.0, 1.0], 1e-9), None);
    }

    #[test]
    fn golden_ratio_square() {
        let r = int_poly_diagnostics(&IntPoly::from_i64(&[1, -3, 1]));
        assert!(r.squarefree);
        assert_eq!(r.irreducible, Some(true));
        assert!(!r.double_roots.hypothesis);

        let p2 = IntPoly::from_qpoly(&QPoly::from_i64(&[1, -3, 1]).pow(2)).unwrap();
        let r = int_poly_diagnostics(&p2);
        assert!(!r.squarefree);
        assert_eq!(r.irreducible, Some(false));
        assert!(r.double_roots.hypothesis);
        assert_eq!(r.double_roots.repeated_root_count, 2);
        assert!(r.double_roots.consistent);
        let (a, b) = ((3.0 - 5f64.sqrt()) / 2.0, (3.0 + 5f64.sqrt()) / 2.0);
        let roots = &r.double_roots.repeated_roots;
        assert!((roots[0].0 - a).abs() < 1e-12 && (roots[1].0 - b).abs() < 1e-12);
    }

    #[test]
    fn unipotent_cube() {
        let p = IntPoly::from_qpoly(&QPoly::from_i64(&[-1, 1]).pow(3)).unwrap();
        let r = int_poly_diagnostics(&p);
        assert_eq!(r.double_roots.repeated_root_poly, "x - 1");
        assert!(!r.double_roots.hypothesis);
        assert!(r.double_roots.consistent);
    }

    #[test]
    fn kronecker_finds_quadratic_factors() {
        // (x^2 + 1)(x^2 - 3x + 1), no rational roots
        let p = IntPoly::from_qpoly(&QPoly::from_i64(&[1, 0, 1]).mul(&QPoly::from_i64(&[1, -3, 1]))).unwrap();
        assert_eq!(is_irreducible(&p), Some(false));
        // x^4 - 10x^2 + 1, minimal polynomial of sqrt2 + sqrt3
        assert_eq!(is_irreducible(&IntPoly::from_i64(&[1, 0, -10, 0, 1])), Some(true));
        assert_eq!(is_irreducible(&IntPoly::from_i64(&[-2, 0, 0, 1])), Some(true));
    }
}
