//! Lattice witnesses: conjugating `exp(t0 C)` to an integer matrix.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::expm::{charpoly_f64, exp_ad};
use crate::lattice::intpoly::IntPoly;
use crate::linalg::QMatrix;
use crate::poly::QPoly;
use crate::scalar::Scalar;

/// Default residual bound for `Q exp(t0 C) Q⁻¹ - Z`.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Smallest admissible ratio of singular values of the normalised Krylov basis.
pub const KRYLOV_COND: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeWitness {
    pub t0: f64,
    pub poly: IntPoly,
    /// Integer matrix in `SL(n, Z)`, row-major.
    pub z: Vec<Vec<i64>>,
    /// Conjugator with `Q exp(t0 C) Q⁻¹ ≈ Z`, row-major.
    pub q: Vec<Vec<f64>>,
    pub residual: f64,
    /// Coordinate groups certified separately; a single group means the
    /// whole matrix was conjugated to one companion matrix.
    pub blocks: Vec<Vec<usize>>,
}

impl LatticeWitness {
    pub fn z_matrix(&self) -> QMatrix {
        let rows: Vec<Vec<Scalar>> = self.z.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect()).collect();
        QMatrix::from_rows(&rows, self.z.len())
    }

    pub fn q_matrix(&self) -> DMatrix<f64> {
        let n = self.q.len();
        DMatrix::from_fn(n, n, |i, j| self.q[i][j])
    }

    /// Exact determinant and characteristic polynomial checks on `Z`.
    pub fn is_sound(&self) -> bool {
        let z = self.z_matrix();
        z.det().is_one() && QPoly::new(z.charpoly()) == self.poly.to_qpoly() && self.residual <= RESIDUAL_TOL
    }
}

fn rows_of(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn int_rows(z: &QMatrix) -> Option<Vec<Vec<i64>>> {
    (0..z.rows())
        .map(|i| (0..z.cols()).map(|j| z[(i, j)].to_integer().to_i64()).collect::<Option<Vec<_>>>())
        .collect()
}

fn generic_vector(n: usize) -> DVector<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ce);
    DVector::from_fn(n, |_, _| rng.gen_range(0.5..1.5))
}

/// Companion-matrix route. `None` when `P` is not monic with `|P(0)| = 1`,
/// when the companion matrix has determinant `-1`, when `exp(t0 C)` is
/// derogatory, or when the residual exceeds `tol`.
pub fn certify_witness(c: &DMatrix<f64>, t0: f64, p: &IntPoly, tol: f64) -> Option<LatticeWitness> {
    let n = c.nrows();
    if n == 0 || p.degree() != n || !p.is_monic() || !p.constant().abs().is_one() {
        return None;
    }
    let z = p.companion();
    if !z.det().is_one() {
        return None;
    }
    let m = exp_ad(c, t0).ok()?;
    let mut k = DMatrix::<f64>::zeros(n, n);
    let mut v = generic_vector(n);
    for j in 0..n {
        k.set_column(j, &v);
        v = &m * v;
    }
    let mut kn = k.clone();
    for mut col in kn.column_iter_mut() {
        let s = col.norm();
        col /= s;
    }
    let sv = kn.singular_values();
    if sv.min() < KRYLOV_COND * sv.max() {
        return None;
    }
    let q = k.clone().try_inverse()?;
    let zf = z.to_f64();
    let residual = (&q * &m * &k - &zf).amax();
    if !residual.is_finite() || residual > tol {
        return None;
    }
    Some(LatticeWitness { t0, poly: p.clone(), z: int_rows(&z)?, q: rows_of(&q), residual, blocks: vec![(0..n).collect()] })
}

/// Connected components of the sparsity graph of `C`.
fn components(c: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let n = c.nrows();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(comp: &mut [usize], i: usize) -> usize {
        if comp[i] != i {
            let r = find(comp, comp[i]);
            comp[i] = r;
        }
        comp[i]
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && (c[(i, j)] != 0.0 || c[(j, i)] != 0.0) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut comp, i)).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match out.iter_mut().find(|g| roots[g[0]] == roots[i]) {
            Some(g) => g.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

/// All set partitions of `0..k`, coarsest first.
fn partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for g in 0..cur.len() {
            cur[g].push(i);
            rec(i + 1, k, cur, out);
            cur[g].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, k, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, k, &mut Vec::new(), &mut out);
    out.sort_by_key(Vec::len);
    out
}

pub const MAX_BLOCK_COMPONENTS: usize = 8;

/// Block route for derogatory `exp(t0 C)`: groups the invariant coordinate
/// blocks of `C` and certifies each group through its own companion matrix.
pub fn certify_blockwise(c: &DMatrix<f64>, t0: f64, tol: f64) -> Option<LatticeWitness> {
    let n = c.nrows();
    let comps = components(c);
    if comps.len() < 2 || comps.len() > MAX_BLOCK_COMPONENTS {
        return None;
    }
    'partition: for part in partitions(comps.len()).into_iter().filter(|p| p.len() > 1) {
        let mut pieces = Vec::new();
        for group in &part {
            let mut idx: Vec<usize> = group.iter().flat_map(|&g| comps[g].iter().copied()).collect();
            idx.sort_unstable();
            let sub = DMatrix::from_fn(idx.len(), idx.len(), |i, j| c[(idx[i], idx[j])]);
            let m = match exp_ad(&sub, t0) {
                Ok(m) => m,
                Err(_) => continue 'partition,
            };
            let Some(p) = IntPoly::from_f64(&charpoly_f64(&m), tol.min(1e-9)) else { continue 'partition };
            let Some(w) = certify_witness(&sub, t0, &p, tol) else { continue 'partition };
            pieces.push((idx, w));
        }
        // assemble in the order of the groups
        let mut qf = DMatrix::<f64>::zeros(n, n);
        let mut z = QMatrix::zeros(n, n);
        let mut poly = QPoly::one();
        let mut off = 0;
        for (idx, w) in &pieces {
            let d = idx.len();
            for a in 0..d {
                for (b, &col) in idx.iter().enumerate() {
                    qf[(off + a, col)] = w.q[a][b];
                }
                for b in 0..d {
                    z[(off + a, off + b)] = Scalar::from_integer(BigInt::from(w.z[a][b]));
                }
            }
            poly = poly.mul(&w.poly.to_qpoly());
            off += d;
        }
        let m = exp_ad(c, t0).ok()?;
        let qinv = qf.clone().try_inverse()?;
        let residual = (&qf * &m * &qinv - z.to_f64()).amax();
        if residual > tol {
            continue;
        }
        return Some(LatticeWitness {
            t0,
            poly: IntPoly::from_qpoly(&poly)?,
            z: int_rows(&z)?,
            q: rows_of(&qf),
            residual,
            blocks: pieces.into_iter().map(|(idx, _)| idx).collect(),
        });
    }
    None
}

/// Companion route, then the block route when `P` factors accordingly.
pub fn certify(c: &DMatrix<f64>, t0: f64, p: &IntPoly, tol: f64) -> Option<LatticeWitness> {
    certify_witness(c, t0, p, tol).or_else(|| certify_blockwise(c, t0, tol).filter(|w| w.poly == *p))
}

/// Invariant factors of an integer matrix (Smith normal form diagonal),
/// nonnegative, with zeros for the rank defect.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let mut piv = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && piv.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let mut done = false;
        while !done {
            done = true;
            for i in t + 1..rows {
                let f = a[i][t] / a[t][t];
                if f != 0 {
                    for j in t..cols {
                        a[i][j] -= f * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j] / a[t][t];
                if f != 0 {
                    for r in a.iter_mut().skip(t) {
                        r[j] -= f * r[t];
                    }
                }
                if a[t][j] != 0 {
                    for r in a.iter_mut() {
                        r.swap(t, j);
                    }
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if a[i][j] % a[t][t] != 0 {
                            for k in t..cols {
                                let v = a[i][k];
                                a[t][k] += v;
                            }
                            done = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        out.push(a[t][t].abs() as i64);
        t += 1;
    }
    out.resize(rows.min(cols), 0);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationReport {
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
    /// Orders of the nontrivial cyclic torsion summands.
    pub torsion: Vec<i64>,
    pub description: String,
}

/// `Γ/[Γ,Γ]` for `Γ = Z ⋉_Z Z^k`, which is `Z ⊕ coker(Z - I)`.
pub fn abelianization(z: &[Vec<i64>]) -> AbelianizationReport {
    let k = z.len();
    let shifted: Vec<Vec<i64>> =
        (0..k).map(|i| (0..k).map(|j| z[i][j] - i64::from(i == j)).collect()).collect();
    let invariant_factors = smith_normal_form(&shifted);
    let free_rank = 1 + invariant_factors.iter().filter(|&&d| d == 0).count();
    let torsion: Vec<i64> = invariant_factors.iter().copied().filter(|&d| d > 1).collect();
    let mut parts = vec![if free_rank == 1 { "Z".to_string() } else { format!("Z^{free_rank}") }];
    parts.extend(torsion.iter().map(|d| format!("Z_{d}")));
    AbelianizationReport { invariant_factors, free_rank, torsion, description: parts.join(" ⊕ ") }
}

/// The closed-form lattices of the group of `e(1,1)`: `t_m = ln((m + √(m²-4))/2)`
/// and `Z = E_m = [[0,-1],[1,m]]`.
pub fn e11_lattice(m: i64) -> Result<(LatticeWitness, AbelianizationReport)> {
    if m < 3 {
        return Err(Error::MTooSmall(m));
    }
    let mf = m as f64;
    let t = ((mf + (mf * mf - 4.0).sqrt()) / 2.0).ln();
    let c = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let p = IntPoly::from_i64(&[1, -m, 1]);
    let w = certify_witness(&c, t, &p, RESIDUAL_TOL)
        .ok_or_else(|| Error::EnvelopeExceeded(format!("m = {m}: residual above {RESIDUAL_TOL}")))?;
    let ab = abelianization(&w.z);
    Ok((w, ab))
}
