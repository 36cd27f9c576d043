//! Explicit LCP structures on the table algebras, built from the almost
//! abelian, flag and semidirect constructions and moved to the printed basis
//! by an explicit change of basis.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::classify::table::{check_params, expected_flat_dims, split_name, table_algebra, Params};
use crate::construct::{almab_base, almab_lcp, direct_product, flag_lcp, semidirect_lcp, OrthoRep};
use crate::detect::{classify, structural_audit, LcpStructure};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, QMatrix, QVec};
use crate::metric::{Metric, OneForm};
use crate::scalar::{self, int, q, Scalar};

/// `true` iff `p[x, y]_1 = [p x, p y]_2` on all basis pairs.
pub fn check_isomorphism_witness(l1: &LieAlgebra, l2: &LieAlgebra, p: &QMatrix) -> Result<bool> {
    let n = l1.dim();
    if l2.dim() != n || p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.rows() });
    }
    if p.rank() < n {
        return Err(Error::SingularMatrix);
    }
    let cols = p.col_vecs();
    for i in 0..n {
        for j in i + 1..n {
            if p.mul_vec(&l1.bracket_basis(i, j)) != l2.br(&cols[i], &cols[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An LCP structure on a table algebra together with its provenance.
#[derive(Clone, Debug)]
pub struct Witness {
    pub row: String,
    pub params: Params,
    pub intended_flat_dim: usize,
    pub recipe: String,
    /// The structure as constructed.
    pub source: LcpStructure,
    /// Columns are the printed basis vectors in source coordinates.
    pub table_basis: QMatrix,
    /// The structure moved to the printed basis.
    pub structure: LcpStructure,
}

impl Witness {
    /// The isomorphism source → table, i.e. the inverse of `table_basis`.
    pub fn isomorphism(&self) -> QMatrix {
        self.table_basis.inverse().expect("invertible")
    }
}

/// Columns `±e_{src[i]}`; negative entries of `src` (as `!k`) flip the sign.
fn perm(src: &[isize]) -> QMatrix {
    let n = src.len();
    let cols: Vec<QVec> = src
        .iter()
        .map(|&s| {
            if s >= 0 {
                unit_vec(n, s as usize)
            } else {
                let mut v = unit_vec(n, (!s) as usize);
                v[(!s) as usize] = int(-1);
                v
            }
        })
        .collect();
    QMatrix::from_cols(&cols, n)
}

fn tilted(n: usize, tilt: Option<(usize, usize)>) -> Metric {
    let mut g = QMatrix::identity(n);
    if let Some((i, j)) = tilt {
        g[(i, j)] = scalar::half();
        g[(j, i)] = scalar::half();
    }
    Metric::new(g).expect("tilted metric is positive definite")
}

/// `L_(A,B)`, optionally with `g(h_i, h_j) = 1/2` on `h = span(b, x)`.
fn almab(a: &QMatrix, b: &QMatrix, tilt: Option<(usize, usize)>) -> Result<LcpStructure> {
    if tilt.is_none() {
        return almab_lcp(a, b);
    }
    let h = almab_base(a);
    let qd = b.rows();
    let mut images = vec![b.clone()];
    images.extend(std::iter::repeat_n(QMatrix::zeros(qd, qd), a.rows()));
    semidirect_lcp(&h, &tilted(h.dim(), tilt), &OrthoRep::new(qd, images))
}

/// `h ⋉ R u` where `h` is the span of the printed basis minus `e_{u+1}`.
fn semidirect_from_table(t: &LieAlgebra, u: usize, tilt: Option<(usize, usize)>) -> Result<LcpStructure> {
    let n = t.dim();
    let hb: Vec<QVec> = (0..n).filter(|&i| i != u).map(|i| unit_vec(n, i)).collect();
    let h = t.restrict_to_basis(&hb)?;
    semidirect_lcp(&h, &tilted(n - 1, tilt), &OrthoRep::zero(1, n - 1))
}

fn m(rows: &[&[Scalar]]) -> QMatrix {
    let r: Vec<QVec> = rows.iter().map(|x| x.to_vec()).collect();
    QMatrix::from_rows(&r, rows.first().map_or(0, |x| x.len()))
}

fn sk(r: &Scalar) -> QMatrix {
    m(&[&[int(0), r.clone()], &[-r, int(0)]])
}

type Recipe = (usize, String, LcpStructure, QMatrix);

fn base_witnesses(base: &str, v: &[Scalar], t: &LieAlgebra) -> Result<Vec<Recipe>> {
    let z = Scalar::zero;
    let one = || int(1);
    let mut out: Vec<Recipe> = Vec::new();
    let id = |n: usize| perm(&(0..n as isize).collect::<Vec<_>>());
    let mut push = |d: usize, recipe: String, s: Result<LcpStructure>, p: QMatrix| -> Result<()> {
        out.push((d, recipe, s?, p));
        Ok(())
    };
    match base {
        "e(1,1)" => push(1, "almab A=[1] B=0".into(), almab_lcp(&m(&[&[one()]]), &QMatrix::zeros(1, 1)), id(3))?,
        "g_{4.2}" => push(
            1,
            "almab A=[[1,1],[0,1]] B=0".into(),
            almab_lcp(&QMatrix::from_i64(&[&[1, 1], &[0, 1]]), &QMatrix::zeros(1, 1)),
            id(4),
        )?,
        "g_{4.5}" => {
            let p = &v[0];
            let half = *p == q(-1, 2);
            let tilt = half.then_some((1, 2));
            push(
                1,
                format!("almab A=diag(1,p) B=0{}", if half { ", tilt(x1,x2)" } else { "" }),
                almab(&QMatrix::diag(&[one(), p.clone()]), &QMatrix::zeros(1, 1), tilt),
                id(4),
            )?;
            if half {
                push(2, "almab A=[1] B=0".into(), almab_lcp(&m(&[&[one()]]), &QMatrix::zeros(2, 2)), id(4))?;
            }
        }
        "g_{4.6}" => {
            let p = &v[0];
            push(
                1,
                "almab A=[[p,1],[-1,p]] B=0".into(),
                almab_lcp(&m(&[&[p.clone(), one()], &[int(-1), p.clone()]]), &QMatrix::zeros(1, 1)),
                perm(&[0, 3, 1, 2]),
            )?;
            push(
                2,
                "almab A=[-2p] B=[[0,1],[-1,0]]".into(),
                almab_lcp(&m(&[&[p * int(-2)]]), &sk(&one())),
                id(4),
            )?;
        }
        "g_{5.7}" => {
            let (p, qq, r) = (&v[0], &v[1], &v[2]);
            let tilt = (*p == int(-1)).then_some((1, 2));
            push(
                1,
                format!("almab A=diag(p,q,r) B=0{}", if tilt.is_some() { ", tilt(x1,x2)" } else { "" }),
                almab(&QMatrix::diag(&[p.clone(), qq.clone(), r.clone()]), &QMatrix::zeros(1, 1), tilt),
                perm(&[1, 2, 3, 4, 0]),
            )?;
            if p != r && p == qq {
                push(
                    2,
                    "almab A=diag(r,-1) B=0".into(),
                    almab_lcp(&QMatrix::diag(&[r.clone(), int(-1)]), &QMatrix::zeros(2, 2)),
                    perm(&[3, 4, 1, 2, 0]),
                )?;
            } else if p != r && qq == r {
                push(
                    2,
                    "almab A=diag(p,-1) B=0".into(),
                    almab_lcp(&QMatrix::diag(&[p.clone(), int(-1)]), &QMatrix::zeros(2, 2)),
                    perm(&[1, 3, 4, 2, 0]),
                )?;
            }
            if p == qq && qq == r {
                push(
                    3,
                    "almab A=[-1] B=0".into(),
                    almab_lcp(&m(&[&[int(-1)]]), &QMatrix::zeros(3, 3)),
                    perm(&[2, 3, 4, 1, 0]),
                )?;
            }
        }
        "g_{5.8}" => push(
            1,
            "almab A=[[1,0,0],[0,0,1],[0,0,0]] B=0".into(),
            almab_lcp(&QMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]]), &QMatrix::zeros(1, 1)),
            perm(&[1, 2, 3, 4, 0]),
        )?,
        "g_{5.9}" => {
            let p = &v[0];
            let tilt = (*p == int(-1)).then_some((1, 2));
            push(
                1,
                format!("almab A=[[p,0,0],[0,1,1],[0,0,1]] B=0{}", if tilt.is_some() { ", tilt(x1,x2)" } else { "" }),
                almab(
                    &m(&[&[p.clone(), z(), z()], &[z(), one(), one()], &[z(), z(), one()]]),
                    &QMatrix::zeros(1, 1),
                    tilt,
                ),
                perm(&[1, 2, 3, 4, 0]),
            )?;
            if *p == int(-1) {
                push(
                    2,
                    "almab A=[[1,1],[0,1]] B=0".into(),
                    almab_lcp(&QMatrix::from_i64(&[&[1, 1], &[0, 1]]), &QMatrix::zeros(2, 2)),
                    perm(&[3, 1, 2, 4, 0]),
                )?;
            }
        }
        "g_{5.11}" => push(
            1,
            "almab A=[[1,1,0],[0,1,1],[0,0,1]] B=0".into(),
            almab_lcp(&QMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]), &QMatrix::zeros(1, 1)),
            perm(&[1, 2, 3, 4, 0]),
        )?,
        "g_{5.13}" => {
            let (qq, r) = (&v[0], &v[1]);
            let third = *qq == q(-1, 3);
            let tilt = (*qq == int(-1) || third).then_some((1, 2));
            push(
                1,
                format!("almab A=[[1,0,0],[0,q,r],[0,-r,q]] B=0{}", if tilt.is_some() { ", tilt(x1,x2)" } else { "" }),
                almab(
                    &m(&[&[one(), z(), z()], &[z(), qq.clone(), r.clone()], &[z(), -r, qq.clone()]]),
                    &QMatrix::zeros(1, 1),
                    tilt,
                ),
                perm(&[1, 2, 3, 4, 0]),
            )?;
            if !qq.is_zero() {
                let tilt = third.then_some((1, 2));
                push(
                    2,
                    format!("almab A=diag(1,-1-2q) B=[[0,r],[-r,0]]{}", if third { ", tilt(x1,x2)" } else { "" }),
                    almab(&QMatrix::diag(&[one(), -(qq * int(2)) - one()]), &sk(r), tilt),
                    perm(&[1, 3, 4, 2, 0]),
                )?;
            }
            if third {
                let b = m(&[&[z(), r.clone(), z()], &[-r, z(), z()], &[z(), z(), z()]]);
                push(3, "almab A=[1] B=[[0,r,0],[-r,0,0],[0,0,0]]".into(), almab_lcp(&m(&[&[one()]]), &b), perm(&[1, 2, 3, 4, 0]))?;
            }
        }
        "g_{5.16}" => push(
            2,
            "almab A=[[1,1],[0,1]] B=[[0,q],[-q,0]]".into(),
            almab_lcp(&QMatrix::from_i64(&[&[1, 1], &[0, 1]]), &sk(&v[0])),
            perm(&[1, 2, 3, 4, 0]),
        )?,
        "g_{5.17}" => {
            let (p, r) = (&v[0], &v[1]);
            if !p.is_zero() {
                push(
                    2,
                    "almab A=[[p,1],[-1,p]] B=[[0,r],[-r,0]]".into(),
                    almab_lcp(&m(&[&[p.clone(), one()], &[int(-1), p.clone()]]), &sk(r)),
                    perm(&[1, 2, 3, 4, 0]),
                )?;
            }
        }
        "g_{5.19}" | "g_{5.23}" | "g_{5.25}" | "g_{5.35}" => {
            push(
                1,
                "semidirect h=span(e1,e2,e3,e5) beta=0".into(),
                semidirect_from_table(t, 3, None),
                perm(&[0, 1, 2, 4, 3]),
            )?;
            if base == "g_{5.35}" {
                let j = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
                push(
                    2,
                    "flag A=[2] B1=0 B2=[[0,-1],[1,0]] v=0".into(),
                    flag_lcp(&m(&[&[int(2)]]), &QMatrix::zeros(2, 2), &j, &[z()]),
                    perm(&[1, 3, 4, 2, !0]),
                )?;
            }
        }
        "g_{5.33}" => push(
            1,
            "semidirect h=span(e1,e2,e4,e5) beta=0".into(),
            semidirect_from_table(t, 2, None),
            perm(&[0, 1, 4, 2, 3]),
        )?,
        _ => return Err(Error::UnknownName(base.to_string())),
    }
    Ok(out)
}

/// All shipped witnesses for a row at the given parameters.
pub fn witnesses(name: &str, p: &Params) -> Result<Vec<Witness>> {
    let v = check_params(name, p)?;
    let (base, extra) = split_name(name);
    let table = table_algebra(name, p)?;
    let base_table = table_algebra(base, &base_params(base, p))?;
    let mut out = Vec::new();
    for (d, recipe, source, basis) in base_witnesses(base, &v, &base_table)? {
        let (source, basis, recipe) = if extra > 0 {
            let s = direct_product(&source, &LieAlgebra::abelian(extra), &Metric::identity(extra))?;
            let b = QMatrix::block_diag(&basis, &QMatrix::identity(extra));
            (s, b, format!("{recipe}, direct product with R^{extra}"))
        } else {
            (source, basis, recipe)
        };
        if !check_isomorphism_witness(source.algebra(), &table, &basis.inverse().ok_or(Error::SingularMatrix)?)? {
            return Err(Error::PreconditionViolated(format!("{name}: basis change for '{recipe}' is not an isomorphism")));
        }
        let structure = source.change_basis(&basis)?;
        out.push(Witness {
            row: name.to_string(),
            params: p.clone(),
            intended_flat_dim: d,
            recipe,
            source,
            table_basis: basis,
            structure,
        });
    }
    Ok(out)
}

fn base_params(base: &str, p: &Params) -> Params {
    let e = crate::classify::table::entry(base).expect("base row exists");
    p.iter().filter(|(k, _)| e.params.contains(&k.as_str())).map(|(k, v)| (k.clone(), v.clone())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessOutcome {
    pub flat_dim: usize,
    pub expected: bool,
    pub audit_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub name: String,
    pub params: String,
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
    pub outcomes: Vec<WitnessOutcome>,
    pub covered: bool,
    pub pass: bool,
}

/// Classifies each `(metric, θ)` on the table algebra and compares the
/// maximal flat dimension with the printed set.
pub fn verify_table(name: &str, p: &Params, ws: &[(Metric, OneForm)]) -> Result<TableReport> {
    let l = table_algebra(name, p)?;
    let expected = expected_flat_dims(name, p)?;
    let mut found = BTreeSet::new();
    let mut outcomes = Vec::new();
    for (g, theta) in ws {
        let flat = crate::detect::maximal_flat_parallel(&l, g, theta)?;
        let class = classify(&l, g, theta)?;
        debug_assert_eq!(class.flat_dim, flat.dim());
        let s = LcpStructure::new(l.clone(), g.clone(), theta.clone(), flat)?;
        let audit_ok = !s.flat().is_zero() && structural_audit(&s)?.all_ok();
        found.insert(class.flat_dim);
        outcomes.push(WitnessOutcome {
            flat_dim: class.flat_dim,
            expected: expected.contains(&class.flat_dim),
            audit_ok,
        });
    }
    let covered = found == expected;
    let pass = covered && outcomes.iter().all(|o| o.expected && o.audit_ok);
    Ok(TableReport {
        name: name.to_string(),
        params: crate::classify::table::format_params(p),
        expected: expected.into_iter().collect(),
        found: found.into_iter().collect(),
        outcomes,
        covered,
        pass,
    })
}

/// Runs [`verify_table`] on the shipped witnesses.
pub fn verify_row(name: &str, p: &Params) -> Result<(TableReport, Vec<Witness>)> {
    let ws = witnesses(name, p)?;
    let pairs: Vec<(Metric, OneForm)> =
        ws.iter().map(|w| (w.structure.metric().clone(), w.structure.theta().clone())).collect();
    Ok((verify_table(name, p, &pairs)?, ws))
}

/// Basis swaps identifying a row at a negative parameter with the row at the
/// opposite, admissible parameter: `(row, parameter, swapped pair)`.
pub const NEGATIVE_PARAMETER_SWAPS: [(&str, &str, (usize, usize)); 3] =
    [("g_{5.13}", "r", (1, 2)), ("g_{5.16}", "q", (2, 3)), ("g_{5.17}", "r", (2, 3))];

/// The transposition matrix exchanging basis vectors `i` and `j`.
pub fn swap_matrix(n: usize, i: usize, j: usize) -> QMatrix {
    let mut src: Vec<isize> = (0..n as isize).collect();
    src.swap(i, j);
    perm(&src)
}

/// Checks that the row at `p` with `param` negated is isomorphic to the row
/// at `p` through the stated basis swap. `p` itself must be admissible.
pub fn check_negative_parameter_swap(row: &str, param: &str, p: &Params) -> Result<bool> {
    let &(_, _, (i, j)) = NEGATIVE_PARAMETER_SWAPS
        .iter()
        .find(|(r, k, _)| *r == row && *k == param)
        .ok_or_else(|| Error::UnknownName(format!("{row} {param}")))?;
    let positive = table_algebra(row, p)?;
    let e = crate::classify::table::entry(row)?;
    let vals: Vec<Scalar> = check_params(row, p)?
        .into_iter()
        .zip(e.params)
        .map(|(v, k)| if *k == param { -v } else { v })
        .collect();
    let negative = crate::classify::table::base_algebra(row, &vals);
    check_isomorphism_witness(&negative, &positive, &swap_matrix(positive.dim(), i, j))
}
