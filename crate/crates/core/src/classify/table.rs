//! The unimodular solvable LCP Lie algebras of dimension 3, 4 and 5.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::QVec;
use crate::scalar::{self, int, q, Scalar};

pub type Params = BTreeMap<String, Scalar>;

pub fn params(pairs: &[(&str, Scalar)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// `p=1/2, q=-1` style rendering, empty for parameter-free rows.
pub fn format_params(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={}", scalar::format(v))).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeStatus {
    Yes,
    No,
    SomeParameters,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub name: &'static str,
    pub display: &'static str,
    pub table: u8,
    pub dim: usize,
    pub params: &'static [&'static str],
    /// Superscripts fixed by unimodularity; accepted if supplied and equal.
    pub fixed: &'static [(&'static str, i64)],
    pub range: &'static str,
    pub brackets: &'static str,
    pub dims_column: &'static str,
    pub lattice: LatticeStatus,
    pub lattice_column: &'static str,
}

const fn row(
    name: &'static str,
    display: &'static str,
    table: u8,
    dim: usize,
    params: &'static [&'static str],
    fixed: &'static [(&'static str, i64)],
    range: &'static str,
    brackets: &'static str,
    dims_column: &'static str,
    lattice: LatticeStatus,
    lattice_column: &'static str,
) -> TableEntry {
    TableEntry { name, display, table, dim, params, fixed, range, brackets, dims_column, lattice, lattice_column }
}

use LatticeStatus::{No, SomeParameters as Some_, Yes};

const E11: &str = "[e1,e2]=e2, [e1,e3]=-e3";
const G42: &str = "[e1,e2]=e2, [e1,e3]=e2+e3, [e1,e4]=-2e4";
const G45: &str = "[e1,e2]=e2, [e1,e3]=pe3, [e1,e4]=-(p+1)e4";
const G46: &str = "[e1,e2]=-2pe2, [e1,e3]=pe3-e4, [e1,e4]=e3+pe4";

static ENTRIES: [TableEntry; 21] = [
    row("e(1,1)", "e(1,1)", 1, 3, &[], &[], "", E11, "1", Yes, "yes"),
    row("e(1,1)+R", "e(1,1) ⊕ R", 2, 4, &[], &[], "", E11, "1", Yes, "yes"),
    row("g_{4.2}", "g_{4.2}^{-2}", 2, 4, &[], &[("p", -2)], "", G42, "1", No, "no"),
    row("g_{4.5}", "g_{4.5}^{p,-p-1}", 2, 4, &["p"], &[], "-1/2 <= p < 0", G45, "1; 2 if p=-1/2", Some_, "for some p != -1/2"),
    row("g_{4.6}", "g_{4.6}^{-2p,p}", 2, 4, &["p"], &[], "p > 0", G46, "1 or 2", Some_, "for some p"),
    row("e(1,1)+R^2", "e(1,1) ⊕ R^2", 3, 5, &[], &[], "", E11, "1", Yes, "yes"),
    row("g_{4.2}+R", "g_{4.2}^{-2} ⊕ R", 3, 5, &[], &[("p", -2)], "", G42, "1", No, "no"),
    row("g_{4.5}+R", "g_{4.5}^{p,-p-1} ⊕ R", 3, 5, &["p"], &[], "-1/2 <= p < 0", G45, "1; 2 if p=-1/2", Some_, "for some p != -1/2"),
    row("g_{4.6}+R", "g_{4.6}^{-2p,p} ⊕ R", 3, 5, &["p"], &[], "p > 0", G46, "1 or 2", Some_, "for some p"),
    row(
        "g_{5.7}", "g_{5.7}^{p,q,r}", 3, 5, &["p", "q", "r"], &[],
        "pqr != 0, p+q+r = 1, -1 <= p <= q <= r <= 1",
        "[e5,e1]=pe1, [e5,e2]=qe2, [e5,e3]=re3, [e5,e4]=-e4",
        "1; 2 if p != r and q in {p,r}; 3 if p=q=r", Some_, "for some p != q != r or q=r=1",
    ),
    row("g_{5.8}", "g_{5.8}^{-1}", 3, 5, &[], &[("p", -1)], "", "[e5,e1]=e1, [e5,e3]=e2, [e5,e4]=-e4", "1", Yes, "yes"),
    row(
        "g_{5.9}", "g_{5.9}^{p,-2-p}", 3, 5, &["p"], &[], "p >= -1",
        "[e5,e1]=pe1, [e5,e2]=e2, [e5,e3]=e2+e3, [e5,e4]=(-2-p)e4",
        "1; 2 if p=-1", No, "no",
    ),
    row(
        "g_{5.11}", "g_{5.11}^{-3}", 3, 5, &[], &[("p", -3)], "",
        "[e5,e1]=e1, [e5,e2]=e1+e2, [e5,e3]=e2+e3, [e5,e4]=-3e4", "1", No, "no",
    ),
    row(
        "g_{5.13}", "g_{5.13}^{-1-2q,q,r}", 3, 5, &["q", "r"], &[], "r > 0, -1 <= q <= 0, q != -1/2",
        "[e5,e1]=e1, [e5,e2]=qe2-re3, [e5,e3]=re2+qe3, [e5,e4]=(-1-2q)e4",
        "1; 2 if q != 0; 3 if q=-1/3", Some_, "for some q != -1/3, r",
    ),
    row(
        "g_{5.16}", "g_{5.16}^{-1,q}", 3, 5, &["q"], &[], "q > 0",
        "[e5,e1]=e1, [e5,e2]=e1+e2, [e5,e3]=-e3-qe4, [e5,e4]=qe3-e4", "2", No, "no",
    ),
    row(
        "g_{5.17}", "g_{5.17}^{p,-p,r}", 3, 5, &["p", "r"], &[], "p >= 0, r > 0",
        "[e5,e1]=pe1-e2, [e5,e2]=e1+pe2, [e5,e3]=-pe3-re4, [e5,e4]=re3-pe4",
        "2 if p != 0", Some_, "for some p, r",
    ),
    row(
        "g_{5.19}", "g_{5.19}^{p,-2p-2}", 3, 5, &["p"], &[], "p != -1",
        "[e1,e2]=e3, [e5,e1]=e1, [e5,e2]=pe2, [e5,e3]=(p+1)e3, [e5,e4]=-2(p+1)e4", "1", No, "no",
    ),
    row(
        "g_{5.23}", "g_{5.23}^{-4}", 3, 5, &[], &[("p", -4)], "",
        "[e1,e2]=e3, [e5,e1]=e1, [e5,e2]=e1+e2, [e5,e3]=2e3, [e5,e4]=-4e4", "1", No, "no",
    ),
    row(
        "g_{5.25}", "g_{5.25}^{p,4p}", 3, 5, &["p"], &[], "p > 0",
        "[e1,e2]=e3, [e5,e1]=pe1+e2, [e5,e2]=-e1+pe2, [e5,e3]=2pe3, [e5,e4]=-4pe4", "1", No, "no",
    ),
    row(
        "g_{5.33}", "g_{5.33}^{-1,-1}", 3, 5, &[], &[("p", -1), ("q", -1)], "",
        "[e1,e2]=e2, [e1,e3]=-e3, [e5,e3]=e3, [e5,e4]=-e4", "1", Yes, "yes",
    ),
    row(
        "g_{5.35}", "g_{5.35}^{-2,0}", 3, 5, &[], &[("p", -2), ("q", 0)], "",
        "[e1,e2]=e3, [e1,e3]=-e2, [e5,e2]=e2, [e5,e3]=e3, [e5,e4]=-2e4", "1 or 2", Yes, "yes",
    ),
];

pub fn entries() -> &'static [TableEntry] {
    &ENTRIES
}

pub fn entry(name: &str) -> Result<&'static TableEntry> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
}

fn out_of_range(name: &str, why: &str) -> Error {
    Error::ParamOutOfRange(format!("{name}: {why}"))
}

/// Checks names and ranges, returning the free parameters in declaration order.
pub fn check_params(name: &str, p: &Params) -> Result<Vec<Scalar>> {
    let e = entry(name)?;
    for k in p.keys() {
        if !e.params.contains(&k.as_str()) && !e.fixed.iter().any(|(f, _)| f == k) {
            return Err(out_of_range(name, &format!("unknown parameter {k}")));
        }
    }
    for (f, v) in e.fixed {
        if let Some(x) = p.get(*f) {
            if *x != int(*v) {
                return Err(out_of_range(name, &format!("{f} is fixed to {v}")));
            }
        }
    }
    let vals: Vec<Scalar> = e
        .params
        .iter()
        .map(|k| p.get(*k).cloned().ok_or_else(|| out_of_range(name, &format!("missing parameter {k}"))))
        .collect::<Result<_>>()?;
    let (base, _) = split_name(name);
    let ok = match base {
        "g_{4.5}" => vals[0] >= q(-1, 2) && vals[0].is_negative(),
        "g_{4.6}" | "g_{5.16}" | "g_{5.25}" => vals[0].is_positive(),
        "g_{5.7}" => {
            let (a, b, c) = (&vals[0], &vals[1], &vals[2]);
            !(a * b * c).is_zero()
                && (a + b + c).is_one()
                && *a >= int(-1)
                && a <= b
                && b <= c
                && *c <= int(1)
        }
        "g_{5.9}" => vals[0] >= int(-1),
        "g_{5.13}" => {
            let (qq, r) = (&vals[0], &vals[1]);
            r.is_positive() && *qq >= int(-1) && !qq.is_positive() && *qq != q(-1, 2)
        }
        "g_{5.17}" => !vals[0].is_negative() && vals[1].is_positive(),
        "g_{5.19}" => vals[0] != int(-1),
        _ => true,
    };
    if !ok {
        return Err(out_of_range(name, &format!("requires {}", e.range)));
    }
    Ok(vals)
}

/// Builds an algebra from 1-based `(i, j, [(k, c)])` entries.
fn build(n: usize, entries: Vec<(usize, usize, Vec<(usize, Scalar)>)>) -> LieAlgebra {
    let brackets: Vec<(usize, usize, QVec)> = entries
        .into_iter()
        .map(|(i, j, terms)| {
            let mut v = vec![Scalar::zero(); n];
            for (k, c) in terms {
                v[k - 1] += c;
            }
            (i - 1, j - 1, v)
        })
        .collect();
    LieAlgebra::from_brackets(n, &brackets).expect("table brackets are antisymmetric")
}

/// Table brackets with no range check; values in the row's parameter order.
pub(crate) fn base_algebra(base: &str, v: &[Scalar]) -> LieAlgebra {
    let one = Scalar::one;
    let k = |x: i64| int(x);
    match base {
        "e(1,1)" => build(3, vec![(1, 2, vec![(2, one())]), (1, 3, vec![(3, k(-1))])]),
        "g_{4.2}" => build(
            4,
            vec![(1, 2, vec![(2, one())]), (1, 3, vec![(2, one()), (3, one())]), (1, 4, vec![(4, k(-2))])],
        ),
        "g_{4.5}" => {
            let p = &v[0];
            build(
                4,
                vec![(1, 2, vec![(2, one())]), (1, 3, vec![(3, p.clone())]), (1, 4, vec![(4, -(p + one()))])],
            )
        }
        "g_{4.6}" => {
            let p = &v[0];
            build(
                4,
                vec![
                    (1, 2, vec![(2, -(p * k(2)))]),
                    (1, 3, vec![(3, p.clone()), (4, k(-1))]),
                    (1, 4, vec![(3, one()), (4, p.clone())]),
                ],
            )
        }
        "g_{5.7}" => build(
            5,
            vec![
                (5, 1, vec![(1, v[0].clone())]),
                (5, 2, vec![(2, v[1].clone())]),
                (5, 3, vec![(3, v[2].clone())]),
                (5, 4, vec![(4, k(-1))]),
            ],
        ),
        "g_{5.8}" => build(
            5,
            vec![(5, 1, vec![(1, one())]), (5, 3, vec![(2, one())]), (5, 4, vec![(4, k(-1))])],
        ),
        "g_{5.9}" => {
            let p = &v[0];
            build(
                5,
                vec![
                    (5, 1, vec![(1, p.clone())]),
                    (5, 2, vec![(2, one())]),
                    (5, 3, vec![(2, one()), (3, one())]),
                    (5, 4, vec![(4, -(p + k(2)))]),
                ],
            )
        }
        "g_{5.11}" => build(
            5,
            vec![
                (5, 1, vec![(1, one())]),
                (5, 2, vec![(1, one()), (2, one())]),
                (5, 3, vec![(2, one()), (3, one())]),
                (5, 4, vec![(4, k(-3))]),
            ],
        ),
        "g_{5.13}" => {
            let (qq, r) = (&v[0], &v[1]);
            build(
                5,
                vec![
                    (5, 1, vec![(1, one())]),
                    (5, 2, vec![(2, qq.clone()), (3, -r)]),
                    (5, 3, vec![(2, r.clone()), (3, qq.clone())]),
                    (5, 4, vec![(4, -(qq * k(2)) - one())]),
                ],
            )
        }
        "g_{5.16}" => {
            let qq = &v[0];
            build(
                5,
                vec![
                    (5, 1, vec![(1, one())]),
                    (5, 2, vec![(1, one()), (2, one())]),
                    (5, 3, vec![(3, k(-1)), (4, -qq)]),
                    (5, 4, vec![(3, qq.clone()), (4, k(-1))]),
                ],
            )
        }
        "g_{5.17}" => {
            let (p, r) = (&v[0], &v[1]);
            build(
                5,
                vec![
                    (5, 1, vec![(1, p.clone()), (2, k(-1))]),
                    (5, 2, vec![(1, one()), (2, p.clone())]),
                    (5, 3, vec![(3, -p), (4, -r)]),
                    (5, 4, vec![(3, r.clone()), (4, -p)]),
                ],
            )
        }
        "g_{5.19}" => {
            let p = &v[0];
            build(
                5,
                vec![
                    (1, 2, vec![(3, one())]),
                    (5, 1, vec![(1, one())]),
                    (5, 2, vec![(2, p.clone())]),
                    (5, 3, vec![(3, p + one())]),
                    (5, 4, vec![(4, -(p + one()) * k(2))]),
                ],
            )
        }
        "g_{5.23}" => build(
            5,
            vec![
                (1, 2, vec![(3, one())]),
                (5, 1, vec![(1, one())]),
                (5, 2, vec![(1, one()), (2, one())]),
                (5, 3, vec![(3, k(2))]),
                (5, 4, vec![(4, k(-4))]),
            ],
        ),
        "g_{5.25}" => {
            let p = &v[0];
            build(
                5,
                vec![
                    (1, 2, vec![(3, one())]),
                    (5, 1, vec![(1, p.clone()), (2, one())]),
                    (5, 2, vec![(1, k(-1)), (2, p.clone())]),
                    (5, 3, vec![(3, p * k(2))]),
                    (5, 4, vec![(4, p * k(-4))]),
                ],
            )
        }
        "g_{5.33}" => build(
            5,
            vec![
                (1, 2, vec![(2, one())]),
                (1, 3, vec![(3, k(-1))]),
                (5, 3, vec![(3, one())]),
                (5, 4, vec![(4, k(-1))]),
            ],
        ),
        "g_{5.35}" => build(
            5,
            vec![
                (1, 2, vec![(3, one())]),
                (1, 3, vec![(2, k(-1))]),
                (5, 2, vec![(2, one())]),
                (5, 3, vec![(3, one())]),
                (5, 4, vec![(4, k(-2))]),
            ],
        ),
        _ => unreachable!("unknown base {base}"),
    }
}

/// Split `"g_{4.5}+R"` into the base row and the number of extra abelian factors.
pub fn split_name(name: &str) -> (&str, usize) {
    if let Some(b) = name.strip_suffix("+R^2") {
        (b, 2)
    } else if let Some(b) = name.strip_suffix("+R") {
        (b, 1)
    } else {
        (name, 0)
    }
}

/// The algebra of a table row at the given parameters, in the printed basis.
pub fn table_algebra(name: &str, p: &Params) -> Result<LieAlgebra> {
    let vals = check_params(name, p)?;
    let (base, extra) = split_name(name);
    let l = base_algebra(base, &vals);
    Ok(if extra > 0 {
        let n = l.dim() + extra;
        l.direct_sum(&LieAlgebra::abelian(extra))
            .with_labels((1..=n).map(|i| format!("e{i}")).collect())?
    } else {
        l
    })
}

/// The printed flat-dimension set of a row at the given parameters.
pub fn expected_flat_dims(name: &str, p: &Params) -> Result<BTreeSet<usize>> {
    let v = check_params(name, p)?;
    let (base, _) = split_name(name);
    let mut s = BTreeSet::new();
    match base {
        "g_{4.5}" => {
            s.insert(1);
            if v[0] == q(-1, 2) {
                s.insert(2);
            }
        }
        "g_{4.6}" | "g_{5.35}" => {
            s.extend([1, 2]);
        }
        "g_{5.7}" => {
            s.insert(1);
            if v[0] != v[2] && (v[1] == v[0] || v[1] == v[2]) {
                s.insert(2);
            }
            if v[0] == v[1] && v[1] == v[2] {
                s.insert(3);
            }
        }
        "g_{5.9}" => {
            s.insert(1);
            if v[0] == int(-1) {
                s.insert(2);
            }
        }
        "g_{5.13}" => {
            s.insert(1);
            if !v[0].is_zero() {
                s.insert(2);
            }
            if v[0] == q(-1, 3) {
                s.insert(3);
            }
        }
        "g_{5.16}" => {
            s.insert(2);
        }
        "g_{5.17}" => {
            if !v[0].is_zero() {
                s.insert(2);
            }
        }
        _ => {
            s.insert(1);
        }
    }
    Ok(s)
}
