//! Random exact inputs shared by the property and acceptance tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

use lcplab_core::classify::{entries, grid, table_algebra, witnesses};
use lcplab_core::construct::almab_base;
use lcplab_core::scalar::{int, q};
use lcplab_core::detect::LcpStructure;
use lcplab_core::{LieAlgebra, Metric, OneForm, QMatrix, QVec, Scalar};

pub fn small_q() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=4).prop_map(|(a, b)| q(a, b))
}

pub fn positive_q() -> impl Strategy<Value = Scalar> {
    (1i64..=9, 1i64..=6).prop_map(|(a, b)| q(a, b))
}

pub fn small_int_matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols)
        .prop_map(move |v| QMatrix::from_fn(rows, cols, |i, j| q(v[i * cols + j], 1)))
}

pub fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(small_q(), rows * cols)
        .prop_map(move |v| QMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

pub fn invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    // identity plus a small perturbation keeps most samples invertible
    small_int_matrix(n, n, 1)
        .prop_map(move |m| &m + &QMatrix::identity(n))
        .prop_filter("singular", |m| !m.det().is_zero())
}

pub fn vector(n: usize) -> impl Strategy<Value = QVec> {
    prop::collection::vec(small_q(), n)
}

/// Every table row at its canonical parameters.
pub fn table_algebras() -> Vec<LieAlgebra> {
    let mut out = Vec::new();
    for e in entries() {
        for p in grid::canonical(e.name).unwrap() {
            out.push(table_algebra(e.name, &p).unwrap());
        }
    }
    out
}

/// Table algebras, random almost abelian algebras, Heisenberg and abelian
/// summands, each moved to a random basis.
pub fn lie_algebra() -> impl Strategy<Value = LieAlgebra> {
    let tables = table_algebras();
    let base = prop_oneof![
        prop::sample::select(tables),
        (2usize..=4).prop_flat_map(|k| rational_matrix(k, k)).prop_map(|a| almab_base(&a)),
        (0usize..=2).prop_map(|k| LieAlgebra::heisenberg3().direct_sum(&LieAlgebra::abelian(k))),
        (3usize..=5).prop_map(LieAlgebra::abelian),
    ];
    base.prop_flat_map(|l| {
        let n = l.dim();
        (Just(l), invertible(n))
    })
    .prop_map(|(l, p)| l.change_basis(&p).unwrap())
}

/// `MᵀM + I` for a small integer `M`.
pub fn metric(n: usize) -> impl Strategy<Value = Metric> {
    small_int_matrix(n, n, 2).prop_map(move |m| {
        let gram = &(&m.transpose() * &m) + &QMatrix::identity(n);
        Metric::new(gram).unwrap()
    })
}

/// A random form vanishing on the derived algebra, nonzero when possible.
pub fn closed_form(l: &LieAlgebra) -> impl Strategy<Value = OneForm> {
    let n = l.dim();
    let forms = l.derived().annihilator();
    let k = forms.len();
    prop::collection::vec(small_q(), k).prop_map(move |cs| {
        let mut out = vec![int(0); n];
        for (c, f) in cs.iter().zip(&forms) {
            for (o, x) in out.iter_mut().zip(f) {
                *o += c * x;
            }
        }
        OneForm::new(out)
    })
}

/// An algebra with a metric and a nonzero closed form.
pub fn lgt() -> impl Strategy<Value = (LieAlgebra, Metric, OneForm)> {
    lie_algebra().prop_flat_map(|l| {
        let n = l.dim();
        let t = closed_form(&l).prop_filter("zero form", |t| !t.is_zero());
        (Just(l), metric(n), t)
    })
}

/// Every shipped witness structure at canonical parameters.
pub fn witness_structures() -> &'static [(String, LcpStructure)] {
    static ALL: OnceLock<Vec<(String, LcpStructure)>> = OnceLock::new();
    ALL.get_or_init(build_witness_structures)
}

fn build_witness_structures() -> Vec<(String, LcpStructure)> {
    let mut out = Vec::new();
    for e in entries() {
        for p in grid::canonical(e.name).unwrap() {
            for w in witnesses(e.name, &p).unwrap() {
                out.push((e.name.to_string(), w.structure));
            }
        }
    }
    out
}

/// Draws one value from a strategy.
pub fn sample<S: Strategy>(s: &S, runner: &mut proptest::test_runner::TestRunner) -> S::Value {
    s.new_tree(runner).expect("strategy yields a value").current()
}
