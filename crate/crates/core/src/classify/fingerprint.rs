//! Cheap isomorphism invariants. Equal fingerprints are necessary, not
//! sufficient, for isomorphism.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::metric::Metric;
use crate::poly::QPoly;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub centre_dim: usize,
    /// Dimension of the first nilpotent term of the derived series.
    pub nilpotent_derived_dim: usize,
    pub unimodular: bool,
    /// Rational eigenvalues of `ad_b` on the codimension one abelian ideal,
    /// divided by the one of largest modulus (positive on ties) and sorted.
    /// Only present when that ideal is unique.
    pub eigenvalue_ratios: Option<Vec<String>>,
    /// Number of eigenvalues (with multiplicity) that are not rational.
    pub irrational_eigenvalues: Option<usize>,
}

fn normalised_ratios(roots: &[(Scalar, usize)]) -> Vec<String> {
    let pivot = roots
        .iter()
        .map(|(r, _)| r)
        .filter(|r| !r.is_zero())
        .max_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)))
        .cloned();
    let mut out: Vec<Scalar> = Vec::new();
    for (r, m) in roots {
        let v = match &pivot {
            Some(p) => r / p,
            None => r.clone(),
        };
        out.extend(std::iter::repeat_n(v, *m));
    }
    out.sort();
    out.iter().map(scalar::format).collect()
}

pub fn fingerprint(l: &LieAlgebra) -> Fingerprint {
    let audit = l.audit();
    let series = l.derived_series();
    let nilpotent_derived_dim = series
        .iter()
        .find(|s| s.is_zero() || l.restrict_to_basis(s.basis()).is_ok_and(|h| h.is_nilpotent()))
        .map_or(0, |s| s.dim());
    let unique_ideal = l.abelian_hyperplane_forms().filter(|f| f.dim() == 1);
    let (eigenvalue_ratios, irrational_eigenvalues) = match unique_ideal {
        Some(_) => {
            let p = l.almost_abelian_presentation(&Metric::identity(l.dim())).expect("almost abelian");
            let poly = QPoly::new(p.c.charpoly());
            let roots = poly.rational_roots();
            let rational: usize = roots.iter().map(|(_, m)| m).sum();
            (Some(normalised_ratios(&roots)), Some(poly.degree() - rational))
        }
        None => (None, None),
    };
    Fingerprint {
        dim: l.dim(),
        derived_dims: audit.derived_series_dims,
        lower_central_dims: audit.lower_central_dims,
        centre_dim: l.centre().dim(),
        nilpotent_derived_dim,
        unimodular: audit.unimodular,
        eigenvalue_ratios,
        irrational_eigenvalues,
    }
}
