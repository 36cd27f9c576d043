//! No-lattice certificates, literature verdicts, and the lattice condition
//! for amalgamated products.

use nalgebra::DMatrix;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::classify::table::{check_params, split_name, Params};
use crate::detect::{verify_lcp, LcpStructure};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::QPoly;
use crate::scalar::{self, int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Real spectrum with exactly one repeated eigenvalue, nonzero.
    DoubleRoot,
    /// LCP structure with flat dimension `n - 2` in dimension at least 5.
    Codim2Highdim,
    /// Literature result, recorded with its reference.
    Cited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoLatticeCertificate {
    pub rule: Rule,
    pub evidence: String,
    pub reference: Option<String>,
}

/// Exact form of the repeated-eigenvalue rule on a rational `C`.
pub fn no_lattice_double_root(c: &QMatrix) -> Option<NoLatticeCertificate> {
    let p = QPoly::new(c.charpoly());
    if p.degree() < 2 {
        return None;
    }
    let sf = p.squarefree_part();
    if p.real_root_count() != sf.degree() {
        return None;
    }
    let repeated = p.gcd(&p.derivative()).squarefree_part();
    if repeated.degree() != 1 {
        return None;
    }
    let lambda = -repeated.coeffs()[0].clone();
    if lambda.is_zero() {
        return None;
    }
    let mult = p.rational_roots().into_iter().find(|(r, _)| *r == lambda).map_or(0, |(_, m)| m);
    Some(NoLatticeCertificate {
        rule: Rule::DoubleRoot,
        evidence: format!(
            "charpoly {p}; all eigenvalues real; only repeated eigenvalue {} (multiplicity {mult})",
            scalar::format(&lambda)
        ),
        reference: None,
    })
}

/// Floating point form of the same rule: eigenvalues are real when
/// `|Im| <= tol`, and clustered when closer than `tol` (relative).
pub fn no_lattice_double_root_f64(c: &DMatrix<f64>, tol: f64) -> Option<NoLatticeCertificate> {
    if c.nrows() < 2 {
        return None;
    }
    let ev = c.complex_eigenvalues();
    if ev.iter().any(|z| z.im.abs() > tol * z.norm().max(1.0)) {
        return None;
    }
    let mut re: Vec<f64> = ev.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    for x in re {
        match clusters.last_mut() {
            Some((c, m)) if (x - *c / *m as f64).abs() <= tol * x.abs().max(1.0) => {
                *c += x;
                *m += 1;
            }
            _ => clusters.push((x, 1)),
        }
    }
    let repeated: Vec<(f64, usize)> =
        clusters.iter().filter(|(_, m)| *m >= 2).map(|&(s, m)| (s / m as f64, m)).collect();
    match repeated.as_slice() {
        [(lambda, m)] if lambda.abs() > tol => Some(NoLatticeCertificate {
            rule: Rule::DoubleRoot,
            evidence: format!("all eigenvalues real; only repeated eigenvalue {lambda:.9} (multiplicity {m})"),
            reference: None,
        }),
        _ => None,
    }
}

/// Certificate iff the structure verifies, the algebra is solvable and
/// unimodular of dimension at least 5, and the flat dimension is `n - 2`.
pub fn no_lattice_codim2(s: &LcpStructure) -> Option<NoLatticeCertificate> {
    let l = s.algebra();
    let n = l.dim();
    let audit = l.audit();
    if !audit.solvable || !audit.unimodular || n < 5 || s.flat().dim() + 2 != n {
        return None;
    }
    if !verify_lcp(l, s.metric(), s.theta(), s.flat()).ok()?.pass {
        return None;
    }
    Some(NoLatticeCertificate {
        rule: Rule::Codim2Highdim,
        evidence: format!("unimodular solvable, dim {n}, verified flat subspace of dim {}", n - 2),
        reference: None,
    })
}

struct Cited {
    row: &'static str,
    lattice: bool,
    reference: &'static str,
    applies: fn(&[Scalar]) -> bool,
}

fn always(_: &[Scalar]) -> bool {
    true
}

fn g57_minus_one(v: &[Scalar]) -> bool {
    v[0] == int(-1) && v[1] == int(1) && v[2] == int(1)
}

static CITED: &[Cited] = &[
    Cited { row: "g_{4.2}", lattice: false, reference: "Bock 2016, Thm 7.1.1", applies: always },
    Cited { row: "g_{5.7}", lattice: true, reference: "Bock 2016, Thm 7.2.1 (iii)", applies: g57_minus_one },
    Cited { row: "g_{5.8}", lattice: true, reference: "Bock 2016, Thm 7.2.2", applies: always },
    Cited { row: "g_{5.9}", lattice: false, reference: "Bock 2016, Thm 7.2.3", applies: always },
    Cited { row: "g_{5.11}", lattice: false, reference: "Bock 2016, Thm 7.2.4", applies: always },
    Cited { row: "g_{5.16}", lattice: false, reference: "Bock 2016, Thm 7.2.10", applies: always },
    Cited { row: "g_{5.19}", lattice: false, reference: "Bock 2016, Thm 7.2.16", applies: always },
    Cited { row: "g_{5.23}", lattice: false, reference: "Bock 2016, Thm 7.2.16", applies: always },
    Cited { row: "g_{5.25}", lattice: false, reference: "Bock 2016, Thm 7.2.16", applies: always },
    Cited { row: "g_{5.33}", lattice: true, reference: "Bock 2016, Prop 7.2.20", applies: always },
    Cited { row: "g_{5.35}", lattice: true, reference: "Bock 2016, Prop 7.2.21", applies: always },
];

/// References for rows whose lattices exist only for some parameters.
static FAMILY_REFERENCES: &[(&str, &str)] = &[
    ("g_{4.5}", "Bock 2016, Thm 6.2 and Table A.1"),
    ("g_{4.6}", "Andrada-Origlia, Sec 3.2.2"),
    ("g_{5.7}", "Bock 2016, Thm 7.2.1"),
    ("g_{5.13}", "Bock 2016, Prop 7.2.5"),
    ("g_{5.17}", "Bock 2016, Thm 7.2.12"),
];

/// Literature verdict for a table row at given parameters, as
/// `(lattice exists, reference)`.
pub fn cited_verdict(name: &str, p: &Params) -> Result<Option<(bool, &'static str)>> {
    let v = check_params(name, p)?;
    Ok(CITED.iter().find(|c| c.row == name && (c.applies)(&v)).map(|c| (c.lattice, c.reference)))
}

pub fn family_reference(name: &str) -> Option<&'static str> {
    let base = split_name(name).0;
    FAMILY_REFERENCES.iter().find(|(r, _)| *r == base).map(|(_, s)| *s)
}

/// A positive time known up to a common transcendental factor:
/// `t = base · sqrt(sq)`. Two times are comparable only with equal `base`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolicTime {
    pub base: f64,
    #[serde(with = "scalar::as_string")]
    pub sq: Scalar,
}

impl SymbolicTime {
    pub fn new(base: f64, sq: Scalar) -> Self {
        SymbolicTime { base, sq }
    }

    pub fn value(&self) -> f64 {
        self.base * scalar::to_f64(&self.sq).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmalgamLattice {
    pub k1: u64,
    pub k2: u64,
    /// `t = base · sqrt(t_sq)`, exact in `t_sq`.
    pub t: SymbolicTime,
}

/// Given lattice times `t1`, `t2` of the two factors and the squared norms of
/// their Lee forms, finds `t` and `k1, k2` with
/// `t |θ2| / N = k1 t1` and `t |θ1| / N = k2 t2`, `N² = |θ1|² + |θ2|²`.
/// `None` when `t2|θ2| / (t1|θ1|)` is not visibly rational.
pub fn amalgam_lattice(
    t1: &SymbolicTime,
    theta1_sq: &Scalar,
    t2: &SymbolicTime,
    theta2_sq: &Scalar,
) -> Result<Option<AmalgamLattice>> {
    if !(t1.base > 0.0 && t2.base > 0.0)
        || !t1.sq.is_positive()
        || !t2.sq.is_positive()
        || !theta1_sq.is_positive()
        || !theta2_sq.is_positive()
    {
        return Err(Error::NonPositiveInput);
    }
    if t1.base != t2.base {
        return Ok(None);
    }
    let ratio_sq = (&t2.sq * theta2_sq) / (&t1.sq * theta1_sq);
    let Some(ratio) = scalar::sqrt_exact(&ratio_sq) else { return Ok(None) };
    let (k1, k2) = (ratio.numer().clone(), ratio.denom().clone());
    let g = k1.gcd(&k2);
    let (k1, k2) = (k1 / &g, k2 / &g);
    let k1s = Scalar::from(k1.clone());
    let t_sq = &k1s * &k1s * &t1.sq * (theta1_sq + theta2_sq) / theta2_sq;
    let to_u64 = |x: &num_bigint::BigInt| u64::try_from(x).map_err(|_| Error::NonPositiveInput);
    Ok(Some(AmalgamLattice { k1: to_u64(&k1)?, k2: to_u64(&k2)?, t: SymbolicTime::new(t1.base, t_sq) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::table::params;
    use crate::scalar::q;

    #[test]
    fn double_root_examples() {
        let c = QMatrix::diag(&[int(1), q(-1, 2), q(-1, 2)]);
        let cert = no_lattice_double_root(&c).unwrap();
        assert_eq!(cert.rule, Rule::DoubleRoot);
        assert!(cert.evidence.contains("-1/2"));
        assert!(no_lattice_double_root_f64(&c.to_f64(), 1e-8).is_some());
        // g_{5.7} with p = q
        let c = QMatrix::diag(&[q(1, 4), q(1, 4), q(1, 2), int(-1)]);
        assert!(no_lattice_double_root(&c).is_some());
        assert!(no_lattice_double_root_f64(&c.to_f64(), 1e-8).is_some());
        let c = QMatrix::diag(&[int(1), int(-1)]);
        assert!(no_lattice_double_root(&c).is_none());
        assert!(no_lattice_double_root_f64(&c.to_f64(), 1e-8).is_none());
    }

    #[test]
    fn double_root_exclusions() {
        // two repeated eigenvalues
        let c = QMatrix::diag(&[int(-1), int(1), int(1), int(-1)]);
        assert!(no_lattice_double_root(&c).is_none());
        // repeated eigenvalue 0
        let c = QMatrix::diag(&[int(0), int(0), int(1), int(-1)]);
        assert!(no_lattice_double_root(&c).is_none());
        // complex pair
        let c = QMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(no_lattice_double_root(&c).is_none());
        // a Jordan block still counts
        let c = QMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]]);
        assert!(no_lattice_double_root(&c).is_some());
        assert!(no_lattice_double_root_f64(&c.to_f64(), 1e-8).is_some());
    }

    #[test]
    fn cited_rows() {
        assert_eq!(cited_verdict("g_{5.9}", &params(&[("p", int(2))])).unwrap().map(|c| c.0), Some(false));
        assert_eq!(cited_verdict("g_{4.2}", &Params::new()).unwrap().map(|c| c.0), Some(false));
        assert_eq!(cited_verdict("g_{4.2}+R", &Params::new()).unwrap(), None);
        let p = params(&[("p", int(-1)), ("q", int(1)), ("r", int(1))]);
        assert_eq!(cited_verdict("g_{5.7}", &p).unwrap().map(|c| c.0), Some(true));
        let p = params(&[("p", q(1, 3)), ("q", q(1, 3)), ("r", q(1, 3))]);
        assert_eq!(cited_verdict("g_{5.7}", &p).unwrap(), None);
        assert!(family_reference("g_{4.6}+R").is_some());
        assert!(family_reference("e(1,1)").is_none());
    }

    #[test]
    fn amalgam_times() {
        let t3 = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        let t = SymbolicTime::new(t3, int(1));
        let r = amalgam_lattice(&t, &int(1), &t, &int(1)).unwrap().unwrap();
        assert_eq!((r.k1, r.k2), (1, 1));
        assert_eq!(r.t.sq, int(2));

        // t2|θ2| / (t1|θ1|) = 2/3
        let r = amalgam_lattice(&SymbolicTime::new(1.0, int(9)), &int(1), &SymbolicTime::new(1.0, int(4)), &int(1))
            .unwrap()
            .unwrap();
        assert_eq!((r.k1, r.k2), (2, 3));
        // first equation: t |θ2| / N = k1 t1
        let lhs = r.t.value() * 1.0 / 2f64.sqrt();
        assert!((lhs - 2.0 * 3.0).abs() < 1e-12);

        let r = amalgam_lattice(&SymbolicTime::new(1.0, int(1)), &int(1), &SymbolicTime::new(1.0, int(2)), &int(1)).unwrap();
        assert!(r.is_none());
        assert_eq!(
            amalgam_lattice(&SymbolicTime::new(1.0, int(1)), &int(0), &t, &int(1)),
            Err(Error::NonPositiveInput)
        );
    }
}
