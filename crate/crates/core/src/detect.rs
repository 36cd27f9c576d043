//! Verification, detection and structural audits of LCP structures.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, QMatrix, QVec};
use crate::metric::{Metric, OneForm};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;
use crate::weyl::{curvature, weyl_connection, Connection, Curvature};

/// A verified LCP structure `(g, g, θ, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpStructure {
    algebra: LieAlgebra,
    metric: Metric,
    theta: OneForm,
    flat: Subspace,
}

impl LcpStructure {
    /// Checks every condition and refuses structures that fail.
    pub fn new(algebra: LieAlgebra, metric: Metric, theta: OneForm, flat: Subspace) -> Result<Self> {
        let report = verify_lcp(&algebra, &metric, &theta, &flat)?;
        if !report.pass {
            return Err(Error::NotLcp(report.summary()));
        }
        Ok(LcpStructure { algebra, metric, theta, flat })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn theta(&self) -> &OneForm {
        &self.theta
    }

    pub fn flat(&self) -> &Subspace {
        &self.flat
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn flat_dim(&self) -> usize {
        self.flat.dim()
    }

    pub fn is_adapted(&self) -> bool {
        self.theta.vanishes_on(&self.flat)
    }

    pub fn class(&self) -> LcpClass {
        LcpClass::of(self.dim(), &self.theta, &self.flat)
    }

    /// The same structure expressed in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &QMatrix) -> Result<LcpStructure> {
        let inv = p.inverse().ok_or(Error::SingularMatrix)?;
        let algebra = self.algebra.change_basis(p)?;
        let metric = self.metric.pull_back(p)?;
        let theta = self.theta.pull_back(p);
        let flat_vecs: Vec<QVec> = self.flat.basis().iter().map(|v| inv.mul_vec(v)).collect();
        let flat = Subspace::span(self.dim(), &flat_vecs);
        LcpStructure::new(algebra, metric, theta, flat)
    }

    pub fn into_parts(self) -> (LieAlgebra, Metric, OneForm, Subspace) {
        (self.algebra, self.metric, self.theta, self.flat)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LcpKind {
    Degenerate,
    Adapted,
    NonAdapted,
    ConformallyFlat,
}

impl fmt::Display for LcpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LcpKind::Degenerate => "degenerate",
            LcpKind::Adapted => "adapted",
            LcpKind::NonAdapted => "non_adapted",
            LcpKind::ConformallyFlat => "conformally_flat",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LcpClass {
    pub kind: LcpKind,
    pub flat_dim: usize,
}

impl LcpClass {
    pub fn of(n: usize, theta: &OneForm, flat: &Subspace) -> LcpClass {
        let flat_dim = flat.dim();
        let kind = if flat_dim == 0 {
            LcpKind::Degenerate
        } else if flat_dim == n {
            LcpKind::ConformallyFlat
        } else if theta.vanishes_on(flat) {
            LcpKind::Adapted
        } else {
            LcpKind::NonAdapted
        };
        LcpClass { kind, flat_dim }
    }
}

impl fmt::Display for LcpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, flat_dim={}", self.kind, self.flat_dim)
    }
}

/// One failed instance of a verification condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// 1, 2 or 3 for the three LCP conditions, 0 for the parallel cross-check.
    pub condition: u8,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub defect: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub flat_is_subalgebra: bool,
    pub complement_is_subalgebra: bool,
    pub polarized_identities: bool,
    pub curvature_annihilates_flat: bool,
    /// Cross-check: `∇^θ_x u ⊆ u` for every basis `x`.
    pub parallel: bool,
    pub pass: bool,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn first_failed_condition(&self) -> Option<u8> {
        if !(self.flat_is_subalgebra && self.complement_is_subalgebra) {
            Some(1)
        } else if !self.polarized_identities {
            Some(2)
        } else if !self.curvature_annihilates_flat {
            Some(3)
        } else {
            None
        }
    }

    pub fn summary(&self) -> String {
        match self.first_failed_condition() {
            None => "pass".into(),
            Some(c) => format!("condition ({c}) fails"),
        }
    }
}

fn fmt_vec(v: &[Scalar]) -> Vec<String> {
    v.iter().map(scalar::format).collect()
}

fn check_lee_form(l: &LieAlgebra, theta: &OneForm) -> Result<()> {
    let n = l.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    if theta.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: theta.dim() });
    }
    if theta.is_zero() {
        return Err(Error::ZeroLeeForm);
    }
    if !l.is_closed(theta) {
        return Err(Error::NonClosedLeeForm);
    }
    Ok(())
}

fn check_dims(l: &LieAlgebra, g: &Metric) -> Result<()> {
    if g.dim() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), got: g.dim() });
    }
    Ok(())
}

/// Checks the three algebraic LCP conditions exactly:
/// (1) `u` and `u^⊥` are subalgebras;
/// (2) `g([u,x],x') + g([u,x'],x) = 2θ(u) g(x,x')` and
///     `g([x,u],u') + g([x,u'],u) = 2θ(x) g(u,u')` on basis vectors;
/// (3) every curvature operator of `∇^θ` annihilates `u`.
pub fn verify_lcp(l: &LieAlgebra, g: &Metric, theta: &OneForm, u: &Subspace) -> Result<VerificationReport> {
    check_dims(l, g)?;
    check_lee_form(l, theta)?;
    if u.ambient() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), got: u.ambient() });
    }
    let conn = weyl_connection(l, g, theta)?;
    let curv = curvature(l, &conn);
    Ok(verify_with(l, g, theta, u, &conn, &curv))
}

fn verify_with(
    l: &LieAlgebra,
    g: &Metric,
    theta: &OneForm,
    u: &Subspace,
    conn: &Connection,
    curv: &Curvature,
) -> VerificationReport {
    let perp = u.orthogonal_complement(g.gram());
    let mut failures = Vec::new();

    let closed = |s: &Subspace, failures: &mut Vec<Failure>| {
        let mut ok = true;
        for (a, x) in s.basis().iter().enumerate() {
            for y in &s.basis()[a + 1..] {
                let z = l.br(x, y);
                if !s.contains(&z) {
                    ok = false;
                    failures.push(Failure {
                        condition: 1,
                        left: fmt_vec(x),
                        right: fmt_vec(y),
                        defect: format!("[{}]", fmt_vec(&z).join(", ")),
                    });
                }
            }
        }
        ok
    };
    let flat_is_subalgebra = closed(u, &mut failures);
    let complement_is_subalgebra = closed(&perp, &mut failures);

    let two = scalar::int(2);
    let mut polarized_identities = true;
    // Half the defect, so that it reads g([a,x],x) - θ(a)|x|² on the diagonal.
    let mut polar = |a: &QVec, s: &Subspace, failures: &mut Vec<Failure>| {
        let ta = theta.eval(a);
        for (i, x) in s.basis().iter().enumerate() {
            for y in &s.basis()[i..] {
                let lhs = g.inner(&l.br(a, x), y) + g.inner(&l.br(a, y), x);
                let rhs = &two * &ta * g.inner(x, y);
                if lhs != rhs {
                    polarized_identities = false;
                    failures.push(Failure {
                        condition: 2,
                        left: fmt_vec(a),
                        right: fmt_vec(x),
                        defect: scalar::format(&((lhs - rhs) / &two)),
                    });
                }
            }
        }
    };
    for a in u.basis() {
        polar(a, &perp, &mut failures);
    }
    for a in perp.basis() {
        polar(a, u, &mut failures);
    }

    let mut curvature_annihilates_flat = true;
    for (i, j, r) in curv.operators() {
        for v in u.basis() {
            let w = r.mul_vec(v);
            if !is_zero_vec(&w) {
                curvature_annihilates_flat = false;
                failures.push(Failure {
                    condition: 3,
                    left: vec![i.to_string(), j.to_string()],
                    right: fmt_vec(v),
                    defect: format!("[{}]", fmt_vec(&w).join(", ")),
                });
            }
        }
    }

    let parallel = conn.gamma().iter().all(|m| u.is_invariant(m));
    let pass = flat_is_subalgebra && complement_is_subalgebra && polarized_identities && curvature_annihilates_flat;
    VerificationReport {
        flat_is_subalgebra,
        complement_is_subalgebra,
        polarized_identities,
        curvature_annihilates_flat,
        parallel,
        pass,
        failures,
    }
}

/// The largest subspace that is `∇^θ`-parallel and annihilated by curvature.
pub fn maximal_flat_parallel(l: &LieAlgebra, g: &Metric, theta: &OneForm) -> Result<Subspace> {
    check_dims(l, g)?;
    check_lee_form(l, theta)?;
    let conn = weyl_connection(l, g, theta)?;
    let curv = curvature(l, &conn);
    Ok(flat_parallel_from(l.dim(), &conn, &curv))
}

fn flat_parallel_from(n: usize, conn: &Connection, curv: &Curvature) -> Subspace {
    let mut forms = Vec::new();
    for (_, _, r) in curv.operators() {
        forms.extend(r.row_vecs());
    }
    let mut u = Subspace::from_forms(n, &forms);
    loop {
        let mut next = u.clone();
        for m in conn.gamma() {
            next = next.intersect(&u.preimage_within(m));
        }
        if next == u {
            return u;
        }
        u = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub class: LcpClass,
    pub flat: Subspace,
}

pub fn detect(l: &LieAlgebra, g: &Metric, theta: &OneForm) -> Result<Detection> {
    let flat = maximal_flat_parallel(l, g, theta)?;
    Ok(Detection { class: LcpClass::of(l.dim(), theta, &flat), flat })
}

pub fn classify(l: &LieAlgebra, g: &Metric, theta: &OneForm) -> Result<LcpClass> {
    Ok(detect(l, g, theta)?.class)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    fn from_bool(b: bool) -> Self {
        if b { CheckStatus::Pass } else { CheckStatus::Fail }
    }

    pub fn is_ok(self) -> bool {
        self != CheckStatus::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub id: char,
    pub name: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralAudit {
    pub checks: Vec<AuditCheck>,
}

impl StructuralAudit {
    pub fn status(&self, id: char) -> CheckStatus {
        self.checks.iter().find(|c| c.id == id).map(|c| c.status).unwrap_or(CheckStatus::NotApplicable)
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.status.is_ok())
    }

    /// Checks (a) through (f), which apply to every structure.
    pub fn core_ok(&self) -> bool {
        self.checks.iter().filter(|c| c.id <= 'f').all(|c| c.status == CheckStatus::Pass)
    }
}

/// Structural consequences for solvable unimodular LCP algebras, each
/// checked exactly and reported individually.
pub fn structural_audit(s: &LcpStructure) -> Result<StructuralAudit> {
    let l = s.algebra();
    let g = s.metric();
    let theta = s.theta();
    let u = s.flat();
    let n = l.dim();
    let q = u.dim();
    if !l.is_solvable() {
        return Err(Error::PreconditionViolated("algebra is not solvable".into()));
    }
    if !l.is_unimodular() {
        return Err(Error::PreconditionViolated("algebra is not unimodular".into()));
    }
    if q == 0 {
        return Err(Error::PreconditionViolated("flat subspace is zero".into()));
    }
    let conn = weyl_connection(l, g, theta)?;
    let derived = l.derived();
    let perp = u.orthogonal_complement(g.gram());
    let mut checks = Vec::new();
    let mut push = |id: char, name: &str, status: CheckStatus| {
        checks.push(AuditCheck { id, name: name.into(), status });
    };

    let a = l.is_ideal(u)
        && l.is_abelian_subspace(u)
        && derived.contains_subspace(u)
        && l.bracket_span(u, &derived).is_zero();
    push('a', "flat is an abelian ideal in the centre of g'", CheckStatus::from_bool(a));

    let b = (0..n).all(|i| {
        u.basis().iter().all(|v| conn.gamma()[i].mul_vec(v) == l.ad_basis(i).mul_vec(v))
    });
    push('b', "nabla_x = ad_x on flat", CheckStatus::from_bool(b));

    push('c', "theta vanishes on flat", CheckStatus::from_bool(theta.vanishes_on(u)));

    let d = derived.basis().iter().all(|x| {
        let m = conn.along(x);
        u.basis().iter().all(|v| is_zero_vec(&m.mul_vec(v)))
    });
    push('d', "nabla along g' kills flat", CheckStatus::from_bool(d));

    let e = trace_relations_hold(l, theta, u, &perp);
    push('e', "trace form relations", CheckStatus::from_bool(e));

    push('f', "dim flat <= n - 2", CheckStatus::from_bool(q + 2 <= n));

    let almost_abelian = l.almost_abelian_presentation(g).is_some();
    let gs = if q + 2 == n { CheckStatus::from_bool(almost_abelian) } else { CheckStatus::NotApplicable };
    push('g', "codimension 2 implies almost abelian", gs);

    let hs = if q + 3 == n && !almost_abelian {
        CheckStatus::from_bool(matches_flag_normal_form(s))
    } else {
        CheckStatus::NotApplicable
    };
    push('h', "codimension 3 normal form", hs);

    Ok(StructuralAudit { checks })
}

fn trace_relations_hold(l: &LieAlgebra, theta: &OneForm, u: &Subspace, perp: &Subspace) -> bool {
    let n = scalar::int(l.dim() as i64);
    let q = scalar::int(u.dim() as i64);
    let rel = |s: &Subspace, factor: &Scalar| match l.subalgebra_trace_form(s) {
        None => false,
        Some(h) => s.basis().iter().zip(&h).all(|(v, hv)| *hv == -(factor * theta.eval(v))),
    };
    rel(u, &(&n - &q)) && rel(perp, &q)
}

/// The non almost abelian codimension 3 shape: an orthogonal basis
/// `{θ♯, x, y}` of `u^⊥` with `[u^⊥, u^⊥] = Rx`, `θ(x) = θ(y) = 0`,
/// `[θ♯, x] = (3 - n)|θ|² x`, `[θ♯, y] ∈ Rx`, `[x, y] = 0`, `ad_x|_u = 0`,
/// `ad_{θ♯}|_u - |θ|² Id` and `ad_y|_u ≠ 0` skew and commuting, `n ≥ 5`.
pub fn matches_flag_normal_form(s: &LcpStructure) -> bool {
    let l = s.algebra();
    let g = s.metric();
    let theta = s.theta();
    let u = s.flat();
    let n = l.dim();
    if n < 5 || u.dim() + 3 != n {
        return false;
    }
    let perp = u.orthogonal_complement(g.gram());
    let bs = g.sharp(theta);
    let th2 = g.form_norm_sq(theta);
    if !perp.contains(&bs) || !th2.is_positive() {
        return false;
    }
    let dp = l.bracket_span(&perp, &perp);
    if dp.dim() != 1 {
        return false;
    }
    let x = dp.basis()[0].clone();
    let w = perp.intersect(&Subspace::from_forms(n, &[theta.coeffs().to_vec()]));
    if w.dim() != 2 || !w.contains(&x) {
        return false;
    }
    let y_space = w.intersect(&Subspace::from_forms(n, &[g.gram().mul_vec(&x)]));
    let Some(y) = y_space.basis().first().cloned() else {
        return false;
    };
    let target = crate::linalg::vec_scale(&x, &(scalar::int(3 - n as i64) * &th2));
    if l.br(&bs, &x) != target || !dp.contains(&l.br(&bs, &y)) || !is_zero_vec(&l.br(&x, &y)) {
        return false;
    }
    let gu = match g.restrict(u.basis()) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let restrict = |v: &QVec| u.restrict(&l.ad(v));
    let (Some(ax), Some(ay), Some(ab)) = (restrict(&x), restrict(&y), restrict(&bs)) else {
        return false;
    };
    let b1 = &ab - &QMatrix::scalar_identity(u.dim(), &th2);
    ax.is_zero()
        && !ay.is_zero()
        && ay.is_skew_for(gu.gram())
        && b1.is_skew_for(gu.gram())
        && b1.commutator(&ay).is_zero()
}
