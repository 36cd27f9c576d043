//! Combining scans, witnesses and certificates into one verdict per input.

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::classify::fingerprint::{fingerprint, Fingerprint};
use crate::classify::table::{format_params, table_algebra, Params};
use crate::classify::witness::witnesses;
use crate::detect::LcpStructure;
use crate::error::Result;
use crate::lattice::certify::{certify, LatticeWitness, RESIDUAL_TOL};
use crate::lattice::rules::{
    cited_verdict, no_lattice_codim2, no_lattice_double_root, NoLatticeCertificate, Rule,
};
use crate::lattice::scan::{integer_charpoly_scan, ScanOptions};
use crate::metric::Metric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Lattice,
    NoLattice,
    Inconclusive,
    /// Both a witness and a certificate; never expected.
    Conflict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictOptions {
    pub scan: ScanOptions,
    pub max_witnesses: usize,
    pub residual_tol: f64,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { scan: ScanOptions::default(), max_witnesses: 3, residual_tol: RESIDUAL_TOL }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeVerdict {
    pub input: String,
    pub fingerprint: Fingerprint,
    pub witnesses: Vec<LatticeWitness>,
    pub certificates: Vec<NoLatticeCertificate>,
    /// Literature references asserting existence.
    pub cited_existence: Vec<String>,
    /// `t` ranges where the scan found nothing certifiable or did not look.
    pub inconclusive_ranges: Vec<(f64, f64)>,
    pub status: VerdictStatus,
}

impl LatticeVerdict {
    fn finish(mut self) -> Self {
        let yes = !self.witnesses.is_empty() || !self.cited_existence.is_empty();
        let no = !self.certificates.is_empty();
        self.status = match (yes, no) {
            (true, true) => VerdictStatus::Conflict,
            (true, false) => VerdictStatus::Lattice,
            (false, true) => VerdictStatus::NoLattice,
            (false, false) => VerdictStatus::Inconclusive,
        };
        self
    }

    /// Short rendering for tables: `yes`, `no`, `inconclusive` or `conflict`.
    pub fn short(&self) -> &'static str {
        match self.status {
            VerdictStatus::Lattice => "yes",
            VerdictStatus::NoLattice => "no",
            VerdictStatus::Inconclusive => "inconclusive",
            VerdictStatus::Conflict => "conflict",
        }
    }
}

/// Runs every applicable rule on an algebra and the LCP structures known on
/// it. The witness side needs an almost abelian, unimodular algebra; the
/// certificate side runs independently so that conflicts would surface.
pub fn lattice_verdict(
    input: &str,
    l: &LieAlgebra,
    structures: &[LcpStructure],
    opts: &VerdictOptions,
) -> Result<LatticeVerdict> {
    let mut v = LatticeVerdict {
        input: input.to_string(),
        fingerprint: fingerprint(l),
        witnesses: Vec::new(),
        certificates: Vec::new(),
        cited_existence: Vec::new(),
        inconclusive_ranges: Vec::new(),
        status: VerdictStatus::Inconclusive,
    };
    if let Some(c) = structures.iter().find_map(no_lattice_codim2) {
        v.certificates.push(c);
    }
    let audit = l.audit();
    let presentation = if audit.unimodular { l.almost_abelian_presentation(&Metric::identity(l.dim())) } else { None };
    if let Some(p) = presentation {
        if let Some(c) = no_lattice_double_root(&p.c) {
            v.certificates.push(c);
        }
        let scan = integer_charpoly_scan(&p.c, &opts.scan)?;
        let cf = p.c.to_f64();
        for cand in &scan.candidates {
            if v.witnesses.len() >= opts.max_witnesses {
                break;
            }
            if let Some(w) = certify(&cf, cand.t0, &cand.poly, opts.residual_tol) {
                v.witnesses.push(w);
            }
        }
        if v.witnesses.is_empty() {
            v.inconclusive_ranges.push((opts.scan.t_min, opts.scan.t_max));
        } else {
            v.inconclusive_ranges.extend(scan.unscanned);
        }
    }
    Ok(v.finish())
}

/// Verdict for a table row: computed rules on the row's algebra and shipped
/// LCP witnesses, plus the literature verdict where one is recorded.
pub fn row_verdict(name: &str, p: &Params, opts: &VerdictOptions) -> Result<LatticeVerdict> {
    let l = table_algebra(name, p)?;
    let structures: Vec<LcpStructure> = witnesses(name, p)?.into_iter().map(|w| w.structure).collect();
    let input = format!("{name} {}", format_params(p)).trim_end().to_string();
    let mut v = lattice_verdict(&input, &l, &structures, opts)?;
    match cited_verdict(name, p)? {
        Some((true, r)) => v.cited_existence.push(r.to_string()),
        Some((false, r)) => v.certificates.push(NoLatticeCertificate {
            rule: Rule::Cited,
            evidence: format!("{name} has no lattices"),
            reference: Some(r.to_string()),
        }),
        None => {}
    }
    Ok(v.finish())
}
