//! Scan of `t ↦ charpoly(exp(t C))` for integral, unimodular candidates.
//!
//! Every candidate has an integral trace, so the scan follows the trace: it
//! samples `tr exp(t C)` on a grid, bisects each crossing of an integer, and
//! keeps the refined points where every coefficient is integral.
//!
//! Sampling and bisection use `tr exp(t C) = Σ exp(t λ_i)` over the spectrum
//! of `C`; candidates are then confirmed on the matrix exponential itself.

use nalgebra::{Complex, DMatrix};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::expm::{charpoly_f64, exp_ad, spectral_radius, MAX_SPECTRAL_RADIUS};
use crate::lattice::intpoly::IntPoly;
use crate::linalg::QMatrix;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanOptions {
    /// Open at the left end.
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
    /// Relative integrality tolerance for the coefficients.
    pub tol: f64,
    pub max_candidates: usize,
    /// Bound on the number of integer crossings refined.
    pub max_crossings: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { t_min: 0.0, t_max: 20.0, step: 1e-3, tol: 1e-9, max_candidates: 64, max_crossings: 2_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub t0: f64,
    pub poly: IntPoly,
    /// Largest relative distance of a coefficient from its integer.
    pub defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub candidates: Vec<Candidate>,
    /// `C` is nilpotent: `exp(t C)` is unipotent for every `t`.
    pub degenerate: bool,
    /// Parts of the requested range that were not examined.
    pub unscanned: Vec<(f64, f64)>,
}

const REFINE_TOL: f64 = 1e-9;
const DEDUP: f64 = 1e-6;
const BATCH: usize = 4096;

struct Spectrum(Vec<Complex<f64>>);

impl Spectrum {
    fn of(c: &DMatrix<f64>) -> Self {
        Spectrum(c.complex_eigenvalues().iter().copied().collect())
    }

    fn trace(&self, t: f64) -> f64 {
        self.0.iter().map(|l| (l * t).exp().re).sum()
    }

    /// `∏ (x - exp(t λ_i))`, real parts, constant term first.
    fn charpoly(&self, t: f64) -> Vec<f64> {
        let mut c = vec![Complex::new(1.0, 0.0)];
        for l in &self.0 {
            let r = (l * t).exp();
            let mut next = vec![Complex::new(0.0, 0.0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        c.iter().map(|z| z.re).collect()
    }
}

/// Bisection for `tr exp(t C) = m` on `[a, b]`, where the sign of
/// `tr - m` differs at the ends. Runs down to adjacent floats, well past the
/// `1e-9` defect the candidates are held to.
fn refine(sp: &Spectrum, mut a: f64, mut b: f64, m: f64) -> f64 {
    let mut fa = sp.trace(a) - m;
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = sp.trace(mid) - m;
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn candidate_at(c: &DMatrix<f64>, sp: &Spectrum, t: f64, tol: f64) -> Option<Candidate> {
    // cheap screen on the spectrum before the matrix exponential
    IntPoly::from_f64(&sp.charpoly(t), (1e3 * tol).min(1e-3))?;
    let m = exp_ad(c, t).ok()?;
    let cp = charpoly_f64(&m);
    let poly = IntPoly::from_f64(&cp, tol)?;
    if !poly.is_monic() || !poly.constant().abs().is_one() {
        return None;
    }
    if (m.trace() - m.trace().round()).abs() > REFINE_TOL * m.trace().abs().max(1.0) {
        return None;
    }
    let defect = cp.iter().map(|x| (x - x.round()).abs() / x.abs().max(1.0)).fold(0.0, f64::max);
    Some(Candidate { t0: t, poly, defect })
}

fn is_nilpotent(c: &QMatrix) -> bool {
    c.rows() == 0 || c.pow(c.rows() as u32).is_zero()
}

/// Scans `(t_min, t_max]` for `t` at which `exp(t C)` has a monic integral
/// characteristic polynomial with constant term `±1`. Candidates are sorted
/// by `t` and pairwise at least `1e-6` apart.
pub fn integer_charpoly_scan(c: &QMatrix, opts: &ScanOptions) -> Result<ScanResult> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch { expected: c.rows(), got: c.cols() });
    }
    if !c.trace().is_zero() {
        return Err(Error::NonTraceFree);
    }
    if !(opts.t_min >= 0.0 && opts.t_max > opts.t_min && opts.step > 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "scan range ({}, {}] with step {}",
            opts.t_min, opts.t_max, opts.step
        )));
    }
    let n = c.rows();
    if is_nilpotent(c) {
        let poly = IntPoly::from_qpoly(&crate::poly::QPoly::from_i64(&[-1, 1]).pow(n as u32)).expect("integral");
        let candidates = if opts.t_min < 1.0 && 1.0 <= opts.t_max {
            vec![Candidate { t0: 1.0, poly, defect: 0.0 }]
        } else {
            Vec::new()
        };
        return Ok(ScanResult { candidates, degenerate: true, unscanned: Vec::new() });
    }
    let cf = c.to_f64();
    let rho = spectral_radius(&cf);
    let t_env = if rho > 0.0 { MAX_SPECTRAL_RADIUS / rho } else { f64::INFINITY };
    let mut unscanned = Vec::new();
    let t_hi = if opts.t_max > t_env {
        unscanned.push((t_env, opts.t_max));
        t_env
    } else {
        opts.t_max
    };
    let steps = ((t_hi - opts.t_min) / opts.step).ceil().max(1.0) as usize;
    let ts: Vec<f64> = (0..=steps).map(|k| (opts.t_min + k as f64 * opts.step).min(t_hi)).collect();
    let sp = Spectrum::of(&cf);
    let tr: Vec<f64> = ts.par_iter().map(|&t| sp.trace(t)).collect();

    let mut crossings: Vec<(f64, f64, f64)> = Vec::new();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut stopped_at = None;
    let flush = |crossings: &mut Vec<(f64, f64, f64)>, candidates: &mut Vec<Candidate>| {
        let found: Vec<Candidate> = crossings
            .par_iter()
            .filter_map(|&(a, b, m)| candidate_at(&cf, &sp, refine(&sp, a, b, m), opts.tol))
            .collect();
        candidates.extend(found);
        crossings.clear();
    };
    let mut total = 0usize;
    'walk: for k in 0..steps {
        let (fa, fb) = (tr[k], tr[k + 1]);
        if !fa.is_finite() || !fb.is_finite() {
            continue;
        }
        let lo = fa.min(fb).ceil() as i64;
        let hi = fa.max(fb).floor() as i64;
        for m in lo..=hi {
            if total >= opts.max_crossings {
                stopped_at = Some(ts[k]);
                break 'walk;
            }
            crossings.push((ts[k], ts[k + 1], m as f64));
            total += 1;
        }
        if crossings.len() >= BATCH {
            flush(&mut crossings, &mut candidates);
            if candidates.len() >= opts.max_candidates {
                stopped_at = Some(ts[k + 1]);
                break;
            }
        }
    }
    flush(&mut crossings, &mut candidates);
    candidates.retain(|c| c.t0 > opts.t_min);
    candidates.sort_by(|a, b| a.t0.total_cmp(&b.t0));
    candidates.dedup_by(|b, a| (b.t0 - a.t0).abs() < DEDUP);
    if candidates.len() > opts.max_candidates {
        let last = candidates[opts.max_candidates - 1].t0;
        candidates.truncate(opts.max_candidates);
        stopped_at = Some(stopped_at.map_or(last, |s: f64| s.min(last)));
    }
    if let Some(s) = stopped_at {
        unscanned.insert(0, (s, t_hi));
    }
    Ok(ScanResult { candidates, degenerate: false, unscanned })
}
