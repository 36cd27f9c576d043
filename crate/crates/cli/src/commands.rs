use std::fmt::Write as _;

use serde_json::{json, Value};

use lcplab_core::classify::{entries, grid, Params};
use lcplab_core::construct::OrthoRep;
use lcplab_core::detect::Detection;
use lcplab_core::lattice::{
    certify, charpoly_f64, exp_ad, lattice_verdict, AbelianizationReport, IntPoly, LatticeVerdict, ScanOptions,
    VerdictOptions, VerdictStatus,
};
use lcplab_core::scalar::format as fq;
use lcplab_core::{
    almab_lcp, amalgamated_product, detect as run_detect, direct_product, e11_lattice, flag_lcp, metric_modification,
    semidirect_lcp, structural_audit, tables_report_for, verify_lcp, Document, LatticeWitness, LcpStructure,
    LieAlgebra, QMatrix, Scalar, Subspace,
};

use crate::inputs::load;
use crate::{ConstructKind, Inputs, ScanArgs};

pub struct Output {
    pub text: String,
    /// Pretty-printed JSON ending in a newline.
    pub machine: String,
    pub pass: bool,
}

type Res = Result<Output, String>;

fn vec_s(v: &[Scalar]) -> Vec<String> {
    v.iter().map(fq).collect()
}

fn vec_t(v: &[Scalar]) -> String {
    format!("[{}]", vec_s(v).join(", "))
}

fn basis_s(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| vec_s(v)).collect()
}

fn basis_t(s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let vs: Vec<String> = s.basis().iter().map(|v| vec_t(v)).collect();
    format!("span{{{}}}", vs.join(", "))
}

fn mat_s(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vec_s(&m.row(i))).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn header(out: &mut String, path: &str, doc: &Document) {
    match &doc.name {
        Some(n) => {
            let _ = writeln!(out, "{path}: {n}");
        }
        None => {
            let _ = writeln!(out, "{path}");
        }
    }
}

fn finish(command: &str, reports: Vec<Value>, text: String) -> Output {
    let pass = reports.iter().all(|r| r["pass"].as_bool().unwrap_or(false));
    let mut machine = serde_json::to_string_pretty(&json!({ "command": command, "pass": pass, "reports": reports }))
        .expect("json");
    machine.push('\n');
    Output { text, machine, pass }
}

fn err(path: &str, e: impl std::fmt::Display) -> String {
    format!("{path}: {e}")
}

pub fn check(inputs: &Inputs) -> Res {
    let mut text = String::new();
    let mut reports = Vec::new();
    for (path, doc) in load(&inputs.paths)? {
        let l = doc.algebra().map_err(|e| err(&path, e))?;
        let a = l.audit();
        let closed = doc.theta.as_ref().map(|t| l.is_closed(t));
        let pass = a.jacobi_ok && closed != Some(false);
        header(&mut text, &path, &doc);
        let _ = writeln!(text, "  dim {}", l.dim());
        match a.jacobi_failure {
            None => {
                let _ = writeln!(text, "  jacobi ok");
            }
            Some((i, j, k)) => {
                let _ = writeln!(
                    text,
                    "  jacobi FAILS on basis triple ({}, {}, {}): {}",
                    i + 1,
                    j + 1,
                    k + 1,
                    vec_t(&l.jacobiator(i, j, k))
                );
            }
        }
        let _ = writeln!(
            text,
            "  solvable {}, nilpotent {}, unimodular {}",
            yes(a.solvable),
            yes(a.nilpotent),
            yes(a.unimodular)
        );
        let _ = writeln!(text, "  derived series dims {:?}", a.derived_series_dims);
        let _ = writeln!(text, "  lower central series dims {:?}", a.lower_central_dims);
        let _ = writeln!(text, "  trace form {}", vec_t(l.trace_form().coeffs()));
        if let Some(c) = closed {
            let _ = writeln!(text, "  theta closed {}", yes(c));
        }
        reports.push(json!({
            "input": path,
            "audit": a,
            "jacobi_failure_1based": a.jacobi_failure.map(|(i, j, k)| [i + 1, j + 1, k + 1]),
            "trace_form": vec_s(l.trace_form().coeffs()),
            "theta_closed": closed,
            "pass": pass,
        }));
    }
    Ok(finish("check", reports, text))
}

fn lie(path: &str, doc: &Document) -> Result<LieAlgebra, String> {
    let l = doc.algebra().map_err(|e| err(path, e))?;
    if let Some((i, j, k)) = l.jacobi_failure() {
        return Err(format!("{path}: not a Lie algebra, Jacobi fails on ({}, {}, {})", i + 1, j + 1, k + 1));
    }
    Ok(l.clone())
}

pub fn detect(inputs: &Inputs) -> Res {
    let mut text = String::new();
    let mut reports = Vec::new();
    for (path, doc) in load(&inputs.paths)? {
        let l = lie(&path, &doc)?;
        let g = doc.metric_or_identity().map_err(|e| err(&path, e))?;
        let theta = doc.theta().map_err(|e| err(&path, e))?;
        let Detection { class, flat } = run_detect(&l, &g, theta).map_err(|e| err(&path, e))?;
        let almost_abelian = l.almost_abelian_presentation(&g).is_some();
        header(&mut text, &path, &doc);
        let _ = writeln!(text, "  {class}");
        let _ = writeln!(text, "  flat subspace {}", basis_t(&flat));
        let _ = writeln!(text, "  almost abelian {}", yes(almost_abelian));
        reports.push(json!({
            "input": path,
            "class": class,
            "flat": basis_s(&flat),
            "almost_abelian": almost_abelian,
            "pass": true,
        }));
    }
    Ok(finish("detect", reports, text))
}

fn verify_one(path: &str, doc: &Document, text: &mut String) -> Result<Value, String> {
    let l = lie(path, doc)?;
    let g = doc.metric_or_identity().map_err(|e| err(path, e))?;
    let theta = doc.theta().map_err(|e| err(path, e))?;
    let u = doc.flat().map_err(|e| err(path, e))?;
    let rep = verify_lcp(&l, &g, theta, u).map_err(|e| err(path, e))?;
    header(text, path, doc);
    let _ = writeln!(text, "  flat subspace {} (dim {})", basis_t(u), u.dim());
    let _ = writeln!(text, "  (1) u and u^perp subalgebras: {}", yes(rep.flat_is_subalgebra && rep.complement_is_subalgebra));
    let _ = writeln!(text, "  (2) polarized identities:     {}", yes(rep.polarized_identities));
    let _ = writeln!(text, "  (3) curvature kills u:        {}", yes(rep.curvature_annihilates_flat));
    let _ = writeln!(text, "  parallel:                     {}", yes(rep.parallel));
    for f in rep.failures.iter().take(5) {
        let _ = writeln!(
            text,
            "    condition ({}) fails at [{}], [{}]: defect {}",
            f.condition,
            f.left.join(", "),
            f.right.join(", "),
            f.defect
        );
    }
    let mut pass = rep.pass;
    let mut audit = None;
    if rep.pass {
        let s = LcpStructure::new(l, g, theta.clone(), u.clone()).map_err(|e| err(path, e))?;
        let a = structural_audit(&s).map_err(|e| err(path, e))?;
        let _ = writeln!(text, "  class {}", s.class());
        let _ = writeln!(text, "  structural audit:");
        for c in &a.checks {
            let _ = writeln!(text, "    ({}) {}: {}", c.id, c.name, serde_json::to_value(c.status).unwrap().as_str().unwrap_or(""));
        }
        pass &= a.all_ok();
        audit = Some(a);
    }
    let _ = writeln!(text, "  verdict {}", if pass { "pass" } else { "FAIL" });
    Ok(json!({ "input": path, "verification": rep, "audit": audit, "pass": pass }))
}

pub fn verify(inputs: &Inputs) -> Res {
    let mut text = String::new();
    let mut reports = Vec::new();
    for (path, doc) in load(&inputs.paths)? {
        reports.push(verify_one(&path, &doc, &mut text)?);
    }
    Ok(finish("verify", reports, text))
}

fn need<'a, T>(path: &str, v: &'a Option<T>, key: &str) -> Result<&'a T, String> {
    v.as_ref().ok_or_else(|| format!("{path}: document has no `{key}`"))
}

fn structure(path: &str, doc: &Document) -> Result<LcpStructure, String> {
    lie(path, doc)?;
    doc.structure().map_err(|e| err(path, e))
}

pub fn construct(kind: ConstructKind, inputs: &Inputs) -> Res {
    let docs = load(&inputs.paths)?;
    let expected = if kind == ConstructKind::Amalgam { 2 } else { 1 };
    if docs.len() != expected {
        return Err(format!("construct {kind:?} takes {expected} input document(s), got {}", docs.len()).to_lowercase());
    }
    let (path, doc) = &docs[0];
    let s = match kind {
        ConstructKind::Semidirect => {
            let h = lie(path, doc)?;
            let beta = need(path, &doc.beta, "beta")?;
            let q = beta.first().map(|m| m.rows()).unwrap_or(0);
            let mut rep = OrthoRep::new(q, beta.clone());
            if let Some(gram) = &doc.beta_gram {
                rep = rep.with_gram(gram.clone());
            }
            semidirect_lcp(&h, &doc.metric_or_identity().map_err(|e| err(path, e))?, &rep)
        }
        ConstructKind::Almab => almab_lcp(need(path, &doc.a, "a")?, need(path, &doc.b, "b")?),
        ConstructKind::Flag => flag_lcp(
            need(path, &doc.a, "a")?,
            need(path, &doc.b1, "b1")?,
            need(path, &doc.b2, "b2")?,
            need(path, &doc.v, "v")?,
        ),
        ConstructKind::Direct => {
            let k = need(path, &doc.k, "k")?;
            let kl = lie(path, k)?;
            let km = k.metric_or_identity().map_err(|e| err(path, e))?;
            direct_product(&structure(path, doc)?, &kl, &km)
        }
        ConstructKind::Amalgam => {
            let (p2, d2) = &docs[1];
            amalgamated_product(&structure(path, doc)?, &structure(p2, d2)?)
        }
        ConstructKind::Modify => {
            metric_modification(&structure(path, doc)?, need(path, &doc.lambda, "lambda")?)
        }
    }
    .map_err(|e| err(path, e))?;
    let name = format!("{} construction", format!("{kind:?}").to_lowercase());
    let out_doc = Document::from_structure(Some(name), &s);
    let rep = verify_lcp(s.algebra(), s.metric(), s.theta(), s.flat()).map_err(|e| err(path, e))?;
    let audit = structural_audit(&s).map_err(|e| err(path, e))?;
    let pass = rep.pass && audit.all_ok();
    let toml = out_doc.to_toml();
    let mut text = String::new();
    let _ = writeln!(text, "# {}; verify {}; structural audit {}", s.class(), rep.summary(), if audit.all_ok() { "ok" } else { "FAIL" });
    text.push_str(&toml);
    let report = json!({
        "input": docs.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
        "class": s.class(),
        "document": toml,
        "verification": rep,
        "audit": audit,
        "pass": pass,
    });
    Ok(finish("construct", vec![report], text))
}

fn verdict_options(scan: &ScanArgs, max_witnesses: usize) -> VerdictOptions {
    VerdictOptions {
        scan: ScanOptions { t_min: scan.t_range.0, t_max: scan.t_range.1, tol: scan.tol, ..ScanOptions::default() },
        max_witnesses,
        ..VerdictOptions::default()
    }
}

pub fn tables(scan: &ScanArgs, samples: usize, seed: u64) -> Res {
    let mut jobs: Vec<(String, Params)> = Vec::new();
    for e in entries() {
        for p in grid::canonical(e.name).map_err(|e| e.to_string())? {
            jobs.push((e.name.to_string(), p));
        }
        if samples > 0 && !e.params.is_empty() {
            for p in grid::random(e.name, seed, samples).map_err(|e| e.to_string())? {
                jobs.push((e.name.to_string(), p));
            }
        }
    }
    let report = tables_report_for(&jobs, &verdict_options(scan, 3)).map_err(|e| e.to_string())?;
    Ok(Output { text: report.to_text(), machine: report.to_json(), pass: report.pass })
}

fn witness_text(out: &mut String, w: &LatticeWitness) {
    let _ = writeln!(out, "    t0 = {:.12}  char poly {}", w.t0, w.poly);
    let _ = writeln!(out, "    Z = {:?}", w.z);
    let _ = writeln!(out, "    residual {:.3e}, blocks {:?}", w.residual, w.blocks);
}

fn verdict_text(out: &mut String, v: &LatticeVerdict) {
    let _ = writeln!(out, "  verdict {}", v.short());
    for (k, w) in v.witnesses.iter().enumerate() {
        let _ = writeln!(out, "  witness {}", k + 1);
        witness_text(out, w);
    }
    for c in &v.certificates {
        let rule = serde_json::to_value(c.rule).unwrap();
        let _ = writeln!(out, "  no-lattice certificate {}: {}", rule.as_str().unwrap_or(""), c.evidence);
        if let Some(r) = &c.reference {
            let _ = writeln!(out, "    reference {r}");
        }
    }
    for (a, b) in &v.inconclusive_ranges {
        let _ = writeln!(out, "  inconclusive on t in ({a}, {b}]");
    }
}

pub fn lattice_search(inputs: &Inputs, scan: &ScanArgs, max_witnesses: usize) -> Res {
    let opts = verdict_options(scan, max_witnesses);
    let mut text = String::new();
    let mut reports = Vec::new();
    for (path, doc) in load(&inputs.paths)? {
        let l = lie(&path, &doc)?;
        let structures: Vec<LcpStructure> = match (&doc.theta, &doc.flat) {
            (Some(_), Some(_)) => vec![structure(&path, &doc)?],
            _ => Vec::new(),
        };
        let g = doc.metric_or_identity().map_err(|e| err(&path, e))?;
        let presentation = l.almost_abelian_presentation(&g);
        let v = lattice_verdict(&path, &l, &structures, &opts).map_err(|e| err(&path, e))?;
        header(&mut text, &path, &doc);
        match &presentation {
            Some(p) => {
                let _ = writeln!(text, "  almost abelian, ad_b on the ideal: {:?}", mat_s(&p.c));
            }
            None => {
                let _ = writeln!(text, "  not almost abelian; only the structural rules apply");
            }
        }
        verdict_text(&mut text, &v);
        let pass = v.status != VerdictStatus::Conflict;
        reports.push(json!({ "input": path, "verdict": v, "pass": pass }));
    }
    Ok(finish("lattice search", reports, text))
}

fn abelianization_text(out: &mut String, a: &AbelianizationReport) {
    let _ = writeln!(out, "  abelianization {} (Smith form of Z - I: {:?})", a.description, a.invariant_factors);
}

pub fn lattice_certify(input: Option<&str>, t0: Option<f64>, m: Option<i64>, tol: f64) -> Res {
    let mut text = String::new();
    if let Some(m) = m {
        let (w, ab) = e11_lattice(m).map_err(|e| e.to_string())?;
        let _ = writeln!(text, "e(1,1), m = {m}");
        witness_text(&mut text, &w);
        abelianization_text(&mut text, &ab);
        let pass = w.is_sound();
        let report = json!({ "input": format!("e(1,1) m={m}"), "witness": w, "abelianization": ab, "pass": pass });
        return Ok(finish("lattice certify", vec![report], text));
    }
    let input = input.ok_or("--input or --m is required")?;
    let t0 = t0.ok_or("--t0 is required with --input")?;
    let docs = load(&[input.to_string()])?;
    let mut reports = Vec::new();
    for (path, doc) in docs {
        let l = lie(&path, &doc)?;
        let g = doc.metric_or_identity().map_err(|e| err(&path, e))?;
        let p = l
            .almost_abelian_presentation(&g)
            .ok_or_else(|| format!("{path}: not almost abelian, nothing to certify"))?;
        let c = p.c.to_f64();
        let m = exp_ad(&c, t0).map_err(|e| err(&path, e))?;
        let poly = IntPoly::from_f64(&charpoly_f64(&m), tol);
        header(&mut text, &path, &doc);
        let witness = poly.as_ref().and_then(|poly| certify(&c, t0, poly, lcplab_core::lattice::certify::RESIDUAL_TOL));
        match (&poly, &witness) {
            (None, _) => {
                let _ = writeln!(text, "  characteristic polynomial of exp(t0 C) is not integral within {tol}");
            }
            (Some(poly), None) => {
                let _ = writeln!(text, "  char poly {poly}, but no integral conjugate was certified");
            }
            (Some(_), Some(w)) => witness_text(&mut text, w),
        }
        let ab = witness.as_ref().map(|w| lcplab_core::lattice::abelianization(&w.z));
        if let Some(ab) = &ab {
            abelianization_text(&mut text, ab);
        }
        let pass = witness.as_ref().is_some_and(|w| w.is_sound());
        let _ = writeln!(text, "  verdict {}", if pass { "certified" } else { "not certified" });
        reports.push(json!({
            "input": path,
            "t0": t0,
            "poly": poly.map(|p| p.to_string()),
            "witness": witness,
            "abelianization": ab,
            "pass": pass,
        }));
    }
    Ok(finish("lattice certify", reports, text))
}
