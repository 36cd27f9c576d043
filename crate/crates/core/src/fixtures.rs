//! The fixture corpus: one definition document per table row and per shipped
//! witness, plus hand-written inputs for the constructions and the command
//! line. Everything is generated here; the files under `fixtures/` are the
//! committed output of [`corpus`].

use crate::algebra::LieAlgebra;
use crate::classify::grid;
use crate::classify::table::{entries, format_params, table_algebra};
use crate::classify::witness::witnesses;
use crate::construct::{almab_lcp, OrthoRep};
use crate::document::Document;
use crate::error::Result;
use crate::linalg::{int_vec, QMatrix};
use crate::metric::{Metric, OneForm};
use crate::scalar::{int, q};

/// File-name form of a row name and parameters: `g_{5.13}` with
/// `q=-1/3, r=1` becomes `g5.13_q-1_3_r1`.
pub fn slug(name: &str, params: &str) -> String {
    let raw = format!("{name} {params}");
    let mut out = String::new();
    for ch in raw.chars() {
        match ch {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '.' | '-' => out.push(ch),
            '+' | ' ' | '/' => {
                if !out.ends_with('_') {
                    out.push('_');
                }
            }
            _ => {}
        }
    }
    out.trim_end_matches('_').to_string()
}

fn j2() -> QMatrix {
    QMatrix::from_i64(&[&[0, -1], &[1, 0]])
}

fn examples() -> Result<Vec<(String, Document)>> {
    let mut out = Vec::new();
    let e11 = almab_lcp(&QMatrix::from_i64(&[&[1]]), &QMatrix::zeros(1, 1))?;
    let mut d = Document::from_structure(Some("e(1,1) with theta = -e^1".into()), &e11);
    d.flat = None;
    out.push(("e11.toml".into(), d));

    out.push((
        "jacobi_violation.toml".into(),
        Document {
            name: Some("brackets failing the Jacobi identity".into()),
            algebra: Some(LieAlgebra::from_int_brackets(3, &[(1, 2, &[0, 0, 1]), (2, 3, &[1, 0, 0]), (1, 3, &[1, 0, 0])])),
            ..Default::default()
        },
    ));

    // h = R b ⋉ R^2 with ad_b = Id, and β(b) a rotation of R^2
    let h = LieAlgebra::from_int_brackets(3, &[(1, 2, &[0, 1, 0]), (1, 3, &[0, 0, 1])]);
    let beta = OrthoRep::new(2, vec![j2(), QMatrix::zeros(2, 2), QMatrix::zeros(2, 2)]);
    out.push((
        "construct_semidirect.toml".into(),
        Document {
            name: Some("h = R b ⋉ R^2, ad_b = Id, beta(b) = J".into()),
            algebra: Some(h),
            metric: Some(Metric::identity(3)),
            beta: Some(beta.images().to_vec()),
            beta_gram: Some(beta.gram().clone()),
            ..Default::default()
        },
    ));
    out.push((
        "construct_almab.toml".into(),
        Document {
            name: Some("A = [[1, 1], [0, 2]], B = J".into()),
            a: Some(QMatrix::from_i64(&[&[1, 1], &[0, 2]])),
            b: Some(j2()),
            ..Default::default()
        },
    ));
    out.push((
        "construct_flag.toml".into(),
        Document {
            name: Some("A = [2], B1 = 0, B2 = J, v = 0".into()),
            a: Some(QMatrix::from_i64(&[&[2]])),
            b1: Some(QMatrix::zeros(2, 2)),
            b2: Some(j2()),
            v: Some(int_vec(&[0])),
            ..Default::default()
        },
    ));
    let mut direct = Document::from_structure(Some("e(1,1) times R with the standard metric".into()), &e11);
    direct.k = Some(Box::new(Document {
        algebra: Some(LieAlgebra::abelian(1)),
        metric: Some(Metric::identity(1)),
        ..Default::default()
    }));
    out.push(("construct_direct.toml".into(), direct));
    let mut modify = Document::from_structure(Some("e(1,1), metric modified by lambda = 1/2".into()), &e11);
    modify.lambda = Some(q(1, 2));
    out.push(("construct_modify.toml".into(), modify));

    // not unimodular, so the structural audit has nothing to say
    let l = LieAlgebra::from_int_brackets(3, &[(1, 2, &[0, 1, 0]), (1, 3, &[0, 0, 1])]);
    out.push((
        "nonunimodular.toml".into(),
        Document {
            name: Some("R ⋉ R^2 with ad = Id, theta = e^1".into()),
            algebra: Some(l),
            theta: Some(OneForm::new(vec![int(1), int(0), int(0)])),
            ..Default::default()
        },
    ));
    Ok(out)
}

/// `(relative path, contents)` for every fixture, sorted by path.
pub fn corpus() -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for e in entries() {
        for p in grid::canonical(e.name)? {
            let ps = format_params(&p);
            let base = slug(e.name, &ps);
            let label = format!("{} {}", e.name, ps).trim_end().to_string();
            let d = Document {
                name: Some(label.clone()),
                algebra: Some(table_algebra(e.name, &p)?),
                ..Default::default()
            };
            out.push((format!("table/{base}.toml"), d.to_toml()));
            for (k, w) in witnesses(e.name, &p)?.iter().enumerate() {
                let name = format!("{label} / witness {} / {} / flat_dim {}", k + 1, w.recipe, w.intended_flat_dim);
                let d = Document::from_structure(Some(name), &w.structure);
                out.push((format!("witness/{base}_w{}.toml", k + 1), d.to_toml()));
            }
        }
    }
    for (path, d) in examples()? {
        out.push((format!("examples/{path}"), d.to_toml()));
    }
    out.sort();
    Ok(out)
}
