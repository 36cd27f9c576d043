//! TOML definition documents.
//!
//! ```toml
//! name = "e(1,1)"
//! dim = 3
//! brackets = [
//!   { i = 1, j = 2, coeffs = ["0", "1", "0"] },
//!   { i = 1, j = 3, coeffs = ["0", "0", "-1"] },
//! ]
//! metric = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]  # default identity
//! theta = ["-1", "0", "0"]
//! flat = [["0", "0", "1"]]                                       # basis of u
//! ```
//!
//! Indices are 1-based and unlisted pairs bracket to zero. Every number is a
//! string `"p"` or `"p/q"` in lowest terms with `q > 0`. Construction inputs
//! use the keys `a`, `b`, `b1`, `b2` (matrices), `v` (vector), `lambda`,
//! `beta` (one matrix per basis vector of the algebra), `beta_gram`, and a
//! nested table `[k]` holding a second algebra with its metric.
//! Errors carry the line and column of the offending value.

use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::algebra::LieAlgebra;
use crate::detect::LcpStructure;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVec};
use crate::metric::{Metric, OneForm};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

type Num = Spanned<String>;
type Row = Spanned<Vec<Num>>;
type Mat = Spanned<Vec<Row>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: Spanned<i64>,
    j: Spanned<i64>,
    coeffs: Row,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    name: Option<String>,
    dim: Option<Spanned<i64>>,
    labels: Option<Vec<String>>,
    #[serde(default)]
    brackets: Vec<Spanned<RawBracket>>,
    metric: Option<Mat>,
    theta: Option<Row>,
    flat: Option<Mat>,
    a: Option<Mat>,
    b: Option<Mat>,
    b1: Option<Mat>,
    b2: Option<Mat>,
    v: Option<Row>,
    lambda: Option<Num>,
    beta: Option<Spanned<Vec<Mat>>>,
    beta_gram: Option<Mat>,
    k: Option<Box<RawDoc>>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    pub name: Option<String>,
    pub algebra: Option<LieAlgebra>,
    /// Present only when given; [`Document::metric_or_identity`] fills in.
    pub metric: Option<Metric>,
    pub theta: Option<OneForm>,
    pub flat: Option<Subspace>,
    pub a: Option<QMatrix>,
    pub b: Option<QMatrix>,
    pub b1: Option<QMatrix>,
    pub b2: Option<QMatrix>,
    pub v: Option<QVec>,
    pub lambda: Option<Scalar>,
    pub beta: Option<Vec<QMatrix>>,
    pub beta_gram: Option<QMatrix>,
    pub k: Option<Box<Document>>,
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn err(&self, span: Range<usize>, msg: impl Into<String>) -> Error {
        let (line, col) = line_col(self.src, span.start);
        Error::Parse { line, col, msg: msg.into() }
    }

    fn num(&self, s: &Num) -> Result<Scalar> {
        scalar::parse(s.get_ref()).map_err(|m| self.err(s.span(), m))
    }

    fn row(&self, r: &Row, len: Option<usize>) -> Result<QVec> {
        if let Some(n) = len {
            if r.get_ref().len() != n {
                return Err(self.err(r.span(), format!("expected {n} entries, found {}", r.get_ref().len())));
            }
        }
        r.get_ref().iter().map(|s| self.num(s)).collect()
    }

    fn matrix(&self, m: &Mat, rows: Option<usize>) -> Result<QMatrix> {
        let rs = m.get_ref();
        if let Some(n) = rows {
            if rs.len() != n {
                return Err(self.err(m.span(), format!("expected {n} rows, found {}", rs.len())));
            }
        }
        if rs.is_empty() {
            return Err(self.err(m.span(), "empty matrix"));
        }
        let cols = rs[0].get_ref().len();
        let data = rs.iter().map(|r| self.row(r, Some(cols))).collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows(&data, cols))
    }

    fn square(&self, m: &Mat) -> Result<QMatrix> {
        let out = self.matrix(m, None)?;
        if !out.is_square() {
            return Err(self.err(m.span(), "matrix is not square"));
        }
        Ok(out)
    }

    fn doc(&self, raw: &RawDoc) -> Result<Document> {
        let mut d = Document { name: raw.name.clone(), ..Default::default() };
        let n = match &raw.dim {
            Some(dim) => {
                let v = *dim.get_ref();
                if v <= 0 {
                    return Err(self.err(dim.span(), "dim must be positive"));
                }
                Some(v as usize)
            }
            None => None,
        };
        if n.is_none() {
            for (present, key) in [
                (!raw.brackets.is_empty(), "brackets"),
                (raw.metric.is_some(), "metric"),
                (raw.theta.is_some(), "theta"),
                (raw.flat.is_some(), "flat"),
                (raw.beta.is_some(), "beta"),
            ] {
                if present {
                    return Err(Error::Parse { line: 1, col: 1, msg: format!("`{key}` needs `dim`") });
                }
            }
        }
        if let Some(n) = n {
            let mut bs = Vec::new();
            for b in &raw.brackets {
                let rb = b.get_ref();
                let idx = |s: &Spanned<i64>| -> Result<usize> {
                    let v = *s.get_ref();
                    if v < 1 || v as usize > n {
                        return Err(self.err(s.span(), format!("index {v} outside 1..={n}")));
                    }
                    Ok(v as usize - 1)
                };
                bs.push((idx(&rb.i)?, idx(&rb.j)?, self.row(&rb.coeffs, Some(n))?, b.span()));
            }
            let plain: Vec<(usize, usize, QVec)> = bs.iter().map(|(i, j, v, _)| (*i, *j, v.clone())).collect();
            let mut l = LieAlgebra::from_brackets(n, &plain).map_err(|e| {
                let span = match &e {
                    Error::NotAntisymmetric { i, j } => bs
                        .iter()
                        .find(|(a, b, _, _)| (a, b) == (i, j) || (b, a) == (i, j))
                        .map(|t| t.3.clone())
                        .unwrap_or(0..0),
                    _ => 0..0,
                };
                self.err(span, e.to_string())
            })?;
            if let Some(labels) = &raw.labels {
                l = l.with_labels(labels.clone()).map_err(|e| self.err(0..0, e.to_string()))?;
            }
            d.algebra = Some(l);
            if let Some(m) = &raw.metric {
                let gram = self.matrix(m, Some(n))?;
                if gram.cols() != n {
                    return Err(self.err(m.span(), format!("metric must be {n}x{n}")));
                }
                d.metric = Some(Metric::new(gram).map_err(|e| self.err(m.span(), e.to_string()))?);
            }
            if let Some(t) = &raw.theta {
                d.theta = Some(OneForm::new(self.row(t, Some(n))?));
            }
            if let Some(f) = &raw.flat {
                let vs = f.get_ref().iter().map(|r| self.row(r, Some(n))).collect::<Result<Vec<_>>>()?;
                d.flat = Some(Subspace::span(n, &vs));
            }
            if let Some(beta) = &raw.beta {
                if beta.get_ref().len() != n {
                    return Err(self.err(beta.span(), format!("beta needs {n} matrices, one per basis vector")));
                }
                d.beta = Some(beta.get_ref().iter().map(|m| self.square(m)).collect::<Result<Vec<_>>>()?);
            }
        }
        d.a = raw.a.as_ref().map(|m| self.square(m)).transpose()?;
        d.b = raw.b.as_ref().map(|m| self.square(m)).transpose()?;
        d.b1 = raw.b1.as_ref().map(|m| self.square(m)).transpose()?;
        d.b2 = raw.b2.as_ref().map(|m| self.square(m)).transpose()?;
        d.beta_gram = raw.beta_gram.as_ref().map(|m| self.square(m)).transpose()?;
        d.v = raw.v.as_ref().map(|r| self.row(r, None)).transpose()?;
        d.lambda = raw.lambda.as_ref().map(|s| self.num(s)).transpose()?;
        d.k = raw.k.as_ref().map(|k| self.doc(k).map(Box::new)).transpose()?;
        Ok(d)
    }
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
    (line, col)
}

pub fn parse_document(src: &str) -> Result<Document> {
    let raw: RawDoc = toml::from_str(src).map_err(|e| {
        let (line, col) = e.span().map(|s| line_col(src, s.start)).unwrap_or((1, 1));
        Error::Parse { line, col, msg: e.message().to_string() }
    })?;
    Ctx { src }.doc(&raw)
}

fn missing(key: &str) -> Error {
    Error::PreconditionViolated(format!("document has no `{key}`"))
}

impl Document {
    pub fn algebra(&self) -> Result<&LieAlgebra> {
        self.algebra.as_ref().ok_or_else(|| missing("dim"))
    }

    pub fn metric_or_identity(&self) -> Result<Metric> {
        Ok(self.metric.clone().unwrap_or_else(|| Metric::identity(self.algebra().map(|l| l.dim()).unwrap_or(0))))
    }

    pub fn theta(&self) -> Result<&OneForm> {
        self.theta.as_ref().ok_or_else(|| missing("theta"))
    }

    pub fn flat(&self) -> Result<&Subspace> {
        self.flat.as_ref().ok_or_else(|| missing("flat"))
    }

    pub fn structure(&self) -> Result<LcpStructure> {
        LcpStructure::new(self.algebra()?.clone(), self.metric_or_identity()?, self.theta()?.clone(), self.flat()?.clone())
    }

    pub fn from_structure(name: Option<String>, s: &LcpStructure) -> Document {
        Document {
            name,
            algebra: Some(s.algebra().clone()),
            metric: Some(s.metric().clone()),
            theta: Some(s.theta().clone()),
            flat: Some(s.flat().clone()),
            ..Default::default()
        }
    }

    /// Renders the document back to TOML; [`parse_document`] inverts it.
    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, "");
        out
    }

    fn write(&self, out: &mut String, prefix: &str) {
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name = {}", quote(name));
        }
        if let Some(l) = &self.algebra {
            let n = l.dim();
            let _ = writeln!(out, "dim = {n}");
            if l.labels().iter().enumerate().any(|(i, s)| *s != format!("e{}", i + 1)) {
                let labels: Vec<String> = l.labels().iter().map(|s| quote(s)).collect();
                let _ = writeln!(out, "labels = [{}]", labels.join(", "));
            }
            let bs = l.nonzero_brackets();
            if bs.is_empty() {
                let _ = writeln!(out, "brackets = []");
            } else {
                let _ = writeln!(out, "brackets = [");
                for (i, j, v) in bs {
                    let _ = writeln!(out, "  {{ i = {}, j = {}, coeffs = {} }},", i + 1, j + 1, vec_toml(&v));
                }
                let _ = writeln!(out, "]");
            }
        }
        if let Some(m) = &self.metric {
            let _ = writeln!(out, "metric = {}", mat_toml(m.gram()));
        }
        if let Some(t) = &self.theta {
            let _ = writeln!(out, "theta = {}", vec_toml(t.coeffs()));
        }
        if let Some(f) = &self.flat {
            let rows: Vec<String> = f.basis().iter().map(|v| vec_toml(v)).collect();
            let _ = writeln!(out, "flat = [{}]", rows.join(", "));
        }
        for (key, m) in [("a", &self.a), ("b", &self.b), ("b1", &self.b1), ("b2", &self.b2), ("beta_gram", &self.beta_gram)] {
            if let Some(m) = m {
                let _ = writeln!(out, "{key} = {}", mat_toml(m));
            }
        }
        if let Some(v) = &self.v {
            let _ = writeln!(out, "v = {}", vec_toml(v));
        }
        if let Some(l) = &self.lambda {
            let _ = writeln!(out, "lambda = {}", quote(&scalar::format(l)));
        }
        if let Some(beta) = &self.beta {
            let _ = writeln!(out, "beta = [");
            for m in beta {
                let _ = writeln!(out, "  {},", mat_toml(m));
            }
            let _ = writeln!(out, "]");
        }
        if let Some(k) = &self.k {
            let key = if prefix.is_empty() { "k".to_string() } else { format!("{prefix}.k") };
            let _ = writeln!(out, "\n[{key}]");
            k.write(out, &key);
        }
    }
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn vec_toml(v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(|x| quote(&scalar::format(x))).collect();
    format!("[{}]", items.join(", "))
}

fn mat_toml(m: &QMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| vec_toml(&m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    const E11: &str = r#"
name = "e(1,1)"
dim = 3
brackets = [
  { i = 1, j = 2, coeffs = ["0", "1", "0"] },
  { i = 1, j = 3, coeffs = ["0", "0", "-1"] },
]
theta = ["-1", "0", "0"]
flat = [["0", "0", "1"]]
"#;

    #[test]
    fn parses_e11() {
        let d = parse_document(E11).unwrap();
        let l = d.algebra().unwrap();
        assert_eq!(l.bracket_basis(0, 1), crate::linalg::int_vec(&[0, 1, 0]));
        assert_eq!(d.metric_or_identity().unwrap(), Metric::identity(3));
        assert_eq!(d.theta().unwrap().coeffs()[0], int(-1));
        assert_eq!(d.flat().unwrap().dim(), 1);
        assert!(d.structure().is_ok());
    }

    #[test]
    fn round_trips() {
        let d = parse_document(E11).unwrap();
        let again = parse_document(&d.to_toml()).unwrap();
        assert_eq!(d, again);
        let nested = Document {
            a: Some(QMatrix::from_i64(&[&[1]])),
            k: Some(Box::new(Document { algebra: Some(LieAlgebra::abelian(2)), ..Default::default() })),
            ..d
        };
        assert_eq!(parse_document(&nested.to_toml()).unwrap(), nested);
    }

    fn pos(src: &str) -> (usize, usize) {
        match parse_document(src) {
            Err(Error::Parse { line, col, .. }) => (line, col),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        // non-reduced rational on line 3
        assert_eq!(pos("dim = 2\nbrackets = [\n  { i = 1, j = 2, coeffs = [\"2/4\", \"0\"] },\n]\n"), (3, 29));
        // malformed
        assert_eq!(pos("dim = 2\ntheta = [\"1\", \"x\"]\n"), (2, 15));
        assert_eq!(pos("dim = 2\ntheta = [\"1/-2\", \"0\"]\n"), (2, 10));
        // wrong length
        assert_eq!(pos("dim = 3\ntheta = [\"1\", \"0\"]\n"), (2, 9));
        // index out of range
        assert_eq!(pos("dim = 2\nbrackets = [{ i = 1, j = 3, coeffs = [\"0\", \"0\"] }]\n"), (2, 26));
        // unknown key and TOML syntax
        assert_eq!(pos("dim = 2\nbogus = 1\n").0, 2);
        assert!(pos("dim = 2\ntheta = [\n").0 >= 2);
        // numbers must be strings
        assert_eq!(pos("dim = 2\ntheta = [1, 0]\n").0, 2);
        // conflicting bracket entries
        let src = "dim = 2\nbrackets = [\n  { i = 1, j = 2, coeffs = [\"0\", \"1\"] },\n  { i = 2, j = 1, coeffs = [\"0\", \"1\"] },\n]\n";
        assert_eq!(pos(src).0, 3);
        // indefinite metric
        assert_eq!(pos("dim = 2\nmetric = [[\"1\", \"0\"], [\"0\", \"-1\"]]\n"), (2, 10));
        assert!(matches!(parse_document("dim = 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn jacobi_is_not_checked_at_parse_time() {
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 fails Jacobi
        let src = r#"
dim = 3
brackets = [
  { i = 1, j = 2, coeffs = ["0", "0", "1"] },
  { i = 2, j = 3, coeffs = ["1", "0", "0"] },
  { i = 1, j = 3, coeffs = ["1", "0", "0"] },
]
"#;
        let d = parse_document(src).unwrap();
        assert!(d.algebra().unwrap().jacobi_failure().is_some());
    }
}
