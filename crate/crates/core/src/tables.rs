//! Reproduction of the classification tables: every row at its canonical
//! parameters, with the flat dimensions realised by the shipped witnesses
//! and the computed lattice verdict.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::grid;
use crate::classify::table::{entries, entry, format_params, LatticeStatus, Params, TableEntry};
use crate::classify::witness::verify_row;
use crate::error::Result;
use crate::lattice::{row_verdict, LatticeVerdict, Rule, VerdictOptions, VerdictStatus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TablesRow {
    pub table: u8,
    pub name: String,
    pub display: String,
    pub params: String,
    /// The printed flat-dimension column.
    pub dims_column: String,
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
    pub witnesses: usize,
    pub dims_ok: bool,
    /// The printed lattice column.
    pub lattice_column: String,
    pub verdict: String,
    pub evidence: Vec<String>,
    pub lattice_ok: bool,
}

impl TablesRow {
    pub fn pass(&self) -> bool {
        self.dims_ok && self.lattice_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TablesReport {
    pub rows: Vec<TablesRow>,
    pub pass: bool,
}

fn evidence(v: &LatticeVerdict) -> Vec<String> {
    let mut out: Vec<String> = v.witnesses.iter().take(1).map(|w| format!("witness {}", w.poly)).collect();
    for c in &v.certificates {
        out.push(match c.rule {
            Rule::DoubleRoot => "double_root".to_string(),
            Rule::Codim2Highdim => "codim2_highdim".to_string(),
            Rule::Cited => format!("cited no ({})", c.reference.as_deref().unwrap_or("")),
        });
    }
    out.extend(v.cited_existence.iter().map(|r| format!("cited yes ({r})")));
    out
}

fn lattice_ok(e: &TableEntry, status: VerdictStatus) -> bool {
    match (e.lattice, status) {
        (_, VerdictStatus::Conflict) => false,
        (LatticeStatus::Yes, s) => s == VerdictStatus::Lattice,
        (LatticeStatus::No, s) => s == VerdictStatus::NoLattice,
        (LatticeStatus::SomeParameters, _) => true,
    }
}

fn row(e: &TableEntry, p: &Params, opts: &VerdictOptions) -> Result<TablesRow> {
    let (rep, _) = verify_row(e.name, p)?;
    let v = row_verdict(e.name, p, opts)?;
    Ok(TablesRow {
        table: e.table,
        name: e.name.to_string(),
        display: e.display.to_string(),
        params: format_params(p),
        dims_column: e.dims_column.to_string(),
        expected: rep.expected,
        found: rep.found,
        witnesses: rep.outcomes.len(),
        dims_ok: rep.pass,
        lattice_column: e.lattice_column.to_string(),
        verdict: v.short().to_string(),
        evidence: evidence(&v),
        lattice_ok: lattice_ok(e, v.status),
    })
}

/// Runs every row at its canonical parameters. Rows are computed in
/// parallel and reported in table order.
pub fn tables_report(opts: &VerdictOptions) -> Result<TablesReport> {
    let mut jobs = Vec::new();
    for e in entries() {
        for p in grid::canonical(e.name)? {
            jobs.push((e.name.to_string(), p));
        }
    }
    tables_report_for(&jobs, opts)
}

/// Same as [`tables_report`] on an explicit list of rows and parameters.
pub fn tables_report_for(jobs: &[(String, Params)], opts: &VerdictOptions) -> Result<TablesReport> {
    let rows = jobs.par_iter().map(|(name, p)| row(entry(name)?, p, opts)).collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(TablesRow::pass);
    Ok(TablesReport { rows, pass })
}

fn set(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl TablesReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut current = 0;
        for r in &self.rows {
            if r.table != current {
                current = r.table;
                if !out.is_empty() {
                    out.push('\n');
                }
                let _ = writeln!(out, "Table {current} (dimension {})", current + 2);
            }
            let label = if r.params.is_empty() { r.display.clone() } else { format!("{}  {}", r.display, r.params) };
            let _ = writeln!(out, "  {label}");
            let _ = writeln!(
                out,
                "    dim u   printed: {:<52} found: {} of {} ({} witnesses)  {}",
                r.dims_column,
                set(&r.found),
                set(&r.expected),
                r.witnesses,
                if r.dims_ok { "ok" } else { "FAIL" }
            );
            let _ = writeln!(
                out,
                "    lattice printed: {:<52} verdict: {}  {}",
                r.lattice_column,
                r.verdict,
                if r.lattice_ok { "ok" } else { "FAIL" }
            );
            for ev in &r.evidence {
                let _ = writeln!(out, "      {ev}");
            }
        }
        let failed = self.rows.iter().filter(|r| !r.pass()).count();
        let _ = writeln!(out, "\n{} rows, {} failed", self.rows.len(), failed);
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
