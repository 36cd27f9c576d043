//! Inputs shared by the benchmarks.

use lcplab_core::classify::{entries, grid, witnesses};
use lcplab_core::detect::LcpStructure;

/// One shipped witness per table row, at the first canonical parameter.
pub fn row_witnesses() -> Vec<(String, LcpStructure)> {
    let mut out = Vec::new();
    for e in entries() {
        let p = grid::canonical(e.name).expect("canonical grid").remove(0);
        if let Some(w) = witnesses(e.name, &p).expect("witnesses").into_iter().next() {
            out.push((e.name.to_string(), w.structure));
        }
    }
    out
}
