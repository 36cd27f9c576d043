//! Lattices in the simply connected groups of unimodular almost abelian
//! algebras: integral conjugates of `exp(t ad_b)` and obstructions.

pub mod certify;
pub mod expm;
pub mod intpoly;
pub mod rules;
pub mod scan;
pub mod verdict;

pub use certify::{
    abelianization, certify, certify_blockwise, certify_witness, e11_lattice, smith_normal_form,
    AbelianizationReport, LatticeWitness,
};
pub use expm::{charpoly_f64, exp_ad};
pub use intpoly::{int_poly_diagnostics, is_irreducible, IntPoly, IntPolyReport};
pub use rules::{
    amalgam_lattice, cited_verdict, no_lattice_codim2, no_lattice_double_root, no_lattice_double_root_f64,
    AmalgamLattice, NoLatticeCertificate, Rule, SymbolicTime,
};
pub use scan::{integer_charpoly_scan, Candidate, ScanOptions, ScanResult};
pub use verdict::{lattice_verdict, row_verdict, LatticeVerdict, VerdictOptions, VerdictStatus};
