//! Exact computations with metric Lie algebras, Weyl connections and
//! locally conformally product (LCP) structures.

pub mod algebra;
pub mod classify;
pub mod construct;
pub mod detect;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod metric;
pub mod poly;
pub mod scalar;
pub mod subspace;
pub mod tables;
pub mod weyl;

pub use algebra::{AlmostAbelian, AuditReport, LieAlgebra, SubspacePredicates};
pub use error::{Error, Result};
pub use linalg::{QMatrix, QVec};
pub use metric::{Metric, OneForm};
pub use scalar::Scalar;
pub use subspace::Subspace;
pub use detect::{
    classify, detect, maximal_flat_parallel, structural_audit, verify_lcp, LcpClass, LcpKind,
    LcpStructure, StructuralAudit, VerificationReport,
};
pub use weyl::{curvature, levi_civita, weyl_connection, Connection, Curvature};
pub use construct::{
    almab_lcp, amalgamated_product, decompose, direct_product, flag_lcp, metric_modification,
    semidirect_lcp, Decomposition, OrthoRep,
};
pub use classify::{
    check_isomorphism_witness, fingerprint, verify_row, verify_table, witnesses, Fingerprint,
    LatticeStatus, TableEntry, TableReport, Witness,
};
pub use poly::QPoly;
pub use lattice::{
    e11_lattice, exp_ad, integer_charpoly_scan, row_verdict, IntPoly, LatticeVerdict, LatticeWitness,
    NoLatticeCertificate,
};
pub use tables::{tables_report, tables_report_for, TablesReport, TablesRow};
pub use document::{parse_document, Document};
