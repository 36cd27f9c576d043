//! The low-dimensional classification: table rows, witnesses and fingerprints.

pub mod fingerprint;
pub mod grid;
pub mod table;
pub mod witness;

pub use fingerprint::{fingerprint, Fingerprint};
pub use table::{entries, entry, expected_flat_dims, params, table_algebra, LatticeStatus, Params, TableEntry};
pub use witness::{check_isomorphism_witness, verify_row, verify_table, witnesses, TableReport, Witness};
