//! Rewrites the fixture corpus: `cargo run -p lcplab-core --example regen_fixtures [DIR]`.
//! DIR defaults to `fixtures/` at the workspace root.

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"));
    for sub in ["table", "witness", "examples"] {
        let d = dir.join(sub);
        if d.exists() {
            std::fs::remove_dir_all(&d)?;
        }
        std::fs::create_dir_all(&d)?;
    }
    let corpus = lcplab_core::fixtures::corpus()?;
    for (path, text) in &corpus {
        std::fs::write(dir.join(path), text)?;
    }
    println!("wrote {} documents to {}", corpus.len(), dir.display());
    Ok(())
}
