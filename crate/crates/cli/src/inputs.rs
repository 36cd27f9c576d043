use std::path::{Path, PathBuf};

use lcplab_core::{parse_document, Document};

/// Fixture directory: `LCPLAB_FIXTURES`, else the corpus shipped in the repository.
pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os("LCPLAB_FIXTURES") {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

fn resolve(p: &str) -> PathBuf {
    let direct = PathBuf::from(p);
    if direct.exists() || direct.is_absolute() {
        return direct;
    }
    let in_fixtures = fixtures_dir().join(p);
    if in_fixtures.exists() {
        in_fixtures
    } else {
        direct
    }
}

fn collect(shown: String, path: &Path, out: &mut Vec<(String, PathBuf)>) -> Result<(), String> {
    if path.is_dir() {
        let mut entries: Vec<_> = std::fs::read_dir(path)
            .map_err(|e| format!("{shown}: {e}"))?
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .collect();
        entries.sort();
        for name in entries {
            let child = path.join(&name);
            let shown = format!("{}/{name}", shown.trim_end_matches('/'));
            if child.is_dir() || name.ends_with(".toml") {
                collect(shown, &child, out)?;
            }
        }
    } else {
        out.push((shown, path.to_path_buf()));
    }
    Ok(())
}

/// Reads and parses every input, expanding directories in lexicographic order.
/// Paths are reported as given.
pub fn load(paths: &[String]) -> Result<Vec<(String, Document)>, String> {
    let mut files = Vec::new();
    for p in paths {
        collect(p.clone(), &resolve(p), &mut files)?;
    }
    files
        .into_iter()
        .map(|(shown, path)| {
            let src = std::fs::read_to_string(&path).map_err(|e| format!("{shown}: {e}"))?;
            let doc = parse_document(&src).map_err(|e| format!("{shown}:{e}"))?;
            Ok((shown, doc))
        })
        .collect()
}
