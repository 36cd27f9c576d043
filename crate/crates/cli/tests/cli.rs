use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lcplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcplab")).args(args).env_remove("LCPLAB_FIXTURES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn detect_e11() {
    let o = lcplab(&["detect", "--input", "examples/e11.toml"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("adapted, flat_dim=1"), "{}", stdout(&o));
    assert!(stdout(&o).contains("span{[0, 0, 1]}"));
}

#[test]
fn check_reports_jacobi_triple() {
    let o = lcplab(&["check", "--input", "examples/jacobi_violation.toml"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("jacobi FAILS on basis triple (1, 2, 3)"), "{}", stdout(&o));
    let o = lcplab(&["check", "--input", "table/e11.toml"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("derived series dims [3, 2, 0]"));
}

#[test]
fn tables_match_golden() {
    let o = lcplab(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o) == golden("tables.txt"), "text output differs from the golden file");
    let o = lcplab(&["tables", "--format", "machine"]);
    assert!(stdout(&o) == golden("tables.json"), "machine output differs from the golden file");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.toml", "dim = 2\nbrackets = [\n  { i = 1, j = 2, coeffs = [\"2/4\", \"0\"] },\n]\n");
    let o = lcplab(&["check", "--input", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.toml:3:29:"), "{}", stderr(&o));
    assert_eq!(lcplab(&["check", "--input", &p, "--bogus"]).status.code(), Some(2));
    assert_eq!(lcplab(&["detect", "--input", "no/such/file.toml"]).status.code(), Some(2));
    assert_eq!(lcplab(&["tables", "--t-range", "3:1"]).status.code(), Some(2));
}

#[test]
fn verify_failure_exits_1() {
    let good = lcplab(&["verify", "--input", "witness/e11_w1.toml"]);
    assert_eq!(good.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let text = golden_fixture("witness/e11_w1.toml").replace(r#"flat = [["0", "0", "1"]]"#, r#"flat = [["0", "1", "0"]]"#);
    let p = write(dir.path(), "wrong_flat.toml", &text);
    let o = lcplab(&["verify", "--input", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("condition (2) fails"), "{}", stdout(&o));
}

fn golden_fixture(rel: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)).unwrap()
}

#[test]
fn constructions_verify_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["semidirect", "almab", "flag", "direct", "modify"] {
        let input = format!("examples/construct_{kind}.toml");
        let o = lcplab(&["construct", kind, "--input", &input]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        let doc = write(dir.path(), &format!("{kind}.toml"), &stdout(&o));
        let v = lcplab(&["verify", "--input", &doc]);
        assert_eq!(v.status.code(), Some(0), "{kind}: {}", stdout(&v));
    }
    let o = lcplab(&["construct", "amalgam", "-i", "witness/e11_w1.toml", "-i", "witness/e11_w1.toml"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# adapted, flat_dim=2"));
    assert_eq!(lcplab(&["construct", "amalgam", "-i", "witness/e11_w1.toml"]).status.code(), Some(2));
}

#[test]
fn machine_output_is_deterministic_and_reparses() {
    let args = ["--format", "machine", "construct", "almab", "--input", "examples/construct_almab.toml"];
    let a = stdout(&lcplab(&args));
    assert_eq!(a, stdout(&lcplab(&args)));
    let report: serde_json::Value = serde_json::from_str(&a).unwrap();
    let doc = report["reports"][0]["document"].as_str().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "almab.toml", doc);
    let d: serde_json::Value =
        serde_json::from_str(&stdout(&lcplab(&["--format", "machine", "detect", "--input", &p]))).unwrap();
    assert_eq!(d["reports"][0]["class"], report["reports"][0]["class"]);

    let search = ["--format", "machine", "lattice", "search", "--input", "table"];
    let s1: serde_json::Value = serde_json::from_str(&stdout(&lcplab(&search))).unwrap();
    let s2: serde_json::Value = serde_json::from_str(&stdout(&lcplab(&search))).unwrap();
    assert_eq!(s1, s2);
    let inputs: Vec<&str> = s1["reports"].as_array().unwrap().iter().map(|r| r["input"].as_str().unwrap()).collect();
    let mut sorted = inputs.clone();
    sorted.sort();
    assert_eq!(inputs, sorted);
    assert_eq!(inputs.len(), 40);
}

#[test]
fn fixture_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "mine.toml", &golden_fixture("examples/e11.toml"));
    let o = Command::new(env!("CARGO_BIN_EXE_lcplab"))
        .args(["detect", "--input", "mine.toml"])
        .env("LCPLAB_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("flat_dim=1"));
}

#[test]
fn lattice_commands() {
    for m in 3..=10 {
        let o = lcplab(&["lattice", "certify", "--m", &m.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(&format!("Z = [[0, -1], [1, {m}]]")));
    }
    assert!(stdout(&lcplab(&["lattice", "certify", "--m", "4"])).contains("Z ⊕ Z_2"));
    assert_eq!(lcplab(&["lattice", "certify", "--m", "2"]).status.code(), Some(2));
    let t3 = ((3.0 + 5f64.sqrt()) / 2.0).ln().to_string();
    let o = lcplab(&["lattice", "certify", "--input", "table/e11.toml", "--t0", &t3]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lcplab(&["lattice", "certify", "--input", "table/e11.toml", "--t0", "0.5"]).status.code(), Some(1));

    let o = lcplab(&["lattice", "search", "--input", "table/g4.5_p-1_2.toml", "--t-range", "0:10"]);
    assert!(stdout(&o).contains("verdict no"));
    assert!(stdout(&o).contains("double_root"));
    let o = lcplab(&["lattice", "search", "--input", "witness/g5.13_q-1_3_r1_w3.toml"]);
    assert!(stdout(&o).contains("codim2_highdim"));
    let o = lcplab(&["lattice", "search", "--input", "table/e11.toml", "--t-range", "0:1", "--tol", "1e-8"]);
    assert!(stdout(&o).contains("x^2 - 3x + 1"));
    assert!(!stdout(&o).contains("x^2 - 4x + 1"));
}

#[test]
fn help_documents_flags() {
    let h = stdout(&lcplab(&["--help"]));
    assert!(h.contains("LCPLAB_FIXTURES"));
    let h = stdout(&lcplab(&["lattice", "search", "--help"]));
    for flag in ["--input", "--tol", "--t-range", "--format"] {
        assert!(h.contains(flag), "{flag}");
    }
    assert!(stdout(&lcplab(&["tables", "--help"])).contains("--seed"));
}
