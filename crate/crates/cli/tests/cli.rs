//! End-to-end tests of the binary: commands, formats, presets, file input
//! and the exit-code taxonomy.

use std::path::Path;
use std::process::{Command, Output};

fn fachom(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fachom"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn hochschild_polynomial_csv() {
    let dir = tempdir();
    let out = fachom(
        &["hochschild", "polynomial", "-w", "3", "--format", "csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight,degree,dim"));
    // HKR: each weight w >= 1 carries one class in degree 0 and one in 1
    for w in 1..=3 {
        assert!(text.contains(&format!("{w},0,1")), "missing ({w},0): {text}");
        assert!(text.contains(&format!("{w},1,1")), "missing ({w},1): {text}");
    }
}

#[test]
fn hochschild_json_round_trips() {
    let dir = tempdir();
    let out = fachom(
        &["hochschild", "exterior", "-w", "2", "--format", "json"],
        dir.path(),
    );
    assert!(out.status.success());
    let table: fachom_core::complexes::BettiTable =
        serde_json::from_str(&stdout(&out)).expect("valid JSON table");
    let json = serde_json::to_string(&table).unwrap();
    let back: fachom_core::complexes::BettiTable = serde_json::from_str(&json).unwrap();
    assert_eq!(back, table);
}

#[test]
fn hochschild_malformed_file_exits_2() {
    let dir = tempdir();
    std::fs::write(dir.path().join("broken.json"), "{oops").unwrap();
    let out = fachom(&["hochschild", "broken.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hochschild_lie_file_is_type_mismatch() {
    let dir = tempdir();
    let lie = r#"{"kind": "lie",
        "generators": [{"name": "x", "degree": 0, "weight": 1}],
        "brackets": []}"#;
    std::fs::write(dir.path().join("lie.json"), lie).unwrap();
    let out = fachom(&["hochschild", "lie.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hochschild_invalid_algebra_exits_3() {
    let dir = tempdir();
    // associativity fails: x*x = x is not weight-homogeneous, so instead
    // break the Leibniz-free route with a relation of mixed weight
    let bad = r#"{"kind": "tensor",
        "generators": [{"name": "x", "degree": 0, "weight": 1}],
        "relations": [[{"coeff": "1", "word": ["x", "x"]},
                       {"coeff": "-1", "word": ["x"]}]]}"#;
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    let out = fachom(&["hochschild", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2), "inhomogeneous relation is an input error");
    // a mixed-weight generator list is a validation-class failure
    let mixed = r#"{"kind": "tensor",
        "generators": [{"name": "x", "degree": 0, "weight": 1},
                       {"name": "y", "degree": 0, "weight": -1}]}"#;
    std::fs::write(dir.path().join("mixed.json"), mixed).unwrap();
    let out = fachom(&["hochschild", "mixed.json"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn excise_circle_matches_hochschild() {
    let dir = tempdir();
    let circle = fachom(
        &["excise", "circle(polynomial)", "-w", "3", "--format", "csv"],
        dir.path(),
    );
    assert!(circle.status.success());
    let hochschild = fachom(
        &["hochschild", "polynomial", "-w", "3", "--format", "csv"],
        dir.path(),
    );
    assert_eq!(stdout(&circle), stdout(&hochschild));
}

#[test]
fn excise_glue_collapses() {
    let dir = tempdir();
    let out = fachom(
        &[
            "excise",
            "glue(polynomial; polynomial; polynomial)",
            "-w",
            "2",
            "--format",
            "csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    for w in 0..=2 {
        assert!(text.contains(&format!("{w},0,1")), "{text}");
    }
}

#[test]
fn excise_unbound_piece_exits_4() {
    let dir = tempdir();
    let out = fachom(&["excise", "circle(B)", "--bindings", "b.json"], dir.path());
    // missing bindings file is an input error
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(dir.path().join("b.json"), "{}").unwrap();
    let out = fachom(&["excise", "circle(B)", "--bindings", "b.json"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn excise_parse_error_exits_2() {
    let dir = tempdir();
    let out = fachom(&["excise", "glue(M1; A"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("offset 11"), "{err}");
}

#[test]
fn verify_single_check_writes_report() {
    let dir = tempdir();
    let out = fachom(
        &[
            "verify",
            "hoch-duality:abelian1",
            "-w",
            "2",
            "--output",
            "report.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("hoch-duality:abelian1: PASS"));
    let report = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["pass"], serde_json::Value::Bool(true));
}

#[test]
fn verify_bad_selector_exits_2() {
    let dir = tempdir();
    let out = fachom(&["verify", "nonexistent-check"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn higher_hh_circle_matches_hochschild() {
    let dir = tempdir();
    let a = fachom(
        &["higher-hh", "circle", "polynomial", "-w", "2", "--format", "csv"],
        dir.path(),
    );
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = fachom(
        &["hochschild", "polynomial", "-w", "2", "--format", "csv"],
        dir.path(),
    );
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn free_dims_and_conf_agree_over_euclidean() {
    let dir = tempdir();
    let free = fachom(
        &["free-dims", "-n", "2", "x:0:1", "-w", "3", "--format", "csv"],
        dir.path(),
    );
    assert!(free.status.success(), "{}", String::from_utf8_lossy(&free.stderr));
    let conf = fachom(
        &["conf", "euclidean", "-n", "2", "x:0:1", "-w", "3", "--format", "csv"],
        dir.path(),
    );
    assert!(conf.status.success(), "{}", String::from_utf8_lossy(&conf.stderr));
    assert_eq!(stdout(&free), stdout(&conf));
}

#[test]
fn ce_chains_and_cochains_reflect() {
    let dir = tempdir();
    let chains = fachom(
        &["ce", "heisenberg", "chains", "-w", "3", "--format", "json"],
        dir.path(),
    );
    assert!(chains.status.success());
    let cochains = fachom(
        &["ce", "heisenberg", "cochains", "-w", "3", "--format", "json"],
        dir.path(),
    );
    assert!(cochains.status.success());
    let a: fachom_core::complexes::BettiTable =
        serde_json::from_str(&stdout(&chains)).unwrap();
    let b: fachom_core::complexes::BettiTable =
        serde_json::from_str(&stdout(&cochains)).unwrap();
    assert_eq!(a.reflect(), b);
}

#[test]
fn output_file_is_written() {
    let dir = tempdir();
    let out = fachom(
        &[
            "hochschild",
            "polynomial",
            "-w",
            "2",
            "--format",
            "csv",
            "--output",
            "table.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("table.csv")).unwrap();
    assert!(text.starts_with("weight,degree,dim"));
}

struct TempDir(std::path::PathBuf);

impl TempDir {
    fn path(&self) -> &Path {
        &self.0
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn tempdir() -> TempDir {
    let base = std::env::temp_dir().join(format!(
        "fachom-cli-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&base).unwrap();
    TempDir(base)
}
