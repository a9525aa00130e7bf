//! End-to-end checks of the c1 binary: outputs, exit codes, error paths.

use std::process::Command;

fn c1(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_c1"))
        .args(args)
        .output()
        .expect("spawn c1");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn euler_projective_plane() {
    let (stdout, _, code) = c1(&["euler", "SU(3)", "SU{1,2}"]);
    assert_eq!(stdout.trim(), "3");
    assert_eq!(code, 0);
}

#[test]
fn index_projective_family() {
    let (stdout, _, code) = c1(&["index", "6", "1", "3"]);
    assert_eq!(stdout.trim(), "2");
    assert_eq!(code, 0);
    let (stdout, _, _) = c1(&["index", "6", "1", "3", "--format", "json"]);
    assert!(stdout.contains("\"projective\""));
}

#[test]
fn invariants_row() {
    let (stdout, _, code) = c1(&["invariants", "Sp(2)"]);
    assert!(stdout.contains("Sp(2)"));
    assert!(stdout.contains("10")); // dimension
    assert_eq!(code, 0);
}

#[test]
fn malformed_input_exits_2() {
    let (_, stderr, code) = c1(&["euler", "SU(", "T2"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("byte"), "diagnostic names the offset: {stderr}");
}

#[test]
fn json_errors_are_json() {
    let (stdout, _, code) = c1(&["euler", "Q9", "T2", "--format", "json"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid json");
    assert!(v.get("error").is_some());
    assert!(v.get("offset").is_some());
}

#[test]
fn verify_catalog_su3() {
    let (stdout, _, code) = c1(&["verify-catalog", "--family", "SU", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches("MATCH").count(), 3);
}

#[test]
fn verify_catalog_strict_flags_discrepancies() {
    let (_, _, code) = c1(&["verify-catalog", "--family", "Sp", "--strict"]);
    assert_eq!(code, 1, "the quarantined rows must trip strict mode");
    let (_, _, code) = c1(&["verify-catalog", "--family", "Sp"]);
    assert_eq!(code, 0, "without --strict the discrepancies are reported, not fatal");
}

#[test]
fn verify_catalog_json_is_valid() {
    let (stdout, _, code) = c1(&["verify-catalog", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid json");
    assert!(v["matches"].as_u64().unwrap() >= 20);
}

#[test]
fn diagram_check_pass_and_fail() {
    let (stdout, _, code) =
        c1(&["diagram-check", "S1[w(1,-1,0)] < SO(3), SU{1,2} < SU(3)"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("euler characteristic: 3"));

    // a non-sphere slice must fail the check
    let (stdout, _, code) = c1(&["diagram-check", "SU(2)@[1..2] < Sp(2), SU{2,2} < SU(4)"]);
    assert_eq!(code, 1, "{stdout}");
}

#[test]
fn maxrank_lists_sp2() {
    let (stdout, _, code) = c1(&["maxrank", "Sp(2)"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 4);
    assert!(stdout.contains("U(2)@[1..2] in Sp(2)"));
}

#[test]
fn cross_check_reports_complete() {
    let (stdout, _, code) = c1(&["cross-check", "SU", "3"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("5/5"));
}

#[test]
fn enumerate_respects_kmax_env() {
    let small = Command::new(env!("CARGO_BIN_EXE_c1"))
        .args(["enumerate", "SU(3)", "--format", "json"])
        .env("C1_KMAX", "1")
        .output()
        .unwrap();
    let big = Command::new(env!("CARGO_BIN_EXE_c1"))
        .args(["enumerate", "SU(3)", "--format", "json"])
        .env("C1_KMAX", "6")
        .output()
        .unwrap();
    assert!(small.stdout.len() < big.stdout.len());
}

#[test]
fn invariants_from_file() {
    let dir = std::env::temp_dir().join("c1-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("groups.txt");
    std::fs::write(&path, "SU(4) # a comment\n# full line comment\nG2\n").unwrap();
    let (stdout, _, code) = c1(&["invariants", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("SU(4)"));
    assert!(stdout.contains("G2"));
}
