use std::path::PathBuf;
use std::process::Command;

use prequant::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["prequant"];
    full.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(&full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prequant"))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn l0_text() {
    let (code, out, _) = run(&["l0", "PU:6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("l0 = 6  [p=2: 2 (pinned), p=3: 3 (computed)]\n  p=2 provenance: pinned("), "{out}");
    let (_, out, _) = run(&["l0", "PE6"]);
    assert_eq!(out, "l0 = 3  [p=3: 3 (computed)]\n");
}

#[test]
fn text_and_json_agree() {
    for g in ["PU:12", "SU:12/6", "PO:10", "Ss:12", "PE7", "SO:8", "PSp:3"] {
        let (_, text, _) = run(&["l0", g]);
        let (code, json, _) = run(&["--json", "l0", g]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let from_text: u64 = text.trim_start_matches("l0 = ").split_whitespace().next().unwrap().parse().unwrap();
        assert_eq!(v["l0"].as_u64().unwrap(), from_text, "{g}");
        let product: u64 = v["breakdown"].as_array().unwrap().iter().map(|b| b["order"].as_u64().unwrap()).product();
        assert_eq!(product, from_text);
    }
}

#[test]
fn table_json_is_stable() {
    let (code, a, _) = run(&["--json", "table", "--max-n", "12"]);
    let (_, b, _) = run(&["--json", "table", "--max-n", "12"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&a).unwrap();
    assert_eq!(rows.len(), prequant::Catalog::groups(12).len());
    let (code, text, _) = run(&["table", "--max-n", "4"]);
    assert_eq!(code, 0);
    assert!(text.lines().next().unwrap().starts_with("PU(2)"));
}

#[test]
fn phi_star_output() {
    let (code, out, _) = run(&["phi-star", "PU:3", "--prime", "3"]);
    assert_eq!((code, out.as_str()), (0, "x1⊗y2 - y2⊗x1\n"));
    let (_, out, _) = run(&["--ascii", "phi-star", "PU:3", "--prime", "3"]);
    assert_eq!(out, "x1 (x) y2 - y2 (x) x1\n");
    let (code, out, _) = run(&["phi-star", "PE7", "--prime", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("provenance: pinned("), "{out}");
    let (code, out, _) = run(&["--json", "phi-star", "SU:8/4", "--prime", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["phi_star"].is_null());
    assert_eq!(v["provenance"], "tor-formula");
}

#[test]
fn check_level_output() {
    let (code, out, _) = run(&["check-level", "SU:8/4", "--level", "3", "--genus", "2"]);
    assert_eq!((code, out.as_str()), (0, "NO (l0 = 2 does not divide 3)\n"));
    let (_, out, _) = run(&["check-level", "PU:6", "--level", "12"]);
    assert_eq!(out, "YES (l0 = 6 divides 12)\n");
    let (_, json, _) = run(&["--json", "check-level", "PU:6", "--level", "12", "--genus", "3"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!((v["admits"].as_bool(), v["genus"].as_u64()), (Some(true), Some(3)));
}

#[test]
fn verify_hopf_reports_checks() {
    let (code, out, _) = run(&["verify-hopf", "PU:3", "--prime", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PU(3) at p=3 through degree 8: "), "{out}");
    assert!(out.lines().next().unwrap().ends_with(", 0 failures"));
}

#[test]
fn marked_points_from_a_file() {
    let path = temp_file("two_barycenters.txt", "# two barycenter classes\n1/4 -1/4\n1/4 -1/4\n");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["marked-points", "--n", "2", "--level", "2", "--classes", p]);
    assert_eq!(code, 0);
    assert!(out.starts_with("YES"), "{out}");
    let (_, out, _) = run(&["marked-points", "--n", "2", "--level", "3", "--classes", p]);
    assert!(out.starts_with("NO"), "{out}");
    let path4 = temp_file("barycenter4.txt", "3/8 1/8 -1/8 -3/8\n");
    let (_, out, _) = run(&["marked-points", "--n", "4", "--level", "4", "--classes", path4.to_str().unwrap()]);
    assert!(out.starts_with("OPEN (necessary condition met, sufficiency not established)"), "{out}");
    let (code, _, err) = run(&["marked-points", "--n", "2", "--level", "2", "--classes", "/nonexistent/file"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));
}

#[test]
fn alcove_output() {
    let (code, out, _) = run(&["alcove", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "v0 = (0, 0, 0)\nv1 = (2/3, -1/3, -1/3)\nv2 = (1/3, 1/3, -2/3)\nbarycenter = (1/3, 0, -1/3)\n");
    let (_, out, _) = run(&["alcove", "--n", "3", "--reduce", "1 -1 0"]);
    assert_eq!(out, "(0, 0, 0)\n");
    let (code, _, _) = run(&["alcove", "--n", "3", "--reduce", "1 1 0"]);
    assert_eq!(code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&[]).0, 1);
    assert_eq!(run(&["l0"]).0, 1);
    assert_eq!(run(&["l0", "PO:6"]).0, 1);
    assert_eq!(run(&["l0", "nonsense"]).0, 1);
    assert_eq!(run(&["phi-star", "PU:6", "--prime", "5"]).0, 2);
    assert_eq!(run(&["check-level", "PU:6", "--level", "0"]).0, 1);
    assert_eq!(run(&["table", "--max-n", "1"]).0, 1);
    assert_eq!(run(&["alcove", "--n", "1"]).0, 2);
}

#[test]
fn binary_and_degree_cap_variable() {
    let out = binary().args(["l0", "PU:4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "l0 = 4  [p=2: 4 (computed)]\n");

    let big = binary().args(["l0", "PU:4"]).env(cli::DEGREE_CAP_VAR, "12").output().unwrap();
    assert_eq!(big.stdout, out.stdout);

    let bad = binary().args(["l0", "PU:4"]).env(cli::DEGREE_CAP_VAR, "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let small = binary().args(["l0", "PU:4"]).env(cli::DEGREE_CAP_VAR, "4").output().unwrap();
    assert_eq!(small.status.code(), Some(2));
}
