use std::path::PathBuf;
use std::process::Command;

use dividekit::cli::run;
use dividekit::generators::chebyshev_divide;
use dividekit::invariants::record_from_divide;

fn dividekit(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dividekit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dividekit-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn generate_then_invariants_round_trips() {
    let dir = scratch_dir("roundtrip");
    let file = dir.join("c37.divide");
    let (code, out, _) = dividekit(&["generate", "chebyshev", "3", "7", "--out", file.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let (code, out, _) = dividekit(&["invariants", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = record_from_divide(&chebyshev_divide(3, 7).unwrap()).unwrap();
    let expected = format!("mu: {}\ndelta: {}\nregions: {}\nbranches: {}\ngenus: {}\n", r.mu, r.delta, r.r, r.b, r.genus);
    assert_eq!(out, expected);
}

#[test]
fn a2_invariants() {
    let dir = scratch_dir("a2");
    let file = dir.join("a2.divide");
    std::fs::write(&file, chebyshev_divide(2, 3).unwrap().to_text()).unwrap();
    let (code, out, _) = dividekit(&["invariants", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("mu: 2\n"));
    assert!(out.contains("genus: 1\n"));
    let (_, out, _) = dividekit(&["fiber", file.to_str().unwrap()]);
    assert_eq!(out, "genus: 1\nboundary: 1\nchi: -1\npolygons: 4\n");
    let (_, out, _) = dividekit(&["winding", file.to_str().unwrap(), "--curve", "v0"]);
    assert!(out.contains("winding: 0\n"));
}

#[test]
fn assemble_emits_a_certificate() {
    let dir = scratch_dir("assemble");
    let file = dir.join("c310.divide");
    dividekit(&["generate", "chebyshev", "3", "10", "--out", file.to_str().unwrap()]);
    let (code, out, _) = dividekit(&["assemble", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["core_type"], "(1,2,6)");
    assert_eq!(v["final"]["genus"], 9);
    assert!(v.get("moves").is_none());
    let (_, again, _) = dividekit(&["assemble", file.to_str().unwrap()]);
    assert_eq!(out, again);
}

#[test]
fn validate_reports_error_codes() {
    let dir = scratch_dir("validate");
    for (id, code) in [("counterexample-left", "DisconnectedDiagram"), ("counterexample-right", "DisjointBranches")] {
        let file = dir.join(format!("{id}.divide"));
        dividekit(&["generate", "fixture", id, "--out", file.to_str().unwrap()]);
        let (exit, _, err) = dividekit(&["validate", file.to_str().unwrap()]);
        assert_eq!(exit, 1);
        assert!(err.starts_with(&format!("error: {code}")), "{err}");
    }
}

#[test]
fn toggle_a_fixture_file() {
    let dir = scratch_dir("toggle");
    let file = dir.join("case2.json");
    dividekit(&["generate", "fixture", "case2", "--out", file.to_str().unwrap()]);
    let (code, out, err) = dividekit(&["toggle", file.to_str().unwrap(), "--script", "c4->c3; c2->c0"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tripod"], "(1,4,4)");
    for bad in ["c4->c9", "x->c0"] {
        let (code, _, err) = dividekit(&["toggle", file.to_str().unwrap(), "--script", bad]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: BadParams"), "{err}");
    }
}

#[test]
fn graph_output_is_stable() {
    let dir = scratch_dir("graph");
    let file = dir.join("l4.divide");
    dividekit(&["generate", "lines", "4", "--out", file.to_str().unwrap()]);
    let (_, json, _) = dividekit(&["graph", file.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 10);
    assert_eq!(v["labels"][9], "inf");
    let (_, dot, _) = dividekit(&["graph", file.to_str().unwrap(), "--format", "dot"]);
    assert!(dot.starts_with("graph lambda {\n  0 [label=\"s0\"];"));
    assert_eq!(dividekit(&["graph", file.to_str().unwrap(), "--format", "dot"]).1, dot);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(dividekit(&["frobnicate"]).0, 2);
    assert_eq!(dividekit(&["invariants"]).0, 2);
    let (code, _, err) = dividekit(&["invariants", "/nonexistent/x.divide"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: Io: "));
    let (code, _, err) = dividekit(&["generate", "chebyshev", "1", "3"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: BadParams: "));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dividekit");
    let out = Command::new(bin).args(["generate", "lines", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(!out.stdout.is_empty());
    let out = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
