use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const IDEM: &str =
    r#"{"field": {"p": 2}, "dim": 1, "basis": ["b"], "products": [[0, 0, [0, "1"]]]}"#;

const NONASSOC: &str = r#"{"field": "Q", "dim": 2, "basis": ["x", "y"],
    "products": [[0, 0, [1, "1"]], [1, 0, [0, "1"]]]}"#;

// a² = 0, b² = b, φ = ψ = χ = 1
const VALID: &str = r#"{
    "A": {"field": {"p": 2}, "dim": 1, "basis": ["a"], "products": []},
    "B": {"field": {"p": 2}, "dim": 1, "basis": ["b"], "products": [[0, 0, [0, "1"]]]},
    "phi": [[0, 0, 0, "1"]], "psi": [[0, 0, 0, "1"]], "chi": [[0, 0, 0, "1"]]}"#;

// φ = 1, ψ = 0, χ = 1 breaks the χ cocycle equation
const INVALID: &str = r#"{
    "A": {"field": {"p": 2}, "dim": 1, "basis": ["a"], "products": []},
    "B": {"field": {"p": 2}, "dim": 1, "basis": ["b"], "products": [[0, 0, [0, "1"]]]},
    "phi": [[0, 0, 0, "1"]], "psi": [], "chi": [[0, 0, 0, "1"]]}"#;

const NON_ABELIAN: &str = r#"{
    "A": {"field": {"p": 2}, "dim": 1, "basis": ["a"], "products": [[0, 0, [0, "1"]]]},
    "B": {"field": {"p": 2}, "dim": 1, "basis": ["b"], "products": []},
    "phi": [], "psi": [], "chi": []}"#;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }
}

fn nabext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nabext"))
        .args(args)
        .output()
        .unwrap()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = nabext(args);
    let code = out.status.code().unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, doc)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_assoc_verdicts() {
    let d = Dir::new();
    let (code, doc) = run(&["check-assoc", s(&d.file("idem.json", IDEM))]);
    assert_eq!(code, 0);
    assert_eq!(doc["associative"], true);
    let (code, doc) = run(&["check-assoc", s(&d.file("bad.json", NONASSOC))]);
    assert_eq!(code, 1);
    assert_eq!(doc["associative"], false);
    assert_eq!(doc["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn mc_check_valid_and_invalid() {
    let d = Dir::new();
    let (code, doc) = run(&["mc-check", s(&d.file("c.json", VALID))]);
    assert_eq!(code, 0);
    assert_eq!(doc["maurer_cartan"], true);
    let (code, doc) = run(&["mc-check", s(&d.file("bad.json", INVALID))]);
    assert_eq!(code, 1);
    assert_eq!(doc["cocycle"], false);
    assert_eq!(doc["maurer_cartan"], false);
    let first = &doc["violations"][0];
    assert_eq!(first["equation"], "chi_cocycle");
    assert_eq!(first["witness_names"], serde_json::json!(["b", "b", "b"]));
}

#[test]
fn build_then_extract_round_trips() {
    let d = Dir::new();
    let c = d.file("c.json", VALID);
    let ext = d.0.path().join("ext.json");
    let out = nabext(&["build-extension", s(&c), "--output", ext.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let (code, back) = run(&["extract-cocycle", ext.to_str().unwrap()]);
    assert_eq!(code, 0);
    let orig: Value = serde_json::from_str(VALID).unwrap();
    for key in ["phi", "psi", "chi"] {
        assert_eq!(back[key], orig[key], "{key}");
    }
    let sec = d.file("s.json", r#"{"s": [[0, 0, "1"], [1, 0, "1"]]}"#);
    let (code, other) = run(&[
        "extract-cocycle",
        ext.to_str().unwrap(),
        "--section",
        s(&sec),
    ]);
    assert_eq!(code, 0);
    let other_path = d.file("c2.json", &other.to_string());
    // β = s − s' relates the two extracted cocycles
    let beta = d.file("beta.json", r#"{"beta": [[0, 0, "1"]]}"#);
    let (code, _) = run(&["equiv-check", s(&c), s(&other_path), "--beta", s(&beta)]);
    assert_eq!(code, 0);
}

#[test]
fn gauge_and_equivalence_search() {
    let d = Dir::new();
    let c = d.file("c.json", VALID);
    let beta = d.file("beta.json", r#"{"beta": [[0, 0, "1"]]}"#);
    let out = nabext(&["gauge", s(&c), s(&beta)]);
    assert_eq!(out.status.code(), Some(0));
    let moved = d.file("moved.json", std::str::from_utf8(&out.stdout).unwrap());
    let (code, doc) = run(&["equiv-check", s(&c), s(&moved)]);
    assert_eq!(code, 0);
    assert_eq!(doc["beta"], serde_json::json!([[0, 0, "1"]]));
    // χ = 0 with the same actions is reached by β(b) = a; the zero cocycle is not
    let zero = d.file("zero.json", &VALID.replace(r#"[[0, 0, 0, "1"]]"#, "[]"));
    let (code, doc) = run(&["equiv-check", s(&c), s(&zero)]);
    assert_eq!(code, 1);
    assert_eq!(doc["equivalent"], false);
}

#[test]
fn extension_equivalence_via_theta() {
    let d = Dir::new();
    let c = d.file("c.json", VALID);
    let (_, ext) = run(&["build-extension", s(&c)]);
    let e = d.file("e.json", &ext.to_string());
    let id = d.file(
        "id.json",
        r#"{"rows": 2, "cols": 2, "entries": [[0, 0, "1"], [1, 1, "1"]]}"#,
    );
    let (code, doc) = run(&["equiv-check", s(&e), s(&e), "--theta", s(&id)]);
    assert_eq!(code, 0);
    assert_eq!(doc["equivalent"], true);
    let swap = d.file(
        "sw.json",
        r#"{"rows": 2, "cols": 2, "entries": [[0, 1, "1"], [1, 0, "1"]]}"#,
    );
    let (code, doc) = run(&["equiv-check", s(&e), s(&e), "--theta", s(&swap)]);
    assert_eq!(code, 1);
    assert_eq!(doc["equivalent"], false);
}

#[test]
fn census_report_and_determinism() {
    let args = [
        "census", "--field", "F2", "--dimA", "1", "--dimB", "1", "--a2", "zero", "--b2", "idem",
    ];
    let one = nabext(&args);
    assert_eq!(one.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(doc["partition"]["partitions_agree"], true);
    assert_eq!(doc["num_cocycles"], doc["num_extensions"]);
    let mut more = args.to_vec();
    more.extend(["--jobs", "4"]);
    assert_eq!(nabext(&more).stdout, one.stdout);
    let text = nabext(&[&args[..], &["--format", "text"]].concat());
    assert!(String::from_utf8(text.stdout)
        .unwrap()
        .contains("partitions_agree"));
}

#[test]
fn census_sampling_and_budget() {
    let base = [
        "census", "--field", "F2", "--dimA", "2", "--dimB", "1", "--budget", "100",
    ];
    let (code, _) = run(&base);
    assert_eq!(code, 2);
    let (code, doc) = run(&[&base[..], &["--samples", "50", "--seed", "3"]].concat());
    assert_eq!(code, 0);
    assert_eq!(doc["mode"]["sampled"]["samples"], 50);
    assert_eq!(
        run(&["census", "--field", "Q", "--dimA", "1", "--dimB", "1"]).0,
        2
    );
}

#[test]
fn maps_and_brackets() {
    let d = Dir::new();
    let alg = d.file("idem.json", IDEM);
    // the identity 1-cochain: δ id = −m on an idempotent line over F2 is m
    let id = d.file(
        "id.json",
        r#"{"arity": 1, "source_dim": 1, "target_dim": 1, "entries": [[0, 0, "1"]]}"#,
    );
    let (code, doc) = run(&["hochschild-delta", s(&id), s(&alg)]);
    assert_eq!(code, 0);
    assert_eq!(doc["arity"], 2);
    assert_eq!(doc["entries"], serde_json::json!([[0, 0, 0, "1"]]));
    let m = d.file(
        "m.json",
        r#"{"field": {"p": 3}, "arity": 2, "source_dim": 1, "target_dim": 1, "entries": [[0, 0, 0, "1"]]}"#,
    );
    let (code, doc) = run(&["bracket", s(&m), s(&m)]);
    assert_eq!(code, 0);
    assert_eq!(doc["arity"], 3);
    assert_eq!(doc["entries"], serde_json::json!([]));
    // [m, id] = (2 − 1) m
    let (code, doc) = run(&["bracket", s(&m), s(&id)]);
    assert_eq!(code, 0);
    assert_eq!(doc["entries"], serde_json::json!([[0, 0, 0, "1"]]));
}

#[test]
fn abelianize_outcomes() {
    let d = Dir::new();
    let (code, doc) = run(&["abelianize", s(&d.file("c.json", VALID))]);
    assert_eq!(code, 0);
    assert_eq!(doc["delta_chi_vanishes"], true);
    let (code, _) = run(&["abelianize", s(&d.file("n.json", NON_ABELIAN))]);
    assert_eq!(code, 2);
    let (code, doc) = run(&["abelianize", s(&d.file("bad.json", INVALID))]);
    assert_eq!(code, 1);
    assert_eq!(doc["valid_cocycle"], false);
}

#[test]
fn input_errors_exit_two() {
    let d = Dir::new();
    let broken = d.file("broken.json", "{\"field\": ");
    let out = nabext(&["check-assoc", s(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("malformed JSON"));
    let idem = d.file("idem.json", IDEM);
    let out = nabext(&["check-assoc", s(&idem), "--field", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("field mismatch"));
    let missing = d.file("m.json", r#"{"field": "Q", "products": []}"#);
    assert_eq!(nabext(&["check-assoc", s(&missing)]).status.code(), Some(2));
    assert_eq!(
        nabext(&["check-assoc", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
}
