use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

fn schurlab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_schurlab")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn claim<'a>(cert: &'a Value, id: &str) -> &'a Value {
    cert["claims"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no claim {id}"))
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let (code, _) = schurlab(&["example", "hexad", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn triangle_example_passes_in_both_formats() {
    let (code, text) = schurlab(&["example", "triangle", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("PASS       triangle-curve"));
    let (code, js) = schurlab(&["example", "triangle"]);
    assert_eq!(code, 0);
    let cert: Value = serde_json::from_str(&js).unwrap();
    assert_eq!(cert["schema"], "schurlab.certificate/1");
    assert_eq!(claim(&cert, "triangle-curve")["status"], "pass");
}

#[test]
fn generic_hexad_certifies_six_orthogonal_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({"field": {"type": "rational"}, "points": [["1","0","0"],["0","1","0"],["0","0","1"],["1","1","1"],["1","2","3"],["2","-1","5"]]});
    let input = write(dir.path(), "hexad.json", &doc);
    let (code, js) = schurlab(&["cubic", "--in", &input]);
    assert_eq!(code, 0);
    let cert: Value = serde_json::from_str(&js).unwrap();
    for i in 1..=6 {
        assert_eq!(claim(&cert, &format!("double-six-orthogonality-{i}"))["status"], "pass");
    }
    assert_eq!(claim(&cert, "schur-routes-agree")["status"], "pass");
}

#[test]
fn collinear_triple_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({"points": [["1","0","0"],["0","1","0"],["1","1","0"],["0","0","1"],["1","2","3"],["2","-1","5"]]});
    let input = write(dir.path(), "col.json", &doc);
    let (code, js) = schurlab(&["cubic", "--in", &input]);
    assert_eq!(code, 2);
    let cert: Value = serde_json::from_str(&js).unwrap();
    assert!(cert["error"]["message"].as_str().unwrap().contains("points 1, 2, 3 are collinear"));
}

#[test]
fn coconic_hexad_names_the_conic() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({"points": [["1","0","0"],["0","0","1"],["1","1","1"],["1","-1","1"],["1","2","4"],["1","3","9"]]});
    let input = write(dir.path(), "conic.json", &doc);
    let (code, js) = schurlab(&["cubic", "--in", &input]);
    assert_eq!(code, 2);
    let cert: Value = serde_json::from_str(&js).unwrap();
    assert_eq!(claim(&cert, "coconic-hexad")["required"], false);
    assert!(cert["error"]["message"].as_str().unwrap().contains("conic x0*x2 + -1*x1^2"));
}

#[test]
fn non_symmetric_pairing_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({"n": 2, "a": [[["1"],["0"]],[["0"],["1"]],[["0"],["0"]]], "b": [["1","2"],["0","1"]]});
    let input = write(dir.path(), "m.json", &doc);
    let (code, js) = schurlab(&["monad", "--in", &input]);
    assert_eq!(code, 2);
    let cert: Value = serde_json::from_str(&js).unwrap();
    assert_eq!(cert["error"]["kind"], "parse");
}

#[test]
fn missing_and_malformed_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = schurlab(&["monad", "--in", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{ not json").unwrap();
    let (code, js) = schurlab(&["logbundle", "--in", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(js.contains("\"kind\": \"parse\""));
}

#[test]
fn monad_artifact_reruns_as_input() {
    let (_, js) = schurlab(&["example", "triangle"]);
    let cert: Value = serde_json::from_str(&js).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tri.json", &cert["artifacts"]["monad_analysis"]["monad"]);
    let (code, js2) = schurlab(&["monad", "--in", &input]);
    assert_eq!(code, 0);
    let rerun: Value = serde_json::from_str(&js2).unwrap();
    assert_eq!(rerun["artifacts"]["monad_analysis"]["jlsk_curve"], cert["artifacts"]["monad_analysis"]["jlsk_curve"]);
}

#[test]
fn six_lines_give_a_sextic_with_six_dual_points() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json!({"field": {"type": "rational"}, "lines": [["1","0","0"],["0","1","0"],["0","0","1"],["1","1","1"],["1","2","3"],["2","-1","5"]]});
    let input = write(dir.path(), "lines.json", &doc);
    let (code, js) = schurlab(&["logbundle", "--in", &input]);
    assert_eq!(code, 0);
    let cert: Value = serde_json::from_str(&js).unwrap();
    assert_eq!(cert["artifacts"]["monad_analysis"]["jlsk_curve"]["degree"], 6);
    assert_eq!(claim(&cert, "dual-points-in-support")["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn unknown_example_is_rejected_by_the_parser() {
    let (code, _) = schurlab(&["example", "nope"]);
    assert_eq!(code, 2);
}
