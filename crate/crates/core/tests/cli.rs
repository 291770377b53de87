use std::process::{Command, Output};

use serde_json::Value;

fn permlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlab"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lattice_verify_reports_sizes() {
    let out = permlab(&["lattice", "verify", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["witness"]["size"], 215);
    assert_eq!(v["seed"], 0);
    assert!(v["version"].is_string() && v["caps"]["level"].is_u64());
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);

    let v = json(&permlab(&["lattice", "verify", "0"]));
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["witness"]["size"], 1);
}

#[test]
fn dot_export_of_a2() {
    let out = permlab(&["lattice", "build", "2", "--format", "dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 6);
    assert_eq!(dot.matches(" -> ").count(), 8);
}

#[test]
fn reports_are_reproducible() {
    let args = ["constructions", "test", "--size", "6", "--seed", "11"];
    let a = permlab(&args);
    let b = permlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = permlab(&[
        "constructions",
        "test",
        "--size",
        "6",
        "--seed",
        "11",
        "--only",
        "union-mov",
    ]);
    let full = json(&a);
    let one = json(&c);
    let pick = |v: &Value| {
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["check"] == "union-mov")
            .cloned()
            .unwrap()
    };
    assert_eq!(pick(&full), pick(&one));
}

#[test]
fn vacuous_and_selected_runs() {
    let v = json(&permlab(&["constructions", "test", "--size", "0"]));
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["cases"], 0);
    let v = json(&permlab(&[
        "constructions",
        "test",
        "--only",
        "diagonal",
        "--size",
        "3",
    ]));
    assert_eq!(v["checks"][0]["check"], "diagonal");
    assert_eq!(v["checks"][0]["cases"], 30);
}

#[test]
fn model_commands() {
    let out = permlab(&[
        "model",
        "fraenkel",
        "transitivity",
        "--atoms",
        "8",
        "--support",
        "3",
        "--k",
        "3",
    ]);
    assert!(out.status.success());
    let out = permlab(&[
        "model",
        "mostowski",
        "witness",
        "--fix",
        "0,1",
        "--move",
        "1/2",
        "--format",
        "text",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1/2 ↦ 2/3"), "{text}");
    let v = json(&permlab(&["model", "shelah", "closure", "--fixture", "f1"]));
    assert_eq!(v["witness"]["closure"].as_array().unwrap().len(), 5);
    let v = json(&permlab(&["model", "n23", "--blocks", "2"]));
    assert_eq!(v["witness"]["checked"], 36);
}

#[test]
fn failing_check_exits_with_one() {
    // Moving a point that must stay fixed is impossible.
    let out = permlab(&[
        "model",
        "mostowski",
        "witness",
        "--fix",
        "0,1",
        "--move",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert!(v["counterexample"].is_object());
}

#[test]
fn caps_and_bad_input_exit_with_two() {
    for args in [
        &["lattice", "verify", "6"][..],
        &["lattice", "verify", "4", "--cap", "3"],
        &["constructions", "test", "--size", "9"],
        &["constructions", "test", "--only", "nothing"],
        &["model", "shelah", "closure", "--fixture", "f9"],
        &["lattice", "export", "2"],
    ] {
        let out = permlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.json");
    let out = permlab(&["lattice", "export", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["size"], 19);
    assert_eq!(v["elements"].as_array().unwrap().len(), 19);
}
