use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON from {args:?}: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (v, code(&out))
}

#[test]
fn info_sl3() {
    let (v, c) = json(&["info", "sl3", "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["algebra"]["dim"], 8);
    assert_eq!(v["algebra"]["semisimple"], true);
    assert_eq!(v["result"]["center_dim"], 0);
    assert_eq!(v["command"], serde_json::json!(["info", "sl3", "--json"]));
}

#[test]
fn info_filiform_series() {
    let (v, c) = json(&["info", "filiform:6", "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["algebra"]["filiform"], true);
    assert_eq!(
        v["result"]["lower_central_series_dims"],
        serde_json::json!([6, 4, 3, 2, 1, 0])
    );
}

#[test]
fn certify_g2() {
    let (v, c) = json(&["locder", "certify", "g2", "--seed", "42", "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["verdict"], "certified-equal");
    assert_eq!(v["result"]["constraint_space_dim"], 14);
    assert_eq!(v["result"]["der_dim"], 14);
    assert_eq!(v["sampling"]["seed"], 42);

    let text = run(&["locder", "certify", "g2", "--seed", "42"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("certified-equal"));
}

#[test]
fn certify_gap_exits_one() {
    let (v, c) = json(&["locder", "certify", "so5", "--samples", "1", "--json"]);
    assert_eq!(c, 1);
    assert!(v["verdict"].as_str().unwrap().starts_with("gap("));
    assert_eq!(v["result"]["verdict"]["kind"], "gap");
}

#[test]
fn certify_rejects_nilpotent_input() {
    let out = run(&["locder", "certify", "heis3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("filiform"));
}

#[test]
fn filiform_demo_counterexample() {
    let out = run(&[
        "filiform", "demo", "--n", "4", "--alpha", "2", "--beta", "1", "--trials", "100", "--seed",
        "7",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("not a derivation"), "{text}");
    assert!(text.contains("100/100 witnesses verified"), "{text}");

    let (v, c) = json(&[
        "filiform", "demo", "--n", "6", "--alpha", "7/3", "--beta", "7/3", "--json",
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["is_derivation"], true);
}

#[test]
fn filiform_demo_solver_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f5.json");
    // model filiform plus [e2, e3] = e5 is still filiform
    std::fs::write(
        &path,
        r#"{"name":"f5x","dim":5,"brackets":[
            {"i":1,"j":2,"c":{"3":"1"}},{"i":1,"j":3,"c":{"4":"1"}},
            {"i":1,"j":4,"c":{"5":"1"}},{"i":2,"j":3,"c":{"5":"1"}}]}"#,
    )
    .unwrap();
    let spec = format!("@{}", path.display());
    let (v, c) = json(&[
        "filiform",
        "demo",
        "--n",
        "5",
        "--trials",
        "50",
        "--algebra",
        &spec,
        "--json",
    ]);
    assert_eq!(v["result"]["witness_method"], "solver");
    assert_eq!(v["result"]["is_derivation"], false);
    assert_eq!(v["result"]["witnesses_verified"], 50);
    assert_eq!(c, 0);
}

#[test]
fn roots_and_strings() {
    let (v, c) = json(&["roots", "g2", "--strings", "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 12);
    let longest = v["result"]["strings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["length"].as_u64().unwrap())
        .max();
    assert_eq!(longest, Some(4));

    let out = run(&["roots", "heis3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn der_basis_dump() {
    let (v, c) = json(&["der", "heis3", "--basis", "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["der_dim"], 6);
    assert_eq!(v["result"]["inner_dim"], 2);
    assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 6);
    assert_eq!(v["verdict"], "outer-derivations");
}

#[test]
fn deterministic_json() {
    let args = ["locder", "certify", "so5", "--seed", "9", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "filiform", "demo", "--n", "7", "--trials", "40", "--seed", "3", "--json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["info", "e8"],
        vec!["info", "filiform:2"],
        vec!["info", "@/nonexistent/file.json"],
        vec!["filiform", "demo", "--n", "2"],
        vec!["filiform", "demo", "--n", "4", "--alpha", "1/0"],
        vec!["bogus"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn validate_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("sl2.json");
    let out = run(&["export", "sl2", "--out-file", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let (v, c) = json(&["validate", good.to_str().unwrap(), "--json"]);
    assert_eq!((v["verdict"].as_str().unwrap(), c), ("valid", 0));
    let (v, c) = json(&["roots", &format!("@{}", good.display()), "--json"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"bad","dim":3,"brackets":[{"i":1,"j":2,"c":{"2":"2"}},
            {"i":1,"j":3,"c":{"3":"-2"}},{"i":2,"j":3,"c":{"1":"1","2":"1"}}]}"#,
    )
    .unwrap();
    let (v, c) = json(&["validate", bad.to_str().unwrap(), "--json"]);
    assert_eq!(c, 1);
    assert_eq!(v["result"]["violation"], serde_json::json!([1, 2, 3]));
    assert_eq!(code(&run(&["info", &format!("@{}", bad.display())])), 2);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&run(&["validate", garbage.to_str().unwrap()])), 2);
}
