//! The `ainf` binary end to end: exit codes, documents and reports.

use std::path::Path;
use std::process::{Command, Output};

use ainf_core::cli::AlgebraDocument;
use serde_json::Value;

fn ainf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn emit(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    let out = ainf(&["fixtures", "emit", name, "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    path.to_str().unwrap().to_string()
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json-report");
    let out = ainf(&all);
    (
        out.status.code().unwrap(),
        serde_json::from_slice(&out.stdout).expect("report is JSON"),
    )
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k = emit(dir.path(), "K");
    assert_eq!(ainf(&["validate", &k]).status.code(), Some(0));

    // μ¹μ¹ ≠ 0 is a failed check
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"field":"q","num_objects":1,"basis":[
            {"id":"x","degree":0,"source":1,"target":1},
            {"id":"y","degree":1,"source":1,"target":1},
            {"id":"z","degree":2,"source":1,"target":1}],
          "mu":[{"arity":1,"inputs":["x"],"output":[["1","y"]]},
                {"arity":1,"inputs":["y"],"output":[["3/2","z"]]}]}"#,
    )
    .unwrap();
    let out = ainf(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).contains("3/2*z"));

    // a degree error names the entry
    let wrong = dir.path().join("wrong.json");
    std::fs::write(
        &wrong,
        r#"{"field":"q","num_objects":1,"basis":[{"id":"x","degree":0,"source":1,"target":1}],
          "mu":[{"arity":1,"inputs":["x"],"output":[["1","x"]]}]}"#,
    )
    .unwrap();
    let out = ainf(&["validate", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stdout).contains("mu1"));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    let (code, report) = json_report(&["validate", garbage.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(report["error_kind"], "malformed-document");

    assert_eq!(ainf(&["validate", "missing.json"]).status.code(), Some(2));
    assert_eq!(ainf(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn suspend_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let an = emit(dir.path(), "an-2");
    let once = dir.path().join("once.json");
    let out = ainf(&["suspend", &an, "--adapted", "--out", once.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stdout));
    let doc = AlgebraDocument::from_json(&std::fs::read_to_string(&once).unwrap()).unwrap();
    assert_eq!(doc.basis.len(), 2 * 3 + 6);
    assert!(doc.subalgebra.is_some());
    // the suspended pair is again valid input
    assert_eq!(
        ainf(&["validate", once.to_str().unwrap()]).status.code(),
        Some(0)
    );

    // zero suspensions reproduce the document
    let out = ainf(&["suspend", &an, "--times", "0"]);
    let back = AlgebraDocument::from_json(&text(&out.stdout)).unwrap();
    let original = AlgebraDocument::from_json(&std::fs::read_to_string(&an).unwrap()).unwrap();
    assert_eq!(back, original);
}

#[test]
fn repeated_suspension_cohomology() {
    let dir = tempfile::tempdir().unwrap();
    let twice = dir.path().join("twice.json");
    let out = ainf(&[
        "suspend",
        "--fixture",
        "dual-1",
        "--times",
        "2",
        "--adapted",
        "--out",
        twice.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (code, report) = json_report(&["cohomology", twice.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dims = &report["cohomology"][0]["by_degree"];
    assert_eq!(dims, &serde_json::json!({"0": 1, "3": 1}));
}

#[test]
fn verification_pipelines() {
    let cases: &[&[&str]] = &[
        &["verify", "trivial-extension", "--fixture", "dual-2"],
        &["verify", "split", "--fixture", "an-2"],
        &["verify", "phi-sigma", "--fixture", "an-2"],
        &[
            "verify",
            "double-suspension",
            "--fixture",
            "rand",
            "--seed",
            "3",
        ],
        &[
            "verify",
            "lemma-alg",
            "--fixture",
            "an-2",
            "--field",
            "fp:3",
        ],
        &[
            "verify",
            "sandwich",
            "--fixture",
            "ball-2",
            "--field",
            "fp:2",
        ],
    ];
    for args in cases {
        let (code, report) = json_report(args);
        assert_eq!(code, 0, "{args:?}: {report}");
        assert_eq!(report["verdict"], "pass");
        assert!(report["checks"].as_array().is_some_and(|c| !c.is_empty()));
    }
    // sandwich needs a simplicial pair
    assert_eq!(
        ainf(&["verify", "sandwich", "--fixture", "K"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn simplicial_commands() {
    let out = ainf(&["simplicial", "double", "--fixture", "ball-1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = AlgebraDocument::from_json(&text(&out.stdout)).unwrap();
    assert!(doc.basis.iter().any(|b| b.id == "1" && b.unit));
    let out = ainf(&["simplicial", "pair", "--fixture", "ball-2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(AlgebraDocument::from_json(&text(&out.stdout))
        .unwrap()
        .subalgebra
        .is_some());
    let list = text(&ainf(&["fixtures", "list"]).stdout);
    assert!(list.contains("ball-<n>") && list.contains("dual-<n>"));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let args = ["verify", "double-suspension", "--fixture", "an-2"];
    let (_, a) = json_report(&args);
    let (_, b) = json_report(&args);
    assert_eq!(strip(a.clone()), strip(b));
    assert_eq!(a["input_digest"].as_str().map(str::len), Some(64));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = ainf(&[
        "cohomology",
        "--fixture",
        "K",
        "--json-report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stdout).contains("cohomology: pass"));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(saved["verdict"], "pass");
}
