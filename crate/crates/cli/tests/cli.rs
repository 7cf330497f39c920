use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

const GHZ: &str = r#"{"amplitudes": [1, 0, 0, 0, 0, 0, 0, 1], "label": "GHZ"}"#;
const W: &str = r#"{"amplitudes": [0, 1, 1, 0, 1, 0, 0, 0], "label": "W"}"#;
const PRODUCT: &str = r#"{"amplitudes": [1, 0, 0, 0, 0, 0, 0, 0]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slicckit"))
        .args(args)
        .env_remove("SLICCKIT_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", &format!("{name}.json")]
        .iter()
        .collect();
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}");
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn classify_ghz_and_w() {
    let out = run(&["classify", GHZ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_valid("classification_report", &v);
    assert_eq!(v["row"], "2g");
    assert_eq!(v["slocc"], "GHZ");
    assert_eq!(v["label"], "GHZ");
    assert_eq!(v["descriptor"]["single"]["A"]["nature"], "MixedIncoherent");
    assert_eq!(v["descriptor"]["bipartite"]["AB"]["n_incoherent"], 2);

    let v = json(&run(&["classify", W]));
    assert_valid("classification_report", &v);
    assert_eq!(v["row"], "3e");
    assert_eq!(v["slocc"], "W");
    assert_eq!(v["flip"]["mask"], "001");

    let v = json(&run(&["classify", PRODUCT]));
    assert_eq!(v["row"], "1");
    assert_eq!(v["slocc"], "FullySeparable");
}

#[test]
fn classify_reads_files_and_stdin() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(W.as_bytes()).unwrap();
    let out = run(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(json(&out)["row"], "3e");

    let mut child = Command::new(env!("CARGO_BIN_EXE_slicckit"))
        .args(["classify", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(GHZ.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["row"], "2g");
}

#[test]
fn report_roundtrips_amplitudes_exactly() {
    let doc = r#"{"amplitudes": [[0.1, 0.2], [0.3, -0.4], 0.5, 0.6, [0.7, 0.8], 0.9, [1.1, 1.3], 1.7]}"#;
    let v = json(&run(&["classify", doc]));
    let normalized = v["normalized"].clone();
    let again = serde_json::json!({ "amplitudes": normalized });
    let v2 = json(&run(&["classify", &again.to_string()]));
    // the normalized state is a fixed point up to the last bit of normalization
    for (a, b) in v["normalized"].as_array().unwrap().iter().zip(v2["normalized"].as_array().unwrap()) {
        for i in 0..2 {
            let (x, y) = (a[i].as_f64().unwrap(), b[i].as_f64().unwrap());
            assert!((x - y).abs() <= 4.0 * f64::EPSILON);
        }
    }
    let text = serde_json::to_string(&v["normalized"]).unwrap();
    let parsed: Vec<[f64; 2]> = serde_json::from_str(&text).unwrap();
    let reparsed: Vec<[f64; 2]> = serde_json::from_value(v["normalized"].clone()).unwrap();
    assert_eq!(parsed, reparsed);
}

#[test]
fn classify_error_codes() {
    let out = run(&["classify", "{not json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
    assert_eq!(code(&run(&["classify", r#"{"amplitudes": [1, 0, 0]}"#])), 2);
    assert_eq!(code(&run(&["classify", r#"{"amplitudes": [0, 0, 0, 0, 0, 0, 0, 0]}"#])), 3);
    assert_eq!(code(&run(&["classify", "/nonexistent/state.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let doc = r#"{"amplitudes": [[0.3, 0.1], 0.2, 0.5, [0.1, -0.7], 0.4, 0.25, 0.6, [0.05, 0.9]]}"#;
    let a = run(&["classify", doc]);
    let b = run(&["classify", doc]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["table"]).stdout, run(&["table"]).stdout);
}

#[test]
fn equiv_modes() {
    let scaled = r#"{"amplitudes": [2, 0, 0, 0, 0, 0, 0, 3]}"#;
    let out = run(&["equiv", GHZ, scaled]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_valid("equiv_verdict", &v);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["family"]["mask"], "000");
    assert_eq!(v["witness"]["A"]["kind"], "diagonal");
    assert_eq!(v["witness"]["A"]["entries"], serde_json::json!([[2.0, 0.0], [3.0, 0.0]]));
    assert_eq!(v["table"]["equivalent"], true);

    let out = run(&["equiv", "--mode", "licc", GHZ, scaled]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_valid("equiv_verdict", &v);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["reason"], "modulus mismatch");

    let v = json(&run(&["equiv", W, W]));
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["family"]["family"], 1);
    for p in ["A", "B", "C"] {
        assert_eq!(v["witness"][p]["entries"], serde_json::json!([[1.0, 0.0], [1.0, 0.0]]));
    }

    let v = json(&run(&["equiv", GHZ, W]));
    assert_valid("equiv_verdict", &v);
    assert_eq!(v["reason"], "support mismatch");
    assert_eq!(code(&run(&["equiv", GHZ, "{"])), 2);
}

#[test]
fn equiv_against_table_on_four_terms() {
    // Δ₁ = ad/bc is 2, 1 and 1/2 respectively
    let two = r#"{"amplitudes": [1, 1, 1, 2, 0, 0, 0, 0]}"#;
    let unit = r#"{"amplitudes": [2, 2, 2, 2, 0, 0, 0, 0]}"#;
    let reciprocal = r#"{"amplitudes": [1, 1, 2, 1, 0, 0, 0, 0]}"#;
    let v = json(&run(&["equiv", two, unit]));
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["table"]["equivalent"], false);
    let v = json(&run(&["equiv", two, reciprocal]));
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["table"]["equivalent"], true);
}

#[test]
fn batch_keeps_order_and_reports_line_errors() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{PRODUCT}\n{GHZ}\n\n{W}\n{{\"amplitudes\": [1, 0, 0, 0, 0, 0, 0]}}").unwrap();
    for jobs in ["1", "4"] {
        let out = run(&["batch", "--jobs", jobs, f.path().to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        let lines: Vec<Value> = String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines.len(), 4);
        for (l, row) in lines.iter().zip(["1", "2g", "3e"]) {
            assert_valid("classification_report", l);
            assert_eq!(l["row"], row);
        }
        assert_eq!(lines[3]["line"], 5);
        assert_eq!(lines[3]["code"], 2);
        assert!(String::from_utf8_lossy(&out.stderr).contains("4 states"));
    }
}

#[test]
fn batch_edge_cases() {
    let empty = tempfile::NamedTempFile::new().unwrap();
    let out = run(&["batch", empty.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 states"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "{{\"amplitudes\": [0, 0, 0, 0, 0, 0, 0, 0]}}\n[]").unwrap();
    let out = run(&["batch", bad.path().to_str().unwrap()]);
    assert_ne!(code(&out), 0);
}

#[test]
fn table_exports() {
    let out = run(&["table", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_valid("registry", &v);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 45);
    let mut per_terms = [0usize; 9];
    for r in rows {
        per_terms[r["terms"].as_u64().unwrap() as usize] += 1;
    }
    assert_eq!(&per_terms[1..], &[1, 7, 7, 14, 7, 7, 1, 1]);
    let g = rows.iter().find(|r| r["id"] == "2g").unwrap();
    assert_eq!(g["kernel"], serde_json::json!([]));
    assert_eq!(g["printed"], "No");
    let k = rows.iter().find(|r| r["id"] == "4k").unwrap();
    assert_eq!(k["ratios"]["Δ₁"], "ad/bc");

    let md = String::from_utf8(run(&["table", "--format", "markdown"]).stdout).unwrap();
    let seven = md.lines().find(|l| l.starts_with("| 7 |")).unwrap();
    assert!(seven.contains("Δ₁'=Δ₁, Δ₂'=Δ₂, Δ₈'=Δ₈"));
    assert_eq!(md.lines().count(), 47);
}

#[test]
fn check_suites() {
    let out = run(&["check", "--suite", "orbit", "--trials", "500"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_valid("consistency_report", &v);
    assert_eq!(v["trials"], 500);
    assert_eq!(v["agreements"], 500);
    assert!(String::from_utf8_lossy(&out.stderr).contains(" s)"));
    assert!(v.get("elapsed").is_none());

    let out = run(&["check", "--suite", "ranks", "--trials", "500"]);
    assert_eq!(code(&out), 0);
    assert_valid("consistency_report", &json(&out));

    let out = run(&["check", "--mutate-table", "--trials", "500"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_valid("consistency_report", &v);
    assert!(!v["disagreements"].as_array().unwrap().is_empty());
}

#[test]
fn check_seed_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_slicckit"))
        .args(["check", "--trials", "50"])
        .env("SLICCKIT_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&with_env)["seed"], 42);
    // an explicit flag wins over the environment
    let flag = Command::new(env!("CARGO_BIN_EXE_slicckit"))
        .args(["check", "--trials", "50", "--seed", "7"])
        .env("SLICCKIT_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&flag)["seed"], 7);
    assert_eq!(json(&run(&["check", "--trials", "50"]))["seed"], 1);
    let a = run(&["check", "--trials", "300", "--seed", "9", "--mutate-table"]);
    let b = run(&["check", "--trials", "300", "--seed", "9", "--mutate-table", "--jobs", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn state_documents_match_schema() {
    for doc in [GHZ, W, PRODUCT, r#"{"amplitudes": [[1, 0], 0, 0, 0, 0, 0, 0, [0, 1]]}"#] {
        assert_valid("state_document", &serde_json::from_str(doc).unwrap());
    }
    let bad: Value = serde_json::from_str(r#"{"amplitudes": [1, 0]}"#).unwrap();
    assert!(!schema("state_document").is_valid(&bad));
}
