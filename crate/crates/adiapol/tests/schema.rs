//! Every JSON output of the binary must conform to the schemas shipped in
//! `schemas/`, so downstream tooling can rely on the documented shapes.

use std::path::Path;
use std::process::Command;

fn schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("read {}: {e}", path.display()));
    serde_json::from_str(&text).expect("schema parses")
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_adiapol"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 stdout");
    assert!(
        !stdout.is_empty(),
        "no JSON on stdout for {args:?}; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("stdout of {args:?} parses: {e}"))
}

fn assert_conforms(schema_name: &str, instance: &serde_json::Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{schema_name} violations: {errors:#?}");
}

#[test]
fn trace_json_conforms() {
    let trace = run_json(&[
        "simulate",
        "--protocol",
        "level-crossing",
        "--omega0L",
        "30",
        "--steps",
        "500",
        "--format",
        "json",
    ]);
    assert_conforms("trace.schema.json", &trace);
}

#[test]
fn sweep_summary_json_conforms() {
    let plain = run_json(&[
        "sweep",
        "--protocol",
        "case-b",
        "--param",
        "area",
        "--range",
        "1:20",
        "--samples",
        "5",
        "--steps",
        "500",
        "--format",
        "json",
    ]);
    assert_conforms("sweep_summary.schema.json", &plain);

    let broadband = run_json(&[
        "sweep",
        "--protocol",
        "case-a",
        "--param",
        "wavelength",
        "--range",
        "0.8:1.2",
        "--samples",
        "5",
        "--delta-n",
        "10",
        "--lambda",
        "1",
        "--lambda-design",
        "1",
        "--steps",
        "2000",
        "--format",
        "json",
    ]);
    assert_conforms("sweep_summary.schema.json", &broadband);
    assert!(broadband.get("broadband").is_some());
}

#[test]
fn validation_report_json_conforms() {
    // Shape only: a coarse step budget keeps the run quick, and the report
    // structure is identical whether its checks pass or fail.
    let report = run_json(&["validate", "--steps", "2000"]);
    assert_conforms("validation_report.schema.json", &report);

    let filtered = run_json(&["validate", "--suite", "equivalence", "--steps", "2000"]);
    assert_conforms("validation_report.schema.json", &filtered);
}

#[test]
fn protocol_catalog_json_conforms() {
    let catalog = run_json(&["protocols"]);
    assert_conforms("protocols.schema.json", &catalog);
    assert_eq!(catalog.as_array().expect("array").len(), 4);
}
