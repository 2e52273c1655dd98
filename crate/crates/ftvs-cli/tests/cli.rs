//! End-to-end runs of the ftvs binary: exit codes, report shape, and the
//! scenario files shipped in scenarios/.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ftvs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftvs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn temp_scenario(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ftvs-test-{}-{name}", std::process::id()));
    std::fs::write(&path, body).expect("temp scenario writes");
    path
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a json report")
}

#[test]
fn passing_scenario_files_exit_zero() {
    for name in ["unit-ball.json", "weak-pair.json", "topology-family.json"] {
        let out = ftvs(&["check", scenario_path(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name} should pass");
        let report = stdout_json(&out);
        assert_eq!(report["overall_pass"], serde_json::json!(true));
        assert_eq!(report["schema_version"], serde_json::json!(1));
        assert!(!report["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn failing_check_exits_one_not_two() {
    let path = temp_scenario(
        "nonconvex.json",
        r#"{
            "name": "nonconvex",
            "domain": { "bounds": [[-2.0, 2.0]], "resolution": [41] },
            "sets": {
                "split": { "join": { "children": [
                    { "open_box": { "bounds": [[-1.5, -0.5]] } },
                    { "open_box": { "bounds": [[0.5, 1.5]] } }
                ] } }
            },
            "checks": [ { "type": "convex", "set": "split" } ]
        }"#,
    );
    let out = ftvs(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["overall_pass"], serde_json::json!(false));
    let _ = std::fs::remove_file(path);
}

#[test]
fn unknown_fields_are_rejected_by_name() {
    let path = temp_scenario(
        "unknown-top.json",
        r#"{
            "name": "bad",
            "bogus_top": 1,
            "domain": { "bounds": [[-1.0, 1.0]], "resolution": [11] },
            "checks": [ { "type": "lsc", "set": "a" } ]
        }"#,
    );
    let out = ftvs(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("bogus_top"), "stderr names the field: {stderr}");
    let _ = std::fs::remove_file(path);

    let path = temp_scenario(
        "unknown-inner.json",
        r#"{
            "name": "bad",
            "domain": { "bounds": [[-1.0, 1.0]], "resolution": [11] },
            "sets": { "a": { "constant": { "value": 0.5 } } },
            "checks": [ { "type": "lsc", "set": "a", "stray_knob": true } ]
        }"#,
    );
    let out = ftvs(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("stray_knob"), "stderr names the field: {stderr}");
    let _ = std::fs::remove_file(path);
}

#[test]
fn unknown_check_type_lists_the_catalog() {
    let path = temp_scenario(
        "unknown-type.json",
        r#"{
            "name": "bad",
            "domain": { "bounds": [[-1.0, 1.0]], "resolution": [11] },
            "checks": [ { "type": "frobnicate" } ]
        }"#,
    );
    let out = ftvs(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("frobnicate") && stderr.contains("convex"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn undefined_references_are_config_errors() {
    let path = temp_scenario(
        "undefined-set.json",
        r#"{
            "name": "bad",
            "domain": { "bounds": [[-1.0, 1.0]], "resolution": [11] },
            "checks": [ { "type": "lsc", "set": "ghost" } ]
        }"#,
    );
    let out = ftvs(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ghost"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn missing_file_is_a_config_error() {
    let out = ftvs(&["check", "/no/such/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_demo_is_a_config_error_naming_alternatives() {
    let out = ftvs(&["demo", "no-such-demo"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("euclidean-equivalence") && stderr.contains("norm-comparison"));
}

#[test]
fn demos_run_with_expected_outcomes() {
    for name in ["euclidean-equivalence", "product-topology", "polynomial-deltas"] {
        let out = ftvs(&["demo", name]);
        assert_eq!(out.status.code(), Some(0), "{name} should pass");
        assert_eq!(stdout_json(&out)["overall_pass"], serde_json::json!(true));
    }

    let out = ftvs(&["demo", "polynomial-deltas"]);
    let report = stdout_json(&out);
    let notes = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| c["reports"].as_array().unwrap())
        .flat_map(|r| r["notes"].as_array().unwrap())
        .map(|n| n.as_str().unwrap().to_string())
        .collect::<Vec<_>>()
        .join("\n");
    assert!(notes.contains("combination branch"));
    assert!(notes.contains("degeneracy"));
}

#[test]
fn norm_comparison_demo_splits_on_the_needle() {
    let out = ftvs(&["demo", "norm-comparison"]);
    assert_eq!(out.status.code(), Some(1), "the demo exhibits genuine failures");
    let report = stdout_json(&out);
    let verdict = |label: &str| -> bool {
        report["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["label"] == label)
            .unwrap_or_else(|| panic!("check {label} present"))["passed"]
            .as_bool()
            .unwrap()
    };
    assert!(verdict("needle/crisp"));
    assert!(!verdict("needle/star"));
    assert!(verdict("open-interval/crisp"));
    assert!(!verdict("closed-interval/crisp"));
    assert!(!verdict("singleton/star"));
}

#[test]
fn text_format_and_out_file_work() {
    let out_path = std::env::temp_dir()
        .join(format!("ftvs-test-{}-report.json", std::process::id()));
    let out = ftvs(&[
        "check",
        scenario_path("topology-family.json").to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS]") && text.contains("overall: PASS"));

    let out = ftvs(&[
        "check",
        scenario_path("topology-family.json").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written["scenario"], serde_json::json!("topology-family"));
    let _ = std::fs::remove_file(out_path);
}

#[test]
fn list_checks_names_every_kind() {
    let out = ftvs(&["list-checks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for kind in [
        "convex",
        "balanced",
        "absorbing",
        "vanishing-dilations",
        "felbin-axioms",
        "katsaras-axioms",
        "base-equivalence",
        "neighborhood-of",
        "linearly-open",
        "absorbs",
        "bounded",
        "topology-axioms",
        "hausdorff",
        "lsc",
        "weakly-lsc",
        "net-convergence",
        "decompose",
        "hausdorff-witness",
        "weakly-continuous",
        "weak-seminorm",
        "weakly-bounded",
        "product-consistency",
    ] {
        assert!(text.contains(kind), "listing includes {kind}");
    }
}

#[test]
fn version_flag_reports_the_package_version() {
    let out = ftvs(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn config_echo_contains_filled_defaults() {
    let out = ftvs(&["check", scenario_path("weak-pair.json").to_str().unwrap()]);
    let report = stdout_json(&out);
    let nc = report["config"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["type"] == "net-convergence")
        .expect("net-convergence echoed");
    assert_eq!(nc["scalar_tol"], serde_json::json!(0.05));
    assert!(!nc["grades"].as_array().unwrap().is_empty());
}
