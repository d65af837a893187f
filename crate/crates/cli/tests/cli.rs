use std::process::{Command, Output};

use serde_json::Value;

fn redei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redei"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn analyze_square_map_over_8() {
    let out = redei(&[
        "analyze", "--p", "2", "--h", "1", "--n", "3", "--coeffs", "0,1,0", "--kind", "both",
        "--verify", "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_match"], true);
    assert_eq!(v["linear_set"]["classification"], "scattered");
    assert_eq!(
        v["pointsets"][0]["spectrum"],
        serde_json::json!({"1": 44, "3": 28, "7": 1})
    );
    assert_eq!(
        v["codes"][0]["A"],
        serde_json::json!({"0": 1, "8": 7, "12": 196, "14": 308})
    );
    assert_eq!(
        v["codes"][1]["A"],
        serde_json::json!({"0": 1, "8": 315, "10": 196})
    );
    assert_eq!(v["codes"][1]["brute_force_match"], true);
    assert_eq!(v["pointsets"][1]["arc"], "hyperoval");
}

#[test]
fn analyze_trace_club_family() {
    let out = redei(&[
        "analyze",
        "--family",
        "trace_club",
        "--p",
        "2",
        "--h",
        "1",
        "--n",
        "4",
        "--r",
        "2",
        "--t",
        "2",
        "--s",
        "1",
        "--kind",
        "c",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["family"]["params"],
        serde_json::json!({"s": 1, "r": 2, "t": 2})
    );
    assert_eq!(v["linear_set"]["classification"], "club(2)");
    assert_eq!(v["pointsets"][0]["arc"]["km_arc"]["i"], 2);
    assert_eq!(v["codes"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_identity_is_degenerate() {
    let out = redei(&[
        "analyze", "--p", "2", "--h", "1", "--n", "3", "--coeffs", "1,0,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["pointsets"][0]["skipped"]
        .as_str()
        .unwrap()
        .contains("minimum weight"));
    assert!(v["codes"][0]["skipped"].is_string());
    assert!(v["codes"][1]["notes"][0]
        .as_str()
        .unwrap()
        .contains("closed form skipped"));
}

#[test]
fn default_search_is_echoed() {
    let out = redei(&[
        "analyze", "--family", "binomial", "--p", "3", "--n", "4", "--kind", "b",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["family"]["params"]["delta"].is_u64());
    assert_eq!(v["linear_set"]["size"], 40);
}

#[test]
fn equiv_distinct_monomials() {
    let out = redei(&[
        "equiv",
        "--p",
        "2",
        "--h",
        "1",
        "--n",
        "5",
        "--coeffs-a",
        "0,1,0,0,0",
        "--coeffs-b",
        "0,0,1,0,0",
        "--codes",
        "b",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "inequivalent");
    assert_eq!(v["codes"][0]["verdict"], "inequivalent");
    let out = redei(&[
        "equiv",
        "--p",
        "2",
        "--n",
        "5",
        "--coeffs-a",
        "0,1,0,0,0",
        "--coeffs-b",
        "0,0,0,0,1",
        "--linear",
    ]);
    let v = json(&out);
    assert_eq!(v["verdict"], "equivalent");
    assert!(v["witness"]["matrix"].is_array());
}

#[test]
fn class_over_8() {
    let out = redei(&[
        "class", "--p", "2", "--h", "1", "--n", "3", "--coeffs", "0,1,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["s"], 1);
    assert_eq!(v["enumerated"], 512);
    assert_eq!(v["representatives"], serde_json::json!(["0,1,0"]));
}

#[test]
fn exit_codes() {
    assert_eq!(
        redei(&["analyze", "--p", "2", "--n", "3", "--coeffs", "1,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        redei(&["analyze", "--p", "2", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        redei(&["analyze", "--p", "4", "--n", "3", "--coeffs", "0,1,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        redei(&["analyze", "--family", "monomial", "--p", "2", "--n", "4", "--s", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        redei(&["class", "--p", "2", "--n", "5", "--coeffs", "0,1,0,0,0"])
            .status
            .code(),
        Some(3)
    );
    let out = redei(&[
        "equiv",
        "--p",
        "2",
        "--n",
        "3",
        "--coeffs-a",
        "0,1,0",
        "--coeffs-b",
        "0,0,1",
        "--budget",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "inconclusive-budget");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "analyze",
        "--p",
        "3",
        "--n",
        "3",
        "--family",
        "dual_basis_club",
    ];
    let a = Command::new(env!("CARGO_BIN_EXE_redei"))
        .args(args)
        .env("REDEI_WORKERS", "1")
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_redei"))
        .args(args)
        .env("REDEI_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = redei(&[
        "analyze",
        "--p",
        "2",
        "--n",
        "3",
        "--coeffs",
        "0,1,0",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["polynomial"], "0,1,0");
    let out = redei(&[
        "analyze", "--p", "2", "--n", "3", "--coeffs", "0,1,0", "--format", "csv", "--kind", "c",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "kind,weight,count\nC,0,1\nC,8,315\nC,10,196\n"
    );
    let out = redei(&[
        "class", "--p", "2", "--n", "3", "--coeffs", "0,1,0", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.json");
    std::fs::write(
        &path,
        r#"{"entries": [
            {"p": 2, "n": 3, "family": "monomial", "params": {"s": 1}},
            {"p": 2, "n": 4, "family": "trace_club", "params": {"r": 2, "t": 2, "s": 1}},
            {"p": 3, "n": 4, "family": "two_points_trace"},
            {"p": 2, "n": 3, "coeffs": "1,1,1"}
        ]}"#,
    )
    .unwrap();
    let out = redei(&["sweep", "--grid", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["passed"], 4);
    assert_eq!(v["summary"]["checks"]["brute_force"]["fail"], 0);
    assert_eq!(v["rows"][2]["classification"], "two_half");

    std::fs::write(
        &path,
        r#"{"entries": [{"p": 2, "n": 4, "family": "binomial"}]}"#,
    )
    .unwrap();
    let out = redei(&["sweep", "--grid", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["summary"]["errors"], 1);
}
