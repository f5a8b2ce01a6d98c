//! End-to-end checks of the command-line surface: JSON shapes, the
//! documented spec formats, and exit codes.

use std::process::Command;

use serde_json::Value;

fn liftcheck(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_liftcheck"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn fox_reports_derivatives_and_exponent_sums() {
    let (stdout, _, code) = liftcheck(&["fox", "--word", "x0^2 x1^-1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["word"], "x0^2 x1^-1");
    assert_eq!(v["derivatives"][0]["exponent_sum"], 2);
    assert_eq!(v["derivatives"][1]["exponent_sum"], -1);
}

#[test]
fn present_certifies_quaternion8() {
    let (stdout, _, code) = liftcheck(&["present", "--catalog", "quaternion8", "--p", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["order_certificate"], 8);
    assert_eq!(v["generators"], 2);
    // Every relator exponent sum is even.
    for row in v["exponent_sums"].as_array().unwrap() {
        for s in row.as_array().unwrap() {
            assert_eq!(s.as_i64().unwrap() % 2, 0);
        }
    }
}

#[test]
fn present_elementary_abelian_via_params() {
    let (stdout, _, code) = liftcheck(&[
        "present",
        "--catalog",
        "elementary",
        "--params",
        "p=3,d=2",
        "--p",
        "3",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["order_certificate"], 9);
}

#[test]
fn liftable_sl2_5_point_stabilizer_is_obstructed() {
    let (stdout, _, code) =
        liftcheck(&["liftable", "--catalog", "sl2", "--q", "5", "--stabilizer-of", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["liftable"], false);
    assert_eq!(v["stabilizer_order"], 10);
    assert_eq!(v["witness"]["obstruction"]["value"], 1);
}

#[test]
fn subext_sl2_5_headline_verdicts() {
    let (stdout, _, code) = liftcheck(&["subext", "--catalog", "sl2", "--q", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["subextension_exists"], false);
    assert_eq!(v["condition_holds"], false);
    assert_eq!(v["implication_holds"], true);
    assert_eq!(v["stabilizer_orders"][0], 10);
}

#[test]
fn sweep_emits_jsonl_with_documented_keys() {
    let (stdout, stderr, code) = liftcheck(&["sweep", "--orders-upto", "6", "--p", "2"]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stderr.contains("0 violations"));
    let mut lines = 0;
    for line in stdout.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        for key in [
            "group",
            "order",
            "p",
            "h2_class",
            "action_degree",
            "stabilizer_orders",
            "liftable_per_orbit",
            "subextension_exists",
            "implication_holds",
            "elapsed_ms",
        ] {
            assert!(v.get(key).is_some(), "missing key {key} in {line}");
        }
        lines += 1;
    }
    assert!(lines > 10);
}

#[test]
fn explicit_permutation_group_spec_file() {
    let dir = std::env::temp_dir();
    let path = dir.join("liftcheck_cli_group_spec.json");
    std::fs::write(&path, r#"{ "points": 3, "generators": [[1, 2, 0]], "p": 3 }"#).unwrap();
    let (stdout, _, code) =
        liftcheck(&["present", "--spec-file", path.to_str().unwrap(), "--p", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["order_certificate"], 3);
}

#[test]
fn inline_extension_spec_with_cocycle_rows() {
    let spec = r#"{ "group": { "catalog": "cyclic", "n": 2 }, "p": 2, "cocycle": [[0,0],[0,1]] }"#;
    let (stdout, _, code) = liftcheck(&["subext", "--spec", spec]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(stdout.trim()).unwrap();
    // The C4 extension of C2: the regular action's stabilizers are trivial,
    // hence liftable, and the subextension exists.
    assert_eq!(v["condition_holds"], true);
}

#[test]
fn exit_codes_for_bad_input() {
    let (_, _, code) = liftcheck(&["present", "--catalog", "nonsense", "--p", "2"]);
    assert_eq!(code, 3);
    let (_, _, code) = liftcheck(&["present", "--p", "2"]);
    assert_eq!(code, 3);
    let (_, _, code) = liftcheck(&["no-such-command"]);
    assert_eq!(code, 3);
    // Not a p-group: computational error, not a spec error.
    let (_, _, code) = liftcheck(&["present", "--catalog", "a4", "--p", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn env_var_caps_sweep_order() {
    let out = Command::new(env!("CARGO_BIN_EXE_liftcheck"))
        .args(["sweep", "--orders-upto", "8", "--p", "2"])
        .env("LIFTCHECK_MAX_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    for line in stdout.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["order"].as_u64().unwrap() <= 2);
    }
}
