use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn majorana(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majorana"))
        .args(args)
        .current_dir(data(""))
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn ghz_is_locc_equivalent_to_s0_plus_sqrt3_s2() {
    let out = majorana(&["equiv", "--kind", "locc", "ghz3.json", "s0_plus_sqrt3_s2.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["equivalent"], true);
    assert_eq!(doc["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn unbalanced_ghz_is_slocc_but_not_locc_equivalent() {
    let locc = majorana(&["equiv", "--kind", "locc", "ghz3.json", "ghz3_unbalanced.json"]);
    assert_eq!(locc.status.code(), Some(2));
    let doc = json(&locc);
    assert_eq!(doc["equivalent"], false);
    assert_eq!(doc["stage"], "exhausted");
    let slocc = majorana(&["equiv", "--kind", "slocc", "ghz3.json", "ghz3_unbalanced.json"]);
    assert_eq!(slocc.status.code(), Some(0));
}

#[test]
fn configuration_mismatch_is_reported() {
    let out = majorana(&["equiv", "ghz3.json", "w3.json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["stage"], "configuration-mismatch");
    assert_eq!(doc["partitions"], serde_json::json!([[1, 1, 1], [2, 1]]));
}

#[test]
fn decompose_scaling_gives_pole_lift() {
    let out = majorana(&["decompose", "--matrix", "scale.json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!((doc["A"].as_f64().unwrap() - 2.5).abs() < 1e-12);
    let (bre, bim) = complex(&doc["B"]);
    assert!(bre.abs() < 1e-12 && bim.abs() < 1e-12);
    let (are, aim) = complex(&doc["alpha"]);
    assert!((are - 1.0).abs() < 1e-12 && aim.abs() < 1e-12);
}

#[test]
fn decompose_scaling_with_shift() {
    let doc = json(&majorana(&["decompose", "--matrix", "scale_shift.json"]));
    assert!((doc["A"].as_f64().unwrap() - 2.5).abs() < 1e-12);
    let (bre, bim) = complex(&doc["B"]);
    assert!((bre - 5.0).abs() < 1e-12 && (bim + 5.0).abs() < 1e-12);
}

#[test]
fn canonical_w_state() {
    let out = majorana(&["canonical", "w3.json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["partition"], serde_json::json!([2, 1]));
    let amps: Vec<(f64, f64)> = doc["state"]["dicke"].as_array().unwrap().iter().map(complex).collect();
    assert_eq!(amps, vec![(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
}

#[test]
fn classify_and_roots_agree_with_from_roots() {
    let doc = json(&majorana(&["classify", "w3.json"]));
    assert_eq!(doc["diversity"], 2);
    let roots = json(&majorana(&["roots", "w3.json"]));
    assert_eq!(roots["at_infinity"], 2);
    let back = json(&majorana(&["from-roots", "w3_roots.json"]));
    let amps: Vec<(f64, f64)> = back["dicke"].as_array().unwrap().iter().map(complex).collect();
    assert!((amps[1].0.abs() - 1.0).abs() < 1e-12);
}

#[test]
fn roots_output_is_byte_identical_and_reparses() {
    let a = majorana(&["roots", "ghz3.json"]);
    let b = majorana(&["roots", "ghz3.json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let parsed: majorana::doc::RootDocument = majorana::doc::from_json(&text).unwrap();
    assert_eq!(majorana::doc::to_json(&parsed).unwrap(), text.trim_end());
}

#[test]
fn transform_matches_library() {
    let out = majorana(&["transform", "--matrix", "scale.json", "ghz3.json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    // diag(5/2, 1) scales |000⟩ by (5/2)³ relative to |111⟩.
    let a0 = complex(&doc["dicke"][0]).0;
    let a3 = complex(&doc["dicke"][3]).0;
    assert!((a3 / a0 - 0.4f64.powi(3)).abs() < 1e-12, "{a0} {a3}");
}

#[test]
fn errors_exit_with_status_one() {
    for args in [
        &["roots", "absent.json"][..],
        &["canonical", "scale.json"][..],
        &["transform", "--matrix", "singular.json", "ghz3.json"][..],
        &["equiv", "ghz3.json"][..],
        &["--tol", "-1", "roots", "ghz3.json"][..],
        &["--bogus", "roots", "ghz3.json"][..],
    ] {
        let out = majorana(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn batch_preserves_input_order() {
    let out = majorana(&["--batch", "states.txt", "classify"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let diversities: Vec<u64> = lines.iter().map(|d| d["diversity"].as_u64().unwrap()).collect();
    assert_eq!(diversities, vec![3, 2, 3]);
}

#[test]
fn batch_equiv_reports_worst_status() {
    let out = majorana(&["--batch", "pairs.txt", "equiv", "--kind", "locc"]);
    assert_eq!(out.status.code(), Some(2));
    let verdicts: Vec<bool> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["equivalent"].as_bool().unwrap())
        .collect();
    assert_eq!(verdicts, vec![true, false, false]);
}

#[test]
fn plot_writes_both_views() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("w3.svg");
    let out = majorana(&["plot", "w3.json", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(">front<") && svg.contains(">back<"));
    // The double root at ∞ sits at the north pole of both views with a badge.
    assert_eq!(svg.matches(r#"font-size="11">2<"#).count(), 2);
    // The north pole projects to the top of each disc.
    assert!(svg.contains(r#"cx="160.000" cy="60.000" r="6""#));
}

#[test]
fn text_format_is_human_readable() {
    let out = majorana(&["--format", "text", "classify", "w3.json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("diversity = 2"));
}
