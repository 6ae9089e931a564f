use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_floer-bars"))
        .args(args)
        .env("FLOER_BARS_QUIET", "1")
        .output()
        .expect("binary runs");
    let report: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap_or(-1), report)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn check_passed(report: &Value, name: &str) -> Option<bool> {
    report["checks"]
        .as_array()?
        .iter()
        .find(|c| c["name"] == name)
        .map(|c| c["passed"].as_bool().unwrap())
}

#[test]
fn barcode_of_sphere_complex() {
    let f = fixture("complex_sphere_four_point.json");
    let (code, r) = run(&["barcode", path(&f), "--gamma", "1,0"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["beta"], "1/5");
    assert_eq!(r["outputs"]["gamma"], "1/5");
    assert_eq!(r["inputs"].as_object().unwrap().len(), 1);
}

#[test]
fn barcode_of_zero_differential() {
    let (code, r) = run(&["barcode", path(&fixture("complex_two_point.json"))]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["beta"], "0");
}

#[test]
fn barcode_oracle_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("b.svg");
    let csv = dir.path().join("b.csv");
    let (code, r) = run(&[
        "barcode",
        path(&fixture("complex_random.json")),
        "--oracle",
        "--window=-2,5",
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(check_passed(&r, "oracle-match"), Some(true));
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
    assert!(std::fs::read_to_string(csv).unwrap().starts_with("degree,left,right"));
}

#[test]
fn bottleneck_examples() {
    let a = fixture("barcode_pair_a.json");
    let b = fixture("barcode_pair_b.json");
    let (code, r) = run(&["bottleneck", path(&a), path(&a)]);
    assert_eq!((code, &r["outputs"]["d"]), (0, &Value::from("0")));
    let (_, r) = run(&["bottleneck", path(&a), path(&b), "--mod-shift"]);
    assert_eq!(r["outputs"]["d"], "2");
    assert_eq!(r["outputs"]["d_shift"], "1");
    assert_eq!(r["outputs"]["c_star"], "1");

    // a barcode and its shift are at shift-quotient distance 0
    let dir = tempfile::tempdir().unwrap();
    let shifted = dir.path().join("shifted.json");
    std::fs::write(
        &shifted,
        r#"{"bars": [{"degree": 0, "left": "5", "right": "6"}, {"degree": 0, "left": "5", "right": "7"}]}"#,
    )
    .unwrap();
    let (_, r) = run(&["bottleneck", path(&a), shifted.to_str().unwrap(), "--mod-shift"]);
    assert_eq!(r["outputs"]["d_shift"], "0");
    assert_eq!(r["outputs"]["c_star"], "5");
}

#[test]
fn combfloer_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("complex.json");
    let (code, r) = run(&[
        "combfloer",
        path(&fixture("diagram_sphere_four_point.json")),
        "--emit-complex",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["beta"], "1/5");
    assert_eq!(check_passed(&r, "beta-le-gamma"), Some(true));
    // the exported complex goes back through the barcode command
    let (_, r2) = run(&["barcode", out.to_str().unwrap()]);
    assert_eq!(r2["outputs"]["beta"], "1/5");

    let (_, r) = run(&["combfloer", path(&fixture("diagram_annulus_four_point.json"))]);
    assert_eq!(r["outputs"]["beta"], "3/10");
    let (_, r) = run(&["combfloer", path(&fixture("diagram_sphere_two_point.json"))]);
    assert_eq!(r["outputs"]["beta"], "0");
    assert_eq!(r["outputs"]["differential"], Value::Array(vec![]));
}

#[test]
fn combfloer_rejects_inadmissible() {
    let text = std::fs::read_to_string(fixture("diagram_sphere_four_point.json")).unwrap();
    let mut d: Value = serde_json::from_str(&text).unwrap();
    d["areas"]["A1"] = Value::from("1/3");
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, d.to_string()).unwrap();
    let (code, r) = run(&["combfloer", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["error"]["kind"], "validation");
    assert_eq!(check_passed(&r, "diagram-admissible"), Some(false));
}

#[test]
fn radial_examples() {
    let (code, r) = run(&["radial", path(&fixture("profile_new_radial.json")), "--feasible"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["forced_bar_bound"], serde_json::json!(["9/40", "0"]));
    assert_eq!(r["outputs"]["feasible_count"], 2);
    let (_, r) = run(&["radial", path(&fixture("profile_exterior_only.json"))]);
    assert_eq!(r["outputs"]["forced_bar_bound"], serde_json::json!(["0", "0"]));
}

#[test]
fn radial_homotopy_trace() {
    // the bundled folding family with a single step, to keep the run short
    let text = std::fs::read_to_string(fixture("family_folding.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["steps"] = Value::from(1);
    v["C"] = Value::from("2");
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("family.json");
    std::fs::write(&f, v.to_string()).unwrap();
    let (code, r) = run(&["radial", f.to_str().unwrap(), "--homotopy"]);
    assert_eq!(code, 0);
    let h = &r["outputs"]["homotopy"];
    assert_eq!(h["samples"], 2);
    assert_eq!(h["retained"].as_array().unwrap().len(), 2);
}

#[test]
fn radial_rejects_integer_slope() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.json");
    std::fs::write(
        &f,
        r#"{"profile": {"R": "1/2", "breakpoints": [["0", ["0", "0"]], ["1/2", ["1/2", "0"]]], "exterior": [1]},
            "lagrangian": {"n": 1, "N_L": 2, "A_L": ["1/2", "0"]}, "ranks": {"0": 1, "1": 1}}"#,
    )
    .unwrap();
    let (code, r) = run(&["radial", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(check_passed(&r, "profile-valid"), Some(false));
}

#[test]
fn seidel_examples() {
    for (case, n, bound) in [("RPn", "1", "1/4"), ("CPn_diag", "2", "2/3"), ("HPn_gr", "1", "1/2")] {
        let (code, r) = run(&["seidel", "--case", case, "--n", n]);
        assert_eq!(code, 0, "{case}");
        assert_eq!(r["outputs"]["bound"], bound, "{case}");
        assert_eq!(r["outputs"]["telescoping"], "ok");
    }
    let (code, _) = run(&["seidel", "--case", "CP2"]);
    assert_eq!(code, 2);
    let (code, r) = run(&["seidel", "--bogus"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "schema");
    // S = t·[L] never reaches a multiple of [pt]
    let (code, r) = run(&["seidel", "--params", r#"{"n":1,"N_L":2,"A_L":"1/2","M":2,"E":-1,"P":1,"S":{"t":1,"X":0}}"#]);
    assert_eq!(code, 1);
    assert_eq!(check_passed(&r, "hypotheses-verified"), Some(false));
}

#[test]
fn schema_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, r#"{"bars": ["#).unwrap();
    let (code, r) = run(&["bottleneck", f.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "schema");
}

#[test]
fn check_passes_and_is_deterministic() {
    let (code, r) = run(&["check"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["criteria"].as_array().unwrap().len(), 9);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let (_, again) = run(&["check"]);
    assert_eq!(r, again);
}

#[test]
fn check_surfaces_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    std::fs::write(dir.path().join("complex_sphere_four_point.json"), r#"{"spec": 3}"#).unwrap();
    let (code, r) = run(&["check", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(check_passed(&r, "fixture:complex_sphere_four_point.json"), Some(false));
    assert_eq!(r["error"]["kind"], "schema");
}
