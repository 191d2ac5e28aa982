//! Runs the real binary and checks exit codes and report contents.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tpsgeo"))
}

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON envelope")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn results(v: &Value) -> &Vec<Value> {
    v["results"].as_array().unwrap()
}

fn find<'a>(v: &'a Value, needle: &str) -> &'a Value {
    results(v)
        .iter()
        .find(|r| r["claim"].as_str().unwrap().contains(needle))
        .unwrap_or_else(|| panic!("no claim containing '{needle}'"))
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("tpsgeo-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn curvature_tps_scalar_is_half_n() {
    let out = run(&["curvature", "--space", "tps", "--n", "2"]);
    assert_eq!(code(&out), 0);
    let v = report(&out);
    assert_eq!(find(&v, "scalar")["witness"]["scalar"], "1");
    assert!(results(&v).iter().all(|r| r["status"] == "exact-pass"));
}

#[test]
fn curvature_sympl_einstein_factor() {
    let out = run(&["curvature", "--space", "sympl", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let v = report(&out);
    assert_eq!(find(&v, "Einstein")["witness"]["einstein_factor"], "3/2");
}

#[test]
fn out_of_range_is_usage_error() {
    for args in [
        &["curvature", "--space", "tps", "--n", "0"][..],
        &["curvature", "--space", "tps", "--n", "5"],
        &["curvature", "--space", "sympl", "--n", "4"],
        &["killing", "--space", "tps", "--n", "1", "--degree", "0"],
        &["verify-all", "--only", "nonsense"],
        &["curvature", "--space", "riemann", "--n", "1"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn killing_dimensions() {
    for (space, n, degree, dim) in [("tps", "2", "2", 9), ("sympl", "1", "2", 8), ("tps", "1", "3", 4)] {
        let out = run(&["killing", "--space", space, "--n", n, "--degree", degree]);
        assert_eq!(code(&out), 0, "{space} {n} {degree}");
        let v = report(&out);
        assert_eq!(find(&v, "dimension")["witness"]["dimension"], dim, "{space} {n} {degree}");
    }
}

#[test]
fn killing_degree_one() {
    // every Killing field of G is affine in the coordinates
    let out = run(&["killing", "--space", "tps", "--n", "2", "--degree", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(find(&report(&out), "dimension")["witness"]["dimension"], 9);
    // the sympl algebra has quadratic members, so degree 1 falls short of 8
    let out = run(&["killing", "--space", "sympl", "--n", "1", "--degree", "1"]);
    assert_eq!(code(&out), 1);
    let v = report(&out);
    assert_eq!(find(&v, "dimension")["witness"]["dimension"], 6);
    assert!(results(&v).iter().any(|r| r["status"] == "fail" && !r["witness"].is_null()));
}

fn classes(v: &Value) -> Vec<String> {
    results(v)
        .iter()
        .filter_map(|r| r["witness"]["classification"].as_str().map(String::from))
        .collect()
}

#[test]
fn vdw_grid_classification() {
    let grid = "0.5:2:10,1.5:3:10";
    let phys = models().join("van_der_waals.json");
    let out = run(&["potential", "--model", phys.to_str().unwrap(), "--grid", grid]);
    assert_eq!(code(&out), 0);
    let c = classes(&report(&out));
    assert_eq!(c.len(), 100);
    // physical exponent: U is convex on this box, the spinodal lies at S < 0
    assert!(c.iter().all(|s| s == "positive_definite"));
    let out = run(&["potential", "--model", phys.to_str().unwrap(), "--grid=-3:0:13,1.2:3:13"]);
    assert!(classes(&report(&out)).iter().any(|s| s == "indefinite"));

    let lit = models().join("van_der_waals_literal.json");
    let out = run(&["potential", "--model", lit.to_str().unwrap(), "--grid", grid]);
    assert_eq!(code(&out), 0);
    assert!(classes(&report(&out)).iter().any(|s| s == "indefinite"));
}

#[test]
fn quadratic_is_totally_geodesic() {
    let m = models().join("quadratic.json");
    let out = run(&["potential", "--model", m.to_str().unwrap(), "--grid=-2:2:5,-2:2:5"]);
    assert_eq!(code(&out), 0);
    let v = report(&out);
    let norms: Vec<f64> = results(&v).iter().filter_map(|r| r["witness"]["II_norm"].as_f64()).collect();
    assert_eq!(norms.len(), 25);
    assert!(norms.iter().all(|&x| x == 0.0));
}

#[test]
fn homogeneous_demo_gibbs_duhem() {
    let m = models().join("homogeneous_demo.json");
    let out = run(&["potential", "--model", m.to_str().unwrap(), "--grid", "0.5:3:6,-2:2:6"]);
    assert_eq!(code(&out), 0);
    let v = report(&out);
    let gd: Vec<f64> = results(&v)
        .iter()
        .filter(|r| r["claim"].as_str().unwrap().starts_with("point"))
        .filter_map(|r| r["witness"]["gibbs_duhem_residual"].as_f64())
        .collect();
    assert_eq!(gd.len(), 36);
    assert!(gd.iter().all(|&x| x < 1e-12));
    assert_eq!(find(&v, "homogeneity")["status"], "numeric-pass");
}

#[test]
fn domain_violation_is_a_point_failure() {
    let pts = tmp("pts.json", "[[1.0, 0.5], [1.0, 2.0]]");
    let m = models().join("van_der_waals.json");
    let out = run(&["potential", "--model", m.to_str().unwrap(), "--points", pts.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = report(&out);
    let r = results(&v);
    assert_eq!(r[0]["status"], "fail");
    assert!(r[0]["witness"]["error"].as_str().unwrap().contains("V"));
    assert_eq!(r[1]["status"], "numeric-pass");
}

#[test]
fn malformed_model_reports_location() {
    let bad = tmp("bad.json", "{\"model\": \"quadratic\",\n \"parameters\": {\"Q\": [[1, 2]\n");
    let out = run(&["potential", "--model", bad.to_str().unwrap(), "--grid", "0:1:2,0:1:2"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");

    let unknown = tmp("unknown.json", "{\"model\": \"no_such_model\"}");
    let out = run(&["potential", "--model", unknown.to_str().unwrap(), "--grid", "0:1:2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_such_model"));

    let m = models().join("quadratic.json");
    let out = run(&["potential", "--model", m.to_str().unwrap(), "--grid", "0:1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_all_only_subset() {
    let out = run(&["verify-all", "--only", "heisenberg"]);
    assert_eq!(code(&out), 0);
    let v = report(&out);
    assert!(!results(&v).is_empty());
    assert!(results(&v).iter().all(|r| r["paper_ref"].as_str().unwrap().starts_with("heisenberg")
        || r["paper_ref"] == "plumbing"));
}

#[test]
fn verify_all_default_passes() {
    let out = run(&["verify-all"]);
    assert_eq!(code(&out), 0);
    let v = report(&out);
    assert_eq!(v["command"], "verify-all");
    assert!(v["timing"]["wall_seconds"].as_f64().unwrap() < 60.0);
    for r in results(&v) {
        assert!(r["paper_ref"].as_str().is_some_and(|s| !s.is_empty()));
        assert_ne!(r["status"], "fail", "{r}");
    }
}

#[test]
fn tamper_produces_failure_with_witness() {
    let out = run(&["verify-all", "--tamper"]);
    assert_eq!(code(&out), 1);
    let v = report(&out);
    let fails: Vec<&Value> = results(&v).iter().filter(|r| r["status"] == "fail").collect();
    assert!(!fails.is_empty());
    assert!(fails.iter().all(|r| !r["witness"].is_null()));
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let strip = |out: &Output| {
        let mut v = report(out);
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    let a = run(&["verify-all", "--n-max", "2"]);
    let b = bin().args(["verify-all", "--n-max", "2"]).env("TPSGEO_THREADS", "1").output().unwrap();
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn out_flag_and_markdown() {
    let dest = std::env::temp_dir().join(format!("tpsgeo-cli-{}-out.md", std::process::id()));
    let out = run(&["curvature", "--space", "tps", "--n", "1", "--markdown", "--out", dest.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let md = std::fs::read_to_string(&dest).unwrap();
    assert!(md.contains("| claim |"));
    assert!(md.contains("exact-pass"));
}

#[test]
fn bad_thread_count_is_usage_error() {
    let out = bin().args(["curvature", "--space", "tps", "--n", "1"]).env("TPSGEO_THREADS", "zero").output().unwrap();
    assert_eq!(code(&out), 2);
}
