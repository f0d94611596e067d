use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use srg_cli::commands::{CompareBody, Envelope, FactorBody, MaxmodBody, PlotBody, VerifyBody};

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems").join(name)
}

fn srg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srg")).args(args).output().expect("run srg")
}

fn run_ok(args: &[&str]) -> (Value, String) {
    let out = srg(args);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{args:?}\n{stdout}\n{}", String::from_utf8_lossy(&out.stderr));
    (serde_json::from_str(&stdout).unwrap(), stdout)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn factor_all_ones() {
    let p = problem("thm31_all_ones.json");
    let (v, text) = run_ok(&["factor", p.to_str().unwrap(), "--theorem", "31"]);
    assert_eq!(v["schema_version"], 1);
    assert!((v["rho"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    let parsed: Envelope<FactorBody> = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.command, "factor");

    let p = problem("thm41_all_ones.json");
    let (v, _) = run_ok(&["factor", p.to_str().unwrap(), "--theorem", "auto"]);
    assert!((v["theta"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["theorem"], "thm41");
}

#[test]
fn factor_precondition_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(problem("thm31_all_ones.json")).unwrap();
    let bad = write_temp(&dir, "bad.json", &text.replace("\"lambda\": 1", "\"lambda\": 1.9"));
    let out = srg(&["factor", bad.to_str().unwrap(), "--theorem", "31"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("lambda < 2 - alpha/(2 beta_C)"), "{}", stderr(&out));

    let unknown = write_temp(&dir, "unknown.json", &text.replace("\"params\"", "\"parmas\": {}, \"params\""));
    assert_eq!(srg(&["factor", unknown.to_str().unwrap()]).status.code(), Some(2));
    let garbage = write_temp(&dir, "garbage.json", "{ not json");
    assert_eq!(srg(&["factor", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(srg(&["factor", "/definitely/missing.json"]).status.code(), Some(5));
    assert_eq!(srg(&["factor", "x.json", "--theorem", "99"]).status.code(), Some(2));
}

#[test]
fn maxmod_reproduces_published_constants() {
    let p = problem("half_disk.json");
    let (v, text) = run_ok(&["maxmod", p.to_str().unwrap(), "--eps", "1/120"]);
    let r = &v["result"];
    assert!((r["best_value"].as_f64().unwrap() - 0.7236067977).abs() <= 1e-6);
    assert!(r["lipschitz_constant"].as_f64().unwrap() <= 6.0);
    assert!(r["certified_upper"].as_f64().unwrap() <= 0.7736066656 + 1e-9);
    assert_eq!(v["preflight"]["c_arc_property"], false);
    let parsed: Envelope<MaxmodBody> = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.schema_version, 1);

    let p = problem("lens.json");
    let (v, _) = run_ok(&["maxmod", p.to_str().unwrap()]);
    assert!((v["result"]["best_value"].as_f64().unwrap() - 0.7745966692).abs() <= 1e-6);
    assert_eq!(v["preflight"]["applicable"], true);

    let p = problem("half_disk_enlarged.json");
    let (v, _) = run_ok(&["maxmod", p.to_str().unwrap(), "--eps", "1/60"]);
    assert!((v["result"]["best_value"].as_f64().unwrap() - 0.7745966692).abs() <= 1e-6);
}

#[test]
fn maxmod_output_is_byte_identical_across_runs_and_threads() {
    let p = problem("half_disk.json");
    let p = p.to_str().unwrap();
    let (_, a) = run_ok(&["maxmod", p, "--eps", "1/40"]);
    let (_, b) = run_ok(&["maxmod", p, "--eps", "1/40"]);
    let (_, c) = run_ok(&["--threads", "1", "maxmod", p, "--eps", "1/40"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn maxmod_shift_and_unbounded_domain() {
    let p = problem("half_disk.json");
    let (v, _) = run_ok(&["maxmod", p.to_str().unwrap(), "--eps", "1/30", "--shift", "-0.25"]);
    assert_eq!(v["params"]["s"], -0.25);
    assert_eq!(srg(&["maxmod", p.to_str().unwrap(), "--shift", "1"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let unbounded = write_temp(
        &dir,
        "unbounded.json",
        r#"{"classes": {"A": [{"kind": "monotone"}], "B": [{"kind": "monotone"}], "C": [{"kind": "monotone"}]},
            "params": {"alpha": 1, "lambda": 1}}"#,
    );
    let out = srg(&["maxmod", unbounded.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("enlarge"));
}

#[test]
fn verify_auto_given_and_vacuous() {
    let p = problem("thm32_all_ones.json");
    let p = p.to_str().unwrap();
    let (v, text) = run_ok(&["verify", p, "--rho", "auto", "--trials", "1000", "--seed", "0"]);
    assert_eq!(v["report"]["passed"], true);
    assert!((v["factor"]["rho"].as_f64().unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    let parsed: Envelope<VerifyBody> = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.body.report.trials, 1000);

    let out = srg(&["verify", p, "--rho", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["passed"], false);
    assert!(!v["report"]["counterexamples"].as_array().unwrap().is_empty());

    let out = srg(&["verify", p, "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("vacuous"));

    let p = problem("thm41_all_ones.json");
    let (v, _) = run_ok(&["verify", p.to_str().unwrap()]);
    assert_eq!(v["report"]["claim"]["kind"], "averagedness");
    assert_eq!(v["report"]["passed"], true);
}

#[test]
fn compare_reports_positive_margin() {
    let p = problem("thm31_all_ones.json");
    let (v, text) = run_ok(&["compare", p.to_str().unwrap()]);
    let margin = v["rows"][0]["margin"].as_f64().unwrap();
    assert!((margin - 0.0404).abs() < 1e-4, "{margin}");
    assert!(v["min_margin"].as_f64().unwrap() > 0.0);
    let parsed: Envelope<CompareBody> = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.body.rows.len(), 1);
}

#[test]
fn plot_reproduces_figure_structure_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let p = problem("half_disk_enlarged.json");
    let (v, text) = run_ok(&["plot", p.to_str().unwrap(), "--out", a.to_str().unwrap()]);
    run_ok(&["plot", p.to_str().unwrap(), "--out", b.to_str().unwrap()]);
    let svg = std::fs::read(&a).unwrap();
    assert_eq!(svg, std::fs::read(&b).unwrap());
    let svg = String::from_utf8(svg).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<circle") && svg.contains("<polyline"));

    let body: Envelope<PlotBody> = serde_json::from_str(&text).unwrap();
    let radius = body.body.circle.as_ref().unwrap().radius;
    assert!((radius - 0.7745966692).abs() < 1e-9);
    // The class image stays strictly inside; the enlarged image reaches the circle.
    assert!(body.body.cloud_max_modulus < radius - 0.04);
    assert!((body.body.enlarged_cloud_max_modulus.unwrap() - radius).abs() < 1e-3);
    assert_eq!(v["command"], "plot");
}

#[test]
fn plot_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_temp(
        &dir,
        "empty.json",
        r#"{"classes": {"A": [{"kind": "monotone"}], "B": [{"kind": "monotone"}],
            "C": [{"kind": "cocoercive", "beta": 1}, {"kind": "shifted_lipschitz_ball", "center": 5, "radius": 0.1}]},
            "params": {"alpha": 1, "lambda": 1}}"#,
    );
    let out_svg = dir.path().join("x.svg");
    assert_eq!(srg(&["plot", empty.to_str().unwrap(), "--out", out_svg.to_str().unwrap()]).status.code(), Some(3));
    let p = problem("half_disk.json");
    let missing_dir = dir.path().join("no/such/dir/x.svg");
    assert_eq!(srg(&["plot", p.to_str().unwrap(), "--out", missing_dir.to_str().unwrap()]).status.code(), Some(5));
}

#[test]
fn compact_json_is_one_line() {
    let p = problem("thm31_all_ones.json");
    let (_, text) = run_ok(&["--json-indent", "0", "factor", p.to_str().unwrap()]);
    assert_eq!(text.trim_end().lines().count(), 1);
    let (_, pretty) = run_ok(&["--json-indent", "4", "factor", p.to_str().unwrap()]);
    assert!(pretty.contains("\n    \"schema_version\""));
}
