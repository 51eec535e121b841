use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn torelli(args: &[&str], workers: Option<usize>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torelli"));
    cmd.args(args);
    if let Some(n) = workers {
        cmd.env("TORELLI_WORKERS", n.to_string());
    }
    cmd.output().expect("binary runs")
}

fn scenario_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const GENUS_TWO: &str = r#"{
  "genus": 2,
  "max_class": 5,
  "twists": [{ "name": "t", "boundary": [1], "conjugated": [2] }],
  "words": [{ "name": "tt", "expr": "t^2" }],
  "pipelines": [
    { "run": "depth", "word": "t" },
    { "run": "depth", "word": "tt" },
    { "run": "model", "class": 3 },
    { "run": "model", "word": "t", "class": 4 },
    { "run": "massey", "word": "t" },
    { "run": "verdict", "word": "t" }
  ],
  "output": { "include_models": true }
}"#;

#[test]
fn reports_are_byte_stable_across_runs_and_workers() {
    let path = scenario_file("genus_two.json", GENUS_TWO);
    let p = path.to_str().unwrap();
    let runs: Vec<Output> = [Some(1), Some(3), None].into_iter().map(|w| torelli(&["--no-timing", "run", p], w)).collect();
    for r in &runs {
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
        assert_eq!(r.stdout, runs[0].stdout);
    }
    let v: Value = serde_json::from_slice(&runs[0].stdout).unwrap();
    assert_eq!(v["tool"], "torelli");
    assert!(v.get("timing").is_none());
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 6);
    assert_eq!(results[0]["kind"], "depth");
    assert_eq!(results[0]["depth"]["exact"], 3);
    assert_eq!(results[1]["depth"]["exact"], 3);
    assert_eq!(results[2]["dims_by_weight"], serde_json::json!([4, 5]));
    assert!(results[3]["export"].as_str().unwrap().starts_with("genus 2, class 4"));
    assert!(!results[3]["derivation"].as_array().unwrap().is_empty());
    assert!(results[4]["survey"]["nonvanishing"].as_u64().unwrap() > 0);
    assert_eq!(results[5]["partial_formality"], 2);
    assert_eq!(results[5]["obstruction"]["status"], "found");
    assert_eq!(results[5]["obstruction"]["n"], 3);
    // The echoed scenario parses back.
    let echoed = serde_json::to_string(&v["scenario"]).unwrap();
    let original: Value = serde_json::from_str(GENUS_TWO).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&echoed).unwrap()["pipelines"], original["pipelines"]);
}

#[test]
fn json_output_round_trips() {
    let out = torelli(&["--no-timing", "verdict", "--genus", "2"], None);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    assert!(out.stdout.ends_with(b"}\n"));
    assert_eq!(v["results"][0]["massey"]["witnesses"].as_array().unwrap().len(), 3);
}

#[test]
fn genus_one_is_rejected() {
    let path = scenario_file("genus_one.json", r#"{ "genus": 1, "max_class": 4 }"#);
    let out = torelli(&["run", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("genus must be ≥ 2"));
}

#[test]
fn validation_errors_exit_two() {
    let unknown = scenario_file(
        "unknown_twist.json",
        r#"{ "genus": 2, "max_class": 4, "pipelines": [{ "run": "depth", "word": "u" }] }"#,
    );
    let extra = scenario_file("extra_field.json", r#"{ "genus": 2, "max_class": 4, "colour": "red" }"#);
    let low = scenario_file("low_class.json", r#"{ "genus": 2, "max_class": 2 }"#);
    let dup = scenario_file(
        "duplicate.json",
        r#"{ "genus": 2, "max_class": 4, "twists": [{ "name": "t", "boundary": [1], "conjugated": [2] }],
            "words": [{ "name": "w", "expr": "t" }, { "name": "w", "expr": "t^2" }] }"#,
    );
    let bad_twist = scenario_file(
        "bad_twist.json",
        r#"{ "genus": 2, "max_class": 4, "twists": [{ "name": "t", "boundary": [1, 2], "conjugated": [1] }] }"#,
    );
    for (path, needle) in [
        (&unknown, "unknown twist `u`"),
        (&extra, "unknown field"),
        (&low, "at least 3"),
        (&dup, "declared twice"),
        (&bad_twist, "invalid twist"),
    ] {
        let out = torelli(&["run", path.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(2), "{}", path.display());
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{err}");
    }
    let out = torelli(&["depth", "--genus", "2", "--class", "9"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = torelli(&["depth", "--genus", "2", "--word", "t t^-1 [", "--class", "4"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = torelli(&["run", "/nonexistent/scenario.json"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hard_cap_can_be_raised_and_lowered() {
    let out = torelli(&["--hard-cap", "4", "depth", "--genus", "2", "--class", "5"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = torelli(&["--hard-cap", "8", "--no-timing", "depth", "--genus", "2", "--class", "8"], None);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["depth"]["exact"], 3);
}

#[test]
fn corrupted_constants_fail_verification() {
    let out = torelli(&["--no-timing", "verify", "--genus", "2", "--class", "4", "--corrupt"], None);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let report = &v["results"][0];
    assert_eq!(report["passed"], false);
    let failed: Vec<&Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "malcev_jacobi");
    assert!(failed[0]["counterexample"].is_string());

    let clean = torelli(&["verify", "--genus", "2", "--class", "4"], None);
    assert!(clean.status.success());
}

#[test]
fn text_reports() {
    let out = torelli(&["--format", "text", "--no-timing", "verdict", "--genus", "2"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict for t: (1,2)-formal, not 1-formal"));
    assert!(text.contains("obstruction N = 3 at a2: 1·[A2,[B1,A1]]"));
    let out = torelli(&["--format", "text", "dims", "--genus", "2", "--class", "5"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Lie dims [4, 5, 16, 45]"));
}

#[test]
fn output_file_matches_stdout() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("dims.json");
    let out = torelli(&["--no-timing", "--output", path.to_str().unwrap(), "dims", "--genus", "3"], None);
    assert!(out.status.success() && out.stdout.is_empty());
    let direct = torelli(&["--no-timing", "dims", "--genus", "3"], None);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn bad_worker_count_is_rejected() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torelli"));
    let out = cmd.args(["dims", "--genus", "2"]).env("TORELLI_WORKERS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_scenario_resolves() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/s4.json");
    let resolved = torelli_cli::scenario::Scenario::load(&path).unwrap().resolve(7).unwrap();
    assert_eq!(resolved.pipelines.len(), 5);
    assert_eq!(resolved.registry.twists().len(), 2);
    assert_eq!(resolved.pipelines[1].1.as_ref().unwrap().to_string(), "[t1,t2]");
}
