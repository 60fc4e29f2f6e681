use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hecke-lab"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("HECKE_LAB_THREADS", t);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn case(dir: &TempDir, text: &str) -> String {
    write(dir.path(), "case.json", text).to_str().unwrap().to_string()
}

#[test]
fn build_reports_omega_and_classes() {
    let dir = TempDir::new().unwrap();
    let a2 = case(&dir, r#"{"type": "A", "rank": 2, "decoration": [1], "lattice": "coweight"}"#);
    let out = run(&["build", "--case", &a2], None);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["datum"]["omega"]["type"], "Z/3");
    assert_eq!(r["result"]["datum"]["m"], 1);
    assert_eq!(r["tool"]["name"], "hecke-lab");
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);

    let g2 = case(&dir, r#"{"type": "G", "rank": 2, "decoration": [1, 1]}"#);
    let r = json(&run(&["build", "--case", &g2], None));
    assert_eq!(r["result"]["datum"]["omega"]["type"], "1");
    assert_eq!(r["result"]["datum"]["m"], 2);
}

#[test]
fn invalid_decoration_exits_2_with_error_object() {
    let dir = TempDir::new().unwrap();
    let c2 = case(&dir, r#"{"type": "C", "rank": 2, "decoration": [1, 2]}"#);
    let out = run(&["build", "--case", &c2], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["error"]["kind"], "DecorationNotClassConstant");
}

#[test]
fn malformed_input_and_bad_prime_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = case(&dir, r#"{"type": "C", "rank": 2, "decorations": [1, 1, 1]}"#);
    let out = run(&["build", "--case", &bad], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["error"]["kind"], "Parse");

    let good = case(&dir, r#"{"type": "C", "rank": 2, "decoration": [1, 1, 1]}"#);
    let out = run(&["characters", "--case", &good, "--p", "4"], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["error"]["kind"], "NotPrime");

    let out = run(&["build", "--case", dir.path().join("missing.json").to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));

    let h = case(&dir, r#"{"type": "H", "rank": 3, "decoration": [1]}"#);
    assert_eq!(run(&["build", "--case", &h], None).status.code(), Some(2));
}

#[test]
fn characters_and_extensions() {
    let dir = TempDir::new().unwrap();
    for (dec, extending) in [("[1, 1]", 2), ("[1, 2]", 4)] {
        let a1 = case(&dir, &format!(r#"{{"type": "A", "rank": 1, "decoration": {dec}}}"#));
        let out = run(&["characters", "--case", &a1], None);
        assert_eq!(out.status.code(), Some(0));
        let g = &json(&out)["result"]["characters"]["generic"];
        assert_eq!(g["count"], 4);
        assert_eq!(g["extending"], extending);
    }
    let f4 = case(&dir, r#"{"type": "F", "rank": 4, "decoration": [1, 2]}"#);
    let r = json(&run(&["characters", "--case", &f4], None));
    assert_eq!(r["result"]["characters"]["generic"]["count"], 4);
    assert_eq!(r["result"]["characters"]["mod_p"]["count"], 32);
}

#[test]
fn classify_verdicts() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"type": "C", "rank": 3, "decoration": [2, 1, 1]}"#, "Character1Dim", Some(1)),
        (r#"{"type": "C", "rank": 4, "decoration": [1, 2, 2]}"#, "Induced2Dim", Some(2)),
        (r#"{"type": "D", "rank": 4, "decoration": [1]}"#, "ReflectionTwist", None),
    ];
    for (text, verdict, r) in cases {
        let path = case(&dir, text);
        let out = run(&["classify", "--case", &path], None);
        assert_eq!(out.status.code(), Some(0), "{text}");
        let res = &json(&out)["result"];
        assert_eq!(res["verdict"], verdict);
        assert_eq!(res["certificate"]["r"], r.map_or(Value::Null, Value::from));
        assert_eq!(res["certificate"]["supersingular_mod_p"]["supersingular"], true);
    }
    let d4 = case(&dir, r#"{"type": "D", "rank": 4, "decoration": [1]}"#);
    let cert = &json(&run(&["classify", "--case", &d4], None))["result"]["certificate"];
    assert_eq!(cert["dimension"], 5);
    assert_eq!(cert["relations"], "pass");
    assert_eq!(cert["discrete"]["method"], "cited-lusztig");
    assert_eq!(cert["reduction"].as_array().unwrap().len(), 5);
}

#[test]
fn classify_rejects_non_adjoint_and_unhandled() {
    let dir = TempDir::new().unwrap();
    let coroot = case(&dir, r#"{"type": "B", "rank": 3, "decoration": [1, 1], "lattice": "coroot"}"#);
    assert_eq!(run(&["classify", "--case", &coroot], None).status.code(), Some(2));
    let resonant = case(&dir, r#"{"type": "B", "rank": 3, "decoration": [1, 2]}"#);
    let out = run(&["classify", "--case", &resonant], None);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["result"]["error"]["kind"], "UnhandledCase");
}

#[test]
fn failed_expectation_exits_1() {
    let dir = TempDir::new().unwrap();
    let c5 = case(&dir, r#"{"type": "C", "rank": 5, "decoration": [1, 2, 2], "expect": {"r": 1}}"#);
    let out = run(&["verify", "--case", &c5], None);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["result"]["status"], "fail");
    let failed: Vec<&Value> = r["result"]["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "r");
}

#[test]
fn default_suite_passes_and_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = run(&["verify", "--json", a.to_str().unwrap()], Some("1"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", "--json", b.to_str().unwrap()], Some("4"));
    assert_eq!(out.status.code(), Some(0));
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let r: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(r["summary"]["failed"], 0);
    assert!(r["summary"]["cases"].as_u64().unwrap() >= 30);
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn suite_with_mixed_outcomes_reports_worst_code() {
    let dir = TempDir::new().unwrap();
    let suite = write(
        dir.path(),
        "suite.json",
        r#"{"cases": [
            {"type": "G", "rank": 2, "decoration": [1, 3], "expect": {"r": 1}},
            {"type": "C", "rank": 2, "decoration": [1, 1]}
        ]}"#,
    );
    let out = run(&["verify", "--suite", suite.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["summary"]["passed"], 1);
    assert_eq!(r["results"][0]["status"], "pass");
    assert_eq!(r["results"][1]["error"]["kind"], "DecorationNotClassConstant");
}

#[test]
fn empty_suite_passes_with_warning() {
    let dir = TempDir::new().unwrap();
    let suite = write(dir.path(), "empty.json", "[]");
    let out = run(&["verify", "--suite", suite.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(json(&out)["warnings"][0], "suite contains no cases");
}

#[test]
fn timing_is_opt_in() {
    let dir = TempDir::new().unwrap();
    let a1 = case(&dir, r#"{"type": "A", "rank": 1, "decoration": [1, 2]}"#);
    let r = json(&run(&["classify", "--case", &a1, "--timing"], None));
    assert!(r["timing_ms"].is_u64());
    let r = json(&run(&["classify", "--case", &a1], None));
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn seed_and_prime_are_recorded() {
    let dir = TempDir::new().unwrap();
    let c2 = case(&dir, r#"{"type": "C", "rank": 2, "decoration": [1, 2, 2]}"#);
    let r = json(&run(&["verify", "--case", &c2, "--p", "5", "--seed", "7"], None));
    assert_eq!(r["p"], 5);
    assert_eq!(r["seed"], 7);
    let sample = r["result"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "kernel_sample").unwrap();
    assert_eq!(sample["detail"]["seed"], 7);
    assert_eq!(sample["detail"]["failures"], 0);
}
