use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinor-forge")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn verify_e6_over_q() {
    let out = run(&["verify", "--algebra", "e6", "--field", "q"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["dim"], 78);
    assert_eq!(r["spanning"]["rank"], 46);
    assert_eq!(r["killing"]["rank"], 78);
    assert_eq!(r["jacobi"]["violations"], 0);
    assert_eq!(r["roots"]["count"], 72);
    assert_eq!(r["roots"]["dynkin"], "E6");
    assert!(String::from_utf8_lossy(&out.stderr).contains("e6 over q"));
}

#[test]
fn verify_e7_over_f7_sequentially() {
    let out = run(&["verify", "--algebra", "e7", "--field", "fp:7", "--exec", "seq"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["dim"], 133);
    assert_eq!(r["field"], "fp:7");
    assert!(r["roots"].is_null());
    assert_eq!(r["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["verify", "--algebra", "e8", "--field", "fp:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("characteristic 2 unsupported"));
    for args in [
        &["export", "--algebra", "e9"][..],
        &["props", "--n", "0"],
        &["props", "--n", "9"],
        &["props", "--n", "3", "--suite", "spin"],
        &["verify", "--algebra", "e7", "--field", "fp:3"],
        &["verify", "--algebra", "e7", "--field", "fp:9"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_thread_cap_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinor-forge"))
        .args(["props", "--n", "1"])
        .env("SPINOR_FORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_spinor-forge"))
        .args(["props", "--n", "1"])
        .env("SPINOR_FORGE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn props_filtering_and_verdicts() {
    let out = run(&["props", "--n", "6", "--suite", "norms"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let checks = r["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["suite"] == "norms"));

    let out = run(&["props", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let suites: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["suite"].as_str().unwrap()).collect();
    for s in ["norms", "clifford", "cartan_ops"] {
        assert!(suites.contains(&s));
    }
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())));

    // the tabulated L₂ₙ symmetry disagrees with the norm for n ≡ 2 (mod 4)
    let out = run(&["props", "--n", "2", "--suite", "cartan_ops"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["l_top_symmetry"]);
}

#[test]
fn export_to_stdout_matches_file() {
    let dir = std::env::temp_dir().join(format!("spinor-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e6.json");
    let out = run(&["export", "--algebra", "e6", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["dim"], 78);
    let written = std::fs::read(&path).unwrap();
    assert_eq!(r["bytes"], written.len());
    let piped = run(&["export", "--algebra", "e6"]);
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(piped.stdout, written);
    let parsed: Value = serde_json::from_slice(&written).unwrap();
    assert_eq!(parsed["basis"].as_array().unwrap().len(), 78);
    let _ = std::fs::remove_dir_all(&dir);
}
