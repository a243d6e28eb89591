use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqft-fft")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aqft-fft-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(path: &PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn all_suites_pass_with_defaults() {
    let out = scratch("all.json");
    let o = run(&["all", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["config"]["L"], 8);
    assert_eq!(r["config"]["T_max"], 12);
    assert_eq!(r["config"]["mass_squared"], "0");
    for suite in ["coherence", "adjunction", "bordism", "kg", "compare"] {
        assert_eq!(r["suites"][suite]["failed"], 0, "{suite}");
        assert!(r["suites"][suite]["checks"].as_u64().unwrap() > 0, "{suite}");
    }
}

#[test]
fn massive_green_suite_passes() {
    let out = scratch("kg.json");
    let o = run(&["kg", "--mass-squared", "1/4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["config"]["mass_squared"], "1/4");
    let records = r["suites"]["kg"]["records"].as_array().unwrap();
    for check in ["green-right-inverse", "green-left-inverse", "green-support", "poisson-form-preserved"] {
        assert!(records.iter().any(|x| x["check"] == check && x["status"] == "pass"), "{check}");
    }
}

#[test]
fn malformed_mass_exits_with_config_error() {
    let o = run(&["kg", "--mass-squared", "-1/0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero denominator"));
}

#[test]
fn out_of_range_lattice_exits_with_config_error() {
    assert_eq!(run(&["kg", "--L", "2"]).status.code(), Some(2));
    assert_eq!(run(&["kg", "--t-max", "3"]).status.code(), Some(2));
}

#[test]
fn config_files_are_read_and_flags_override_them() {
    let toml = scratch("run.toml");
    fs::write(&toml, "L = 4\nT_max = 6\nmass_squared = \"1\"\nseed = 3\nmax_degree = 2\n").unwrap();
    let out = scratch("from-toml.json");
    let o = run(&["kg", "--config", toml.to_str().unwrap(), "--seed", "9", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["config"]["L"], 4);
    assert_eq!(r["config"]["mass_squared"], "1");
    assert_eq!(r["config"]["seed"], 9);

    let json = scratch("run.json");
    fs::write(&json, r#"{"L": 5, "T_max": 5, "mass_squared": "0", "seed": 0, "max_degree": 3}"#).unwrap();
    let out = scratch("from-json.json");
    assert_eq!(run(&["kg", "--config", json.to_str().unwrap(), "--out", out.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(report(&out)["config"]["T_max"], 5);

    let bad = scratch("bad.toml");
    fs::write(&bad, "L = 4\nT_max = 6\nmass_squared = \"0\"\nseed = 0\nmax_degree = 3\nverbosity = 1\n").unwrap();
    assert_eq!(run(&["kg", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["kg", "--config", "/nonexistent/run.toml"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    let args = ["compare", "--L", "4", "--t-max", "6", "--seed", "11", "--samples", "4", "--element-probes", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["suites"]["compare"]["passed"], true);
}

#[test]
fn one_point_lattice_runs_the_one_dimensional_roundtrip() {
    let o = run(&["compare", "--L", "0", "--t-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let records = r["suites"]["compare"]["records"].as_array().unwrap();
    assert!(records.iter().any(|x| x["check"] == "one-dimensional-roundtrip"));
}
