use std::io::Write;
use std::process::{Command, Output, Stdio};

use bdconvex::io::format_sig15;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bdconvex"))
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_reference_state() {
    let out = run_with_stdin(&["analyze"], r#"{"p":[0.7,0.1,0.1,0.1]}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lsd"]["lambda"].as_f64(), Some(0.6));
    assert!((v["ree"]["bits"].as_f64().unwrap() - 0.12577).abs() < 1e-5);
    assert_eq!(v["coincidence"], serde_json::json!(true));
}

#[test]
fn analyze_t_form_of_uniform_state() {
    let out = run_with_stdin(&["analyze", "--state", "-"], r#"{"t":[0,0,0]}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classification"], "separable_interior");
    assert_eq!(v["lsd"]["lambda"].as_f64(), Some(1.0));
    assert_eq!(v["ree"]["bits"].as_f64(), Some(0.0));
}

#[test]
fn analyze_reads_state_files() {
    let dir = std::env::temp_dir().join(format!("bdconvex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("state.json");
    std::fs::write(&path, r#"{"p":[0.1,0.1,0.7,0.1]}"#).unwrap();
    let out = bin()
        .args(["analyze", "--state", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["lsd"]["entangled_index"], 3);
    let missing = bin()
        .args(["analyze", "--state", dir.join("nope.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn analyze_output_is_byte_stable() {
    let a = run_with_stdin(&["analyze"], r#"{"p":[0.61,0.2,0.12,0.07]}"#);
    let b = run_with_stdin(&["analyze"], r#"{"p":[0.61,0.2,0.12,0.07]}"#);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_input_exits_2() {
    for input in [r#"{"p":[0.7,0.1,0.1]}"#, "{", r#"{"p":[1,0,0,0],"t":[0,0,0]}"#] {
        let out = run_with_stdin(&["analyze"], input);
        assert_eq!(out.status.code(), Some(2), "{input}");
    }
    let out = bin().args(["analyze", "--format", "xml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_state_exits_3() {
    for input in [r#"{"p":[0.7,0.2,0.2,0.1]}"#, r#"{"p":[1.2,-0.2,0,0]}"#, r#"{"t":[1,1,1]}"#] {
        let out = run_with_stdin(&["analyze"], input);
        assert_eq!(out.status.code(), Some(3), "{input}");
    }
}

#[test]
fn sweep_lambda_column_is_closed_form() {
    let out = bin()
        .args(["sweep", "--p1-min", "0.6", "--p1-max", "0.9", "--steps", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p1,lambda,ree_bits,concurrence,w1,w2,w3,w4"));
    let fields: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(fields.len(), 4);
    for (f, p1) in fields.iter().zip([0.6, 0.7, 0.8, 0.9]) {
        let row: Vec<f64> = f.iter().map(|v| v.parse().unwrap()).collect();
        assert!((row[0] - p1).abs() < 1e-14);
        // identical at the printed 15 significant digits
        assert_eq!(f[1], format_sig15(2.0 * (1.0 - row[0])));
        let c: f64 = 2.0 * row[0] - 1.0;
        assert!((row[2] + 0.5 * (1.0 - c * c).log2()).abs() <= 1e-12);
        assert_eq!(row[4], 0.5);
    }
}

#[test]
fn sweep_near_boundary_approaches_zero() {
    let out = bin()
        .args(["sweep", "--p1-min", "0.500001", "--p1-max", "0.6", "--steps", "3"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let first: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert!(first[2] < 1e-10);
}

#[test]
fn sweep_json_rows() {
    let out = bin()
        .args(["sweep", "--p1-min", "0.6", "--p1-max", "0.7", "--steps", "2", "--format", "json"])
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["lambda"].as_f64(), Some(0.6));
}

#[test]
fn sweep_bad_range_exits_4() {
    for args in [
        ["--p1-min", "0.4", "--p1-max", "0.9", "--steps", "4"],
        ["--p1-min", "0.9", "--p1-max", "0.6", "--steps", "4"],
        ["--p1-min", "0.6", "--p1-max", "1.0", "--steps", "4"],
        ["--p1-min", "0.6", "--p1-max", "0.9", "--steps", "0"],
    ] {
        let out = bin().arg("sweep").args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(4), "{args:?}");
    }
}

#[test]
fn verify_quick_reference_state() {
    let out = run_with_stdin(&["verify", "--level", "quick"], r#"{"p":[0.7,0.1,0.1,0.1]}"#);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["sdp_lambda", "lp_lambda", "kkt_ree", "slackness", "residual_purity"]);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["residual"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn verify_full_adds_oracle_checks() {
    let out = run_with_stdin(
        &["verify", "--level", "full", "--step", "0.005"],
        r#"{"p":[0.1,0.65,0.15,0.1]}"#,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    assert_eq!(checks[5]["name"], "grid_min_ree");
    assert_eq!(checks[6]["name"], "grid_max_lambda");
    assert_eq!(checks[5]["tolerance"].as_f64(), Some(0.015));
}

#[test]
fn verify_rejects_uniform_state() {
    let out = run_with_stdin(&["verify"], r#"{"p":[0.25,0.25,0.25,0.25]}"#);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_bad_step_exits_4() {
    let out = run_with_stdin(&["verify", "--level", "full", "--step", "0.5"], r#"{"p":[0.7,0.1,0.1,0.1]}"#);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_random_batch_is_seeded() {
    let run = |seed: &str| {
        bin()
            .args(["verify", "--random", "5"])
            .env("BDCONVEX_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run("7");
    let b = run("7");
    let c = run("8");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(json(&a)["seed"], 7);

    let default = bin()
        .args(["verify", "--random", "1"])
        .env_remove("BDCONVEX_SEED")
        .output()
        .unwrap();
    assert_eq!(json(&default)["seed"], 42);
    let bad = run("not-a-number");
    assert_eq!(bad.status.code(), Some(2));
}
