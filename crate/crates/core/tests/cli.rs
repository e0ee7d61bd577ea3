use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_diracgate"));
    c.env_remove("DIRACGATE_FORMAT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diracgate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_gate_reports_permutation() {
    let o = run(&["build-gate", "CC"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["unitary"], true);
    assert_eq!(v["permutation"], serde_json::json!([1, 2, 3, 0]));
    assert_eq!(v["matrix"][1][0], serde_json::json!([1.0, 0.0]));
}

#[test]
fn chain_gates_take_n() {
    let o = run(&["build-gate", "controlled-n-not", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let toffoli = json(&run(&["build-gate", "toffoli"]));
    assert_eq!(json(&o)["matrix"], toffoli["matrix"]);
    assert_eq!(code(&run(&["build-gate", "controlled-n-not"])), 1);
    assert_eq!(
        code(&run(&["build-gate", "controlled-n-not", "--n", "40"])),
        3
    );
}

#[test]
fn exit_codes() {
    let parse = run(&["build-gate", "co(I,"]);
    assert_eq!(code(&parse), 2);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("position 5"));
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["build-gate", "co(X, CNOT)"])), 3);
    assert_eq!(code(&run(&["theta", "--n", "9"])), 3);
    assert_eq!(code(&run(&["landau-spectrum", "--b", "-1"])), 1);
    assert_eq!(
        code(&run(&["decompose", "--unitary", "/nonexistent/u.json"])),
        1
    );
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn table_scenarios_fail_verification() {
    let o = run(&["verify-intertwine", "--table", "u1"]);
    assert_eq!(code(&o), 4);
    let v = json(&o);
    assert_eq!(v["label"], "U1");
    assert_eq!(v["delta_v_match"], true);
    assert_eq!(v["solution_exists"], false);
}

#[test]
fn solvable_custom_scenario_passes() {
    let v0 = r#"{"c0":-2,"c1":0.2,"c2":-0.5,"c3":0}"#;
    let v1 = r#"{"c0":-2,"c1":0.2,"c2":0.5,"c3":0}"#;
    let o = run(&["verify-intertwine", "--v0", v0, "--v1", v1, "--u", "X"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["delta_v_match"], true);
    assert_eq!(v["solution_exists"], true);
    assert_eq!(v["passed"], true);
}

#[test]
fn wrong_delta_v_is_caught() {
    let v0 = r#"[{"c0":-2,"c1":0,"c2":-0.5,"c3":0}]"#;
    let v1 = r#"[{"c0":-2,"c1":0,"c2":0.6,"c3":0}]"#;
    let args = ["verify-intertwine", "--v0", v0, "--v1", v1, "--u", "X"];
    let o = run(&args);
    assert_eq!(code(&o), 4);
    assert_eq!(json(&o)["delta_v_match"], false);
    let mut inverted = args.to_vec();
    inverted.push("--expect-fail");
    assert_eq!(code(&run(&inverted)), 0);
}

#[test]
fn landau_csv_matches_closed_form() {
    let o = run(&["landau-spectrum", "--nmax", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,eps_plus,eps_minus,fd_error"));
    let want = [0.0, 2f64.sqrt(), 2.0, 6f64.sqrt()];
    for (n, line) in lines.enumerate() {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], n.to_string());
        let plus: f64 = f[1].parse().unwrap();
        let minus: f64 = f[2].parse().unwrap();
        assert!((plus - want[n]).abs() < 1e-11, "N={n}: {plus}");
        assert_eq!(minus, -plus);
    }
}

#[test]
fn landau_verify_reports_errors() {
    let o = run(&[
        "landau-spectrum",
        "--nmax",
        "2",
        "--verify",
        "--points",
        "2000",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for line in text.lines().skip(2) {
        let err: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(err < 1e-3, "{line}");
    }
    let strict = run(&[
        "landau-spectrum",
        "--nmax",
        "2",
        "--verify",
        "--points",
        "50",
        "--spectrum-tol",
        "1e-9",
    ]);
    assert_eq!(code(&strict), 4);
}

#[test]
fn theta_level_two() {
    let v = json(&run(&["theta", "--n", "2"]));
    assert_eq!(v["dim"], 4);
    assert_eq!(v["clifford_ok"], true);
    // γ^1 = iσ2 ⊗ σ1 has +1 at (0, 3)
    assert_eq!(v["matrices"][1][0][3], serde_json::json!([1.0, 0.0]));
    assert_eq!(json(&run(&["theta", "--n", "1"]))["clifford_ok"], false);
}

#[test]
fn decompose_from_file() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let path = scratch("hadamard.json");
    std::fs::write(&path, format!("[[{h}, {h}], [{h}, {}]]", -h)).unwrap();
    let o = run(&["decompose", "--unitary", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let a = &v["coefficients"];
    assert!((a["c1"][0].as_f64().unwrap() - h).abs() < 1e-12);
    assert!((a["c3"][0].as_f64().unwrap() - h).abs() < 1e-12);
    assert_eq!(a["c0"][0], 0.0);
    assert!((v["norm_sq_sum"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn decompose_gamma_basis() {
    let v = json(&run(&["decompose", "--gate", "CNOT"]));
    assert!(v["reconstruction_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn lorentz_paths() {
    let o = run(&[
        "lorentz",
        "--e",
        "1,0,0",
        "--b",
        "0,0,1",
        "--v",
        "0,1,0",
        "--via-potential",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["force"]["c1"], serde_json::json!([2.0, 0.0]));
    assert_eq!(v["max_path_difference"], 0.0);
    assert!(v["potential_path"].is_object());
    assert_eq!(code(&run(&["lorentz"])), 1);
}

#[test]
fn config_file_and_environment() {
    let cfg = scratch("run.conf");
    std::fs::write(&cfg, "# defaults\nformat = csv\nunitary_tol = 1e-9\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "build-gate", "SWAP"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("row,col,re,im\n0,0,1,0\n"), "{text}");

    let o = bin()
        .env("DIRACGATE_FORMAT", "pretty")
        .args(["build-gate", "SWAP"])
        .output()
        .unwrap();
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .starts_with("SWAP  (4x4, unitary: true"));

    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "json",
        "build-gate",
        "SWAP",
    ]);
    assert_eq!(json(&o)["tolerance"], 1e-9);

    let bad = scratch("bad.conf");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(code(&run(&["--config", bad.to_str().unwrap(), "theta"])), 1);
}

#[test]
fn output_file_and_reruns_are_byte_identical() {
    let path = scratch("all.json");
    let args = ["verify-intertwine", "--all", "-o", path.to_str().unwrap()];
    assert_eq!(code(&run(&args)), 4);
    let first = std::fs::read(&path).unwrap();
    assert_eq!(code(&run(&args)), 4);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let v: Value = serde_json::from_slice(&first).unwrap();
    let labels: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["U0", "U1", "U2", "U3"]);
}
