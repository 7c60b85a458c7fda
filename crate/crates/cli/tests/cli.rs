use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fflab")).args(args).env_remove("FFLAB_MODE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_symbolic() {
    let o = fflab(&["verify", "--suites", "all", "--mode", "symbolic"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 nonzero\n"));
}

#[test]
fn verify_numeric_json() {
    let o = fflab(&["verify", "--suites", "ybe2", "--mode", "numeric", "--seed", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "numeric");
    assert_eq!(v["all_zero"], true);
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.iter().all(|c| c["points"] == 5));
}

#[test]
fn mode_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fflab"))
        .args(["verify", "--suites", "tables", "--json"])
        .env("FFLAB_MODE", "numeric")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "numeric");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fflab(&["verify", "--suites", "nosuch"]).status.code(), Some(2));
    assert_eq!(fflab(&["verify", "--mode", "fuzzy"]).status.code(), Some(2));
    assert_eq!(fflab(&["rmatrix", "nosuch"]).status.code(), Some(2));
    assert_eq!(fflab(&["partition", "--lambda", "2,1", "--rows", "2", "--cols", "3"]).status.code(), Some(2));
    assert_eq!(fflab(&["bogus"]).status.code(), Some(2));
}

#[test]
fn partition_examples() {
    let o = fflab(&["partition", "--lambda", "1", "--rows", "1", "--flavor", "gamma"]);
    assert_eq!(stdout(&o), "Z = sqrt_v*z_1\nrhs = sqrt_v*z_1\nverdict: EQUAL\n");
    let o = fflab(&["partition", "--lambda", "0,0", "--rows", "2", "--flavor", "delta"]);
    assert!(stdout(&o).starts_with("Z = -1*sqrt_v^2*z_2 + z_1\n"));
    assert!(stdout(&o).contains("EQUAL"));
    let o =
        fflab(&["partition", "--lambda", "2,1", "--rows", "2", "--flavor", "gamma", "--at", "z_1=2,z_2=3,sqrt_v=1/5"]);
    assert_eq!(stdout(&o), "Z = 282/625\nrhs = 282/625\nverdict: EQUAL\n");
}

#[test]
fn partition_states_drawn() {
    let o = fflab(&["partition", "--lambda", "1,0", "--rows", "2", "--states"]);
    let s = stdout(&o);
    assert!(s.contains("3 states"));
    assert_eq!(s.matches(" o ").count(), 3 * 2 * 3);
}

#[test]
fn schur_examples() {
    let o = fflab(&["schur", "--lambda", "2,1", "--vars", "2", "--method", "both"]);
    assert!(stdout(&o).contains("z_1^2*z_2 + z_1*z_2^2"));
    assert!(stdout(&o).contains("EQUAL"));
    assert_eq!(stdout(&fflab(&["schur", "--lambda", "0", "--vars", "3"])), "1\n");
    assert_eq!(stdout(&fflab(&["schur", "--lambda", "1,1,1", "--vars", "2"])), "0\n");
}

#[test]
fn rmatrix_outputs() {
    let o = fflab(&["rmatrix", "R", "--zeta", "zeta", "--zeta-p", "zeta_p"]);
    assert!(stdout(&o).contains("a1 = -1*zeta*zeta_p, a2 = 1, b1 = zeta_p, b2 = zeta, c1 = -1*zeta^2 + 1, c2 = 0"));
    let o = fflab(&["rmatrix", "A", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["a1"], "-1*z");
    assert_eq!(v["b2"], "1");
    assert_eq!(v["c1"], "-1*q + q^-1");
    let o = fflab(&["rmatrix", "table:R_GD"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c2 = -1*sqrt_v^2*z_2 + z_2"));
}

#[test]
fn json_round_trips_through_check_weights() {
    for kind in ["table:T_GAMMA", "table:T_DELTA", "table:R_DG", "baxterized", "R"] {
        let json = stdout(&fflab(&["rmatrix", kind, "--json"]));
        let mut child = Command::new(env!("CARGO_BIN_EXE_fflab"))
            .args(["check-weights", "-"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(json.as_bytes()).unwrap();
        let o = child.wait_with_output().unwrap();
        let out = stdout(&o);
        assert!(out.contains("free-fermion residual: 0"), "{kind}: {out}");
        if kind.starts_with("table:") {
            assert!(out.contains(": yes"), "{kind}");
        }
    }
}

#[test]
fn check_weights_flags_non_free_fermion() {
    let path = std::env::temp_dir().join("fflab-bad-pack.json");
    std::fs::write(&path, r#"{"kind":"custom","a1":"1","a2":"1","b1":"1","b2":"1","c1":"1","c2":"1"}"#).unwrap();
    let o = fflab(&["check-weights", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("free-fermion residual: 1"));
}
