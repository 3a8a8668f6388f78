use std::process::{Command, Output};

fn emcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emcode")).args(args).env_remove("AUTOLAB_SEED").output().unwrap()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn code_run_emits_one_row_per_round() {
    let out = emcode(&["code", "run", "--l1", "2", "--l2", "3", "--rounds", "6", "--seed", "7"]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Vec<serde_json::Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["isg_match"] == true && r["violations"] == 0));
}

#[test]
fn zero_rounds_is_empty_success() {
    let out = emcode(&["code", "run", "--rounds", "0"]);
    assert_eq!(code_of(&out), 0);
    assert!(out.stdout.is_empty());
}

#[test]
fn runs_are_deterministic_per_seed() {
    let args = ["code", "run", "--l1", "2", "--l2", "2", "--rounds", "5", "--runs", "2", "--seed", "3", "--format", "csv"];
    let a = emcode(&args);
    let b = emcode(&args);
    assert_eq!(code_of(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn environment_seed_is_used_without_flag() {
    let base = ["code", "run", "--l1", "2", "--l2", "2", "--rounds", "4"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_emcode")).args(base).env("AUTOLAB_SEED", "13").output().unwrap();
    let mut flagged = base.to_vec();
    flagged.extend(["--seed", "13"]);
    assert_eq!(with_env.stdout, emcode(&flagged).stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code_of(&emcode(&["code", "run", "--l1", "1"])), 2);
    assert_eq!(code_of(&emcode(&["code", "run", "--bogus"])), 2);
    assert_eq!(code_of(&emcode(&["verify", "--only", "nothing"])), 2);
    assert_eq!(code_of(&emcode(&["fermion", "defect", "--sizes", "4"])), 2);
    assert_eq!(code_of(&emcode(&["--help"])), 0);
}

#[test]
fn fast_suites_pass() {
    let out = emcode(&["verify", "--only", "dj-algebra,kw-signs,code"]);
    assert_eq!(code_of(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn injected_sign_error_is_caught() {
    let out = emcode(&["verify", "--only", "kw-matrix", "--inject-kw-sign-error"]);
    assert_eq!(code_of(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("VERIFICATION_FAILURE"));
}

#[test]
fn fermion_parity_reports_odd_difference() {
    let out = emcode(&["fermion", "parity", "--width", "6", "--height", "24"]);
    assert_eq!(code_of(&out), 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let col = rdr.headers().unwrap().iter().position(|h| h == "parity_difference").unwrap();
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| &r[col] == "1"));
}
