use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qls-smash"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn run(args: &[&str]) -> (i32, serde_json::Value, String) {
    let out = bin().args(args).output().expect("spawn qls-smash");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let report = if stdout.trim().is_empty() {
        serde_json::Value::Null
    } else {
        serde_json::from_str(&stdout).expect("stdout is JSON")
    };
    (code, report, stderr)
}

#[test]
fn semiprime_yes_and_no() {
    let cfg = config("ex_sp_n3.json");
    let (code, report, stderr) = run(&["semiprime", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["decision"]["verdict"], "yes");
    assert!(stderr.contains("Yes"));

    let cfg = config("ex_nsp_n3.json");
    let (code, report, _) = run(&["semiprime", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["decision"]["verdict"], "no");
    assert!(!report["decision"]["refutations"].as_array().unwrap().is_empty());
}

#[test]
fn prime_reports_coverage() {
    let cfg = config("ex_sp_n3.json");
    let (code, report, _) = run(&["prime", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["decision"]["verdict"], "no");
    let cov = &report["decision"]["coverage"];
    assert_eq!(cov["subgroup_order"], 3);
    assert_eq!(cov["group_order"], 9);

    let cfg = config("final_prime.json");
    let (code, report, _) = run(&["prime", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["decision"]["verdict"], "yes");
    assert_eq!(report["decision"]["coverage"]["covers_all"], true);
}

#[test]
fn validate_hopf_check_invariants() {
    for cmd in ["validate", "hopf-check", "invariants"] {
        let cfg = config("sweedler.json");
        let (code, report, _) = run(&[cmd, "--config", cfg.to_str().unwrap()]);
        assert_eq!(code, 0, "{cmd}: {report}");
        assert_eq!(report["command"], cmd);
    }
}

#[test]
fn smash_eval_emits_product_terms() {
    let cfg = config("sweedler.json");
    let (code, report, _) = run(&["smash-eval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    let product = report["product"].as_array().unwrap();
    assert_eq!(product.len(), 2);
}

#[test]
fn strict_unknown_exits_3() {
    let cfg = config("ex_sp_n3.json");
    let args = ["semiprime", "--config", cfg.to_str().unwrap(), "--degree-cap", "0"];
    let (code, report, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(report["decision"]["verdict"], "unknown");

    let mut strict_args = args.to_vec();
    strict_args.push("--strict");
    let (code, _, _) = run(&strict_args);
    assert_eq!(code, 3);
}

#[test]
fn bad_inputs_exit_2() {
    let (code, _, stderr) = run(&["semiprime", "--config", "/nonexistent.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cannot read"));

    let cfg = config("sweedler.json");
    let (code, _, stderr) = run(&["frobnicate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown command"));
}
