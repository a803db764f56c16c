use assert_cmd::Command;
use serde_json::Value;

fn qfleck() -> Command {
    let mut cmd = Command::cargo_bin("qfleck").unwrap();
    cmd.env_remove("QFLECK_THREADS");
    cmd
}

fn stdout(args: &[&str]) -> String {
    let out = qfleck().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn qbinom_prints_polynomial() {
    assert_eq!(stdout(&["qbinom", "4", "2"]), "q^4+q^3+2*q^2+q+1\n");
    assert_eq!(stdout(&["qbinom", "4", "2", "--deriv", "1"]), "4*q^3+3*q^2+4*q+1\n");
    assert_eq!(stdout(&["qbinom", "3", "0"]), "1\n");
    assert_eq!(stdout(&["qbinom", "3", "5"]), "0\n");
}

#[test]
fn sums_print_exact_values() {
    assert_eq!(stdout(&["sum", "--c", "1", "--n", "2"]), "-q+1\n");
    assert_eq!(stdout(&["sum", "--c", "1", "--n", "7"]), "0\n");
    assert_eq!(stdout(&["sum", "--c", "2", "--n", "2"]), "z*q+z\n");
    let factored = stdout(&["sum", "--c", "4", "--j", "1", "--n", "7", "--factored"]);
    assert!(factored.contains("q^2") && factored.contains("Phi_4") && factored.contains("Phi_7"), "{factored}");
    assert!(factored.starts_with("-1"), "{factored}");
}

#[test]
fn printed_sums_parse_back() {
    let text = stdout(&["sum", "--c", "3", "--n", "6", "--P", "x+z", "--l", "1"]);
    let again = stdout(&["factor", text.trim(), "--c", "3", "--json"]);
    let v: Value = serde_json::from_str(&again).unwrap();
    assert!(v.get("residual").is_some(), "{v}");
}

#[test]
fn factor_finds_cyclotomic_parts() {
    assert_eq!(stdout(&["factor", "q^4-1"]).trim(), "+1 * Phi_1 * Phi_2 * Phi_4 * (1)");
    assert!(stdout(&["factor", "q+1"]).contains("Phi_2"));
    assert!(stdout(&["factor", "z+z*q", "--c", "2"]).contains("Phi_2"));
}

#[test]
fn verify_json_shape() {
    let out = stdout(&["--json", "verify", "gaussian", "--n-max", "12"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    for key in ["version", "check_id", "grid", "cases_run", "failures", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}: {v}");
    }
    assert_eq!(v["check_id"], "gaussian");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_accepts_grid_ranges() {
    qfleck()
        .args(["verify", "main", "--c", "1..2", "--k", "1,3", "--d", "0..1", "--l", "0", "--n-cap", "30"])
        .assert()
        .success();
    qfleck().args(["verify", "fleck", "--c", "3", "--P", "x+z", "--n-cap", "30"]).assert().success();
}

#[test]
fn thread_count_does_not_change_reports() {
    let run = |threads: &str| {
        let out = qfleck()
            .env("QFLECK_THREADS", threads)
            .args(["--json", "verify", "fleck", "--c", "2..3", "--n-cap", "30"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone();
        let mut v: Value = serde_json::from_slice(&out).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn usage_errors_exit_two() {
    qfleck().args(["verify", "nonsense"]).assert().code(2);
    qfleck().args(["sum", "--c", "3", "--j", "3", "--n", "5"]).assert().code(2);
    qfleck().args(["sum", "--c", "0", "--n", "5"]).assert().code(2);
    qfleck().args(["factor", "q^^2"]).assert().code(2);
    qfleck().args(["verify", "main", "--c", "0..2"]).assert().code(2);
    qfleck().args(["verify", "main", "--P", "x+"]).assert().code(2);
    qfleck().args(["verify", "main", "--c", "3..1"]).assert().code(2);
}

#[test]
fn table_rows_match() {
    let out = stdout(&["table1"]);
    assert_eq!(out.matches("MATCH").count(), 3, "{out}");
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn sharpness_exit_status() {
    let out = stdout(&["sharpness", "--p-max", "3", "--n-max", "12"]);
    assert!(out.contains("p=3"));
}
