use std::process::Command;

fn qlsa(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qlsa")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn verify_shipped_presentation() {
    let (code, out) = qlsa(&["verify-presentation", &data("gl2_3_1.qls")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("abstract Jacobi: PASS"));
}

#[test]
fn normal_form_example() {
    let (code, out) = qlsa(&["normal-form", "--algebra", "gl2n1", "--n", "3", "Q[1] Qbar[1]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "c - E[2,2] - 2*E[3,3] + E[2,2] E[3,3] - E[2,3] E[3,2] - Qbar[1] Q[1]");
}

#[test]
fn normal_form_on_file_with_explicit_order() {
    let order = "y[1] y[2] y[3] y[4] y[5] y[6] x[1] x[2] x[3] x[4] x[5] x[6] x[7] x[8] x[9]";
    let (code, _) = qlsa(&["normal-form", "--file", &data("gl2_3_1.qls"), "--order", order, "y[4] y[1]"]);
    assert_eq!(code, 2, "odd-first order is not admissible");
    let (code, out) = qlsa(&["normal-form", "--file", &data("gl2_3_1.qls"), "y[4] y[1]"]);
    assert_eq!(code, 0);
    assert!(out.contains("y[1] y[4]"));
}

#[test]
fn structured_reports_are_deterministic() {
    let args = ["--format", "structured", "fock-check", "--n", "4"];
    let (code, a) = qlsa(&args);
    let (_, b) = qlsa(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["factor"], "-3/2");
    assert_eq!(v["zero_step"]["spectrum_in_1_4"], true);
}

#[test]
fn export_round_trips_through_verify() {
    let dir = std::env::temp_dir().join(format!("qlsa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gl2_4_1.qls");
    let (code, text) = qlsa(&["export-presentation", "--n", "4", "--c", "5/2"]);
    assert_eq!(code, 0);
    std::fs::write(&path, &text).unwrap();
    let (code, out) = qlsa(&["verify-presentation", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn inadmissible_order_is_a_verification_failure() {
    let (code, out) = qlsa(&["serre-check", "--algebra", "gl2n1", "--n", "3", "--order", "odd-first", "--degree", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("not admissible"));
}

#[test]
fn missing_file_is_a_usage_error() {
    let (code, _) = qlsa(&["verify-presentation", "/nonexistent/file.qls"]);
    assert_eq!(code, 2);
}
