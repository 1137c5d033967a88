use std::process::{Command, Output};

fn odpn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odpn")).args(args).env_remove("ODPN_SEED").output().expect("spawn odpn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cmp_prints_order_word() {
    let o = odpn(&["cmp", "0", "Om"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "LT\n");
    assert_eq!(stdout(&odpn(&["cmp", "pi", "Om"])), "GT\n");
    assert_eq!(stdout(&odpn(&["cmp", "phi(0,0)", "phi(0, 0)"])), "EQ\n");
}

#[test]
fn validate_rejects_bad_quadruple_with_status_two() {
    let o = odpn(&["validate", "d(pi;[3,2,pi,0];0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn validate_accepts_base_term() {
    let o = odpn(&["validate", "d(pi;[3,pi,pi,0];0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid i=3:D.12.1\n");
}

#[test]
fn syntax_errors_are_rejected() {
    let o = odpn(&["parse", "d(pi;"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
}

#[test]
fn parse_normalizes_whitespace() {
    let o = odpn(&["parse", "d(pi; [3,pi,pi,0]; 0)"]);
    assert_eq!(stdout(&o), "d(pi;[3,pi,pi,0];0)\n");
}

#[test]
fn order_check_passes() {
    let o = odpn(&["check", "--suite", "order", "--N", "4", "--max-symbols", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.contains("\tpass\t")));
}

#[test]
fn unknown_suite_fails() {
    let o = odpn(&["check", "--suite", "nope", "--max-symbols", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn n_below_four_is_a_usage_error() {
    let o = odpn(&["--N", "3", "cmp", "0", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_null_sequence_is_identity() {
    let o = odpn(&["--N", "6", "decompose", "d(pi;[5,pi,pi,0];0)", "s[2,2):"]);
    assert_eq!(stdout(&o), "d(pi;[5,pi,pi,0];0)\n");
}

#[test]
fn seq_over_empty_domain_for_n_four() {
    let o = odpn(&["seq", "2", "d(pi;[3,pi,pi,0];0)", "d(pi;[3,pi,pi,0];Om)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "s[2,2):\n");
}

#[test]
fn enumerate_then_iterate() {
    let dir = std::env::temp_dir().join(format!("odpn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("carrier.txt");
    let e = odpn(&["--system", "m32", "enumerate", "--max-symbols", "5"]);
    assert_eq!(e.status.code(), Some(0));
    std::fs::write(&file, &e.stdout).unwrap();
    let o = odpn(&["--system", "m32", "iterate", "--carrier", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("0 0"), "{text}");
    assert!(text.trim_end().ends_with("closed=true"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn iterate_rejects_unknown_operator() {
    let dir = std::env::temp_dir().join(format!("odpn-cli-op-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("c.txt");
    std::fs::write(&file, "0\nOm\n").unwrap();
    let o = odpn(&["iterate", "--op", "bogus", "--carrier", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}
