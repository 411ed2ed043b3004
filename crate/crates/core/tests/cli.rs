use std::path::Path;
use std::process::{Command, Output};

fn cobord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobord")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn order_and_index() {
    let o = cobord(&["order", "< u, v | u v u = v, v u v = u >"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "order: 8");
    let o = cobord(&["order", "< u, v | u v u = v, v u v = u >", "--subgroup", "u"]);
    assert_eq!(stdout(&o).trim(), "index: 2");
}

#[test]
fn coset_table_csv() {
    let path = std::env::temp_dir().join(format!("cobord-cli-{}.csv", std::process::id()));
    let o = cobord(&["order", "< a | a^3 >", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("coset,"));
}

#[test]
fn abelianize_matrix_and_presentation() {
    let o = cobord(&["abelianize", "--matrix", "-1 1 1; 1 -1 1; 1 1 -1"]);
    assert!(stdout(&o).contains("Z/2 + Z/2"));
    let o = cobord(&["abelianize", "< t, a | t^3 = a^3, a t a = t a t >"]);
    assert_eq!(stdout(&o).trim(), "Z");
}

#[test]
fn quotient_and_twist_spun() {
    let o = cobord(&["quotient", "< t, a | t^3 = a^3, a t a = t a t >", "--relator", "t^3"]);
    assert_eq!(stdout(&o).trim(), "order: 24");
    let o = cobord(&["twist-spun", "-n", "4", "--quotient", "4"]);
    assert!(stdout(&o).contains("order of G_4/<<t^4>>: 96"), "{}", stdout(&o));
}

#[test]
fn surgery_on_fixture() {
    let d = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/diagrams/hopf_circles_q8.json");
    let o = cobord(&["surgery", "--diagram", d.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.contains("H1: Z/2 + Z/2"), "{out}");
    assert!(out.contains("order: 8"), "{out}");
}

#[test]
fn limits_and_errors_have_distinct_exit_codes() {
    let o = cobord(&["--max-cosets", "50", "order", "< a, b | a^2, b^3, a b a b a b a b a b >"]);
    assert_eq!(o.status.code(), Some(3));
    let o = cobord(&["order", "< a | b >"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cobord(&["mapping-torus", "< u, v | u v u = v, v u v = u >", "--map", "u=u", "--map", "v=u"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_paper_json() {
    let o = cobord(&["verify-paper", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 19);
    assert!(claims.iter().all(|c| c["status"] == "pass" || c["status"] == "flagged"));
    let o = cobord(&["verify-paper", "--claims", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
}
