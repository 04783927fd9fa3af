use std::fs;
use std::process::{Command, Output};

fn bdiagram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdiagram")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const EDGE: &str = r#"{"n":2,"lambda":[1,1],"up":[1,2],"down":[1,2],"edges":[[1,2]]}"#;
const DOT: &str = r#"{"n":1,"lambda":[1],"up":[1],"down":[1],"edges":[]}"#;

#[test]
fn enumerate_weight_three() {
    let o = bdiagram(&["enumerate", "--weight", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "372\n62 154 124 32\n");
}

#[test]
fn enumerate_crosscheck_and_emit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w2.jsonl");
    let o = bdiagram(&["enumerate", "--weight", "2", "--crosscheck", "--emit-diagrams", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("36\n"));
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 36);
    for line in text.lines() {
        let o = bdiagram(&["coproduct", line]);
        assert!(o.status.success(), "{line}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = bdiagram(&["star", EDGE, EDGE]);
    let b = bdiagram(&["star", EDGE, EDGE]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = bdiagram(&["enumerate", "--weight", "3", "--by-hfup"]);
    let b = bdiagram(&["enumerate", "--weight", "3", "--by-hfup"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn connected_coproduct_has_two_terms() {
    let o = bdiagram(&["coproduct", EDGE]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn diagram_from_file_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    fs::write(&path, EDGE).unwrap();
    let from_file = bdiagram(&["primitive", path.to_str().unwrap()]);
    let inline = bdiagram(&["primitive", EDGE]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, inline.stdout);
    assert!(stdout(&inline).contains(EDGE));

    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_bdiagram"))
        .args(["star", "-", DOT])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(DOT.as_bytes()).unwrap();
    let piped = child.wait_with_output().unwrap();
    assert!(piped.status.success());
    assert_eq!(stdout(&piped).lines().count(), 2);
}

#[test]
fn star_words() {
    let o = bdiagram(&["star", "--words", DOT, DOT]);
    assert_eq!(stdout(&o), "1 R>((1,1)) R>((2,2)) B((1,1))< B((2,2))<\n1 R>((1,1)(2,2)) B((1,1)(2,2))<\n");
}

#[test]
fn stirling_numbers() {
    let o = bdiagram(&["stirling", "--r", "1,1,1", "--s", "1,1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "alpha=0; S(1)=1 S(2)=3 S(3)=1\n");
    for route in ["diagram", "monomial"] {
        let p = bdiagram(&["stirling", "--r", "1,1,1", "--s", "1,1,1", "--route", route]);
        assert_eq!(p.stdout, o.stdout, "{route}");
    }
}

#[test]
fn normal_order_routes() {
    let o = bdiagram(&["normal-order", "(a a+)^2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 * a+^2 a^2\n3 * a+^1 a^1\n1 * 1\n");
}

#[test]
fn partition_products_match() {
    for args in [
        ["wsym", "mul", "{1,2}", "{1|2}"],
        ["bwsym", "mul", "{[2,1]}", "{[1]}"],
    ] {
        let o = bdiagram(&args);
        assert!(o.status.success(), "{args:?}");
        assert!(stdout(&o).ends_with("match\n"));
    }
    let o = bdiagram(&["bwsym", "coproduct", "{[3,1]|[2]}"]);
    assert!(stdout(&o).ends_with("4 terms, match\n"));
}

#[test]
fn selftest_single_criterion() {
    let o = bdiagram(&["selftest", "--criterion", "9"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS criterion  9"));
}

#[test]
fn exit_codes() {
    assert_eq!(bdiagram(&["enumerate"]).status.code(), Some(2));
    assert_eq!(bdiagram(&["selftest", "--criterion", "13"]).status.code(), Some(2));
    assert_eq!(bdiagram(&["stirling", "--r", "1", "--s", "1", "--route", "fast"]).status.code(), Some(2));
    let bad = bdiagram(&["coproduct", r#"{"n":1,"lambda":[1],"up":[],"down":[],"edges":[[1,1]]}"#]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
    assert_eq!(bdiagram(&["normal-order", "a^"]).status.code(), Some(1));
    assert_eq!(bdiagram(&["stirling", "--r", "1,1", "--s", "1"]).status.code(), Some(1));
    assert_eq!(bdiagram(&["coproduct", "/nonexistent/g.json"]).status.code(), Some(1));
}
