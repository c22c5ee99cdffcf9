use std::io::Write;
use std::process::{Command, Output};

fn ldp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn fixture_path(name: &str) -> String {
    format!("{}/../core/data/fixtures/{name}.ldp", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn graph_values() {
    let o = ldp(&["graph", "[2,3,2^2]", "coeff"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("got 6/11"));
    let o = ldp(&["graph", "[2]", "gap", "--expect", "1"]);
    assert_eq!(code(&o), 0);
    let o = ldp(&["graph", "[2]", "gap", "--expect", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL] gap"));
    let o = ldp(&["graph", "[3,2]", "discrepancies"]);
    // listed in the canonical orientation [2,3]
    assert!(stdout(&o).contains("([2,3]): expected -, got [1/5, 2/5]"));
}

#[test]
fn graph_usage_errors() {
    let o = ldp(&["graph", "[3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 2"));
    assert_eq!(code(&ldp(&["graph", "[2,1]"])), 2);
    assert_eq!(code(&ldp(&["graph", "[3]+[2]", "coeff", "--expect", "1/3"])), 2);
}

#[test]
fn not_negative_definite_is_a_failed_check() {
    let o = ldp(&["graph", "[2;[2,2],[2,2],[2,2]]", "coeff"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn tables() {
    let o = ldp(&["table", "e35"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = ldp(&["table", "ksq", "--g", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("got 2/455"));
    assert_eq!(code(&ldp(&["table", "bogus"])), 2);
    assert_eq!(code(&ldp(&["table", "e35", "--g", "2"])), 2);
    assert_eq!(code(&ldp(&["table", "ksq", "--g", "1"])), 2);
}

#[test]
fn searches() {
    let o = ldp(&["search", "D1"]);
    assert_eq!(code(&o), 0);
    let o = ldp(&["search", "GEN-2", "--parallel"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("expected {}, got {}"));
    assert_eq!(code(&ldp(&["search", "D9"])), 2);
}

#[test]
fn constructions() {
    let o = ldp(&["construct", &fixture_path("char_any")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("expected 1/11, got 1/11"));
    let o = ldp(&["construct", "--fixture", "nt5_nu4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("got 5/77"));
    assert_eq!(code(&ldp(&["construct", "--fixture", "nope"])), 2);
    assert_eq!(code(&ldp(&["construct", "/nonexistent/script.ldp"])), 2);
}

#[test]
fn construction_script_errors_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ldp");
    std::fs::File::create(&bad).unwrap().write_all(b"base p2\ncurve C class 3\nblowup (D:1)\n").unwrap();
    let o = ldp(&["construct", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let wrong = dir.path().join("wrong.ldp");
    std::fs::File::create(&wrong).unwrap().write_all(b"base p2\nexpect ksq 8\n").unwrap();
    let o = ldp(&["construct", wrong.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL] ksq: expected 8/1, got 9/1"));
}

#[test]
fn abstract_base_from_file() {
    let dir = tempfile::tempdir().unwrap();
    // F_1 written as an abstract lattice: h^2 = 1, e^2 = -1, K = -3h + e
    std::fs::write(dir.path().join("f1.toml"), "names = [\"h\", \"e\"]\ngram = [[1, 0], [0, -1]]\ncanonical = [-3, 1]\n")
        .unwrap();
    let script = dir.path().join("s.ldp");
    std::fs::write(&script, "base abstract f1.toml\ncurve E class 0 1\nexpect ksq 8\nexpect rank 2\n").unwrap();
    let o = ldp(&["construct", script.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn curves() {
    let o = ldp(&["curves", "verify-config", "--char", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[PASS] M_u tangent to Q iff char 5 (F_5): expected {2}, got {2}"));
    assert_eq!(code(&ldp(&["curves", "verify-config", "--char", "0"])), 0);
    assert_eq!(code(&ldp(&["curves", "verify-config", "--char", "4"])), 2);
    let o = ldp(&["curves", "intersect", "x^3 - y^2*z", "y", "--at", "0:0:1", "--expect", "3"]);
    assert_eq!(code(&o), 0);
    let o = ldp(&["curves", "intersect", "x", "x", "--at", "0:0:1"]);
    assert!(stdout(&o).contains("INFINITE"));
    assert_eq!(code(&ldp(&["curves", "intersect", "x", "y", "--at", "0:0"])), 2);
}

#[test]
fn json_output_matches_text() {
    let o = ldp(&["--json", "graph", "[3,2]", "coeff"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool"], "ldp");
    assert_eq!(v["checks"][0]["actual"], "2/5");
    assert_eq!(v["checks"][0]["status"], "pass");
    assert_eq!(v["summary"]["pass"], 1);
}

#[test]
fn output_is_deterministic() {
    for args in [&["search", "D3", "--parallel"][..], &["construct", "--fixture", "nodal"], &["--json", "table", "e35"]] {
        assert_eq!(stdout(&ldp(args)), stdout(&ldp(args)));
    }
}

#[test]
fn verify_all_passes() {
    let o = ldp(&["verify-all", "--parallel"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 fail"));
}
