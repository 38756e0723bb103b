use std::process::Command;

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ultralevels")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn omega_of_eight() {
    assert_eq!(run(&["omega", "8"]), ("3\n".into(), 0));
}

#[test]
fn level_and_classes() {
    assert_eq!(run(&["level", "12"]).0, "L_3 (2,1)\n");
    assert_eq!(run(&["level", "1"]).0, "L_0\n");
    assert_eq!(run(&["classes", "3"]).0, "(3)\n(2,1)\n(1,1,1)\n");
    assert_eq!(run(&["quotient", "3", "4"]).0, "L_1\n");
    assert_eq!(run(&["quotient", "1", "4"]).0, "empty\n");
}

#[test]
fn enumerate_a_set() {
    assert_eq!(run(&["enum", "level(2)", "--bound", "30"]).0, "4 6 9 10 14 15 21 22 25 26\n");
    assert_eq!(run(&["enum", "quot(level(3),2)", "--bound", "10"]).0, "4 6 9 10\n");
}

#[test]
fn non_divisibility_exits_one() {
    assert_eq!(run(&["divides", "principal:4", "principal:6"]), ("Refuted(6)\n".into(), 1));
    let (out, code) = run(&["divides", "principal:2", "principal:6"]);
    assert!(out.starts_with("Proven("));
    assert_eq!(code, 0);
}

#[test]
fn falpha_reports_its_level() {
    let (out, code) = run(&["falpha", "[(2,^1,x2)]"]);
    assert_eq!(code, 0);
    assert!(out.contains("sigma 2\n"));
    assert!(out.contains("witness 6\n"));
}

#[test]
fn evidence_and_chain() {
    let (out, code) = run(&["evidence", "tails:diag(pow2)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("NotOnFiniteLevels(checked_up_to=50, proven=51/51)"));
    let (out, code) = run(&["chain", "tails:diag(pow2)", "--chain-length", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| !l.starts_with(' ')).count(), 4);
    let (out, _) = run(&["product", "principal:4", "tails:primes"]);
    assert!(out.contains("OnLevel(3"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["omega", "0"]).1, 2);
    assert_eq!(run(&["omega", "8", "--frob"]).1, 2);
    assert_eq!(run(&["enum", "level(("]).1, 2);
    assert_eq!(run(&["divides", "principal:x", "principal:6"]).1, 2);
    assert_eq!(run(&["check", "nope"]).1, 2);
}

#[test]
fn check_output_is_stable_and_written_to_file() {
    let args = ["check", "tilde-prime", "--bound", "500", "--format", "machine"];
    let (a, code) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(a, run(&[&args[..], &["--jobs", "3"]].concat()).0);
    assert!(a.starts_with("{\"suite\":\"tilde-prime\",\"params\":{\"bound\":500,"));

    let path = std::env::temp_dir().join(format!("ultralevels-cli-{}.md", std::process::id()));
    let (stdout, code) = run(&["check", "level-partition", "--bound", "100", "--out", path.to_str().unwrap()]);
    assert_eq!((stdout.as_str(), code), ("", 0));
    let md = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(md.contains("| level-partition | 100 | 100 | 0 | 0 | PASS |"));
}
