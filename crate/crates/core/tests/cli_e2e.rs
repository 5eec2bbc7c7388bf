//! Runs the `order3` binary end to end and checks exit codes and output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn order3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_order3"))
        .args(args)
        .env_remove("ORDER3_CACHE_DIR")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn construct_prints_order() {
    let out = order3(&["construct", "PSL(2,8)"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("order 504"), "{}", stdout(&out));
    assert!(stderr(&out).contains("elapsed:"));
    assert!(!stdout(&out).contains("elapsed"));
}

#[test]
fn unknown_group_is_usage_error() {
    for args in [
        &["construct", "PSL(2,6)"][..],
        &["construct", "Foo(3)"],
        &["table1", "--format", "xml"],
        &[],
    ] {
        let out = order3(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stdout(&out));
    }
}

#[test]
fn check_and_crosscheck_pass() {
    let out = order3(&["check", "Alt(6)"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("(1 2 3)(4 5 6)"));
    let out = order3(&["--format", "csv", "crosscheck", "PSL(3,4)"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("check,expected,actual,pass"));
}

#[test]
fn check_over_cap_is_resource_error() {
    let out = order3(&["--cap", "1000", "check", "PSL(3,4)"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("predict"), "{}", stderr(&out));
}

#[test]
fn predict_symbolic_rows() {
    let out = order3(&["predict", "--family", "PSL2", "--q", "8"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("false"));
    let out = order3(&["predict", "--family", "PSL2", "--q", "6"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn mislabelled_bundle_fails_crosscheck() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a7.bundle");
    // The two classes carry each other's labels.
    std::fs::write(
        &path,
        "name Alt(7)\ndegree 7\norder 2520\nfamily Alt 7\n\
         gen 1 2 3 4 5 6 0\ngen 1 2 0 3 4 5 6\n\
         class (123)(456) 1 2 0 3 4 5 6\nclass (123) 1 2 0 4 5 3 6\n",
    )
    .unwrap();
    let name = format!("Bundle({})", path.display());
    let out = order3(&["crosscheck", &name]);
    assert_eq!(code(&out), 1, "{}{}", stdout(&out), stderr(&out));
    assert!(stdout(&out).contains("result: fail"));

    let good = format!("Bundle({})", fixture("a5.bundle").display());
    let out = order3(&["crosscheck", &good]);
    assert_eq!(code(&out), 0, "{}{}", stdout(&out), stderr(&out));
}

#[test]
fn robinson_fixtures() {
    let a5 = fixture("a5.deg").display().to_string();
    let out = order3(&["robinson", "Alt(5)", &a5]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let corrupt = fixture("corrupt.deg").display().to_string();
    let out = order3(&["robinson", "Alt(5)", &corrupt]);
    assert_eq!(code(&out), 2);
    let p27 = fixture("psl27.deg").display().to_string();
    let out = order3(&["robinson", "Alt(5)", &p27]);
    assert_eq!(code(&out), 2, "order mismatch");
}

#[test]
fn fixed_reports_exit_codes() {
    assert_eq!(code(&order3(&["counterexamples"])), 0);
    assert_eq!(code(&order3(&["table1", "--qmax", "27"])), 0);
    // One literal check on |N(<y>)| does not hold.
    let out = order3(&["gamma-l28"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("|N(<y>)| = 24"), "{}", stdout(&out));
}

#[test]
fn cache_flag_beats_env_and_output_is_stable() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().display().to_string();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_order3"))
            .args(["--cache-dir", &flag, "crosscheck", "PSL(2,16)"])
            .env("ORDER3_CACHE_DIR", env_dir.path())
            .output()
            .unwrap()
    };
    let cold = run();
    assert_eq!(code(&cold), 0);
    assert!(std::fs::read_dir(flag_dir.path()).unwrap().next().is_some());
    assert!(std::fs::read_dir(env_dir.path()).unwrap().next().is_none());
    let warm = run();
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, order3(&["crosscheck", "PSL(2,16)"]).stdout);

    let out = Command::new(env!("CARGO_BIN_EXE_order3"))
        .args(["construct", "Alt(6)"])
        .env("ORDER3_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_dir(env_dir.path()).unwrap().next().is_some());
}
