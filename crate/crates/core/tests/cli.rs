//! Runs the installed binary and checks exit codes, output formats and
//! determinism.

use std::process::{Command, Output};

use k4hol::cli::{exit, CliError};

fn k4hol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k4hol"))
        .args(args)
        .env("K4HOL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_involutions_is_deterministic() {
    let a = k4hol(&["classify-involutions", "--format", "json"]);
    let b = k4hol(&["classify-involutions", "--format", "json"]);
    assert_eq!(a.status.code(), Some(exit::SUCCESS));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.is_object() || v.is_array());
}

#[test]
fn table_formats() {
    for (format, check) in [
        (
            "json",
            (|s: &str| serde_json::from_str::<serde_json::Value>(s).is_ok()) as fn(&str) -> bool,
        ),
        ("csv", |s: &str| s.lines().count() == 11),
        ("markdown", |s: &str| s.contains("| ")),
    ] {
        let out = k4hol(&["table", "theorem15", "--oracle", "labeled-only", "--format", format]);
        assert_eq!(out.status.code(), Some(exit::SUCCESS), "{format}");
        assert!(check(&stdout(&out)), "{format}:\n{}", stdout(&out));
    }
    for name in ["lemma11", "lemma12"] {
        let out = k4hol(&["--fast", "table", name, "--format", "json"]);
        assert_eq!(out.status.code(), Some(exit::SUCCESS), "{name}");
        serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap();
    }
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("k4hol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.json");
    let out = k4hol(&["root-system", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(exit::SUCCESS));
    let text = std::fs::read_to_string(&path).unwrap();
    serde_json::from_str::<serde_json::Value>(&text).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn chevalley_verify_succeeds() {
    let out = k4hol(&["chevalley-verify", "--format", "json"]);
    assert_eq!(out.status.code(), Some(exit::SUCCESS));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["maps"].as_array().map(Vec::len), Some(4));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["bogus"][..],
        &["labeled", "nope"],
        &["--algebra", "e6", "holo-pairs"],
        &["--algebra", "e7", "chevalley-verify"],
        &["--algebra", "q9", "root-system"],
        &["root-system", "--output", "/nonexistent-dir/x.json"],
    ] {
        let out = k4hol(args);
        assert_eq!(out.status.code(), Some(exit::ENVIRONMENT), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(k4hol(&["--help"]).status.code(), Some(exit::SUCCESS));
}

#[test]
fn math_errors_map_to_two() {
    let e = k4hol::labeledgroups::catalog_group("nope").unwrap_err();
    assert_eq!(CliError::Math(e.into()).exit_code(), exit::MISMATCH);
    assert_eq!(CliError::Usage("x".into()).exit_code(), exit::ENVIRONMENT);
}
