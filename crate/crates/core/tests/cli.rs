//! The `cyclops` binary end to end: exit codes, translation chains and
//! machine-readable output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cyclops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclops"))
        .args(args)
        .output()
        .expect("cyclops runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn zoo_to_stdout_matches_the_fixture() {
    let out = cyclops(&["zoo", "cyclic-orders", "--size-cap", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        fs::read_to_string(fixture("cyclic-orders-4.txt")).unwrap()
    );
}

#[test]
fn corrupted_file_reports_a_witness() {
    let out = cyclops(&["check", &fixture("cyclic-orders-4-corrupted.txt")]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(A1)"), "{text}");
}

#[test]
fn json_report_is_machine_readable() {
    let out = cyclops(&["check", &fixture("cyclic-orders-4-corrupted.txt"), "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(false));
    assert!(v["reports"].as_array().is_some_and(|r| !r.is_empty()));
}

#[test]
fn malformed_file_names_the_line() {
    let out = cyclops(&["check", &fixture("cyclic-orders-4-malformed.txt")]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 48"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&cyclops(&["zoo", "no-such-model"])), 2);
    assert_eq!(
        code(&cyclops(&[
            "translate",
            &fixture("cyclic-orders-4.txt"),
            "sideways"
        ])),
        2
    );
    assert_eq!(code(&cyclops(&["check", "/nonexistent/file.txt"])), 2);
    assert_eq!(
        code(&cyclops(&[
            "check",
            &fixture("cyclic-orders-4.txt"),
            "--kind",
            "exchangeable-output"
        ])),
        2
    );
}

#[test]
fn translation_chain_round_trips() {
    let input = fixture("cyclic-orders-4.txt");
    let alg = scratch("alg.txt");
    let back = scratch("back.txt");
    let exo = scratch("exo.txt");
    let (alg, back, exo) = (
        alg.to_str().unwrap(),
        back.to_str().unwrap(),
        exo.to_str().unwrap(),
    );

    let out = cyclops(&[
        "translate",
        &input,
        "comp2alg",
        "--out",
        alg,
        "--verify-roundtrip",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        code(&cyclops(&[
            "check",
            alg,
            "--kind",
            "algebraic-entries-only"
        ])),
        0
    );
    assert_eq!(
        code(&cyclops(&["translate", alg, "alg2comp", "--out", back])),
        0
    );
    assert_eq!(
        fs::read_to_string(back).unwrap(),
        fs::read_to_string(&input).unwrap()
    );

    let out = cyclops(&[
        "translate",
        &input,
        "eo2exo",
        "--out",
        exo,
        "--verify-roundtrip",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        code(&cyclops(&[
            "check",
            exo,
            "--kind",
            "exchangeable-output",
            "--derived-laws"
        ])),
        0
    );
    assert_eq!(
        code(&cyclops(&[
            "translate",
            exo,
            "exo2eo",
            "--verify-roundtrip"
        ])),
        0
    );
}

#[test]
fn algebraic_exchangeable_output_chain() {
    let input = fixture("cyclic-orders-4.txt");
    let alg = scratch("alg2.txt");
    let alg_exo = scratch("alg-exo.txt");
    let (alg, alg_exo) = (alg.to_str().unwrap(), alg_exo.to_str().unwrap());
    assert_eq!(
        code(&cyclops(&["translate", &input, "comp2alg", "--out", alg])),
        0
    );
    let out = cyclops(&[
        "translate",
        alg,
        "alg-eo2alg-exo",
        "--out",
        alg_exo,
        "--verify-roundtrip",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        code(&cyclops(&[
            "check",
            alg_exo,
            "--kind",
            "algebraic-exchangeable-output"
        ])),
        0
    );
    assert_eq!(
        code(&cyclops(&[
            "translate",
            alg_exo,
            "alg-exo2alg-eo",
            "--verify-roundtrip"
        ])),
        0
    );
}
