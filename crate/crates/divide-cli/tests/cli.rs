//! End-to-end checks of the `divides` binary: exit codes, determinism, and
//! the negative control.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_divides"))
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("divides-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn validate_and_invariants_on_dsl_diameter() {
    let f = tmp("diameter", "S -1 0 L 1 0 E\n");
    let out = run(&["validate", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 double point"));

    let out = run(&["invariants", f.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("St = 0"));
    assert!(text.contains("J+ = 0"));
}

#[test]
fn invalid_input_exits_2() {
    let f = tmp("bad", "divide-file v1\nkind divide\npoint 0 0\npoint 0 0\nend\n");
    let out = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_byte_deterministic_and_clean() {
    let args = ["verify", "--random", "12", "--max-crossings", "6", "--seed", "17"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "verify output must be byte-identical");
    assert!(String::from_utf8_lossy(&a.stdout).contains("12/12 equal"));
}

#[test]
fn corrupted_oracle_fails_with_exit_1() {
    // seed 5 generates a divide with at least one crossing (a real knot)
    let out = run(&[
        "verify",
        "--random",
        "6",
        "--max-crossings",
        "6",
        "--seed",
        "5",
        "--inject-corruption",
    ]);
    assert_eq!(out.status.code(), Some(1), "negative control must fail");
    assert!(String::from_utf8_lossy(&out.stdout).contains("UNEQUAL"));
}

#[test]
fn diagram_output_is_deterministic() {
    // build a one-loop divide file via the path DSL
    let f = tmp(
        "loop",
        "S -1 0 L -0.5 0.125 L 0.25 0.125 L 0.375 0.375 L 0.125 0.5 L -0.125 0.25 L 0.125 0.03125 L 0.75 0.03125 E\n",
    );
    let pd1 = run(&["diagram", f.to_str().unwrap(), "--format", "pd"]);
    if !pd1.status.success() {
        panic!("diagram failed: {}", String::from_utf8_lossy(&pd1.stderr));
    }
    let pd2 = run(&["diagram", f.to_str().unwrap(), "--format", "pd"]);
    assert_eq!(pd1.stdout, pd2.stdout);
    let svg1 = run(&["diagram", f.to_str().unwrap(), "--format", "svg"]);
    let svg2 = run(&["diagram", f.to_str().unwrap(), "--format", "svg"]);
    assert!(svg1.status.success());
    assert_eq!(svg1.stdout, svg2.stdout);
    assert!(String::from_utf8_lossy(&svg1.stdout).starts_with("<svg"));
    let gauss = run(&["diagram", f.to_str().unwrap(), "--format", "gauss"]);
    assert!(gauss.status.success());
    let text = String::from_utf8_lossy(&gauss.stdout);
    assert!(text.starts_with('O') || text.starts_with('U'), "{text}");
}

#[test]
fn oracle_reads_pd_text() {
    let f = tmp("trefoil-pd", "X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]\n");
    let out = run(&["oracle", f.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("v2 = 1"), "{text}");
}

#[test]
fn env_seed_is_used() {
    let out1 = bin()
        .args(["verify", "--random", "4"])
        .env("DIVIDES_SEED", "99")
        .output()
        .unwrap();
    let out2 = bin()
        .args(["verify", "--random", "4", "--seed", "99"])
        .output()
        .unwrap();
    assert_eq!(out1.stdout, out2.stdout);
}
