mod common;

use std::process::{Command, Output};

use common::*;
use ezbasis::coeffs::CoeffMatrix;
use ezbasis::relations::BasisRepresentation;

fn ezbasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ezbasis")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ezbasis(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn matrix_json_round_trips() {
    let text = stdout(&["matrix", "--n", "12", "--format", "json"]);
    let m: CoeffMatrix = serde_json::from_str(&text).unwrap();
    assert_eq!(m, golden_matrix(&A_N12));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rows"], 12);
    assert_eq!(v["entries"][11][4], "55");
}

#[test]
fn invert_with_oracle() {
    let text = stdout(&["invert", "--n", "12", "--oracle", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let a1: CoeffMatrix = serde_json::from_value(v["A1_inverse"].clone()).unwrap();
    let a2: CoeffMatrix = serde_json::from_value(v["A2_inverse"].clone()).unwrap();
    assert_eq!(a1, golden_matrix(&A1_INV_N12));
    assert_eq!(a2, golden_matrix(&A2_INV_N12));
}

#[test]
fn basis_latex_and_json() {
    let latex = stdout(&["basis", "--m", "5", "--format", "latex"]);
    assert_eq!(strip_ws(&latex), strip_ws(LATEX_M5));

    let json = stdout(&["basis", "--m", "5", "--format", "json"]);
    assert!(json.contains("\"target\": \"zeta(-11,s+11)\""));
    assert!(json.contains("\"0\": \"-691/4\""));
    let rep: BasisRepresentation = serde_json::from_str(&json).unwrap();
    assert_eq!(rep.gamma, golden_gamma(5));

    let via_residues = stdout(&["basis", "--m", "7", "--residues", "--format", "json"]);
    assert!(via_residues.contains("-929569/16"));
}

#[test]
fn basis_all_lists_every_target() {
    let text = stdout(&["basis", "--m", "7", "--all", "--format", "csv"]);
    assert!(text.starts_with("target,basis_index,coeff\n"));
    assert_eq!(text.lines().count(), 1 + (1..=8).sum::<usize>());
}

#[test]
fn poles_and_expand() {
    let csv = stdout(&["poles", "--n", "2", "--format", "csv"]);
    assert_eq!(csv, "n,s,residue\n2,2,1/3\n2,1,-1/2\n2,0,1/6\n");
    let text = stdout(&["expand", "--c", "3"]);
    assert!(text.contains("1/4*zeta(s-1) - 1/2*zeta(s) + 1/4*zeta(s+1)"));
    assert_eq!(stdout(&["expand", "--n", "3"]), text);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(ezbasis(&["verify", "--mode", "exact", "--n", "12"]).status.code(), Some(0));
    assert_eq!(
        ezbasis(&["verify", "--mode", "numeric", "--n", "4", "--s", "5", "--cutoff", "2000", "--tol", "1e-3"]).status.code(),
        Some(0)
    );
    // Tolerance below the tail bound is a precondition error.
    assert_eq!(
        ezbasis(&["verify", "--mode", "numeric", "--n", "4", "--s", "5", "--cutoff", "100", "--tol", "1e-12"]).status.code(),
        Some(2)
    );
    assert_eq!(ezbasis(&["verify", "--n", "1"]).status.code(), Some(2));
    assert_eq!(ezbasis(&["matrix", "--n", "12", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(ezbasis(&[]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_ezbasis"))
            .args(["verify", "--mode", "all", "--n", "8", "--s", "4+3i", "--cutoff", "5000", "--tol", "1e-2", "--format", "json"])
            .env("EZBASIS_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ezbasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.csv");
    let out = ezbasis(&["matrix", "--n", "12", "--part", "a2", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("6,6,-11\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
