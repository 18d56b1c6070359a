//! Golden reports. Regenerate with `UPDATE_GOLDEN=1 cargo test -p centpoly-cli --test golden`.

use std::path::PathBuf;
use std::process::Command;

/// File, arguments after `growth`, expected exit status.
const CASES: &[(&str, &[&str], i32)] = &[
    ("grassmann_n1_6.jsonl", &["grassmann", "--n", "1..6", "--seed", "1"], 0),
    (
        "grassmann_n2_8.csv",
        &["grassmann", "--n", "2..8", "--format", "csv", "--samples", "50"],
        0,
    ),
    (
        "matrix_k1_n1_6.csv",
        &["matrix", "--k", "1", "--n", "1..6", "--format", "csv"],
        0,
    ),
    ("matrix_k2_n1_6.jsonl", &["matrix", "--k", "2", "--n", "1..6"], 1),
    ("matrix_k2_n7.jsonl", &["matrix", "--k", "2", "--n", "7"], 2),
    (
        "regev_k2.txt",
        &["regev", "--k", "2", "--n", "8..15", "--format", "text"],
        0,
    ),
    ("regev_k3.jsonl", &["regev", "--k", "3"], 2),
    (
        "growth_k2.csv",
        &["growth", "--k", "2", "--m", "1..100", "--n", "2..5", "--format", "csv"],
        0,
    ),
    (
        "growth_k1.jsonl",
        &["growth", "--k", "1", "--m", "1..5", "--n", "1..3"],
        0,
    ),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn run(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_growth"))
        .args(args)
        .env_remove("CENTPOLY_BUDGET_GIB")
        .output()
        .expect("run growth");
    (out.stdout, out.status.code().expect("exit code"))
}

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for (file, args, code) in CASES {
        let (stdout, status) = run(args);
        assert_eq!(status, *code, "exit status of growth {}", args.join(" "));
        let path = golden_dir().join(file);
        if update {
            std::fs::write(&path, &stdout).expect("write golden");
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != stdout {
            mismatched.push(format!("{file} (growth {})", args.join(" ")));
        }
    }
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn grassmann_csv_has_the_codimension_columns() {
    let text = std::fs::read_to_string(golden_dir().join("grassmann_n2_8.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,c_n,c_n_z,delta_n,pass"));
    for (line, n) in lines.zip(2u32..) {
        let cols: Vec<u64> = line.split(',').take(4).map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols, vec![n as u64, 1 << (n - 1), 1 << (n - 2), 1 << (n - 2)]);
        assert!(line.ends_with(",true"));
    }
}
