// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::tempdir;

fn hanoi() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hanoi"));
    cmd.env_remove("HANOI_MEMORY_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    hanoi().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 5] = [
        (&["solve", "--disks", "3", "--pegs", "4"], "solve_3_4.json"),
        (
            &[
                "solve",
                "--disks",
                "4",
                "--strategy",
                "s3",
                "--format",
                "text",
            ],
            "solve_4_s3.txt",
        ),
        (
            &["table", "--max-disks", "12", "--pegs", "4"],
            "table_12_4.csv",
        ),
        (&["compare", "--disks", "8"], "compare_8.md"),
        (
            &["count", "--disks", "4", "--pegs", "4", "--splits"],
            "count_4_4_splits.txt",
        ),
    ];
    for (args, file) in cases {
        let output = run(args);
        assert!(output.status.success(), "{args:?}");
        assert_eq!(stdout(&output), golden(file), "{args:?}");
    }
}

#[test]
fn count_three_on_four() {
    let output = run(&["count", "--disks", "3", "--pegs", "4"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "5\n");
}

#[test]
fn frame_method_agrees() {
    for k in ["3", "4", "5", "6"] {
        for n in ["0", "1", "5", "17", "30"] {
            let a = run(&["count", "--disks", n, "--pegs", k]);
            let b = run(&["count", "--disks", n, "--pegs", k, "--method", "frame"]);
            assert_eq!(stdout(&a), stdout(&b), "n={n} k={k}");
        }
    }
}

#[test]
fn verify_rejects_buried_disk() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"[{"disk":2,"from":0,"to":2}]"#).unwrap();
    let output = run(&[
        "verify",
        "--disks",
        "2",
        "--pegs",
        "3",
        "--moves",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["legal"], false);
    assert_eq!(report["first_failure"]["index"], 0);
    assert_eq!(
        report["first_failure"]["reason"],
        "disk 2 buried under disk 1"
    );
}

#[test]
fn verify_accepts_step_fields_and_checks_length() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("moves.json");
    fs::write(
        &file,
        r#"[{"disk":1,"from":0,"to":1,"step":0},{"disk":2,"from":0,"to":2,"step":1},{"disk":1,"from":1,"to":2,"step":2}]"#,
    )
    .unwrap();
    let path = file.to_str().unwrap();
    let ok = run(&["verify", "--disks", "2", "--pegs", "3", "--moves", path]);
    assert_eq!(ok.status.code(), Some(0));
    let wrong = run(&[
        "verify",
        "--disks",
        "2",
        "--pegs",
        "3",
        "--moves",
        path,
        "--expect-length",
        "4",
    ]);
    assert_eq!(wrong.status.code(), Some(1));
    let incomplete = run(&["verify", "--disks", "3", "--pegs", "3", "--moves", path]);
    assert_eq!(incomplete.status.code(), Some(1));
}

#[test]
fn verify_malformed_file_is_a_usage_error() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("junk.json");
    fs::write(&file, "{not json").unwrap();
    let output = run(&[
        "verify",
        "--disks",
        "2",
        "--pegs",
        "3",
        "--moves",
        file.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let missing = run(&[
        "verify",
        "--disks",
        "2",
        "--pegs",
        "3",
        "--moves",
        "/nonexistent/x.json",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn oracle_ten_disks() {
    let output = run(&["oracle", "--disks", "10", "--pegs", "4"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "distance: 49\n");
}

#[test]
fn oracle_witness_and_layers() {
    let dir = tempdir().unwrap();
    let witness = dir.path().join("w.json");
    let layers = dir.path().join("layers.csv");
    let output = run(&[
        "oracle",
        "--disks",
        "5",
        "--pegs",
        "4",
        "--count-paths",
        "--witness",
        witness.to_str().unwrap(),
        "--layers",
        layers.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "distance: 13\nshortest paths: 40\n");
    let verify = run(&[
        "verify",
        "--disks",
        "5",
        "--pegs",
        "4",
        "--moves",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(0));
    let csv = fs::read_to_string(&layers).unwrap();
    assert!(csv.starts_with("layer,states,cumulative\n0,1,1\n"));
    assert!(csv.trim_end().ends_with(",1024"));
}

#[test]
fn memory_budget_from_env_and_flag() {
    let limited = hanoi()
        .env("HANOI_MEMORY_BUDGET", "1000")
        .args(["oracle", "--disks", "8", "--pegs", "4"])
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(3));

    let overridden = hanoi()
        .env("HANOI_MEMORY_BUDGET", "1000")
        .args([
            "oracle",
            "--disks",
            "8",
            "--pegs",
            "4",
            "--memory-budget",
            "100000000",
        ])
        .output()
        .unwrap();
    assert_eq!(overridden.status.code(), Some(0));

    let garbage = hanoi()
        .env("HANOI_MEMORY_BUDGET", "lots")
        .args(["oracle", "--disks", "2", "--pegs", "4"])
        .output()
        .unwrap();
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn invalid_arguments() {
    assert_eq!(
        run(&["count", "--disks", "3", "--pegs", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["count", "--disks", "-1"]).status.code(), Some(2));
    assert_eq!(
        run(&["solve", "--disks", "3", "--strategy", "s9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["table", "--max-disks", "3", "--format", "json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn solve_pipeline_round_trips() {
    let dir = tempdir().unwrap();
    for strategy in ["optimal", "s1", "s2", "s3"] {
        for n in [0u32, 1, 6, 12] {
            let file = dir.path().join(format!("{strategy}-{n}.json"));
            let path = file.to_str().unwrap();
            let n = n.to_string();
            let solve = run(&[
                "solve",
                "--disks",
                &n,
                "--strategy",
                strategy,
                "--out",
                path,
            ]);
            assert!(solve.status.success());
            assert!(solve.stdout.is_empty());
            let verify = run(&["verify", "--disks", &n, "--moves", path]);
            assert_eq!(verify.status.code(), Some(0), "{strategy} n={n}");
        }
    }
}

#[test]
fn solve_limit_streams_huge_instances() {
    let output = run(&[
        "solve", "--disks", "64", "--pegs", "3", "--limit", "1000", "--format", "text",
    ]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output).lines().count(), 1000);
    assert!(String::from_utf8_lossy(&output.stderr).contains("truncated to 1000"));
}
