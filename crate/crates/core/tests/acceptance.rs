// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use hanoi::count::{count_three_peg, CountEngine, StrategyId};
use hanoi::generate::{generate_optimal, generate_strategy, generate_three_peg};
use hanoi::oracle::{extract_witness, shortest_path_count, Search, StateGraphParams};
use hanoi::verify::{replay, reversal_transform, Intermediates};
use hanoi::Move;

fn mersenne_u128(n: u32) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn three_peg_exact() {
    for n in 0..=64 {
        assert_eq!(
            count_three_peg(n).to_string(),
            mersenne_u128(n).to_string(),
            "n={n}"
        );
    }
    for n in 0..=16 {
        let report = replay(n, 3, generate_three_peg(n, 0, 1, 2).unwrap());
        assert!(report.passed(), "n={n}");
        assert_eq!(report.length, mersenne_u128(n) as u64, "n={n}");
    }
}

fn reve_small_values() {
    let mut e = CountEngine::new();
    for (n, expected) in [(0, 0u64), (1, 1), (2, 3), (3, 5)] {
        assert_eq!(e.stewart(n, 4).unwrap(), expected, "T({n},4)");
    }
}

fn oracle_agreement() {
    let mut e = CountEngine::new();
    for (k, max_n) in [(4usize, 11u32), (3, 12), (5, 8), (6, 7)] {
        for n in 0..=max_n {
            let search = Search::run(StateGraphParams::new(n, k), false).unwrap();
            assert_eq!(search.distance(), e.stewart(n, k).unwrap(), "n={n} k={k}");
        }
    }
}

fn frame_stewart_equivalence() {
    let mut e = CountEngine::new();
    for k in 3..=6 {
        for n in 0..=40 {
            assert_eq!(
                e.frame(n, k).unwrap(),
                e.stewart(n, k).unwrap(),
                "n={n} k={k}"
            );
        }
    }
}

fn three_pegs_never_beat_four() {
    let mut e = CountEngine::new();
    for n in 0..=64 {
        let three = count_three_peg(n);
        let four = e.stewart(n, 4).unwrap();
        assert!(three >= four, "n={n}");
        if n >= 3 {
            assert!(three > four, "n={n} should be strict");
        }
    }
}

fn strategy_formulas() {
    let mut e = CountEngine::new();
    for n in 0..=30u32 {
        let pow = |m: u32| 1u64 << m;
        let classic = pow(n) - 1;
        let s3 = match n {
            0 => 0,
            _ if n % 2 == 1 => 4 * (pow(n / 2) - 1) + 1,
            _ => 3 * pow(n / 2) - 3,
        };
        assert_eq!(e.strategy_count(n, StrategyId::S1), classic, "S1 n={n}");
        assert_eq!(e.strategy_count(n, StrategyId::S2), classic, "S2 n={n}");
        assert_eq!(e.strategy_count(n, StrategyId::S3), s3, "S3 n={n}");
        let opt = e.strategy_count(n, StrategyId::Optimal);
        assert!(
            opt <= e.strategy_count(n, StrategyId::S3) && s3 <= classic,
            "ordering n={n}"
        );
    }
    for strategy in StrategyId::ALL {
        for n in 0..=14 {
            let moves: Vec<Move> = generate_strategy(n, strategy).collect();
            let report = replay(n, 4, moves.iter().copied());
            assert!(report.passed(), "{strategy} n={n}");
            assert_eq!(
                report.length,
                e.strategy_count(n, strategy),
                "{strategy} n={n}"
            );
            if strategy == StrategyId::S1 {
                assert!(
                    moves.iter().all(|m| m.from != 2 && m.to != 2),
                    "S1 n={n} touched peg 2"
                );
            }
        }
    }
}

fn bifurcation_midpoint() {
    for k in 3..=5 {
        for n in 1..=14 {
            let report = replay(n, k, generate_optimal(n, k).unwrap());
            assert!(report.passed(), "n={n} k={k}");
            assert!(
                report.midpoint_bifurcation,
                "n={n} k={k}: {:?}",
                report.midpoint_note
            );
        }
    }
    for n in 1..=10 {
        let report = replay(n, 4, extract_witness(StateGraphParams::new(n, 4)).unwrap());
        assert!(report.passed(), "witness n={n}");
        assert!(
            report.midpoint_bifurcation,
            "witness n={n}: {:?}",
            report.midpoint_note
        );
    }
}

fn reversal_symmetry() {
    for n in 0..=12 {
        let forward: Vec<Move> = generate_optimal(n, 4).unwrap().collect();
        let back = reversal_transform(forward.iter().copied(), 4, Intermediates::Swap);
        let report = replay(n, 4, back.iter().copied());
        assert!(report.passed(), "n={n}");
        assert_eq!(report.length, forward.len() as u64, "n={n}");
        assert_eq!(
            reversal_transform(back, 4, Intermediates::Swap),
            forward,
            "n={n}"
        );
    }
}

fn uniqueness_diagnostic() {
    for n in 0..=10 {
        assert_eq!(
            shortest_path_count(StateGraphParams::new(n, 3)).unwrap(),
            1,
            "n={n}"
        );
    }
    assert_eq!(shortest_path_count(StateGraphParams::new(2, 4)).unwrap(), 2);
    let splits: BTreeSet<Vec<u32>> = CountEngine::new()
        .optimal_splits(4, 4)
        .unwrap()
        .into_iter()
        .map(|p| p.blocks)
        .collect();
    assert_eq!(splits, BTreeSet::from([vec![1, 2], vec![2, 1]]));

    let four: Vec<String> = (1..=6)
        .map(|n| {
            let c = shortest_path_count(StateGraphParams::new(n, 4)).unwrap();
            format!("n={n}:{c}")
        })
        .collect();
    println!("    shortest solutions, 3 pegs: 1 for every n <= 10 (unique)");
    println!(
        "    shortest solutions, 4 pegs: {} (not unique)",
        four.join(" ")
    );
}

fn hanoi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hanoi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cli_golden() {
    let count = hanoi(&["count", "--disks", "3", "--pegs", "4"]);
    assert!(count.status.success());
    assert_eq!(String::from_utf8_lossy(&count.stdout), "5\n");

    let dir = tempfile::tempdir().unwrap();
    for k in [3usize, 4, 5] {
        for n in 0..=12u32 {
            let (ns, ks) = (n.to_string(), k.to_string());
            let file = dir.path().join(format!("moves-{n}-{k}.json"));
            let file_str = file.to_str().unwrap();
            let solve = hanoi(&["solve", "--disks", &ns, "--pegs", &ks, "--out", file_str]);
            assert!(solve.status.success(), "solve n={n} k={k}");
            let expected = hanoi(&["count", "--disks", &ns, "--pegs", &ks]);
            let expected = String::from_utf8(expected.stdout).unwrap();
            let verify = hanoi(&[
                "verify",
                "--disks",
                &ns,
                "--pegs",
                &ks,
                "--moves",
                file_str,
                "--expect-length",
                expected.trim(),
            ]);
            assert_eq!(verify.status.code(), Some(0), "verify n={n} k={k}");
            let report: serde_json::Value = serde_json::from_slice(&verify.stdout).unwrap();
            assert_eq!(report["length"].to_string(), expected.trim(), "n={n} k={k}");
        }
    }

    for args in [
        &["solve", "--disks", "9", "--pegs", "4"][..],
        &[
            "solve",
            "--disks",
            "7",
            "--strategy",
            "s3",
            "--format",
            "text",
        ],
        &["oracle", "--disks", "6", "--pegs", "4", "--count-paths"],
        &["table", "--max-disks", "30", "--pegs", "5"],
        &["compare", "--disks", "20"],
    ] {
        let a = hanoi(args);
        let b = hanoi(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?} not deterministic");
    }

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[{"disk":2,"from":0,"to":2}]"#).unwrap();
    let verify = hanoi(&[
        "verify",
        "--disks",
        "2",
        "--pegs",
        "3",
        "--moves",
        path(&bad),
    ]);
    assert_eq!(verify.status.code(), Some(1));
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("1 three-peg counts are 2^n - 1 and replay", three_peg_exact),
        ("2 four-peg values T(0..3,4) = 0,1,3,5", reve_small_values),
        ("3 BFS oracle equals the recursion", oracle_agreement),
        (
            "4 Frame and Stewart recursions agree",
            frame_stewart_equivalence,
        ),
        (
            "5 three-peg count >= four-peg count",
            three_pegs_never_beat_four,
        ),
        (
            "6 strategy closed forms, ordering, replay",
            strategy_formulas,
        ),
        (
            "7 largest disk moves once, at the midpoint",
            bifurcation_midpoint,
        ),
        ("8 reversal transform keeps solutions", reversal_symmetry),
        ("9 uniqueness diagnostic", uniqueness_diagnostic),
        (
            "10 CLI golden outputs and solve/verify pipeline",
            cli_golden,
        ),
    ];

    panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let ok = panic::catch_unwind(check).is_ok();
        let elapsed = start.elapsed().as_secs_f64();
        println!(
            "{} criterion {name} ({elapsed:.2}s)",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
