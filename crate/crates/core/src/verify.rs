// SPDX-License-Identifier: Apache-2.0

//! Replaying move sequences and checking their structure.
//!
//! Illegal input is data here: [`replay`] never fails, it records where and
//! why a sequence stopped being legal.

use serde::Serialize;

use crate::count::MoveCount;
use crate::puzzle::{Move, Peg, PuzzleState};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: u64,
    pub reason: String,
}

/// Outcome of replaying a sequence from the initial state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub disks: u32,
    pub pegs: usize,
    pub legal: bool,
    pub reached_goal: bool,
    /// Number of moves applied; replay stops at the first illegal move.
    pub length: MoveCount,
    /// 0-based positions at which the largest disk moved.
    pub largest_disk_move_indices: Vec<u64>,
    /// The largest disk moved exactly once, at index `(length - 1) / 2`, in a
    /// legal sequence that reached the goal.
    pub midpoint_bifurcation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub midpoint_note: Option<String>,
    /// Moves made by each disk, smallest first.
    pub per_disk_moves: Vec<u64>,
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_length: Option<MoveCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length_matches: Option<bool>,
}

impl VerificationReport {
    /// Legal, complete, and of the expected length when one was given.
    pub fn passed(&self) -> bool {
        self.legal && self.reached_goal && self.length_matches != Some(false)
    }
}

/// Replays `moves` from `initial_state(n, k)`.
pub fn replay<I>(n: u32, k: usize, moves: I) -> VerificationReport
where
    I: IntoIterator<Item = Move>,
{
    replay_expecting(n, k, moves, None)
}

/// Like [`replay`], also comparing the length against `expected`.
pub fn replay_expecting<I>(
    n: u32,
    k: usize,
    moves: I,
    expected: Option<&MoveCount>,
) -> VerificationReport
where
    I: IntoIterator<Item = Move>,
{
    let mut report = VerificationReport {
        disks: n,
        pegs: k,
        legal: true,
        reached_goal: false,
        length: MoveCount::zero(),
        largest_disk_move_indices: Vec::new(),
        midpoint_bifurcation: false,
        midpoint_note: None,
        per_disk_moves: vec![0; n as usize],
        first_failure: None,
        expected_length: expected.cloned(),
        length_matches: None,
    };

    let mut state = match PuzzleState::initial(n, k) {
        Ok(state) => state,
        Err(e) => {
            report.legal = false;
            report.first_failure = Some(Failure {
                index: 0,
                reason: e.to_string(),
            });
            report.midpoint_note = Some("no valid puzzle to replay".into());
            report.length_matches = expected.map(|e| report.length == *e);
            return report;
        }
    };

    let mut applied: u64 = 0;
    for mv in moves {
        if let Err(illegal) = state.apply_in_place(mv) {
            report.legal = false;
            report.first_failure = Some(Failure {
                index: applied,
                reason: illegal.reason.to_string(),
            });
            break;
        }
        report.per_disk_moves[mv.disk as usize - 1] += 1;
        if mv.disk == n {
            report.largest_disk_move_indices.push(applied);
        }
        applied += 1;
    }

    report.length = MoveCount::from(applied);
    report.reached_goal = report.legal && state.is_goal();
    report.length_matches = expected.map(|e| report.length == *e);

    let note = if !report.legal {
        Some("sequence is illegal".to_string())
    } else if !report.reached_goal {
        Some("sequence does not reach the goal".to_string())
    } else if n == 0 {
        Some("no disks".to_string())
    } else if report.largest_disk_move_indices.len() != 1 {
        Some(format!(
            "largest disk moved {} times",
            report.largest_disk_move_indices.len()
        ))
    } else if applied.is_multiple_of(2) || report.largest_disk_move_indices[0] != (applied - 1) / 2
    {
        Some(format!(
            "largest disk moved at index {} of {applied}, not at the midpoint",
            report.largest_disk_move_indices[0]
        ))
    } else {
        None
    };
    report.midpoint_bifurcation = note.is_none();
    report.midpoint_note = note;
    report
}

/// How the intermediate pegs are relabelled by [`reversal_transform`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Intermediates {
    /// Mirror them too: peg `p` becomes `k - 1 - p`.
    #[default]
    Swap,
    /// Leave them in place; only Source and Destination trade places.
    Fix,
}

fn relabel(peg: Peg, k: usize, mode: Intermediates) -> Peg {
    let last = k - 1;
    match mode {
        Intermediates::Swap => last - peg,
        Intermediates::Fix if peg == 0 => last,
        Intermediates::Fix if peg == last => 0,
        Intermediates::Fix => peg,
    }
}

/// Runs a sequence backwards in time with Source and Destination exchanged.
///
/// A solution taking the tower from peg 0 to peg `k - 1` comes out as another
/// solution of the same length.
pub fn reversal_transform<I>(moves: I, k: usize, mode: Intermediates) -> Vec<Move>
where
    I: IntoIterator<Item = Move>,
{
    let mut out: Vec<Move> = moves
        .into_iter()
        .map(|m| Move::new(m.disk, relabel(m.to, k, mode), relabel(m.from, k, mode)))
        .collect();
    out.reverse();
    out
}
