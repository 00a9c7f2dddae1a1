// SPDX-License-Identifier: Apache-2.0

//! Generalized Tower of Hanoi on `k >= 3` pegs.
//!
//! * [`puzzle`] holds the state machine: disks, pegs, moves and legality.
//! * [`count`] computes exact minimum move counts (two-block recursion,
//!   Frame's multi-split definition, the classic `2^n - 1`) and the costs of
//!   the sub-optimal four-peg strategies.
//! * [`generate`] streams explicit move sequences for those strategies.
//! * [`verify`] replays arbitrary sequences and checks their structure.
//! * [`oracle`] runs breadth-first search over the whole state graph to get
//!   ground-truth distances, shortest-path multiplicities and witnesses.
//! * [`cli`] binds everything into the `hanoi` command.

pub mod cli;
pub mod count;
pub mod error;
pub mod generate;
pub mod oracle;
pub mod puzzle;
pub mod verify;

pub use count::{CountEngine, MoveCount, SplitPlan, StrategyId};
pub use error::{HanoiError, Result};
pub use generate::MoveSequence;
pub use oracle::StateGraphParams;
pub use puzzle::{Move, PuzzleState};
pub use verify::VerificationReport;
