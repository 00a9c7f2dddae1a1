// SPDX-License-Identifier: Apache-2.0

//! Disks, pegs, moves and the legal-move state machine.
//!
//! Disks are numbered `1..=n` with `1` the smallest. Pegs are numbered
//! `0..k`; peg `0` is the Source and peg `k - 1` the Destination. For four
//! pegs, peg `1` is the Mediator and peg `2` the Reservoir.
//!
//! Since a legal configuration always stacks larger disks below smaller
//! ones, a state only records which peg each disk sits on.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{HanoiError, Result};

pub type Disk = u32;
pub type Peg = usize;

pub const SOURCE: Peg = 0;

/// Index of the Destination peg for a `k`-peg puzzle.
pub fn destination(k: usize) -> Peg {
    k - 1
}

/// One disk transfer.
///
/// The serialized form is the canonical move record `{"disk":d,"from":a,"to":b}`.
/// Unknown fields such as an optional `"step"` are ignored on input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub disk: Disk,
    pub from: Peg,
    pub to: Peg,
}

impl Move {
    pub const fn new(disk: Disk, from: Peg, to: Peg) -> Self {
        Move { disk, from, to }
    }

    /// The move that undoes this one.
    pub const fn inverse(self) -> Self {
        Move {
            disk: self.disk,
            from: self.to,
            to: self.from,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "disk {}: {} -> {}", self.disk, self.from, self.to)
    }
}

/// Why a move was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IllegalReason {
    NoSuchDisk { disk: Disk, n: u32 },
    NoSuchPeg { peg: Peg, k: usize },
    SamePeg,
    NotOnPeg { disk: Disk, peg: Peg, actual: Peg },
    Buried { disk: Disk, above: Disk },
    OntoSmaller { disk: Disk, top: Disk },
}

impl fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IllegalReason::NoSuchDisk { disk, n } => {
                write!(f, "disk {disk} does not exist (tower has {n} disks)")
            }
            IllegalReason::NoSuchPeg { peg, k } => {
                write!(f, "peg {peg} does not exist (puzzle has {k} pegs)")
            }
            IllegalReason::SamePeg => write!(f, "source and target peg are the same"),
            IllegalReason::NotOnPeg { disk, peg, actual } => {
                write!(f, "disk {disk} is on peg {actual}, not peg {peg}")
            }
            IllegalReason::Buried { disk, above } => {
                write!(f, "disk {disk} buried under disk {above}")
            }
            IllegalReason::OntoSmaller { disk, top } => {
                write!(f, "disk {disk} cannot be placed on smaller disk {top}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{mv}: {reason}")]
pub struct IllegalMove {
    pub mv: Move,
    pub reason: IllegalReason,
}

/// Which peg holds each disk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PuzzleState {
    k: usize,
    // location[d - 1] is the peg of disk d
    location: Vec<Peg>,
}

fn check_pegs(k: usize) -> Result<()> {
    if k < 3 {
        return Err(HanoiError::InvalidConfiguration(format!(
            "at least 3 pegs are required, got {k}"
        )));
    }
    Ok(())
}

impl PuzzleState {
    /// Every disk on the Source peg.
    pub fn initial(n: u32, k: usize) -> Result<Self> {
        Self::uniform(n, k, SOURCE)
    }

    /// Every disk on the Destination peg.
    pub fn goal(n: u32, k: usize) -> Result<Self> {
        Self::uniform(n, k, destination(k))
    }

    fn uniform(n: u32, k: usize, peg: Peg) -> Result<Self> {
        check_pegs(k)?;
        Ok(PuzzleState {
            k,
            location: vec![peg; n as usize],
        })
    }

    /// Builds a state from an explicit disk-to-peg assignment
    /// (`locations[0]` is the peg of disk 1).
    pub fn from_locations(k: usize, locations: Vec<Peg>) -> Result<Self> {
        check_pegs(k)?;
        if let Some(&bad) = locations.iter().find(|&&p| p >= k) {
            return Err(HanoiError::InvalidConfiguration(format!(
                "peg {bad} does not exist (puzzle has {k} pegs)"
            )));
        }
        Ok(PuzzleState {
            k,
            location: locations,
        })
    }

    pub fn disks(&self) -> u32 {
        self.location.len() as u32
    }

    pub fn pegs(&self) -> usize {
        self.k
    }

    pub fn locations(&self) -> &[Peg] {
        &self.location
    }

    /// Peg holding `disk`, if the disk exists.
    pub fn peg_of(&self, disk: Disk) -> Option<Peg> {
        (disk as usize)
            .checked_sub(1)
            .and_then(|i| self.location.get(i).copied())
    }

    /// Smallest disk on `peg`, i.e. the one that can be lifted.
    pub fn top(&self, peg: Peg) -> Option<Disk> {
        self.location
            .iter()
            .position(|&p| p == peg)
            .map(|i| i as Disk + 1)
    }

    /// Per-peg stacks listed bottom to top.
    pub fn stacks(&self) -> Vec<Vec<Disk>> {
        let mut stacks = vec![Vec::new(); self.k];
        for (i, &peg) in self.location.iter().enumerate().rev() {
            stacks[peg].push(i as Disk + 1);
        }
        stacks
    }

    pub fn is_goal(&self) -> bool {
        let dst = destination(self.k);
        self.location.iter().all(|&p| p == dst)
    }

    /// Checks `mv` without applying it.
    pub fn check(&self, mv: Move) -> std::result::Result<(), IllegalMove> {
        let illegal = |reason| Err(IllegalMove { mv, reason });
        let n = self.disks();
        if mv.disk == 0 || mv.disk > n {
            return illegal(IllegalReason::NoSuchDisk { disk: mv.disk, n });
        }
        for peg in [mv.from, mv.to] {
            if peg >= self.k {
                return illegal(IllegalReason::NoSuchPeg { peg, k: self.k });
            }
        }
        if mv.from == mv.to {
            return illegal(IllegalReason::SamePeg);
        }
        let actual = self.location[mv.disk as usize - 1];
        if actual != mv.from {
            return illegal(IllegalReason::NotOnPeg {
                disk: mv.disk,
                peg: mv.from,
                actual,
            });
        }
        // Only disks smaller than mv.disk can block it.
        for (i, &peg) in self.location[..mv.disk as usize - 1].iter().enumerate() {
            let smaller = i as Disk + 1;
            if peg == mv.from {
                return illegal(IllegalReason::Buried {
                    disk: mv.disk,
                    above: smaller,
                });
            }
            if peg == mv.to {
                return illegal(IllegalReason::OntoSmaller {
                    disk: mv.disk,
                    top: smaller,
                });
            }
        }
        Ok(())
    }

    /// Applies `mv` in place; the state is untouched on error.
    pub fn apply_in_place(&mut self, mv: Move) -> std::result::Result<(), IllegalMove> {
        self.check(mv)?;
        self.location[mv.disk as usize - 1] = mv.to;
        Ok(())
    }

    /// Returns the successor state, leaving `self` as it was.
    pub fn apply_move(&self, mv: Move) -> Result<Self> {
        let mut next = self.clone();
        next.apply_in_place(mv)?;
        Ok(next)
    }

    /// All legal moves from this state, ordered by source peg then target peg.
    pub fn legal_moves(&self) -> Vec<Move> {
        let tops: Vec<Option<Disk>> = (0..self.k).map(|p| self.top(p)).collect();
        let mut moves = Vec::new();
        for (from, top) in tops.iter().enumerate() {
            let Some(disk) = *top else { continue };
            for (to, other) in tops.iter().enumerate() {
                if to != from && other.is_none_or(|t| t > disk) {
                    moves.push(Move::new(disk, from, to));
                }
            }
        }
        moves
    }

    /// Base-`k` encoding: disk `i` contributes `peg(i) * k^(i-1)`.
    /// `None` when `k^n` does not fit in a `u64`.
    pub fn encode(&self) -> Option<u64> {
        let k = self.k as u64;
        state_space_size(self.disks(), self.k)?;
        Some(
            self.location
                .iter()
                .rev()
                .fold(0u64, |acc, &p| acc * k + p as u64),
        )
    }

    pub fn decode(code: u64, n: u32, k: usize) -> Result<Self> {
        check_pegs(k)?;
        let size = state_space_size(n, k).ok_or_else(|| {
            HanoiError::InvalidConfiguration(format!("{k}^{n} states do not fit in 64 bits"))
        })?;
        if code >= size {
            return Err(HanoiError::InvalidConfiguration(format!(
                "code {code} is outside the {size}-state space"
            )));
        }
        let mut rest = code;
        let location = (0..n)
            .map(|_| {
                let peg = (rest % k as u64) as Peg;
                rest /= k as u64;
                peg
            })
            .collect();
        Ok(PuzzleState { k, location })
    }
}

/// `k^n`, if it fits in a `u64`.
pub fn state_space_size(n: u32, k: usize) -> Option<u64> {
    (k as u64).checked_pow(n)
}
