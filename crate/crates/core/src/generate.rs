// SPDX-License-Identifier: Apache-2.0

//! Lazy move-sequence generators.
//!
//! Every generator is an explicit work stack of pending transfers, so the
//! first moves of a `2^64 - 1` move solution come out immediately and memory
//! stays proportional to the recursion depth.
//!
//! A transfer moves a contiguous block of disks `lo..=hi` (all smaller than
//! anything else on the involved pegs) between two pegs, using a list of
//! spare pegs that hold no smaller disk. Spares are always sorted and
//! consumed in ascending order, which makes output canonical.

use std::fmt;
use std::ops::RangeInclusive;

use crate::count::{s3_blocks, CountEngine, MoveCount, SplitPlan, StrategyId};
use crate::error::{HanoiError, Result};
use crate::puzzle::{destination, Disk, Move, Peg, SOURCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Policy {
    /// Frame-Stewart with the canonical split at every level.
    Frame,
    /// Classic recursion through the first spare peg only.
    Classic,
    /// All smaller disks go to one spare peg, recursing with every other peg.
    SingleStack,
}

#[derive(Debug, Clone)]
enum Task {
    Emit(Move),
    Transfer {
        lo: Disk,
        hi: Disk,
        from: Peg,
        to: Peg,
        spares: Vec<Peg>,
        policy: Policy,
    },
}

fn sorted(mut pegs: Vec<Peg>) -> Vec<Peg> {
    pegs.sort_unstable();
    pegs
}

struct Expander {
    stack: Vec<Task>,
    engine: CountEngine,
}

impl Expander {
    fn next_move(&mut self) -> Option<Move> {
        loop {
            match self.stack.pop()? {
                Task::Emit(mv) => return Some(mv),
                Task::Transfer {
                    lo,
                    hi,
                    from,
                    to,
                    spares,
                    policy,
                } => self.expand(lo, hi, from, to, spares, policy),
            }
        }
    }

    fn expand(&mut self, lo: Disk, hi: Disk, from: Peg, to: Peg, spares: Vec<Peg>, policy: Policy) {
        if lo > hi {
            return;
        }
        if lo == hi {
            self.stack.push(Task::Emit(Move::new(hi, from, to)));
            return;
        }
        match policy {
            Policy::Classic => {
                let via = spares[0];
                let inner = |from, to, spare| Task::Transfer {
                    lo,
                    hi: hi - 1,
                    from,
                    to,
                    spares: vec![spare],
                    policy: Policy::Classic,
                };
                // Reverse order: the stack pops from the back.
                self.stack.push(inner(via, to, from));
                self.stack.push(Task::Emit(Move::new(hi, from, to)));
                self.stack.push(inner(from, via, to));
            }
            Policy::SingleStack => {
                let park = spares[0];
                let others =
                    |keep: Peg| sorted(spares[1..].iter().copied().chain([keep]).collect());
                self.stack.push(Task::Transfer {
                    lo,
                    hi: hi - 1,
                    from: park,
                    to,
                    spares: others(from),
                    policy,
                });
                self.stack.push(Task::Emit(Move::new(hi, from, to)));
                self.stack.push(Task::Transfer {
                    lo,
                    hi: hi - 1,
                    from,
                    to: park,
                    spares: others(to),
                    policy,
                });
            }
            Policy::Frame => {
                let count = hi - lo + 1;
                let pegs = spares.len() + 2;
                let plan = self
                    .engine
                    .canonical_split(count, pegs)
                    .expect("pegs >= 3 and count >= 1");
                let tasks = split_tasks(
                    lo..=hi,
                    from,
                    to,
                    &spares,
                    &plan.blocks,
                    Policy::Frame,
                    false,
                );
                self.stack.extend(tasks.into_iter().rev());
            }
        }
    }
}

/// Expands one split: park each block on its spare peg, move the largest
/// disk, then bring the blocks over in reverse order.
///
/// Block `i` goes to `spares[i]`; while it moves, the pegs already holding
/// smaller parked blocks are off limits. With `isolated` set, each block
/// also stays off the parking pegs of the other blocks and only borrows the
/// far endpoint.
fn split_tasks(
    disks: RangeInclusive<Disk>,
    from: Peg,
    to: Peg,
    spares: &[Peg],
    blocks: &[u32],
    inner: Policy,
    isolated: bool,
) -> Vec<Task> {
    let (lo, hi) = disks.into_inner();
    debug_assert_eq!(blocks.len(), spares.len());
    let mut ranges = Vec::with_capacity(blocks.len());
    let mut start = lo;
    for &b in blocks {
        ranges.push((start, start + b - 1));
        start += b;
    }
    debug_assert_eq!(start, hi);

    let helpers = |i: usize, endpoint: Peg| {
        let later = if isolated { &[][..] } else { &spares[i + 1..] };
        sorted(later.iter().copied().chain([endpoint]).collect())
    };
    let mut tasks = Vec::with_capacity(2 * blocks.len() + 1);
    for (i, &(block_lo, block_hi)) in ranges.iter().enumerate() {
        tasks.push(Task::Transfer {
            lo: block_lo,
            hi: block_hi,
            from,
            to: spares[i],
            spares: helpers(i, to),
            policy: inner,
        });
    }
    tasks.push(Task::Emit(Move::new(hi, from, to)));
    for (i, &(block_lo, block_hi)) in ranges.iter().enumerate().rev() {
        tasks.push(Task::Transfer {
            lo: block_lo,
            hi: block_hi,
            from: spares[i],
            to,
            spares: helpers(i, from),
            policy: inner,
        });
    }
    tasks.retain(|t| !matches!(t, Task::Transfer { lo, hi, .. } if lo > hi));
    tasks
}

/// A lazily produced move sequence with a known length.
pub struct MoveSequence {
    n: u32,
    k: usize,
    declared_length: MoveCount,
    source: Source,
}

enum Source {
    Lazy(Expander),
    Buffered(std::vec::IntoIter<Move>),
}

impl MoveSequence {
    fn lazy(
        n: u32,
        k: usize,
        declared_length: MoveCount,
        tasks: Vec<Task>,
        engine: CountEngine,
    ) -> Self {
        let mut stack = tasks;
        stack.reverse();
        MoveSequence {
            n,
            k,
            declared_length,
            source: Source::Lazy(Expander { stack, engine }),
        }
    }

    /// Wraps an already materialized list of moves.
    pub fn from_moves(n: u32, k: usize, moves: Vec<Move>) -> Self {
        MoveSequence {
            n,
            k,
            declared_length: MoveCount::from(moves.len() as u64),
            source: Source::Buffered(moves.into_iter()),
        }
    }

    pub fn disks(&self) -> u32 {
        self.n
    }

    pub fn pegs(&self) -> usize {
        self.k
    }

    /// Number of moves the sequence yields in total.
    pub fn declared_length(&self) -> &MoveCount {
        &self.declared_length
    }
}

impl fmt::Debug for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MoveSequence")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("declared_length", &self.declared_length)
            .finish_non_exhaustive()
    }
}

impl Iterator for MoveSequence {
    type Item = Move;

    fn next(&mut self) -> Option<Move> {
        match &mut self.source {
            Source::Lazy(expander) => expander.next_move(),
            Source::Buffered(moves) => moves.next(),
        }
    }
}

fn check_pegs(k: usize) -> Result<()> {
    if k < 3 {
        return Err(HanoiError::InvalidConfiguration(format!(
            "at least 3 pegs are required, got {k}"
        )));
    }
    Ok(())
}

/// Classic recursion moving `n` disks from `src` to `dst` through `aux`.
///
/// The sequence is reported as a three-peg instance; callers embedding it
/// in a larger puzzle replay it with their own peg count.
pub fn generate_three_peg(n: u32, src: Peg, aux: Peg, dst: Peg) -> Result<MoveSequence> {
    if src == aux || aux == dst || src == dst {
        return Err(HanoiError::InvalidConfiguration(format!(
            "pegs must be distinct, got {src}, {aux}, {dst}"
        )));
    }
    let k = src.max(aux).max(dst) + 1;
    Ok(MoveSequence::lazy(
        n,
        k.max(3),
        MoveCount::mersenne(n),
        vec![Task::Transfer {
            lo: 1,
            hi: n,
            from: src,
            to: dst,
            spares: vec![aux],
            policy: Policy::Classic,
        }],
        CountEngine::new(),
    ))
}

/// Frame-Stewart solution from peg 0 to peg `k - 1` using the canonical
/// (smallest first block) split at every level.
pub fn generate_optimal(n: u32, k: usize) -> Result<MoveSequence> {
    check_pegs(k)?;
    let mut engine = CountEngine::new();
    let length = engine.stewart(n, k)?;
    let task = Task::Transfer {
        lo: 1,
        hi: n,
        from: SOURCE,
        to: destination(k),
        spares: (1..k - 1).collect(),
        policy: Policy::Frame,
    };
    Ok(MoveSequence::lazy(n, k, length, vec![task], engine))
}

/// Like [`generate_optimal`] but with an explicit top-level split; every
/// block below it still uses the canonical split. The sequence length is the
/// plan's cost, which may exceed the optimum.
pub fn generate_with_plan(n: u32, plan: &SplitPlan) -> Result<MoveSequence> {
    let k = plan.k;
    check_pegs(k)?;
    if n == 0 || plan.disks() != n || plan.blocks.len() != k - 2 {
        return Err(HanoiError::InvalidConfiguration(format!(
            "plan {plan} does not split a {n}-disk tower on {k} pegs"
        )));
    }
    let mut engine = CountEngine::new();
    let length = plan.cost(&mut engine);
    let spares: Vec<Peg> = (1..k - 1).collect();
    let tasks = split_tasks(
        1..=n,
        SOURCE,
        destination(k),
        &spares,
        &plan.blocks,
        Policy::Frame,
        false,
    );
    Ok(MoveSequence::lazy(n, k, length, tasks, engine))
}

/// One of the four-peg strategies, from peg 0 to peg 3.
pub fn generate_strategy(n: u32, strategy: StrategyId) -> MoveSequence {
    const K: usize = 4;
    const MEDIATOR: Peg = 1;
    const RESERVOIR: Peg = 2;
    let dst = destination(K);
    let mut engine = CountEngine::new();
    let length = engine.strategy_count(n, strategy);
    let tasks = match strategy {
        StrategyId::S1 => vec![Task::Transfer {
            lo: 1,
            hi: n,
            from: SOURCE,
            to: dst,
            spares: vec![MEDIATOR],
            policy: Policy::Classic,
        }],
        StrategyId::S2 => vec![Task::Transfer {
            lo: 1,
            hi: n,
            from: SOURCE,
            to: dst,
            spares: vec![MEDIATOR, RESERVOIR],
            policy: Policy::SingleStack,
        }],
        StrategyId::S3 if n == 0 => Vec::new(),
        StrategyId::S3 => {
            let (mediator, reservoir) = s3_blocks(n);
            split_tasks(
                1..=n,
                SOURCE,
                dst,
                &[MEDIATOR, RESERVOIR],
                &[mediator, reservoir],
                Policy::Classic,
                true,
            )
        }
        StrategyId::Optimal => vec![Task::Transfer {
            lo: 1,
            hi: n,
            from: SOURCE,
            to: dst,
            spares: vec![MEDIATOR, RESERVOIR],
            policy: Policy::Frame,
        }],
    };
    MoveSequence::lazy(n, K, length, tasks, engine)
}
