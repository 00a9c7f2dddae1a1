// SPDX-License-Identifier: Apache-2.0

//! Exhaustive breadth-first search over the full `k^n` state graph.
//!
//! Vertices are disk-to-peg assignments in the base-`k` encoding of
//! [`PuzzleState::encode`]; edges are single legal moves. Distances live in a
//! dense `u16` array indexed by encoding, so the whole search refuses up
//! front when the graph does not fit the configured memory budget.

use std::io::Write;

use num_bigint::BigUint;

use crate::count::MoveCount;
use crate::error::{HanoiError, Result};
use crate::generate::MoveSequence;
use crate::puzzle::{state_space_size, Move, PuzzleState};

/// One gibibyte.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

const UNSEEN: u16 = u16::MAX;
const MAX_PEGS: usize = 64;

// Distance array plus one frontier slot per state.
const BYTES_PER_STATE: u64 = 2 + 4;
// Path counting adds a layer-slot index and a big-integer count per state.
const BYTES_PER_STATE_COUNTING: u64 = BYTES_PER_STATE + 4 + 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateGraphParams {
    pub n: u32,
    pub k: usize,
    /// Byte limit for the search's working arrays.
    pub memory_budget: u64,
}

impl StateGraphParams {
    pub fn new(n: u32, k: usize) -> Self {
        StateGraphParams {
            n,
            k,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn with_budget(mut self, bytes: u64) -> Self {
        self.memory_budget = bytes;
        self
    }

    /// Bytes the search would need, or `None` if the state count overflows.
    pub fn required_bytes(&self, count_paths: bool) -> Option<u128> {
        let per_state = if count_paths {
            BYTES_PER_STATE_COUNTING
        } else {
            BYTES_PER_STATE
        };
        state_space_size(self.n, self.k).map(|s| s as u128 * per_state as u128)
    }

    fn check(&self, count_paths: bool) -> Result<usize> {
        if self.k < 3 {
            return Err(HanoiError::InvalidConfiguration(format!(
                "at least 3 pegs are required, got {}",
                self.k
            )));
        }
        if self.k > MAX_PEGS {
            return Err(HanoiError::InvalidConfiguration(format!(
                "the oracle handles at most {MAX_PEGS} pegs, got {}",
                self.k
            )));
        }
        let what = format!("search over {}^{} states", self.k, self.n);
        let required = self.required_bytes(count_paths).unwrap_or(u128::MAX);
        if required > self.memory_budget as u128 {
            return Err(HanoiError::ResourceLimit {
                what,
                required,
                available: self.memory_budget,
            });
        }
        let states = state_space_size(self.n, self.k).expect("checked by the budget");
        if states > u32::MAX as u64 {
            return Err(HanoiError::ResourceLimit {
                what,
                required,
                available: self.memory_budget,
            });
        }
        Ok(states as usize)
    }
}

/// Neighbor enumeration over encoded states.
struct Graph {
    n: usize,
    k: usize,
    powers: Vec<u32>,
}

impl Graph {
    fn new(n: u32, k: usize) -> Self {
        let powers = (0..n).map(|i| (k as u32).pow(i)).collect();
        Graph {
            n: n as usize,
            k,
            powers,
        }
    }

    /// Calls `visit(neighbor)` for every state one legal move away.
    fn for_each_neighbor(&self, code: u32, mut visit: impl FnMut(u32)) {
        // tops[p] = index of the smallest disk on peg p; usize::MAX when empty
        let mut tops = [usize::MAX; MAX_PEGS];
        let tops = &mut tops[..self.k];
        let mut rest = code;
        let mut found = 0;
        for disk in 0..self.n {
            let peg = (rest % self.k as u32) as usize;
            rest /= self.k as u32;
            if tops[peg] == usize::MAX {
                tops[peg] = disk;
                found += 1;
                if found == self.k {
                    break;
                }
            }
        }
        for from in 0..self.k {
            let disk = tops[from];
            if disk == usize::MAX {
                continue;
            }
            let base = code - from as u32 * self.powers[disk];
            for (to, &other) in tops.iter().enumerate() {
                if to != from && other > disk {
                    visit(base + to as u32 * self.powers[disk]);
                }
            }
        }
    }

    /// The move turning state `a` into its neighbor `b`.
    fn move_between(&self, a: u32, b: u32) -> Move {
        let (mut x, mut y) = (a, b);
        for disk in 0..self.n {
            let (pa, pb) = (x % self.k as u32, y % self.k as u32);
            if pa != pb {
                return Move::new(disk as u32 + 1, pa as usize, pb as usize);
            }
            x /= self.k as u32;
            y /= self.k as u32;
        }
        unreachable!("states {a} and {b} are identical")
    }
}

/// A completed breadth-first search.
#[derive(Debug)]
pub struct Search {
    params: StateGraphParams,
    graph: Graph,
    distance: Vec<u16>,
    layers: Vec<u64>,
    source: u32,
    target: u32,
    paths: Option<MoveCount>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({} disks, {} pegs)", self.n, self.k)
    }
}

impl Search {
    /// Searches from the initial state; `count_paths` also counts the
    /// distinct shortest sequences reaching the goal.
    pub fn run(params: StateGraphParams, count_paths: bool) -> Result<Search> {
        let source = PuzzleState::initial(params.n, params.k)?;
        let target = PuzzleState::goal(params.n, params.k)?;
        Self::run_between(params, &source, &target, count_paths)
    }

    pub(crate) fn run_between(
        params: StateGraphParams,
        source: &PuzzleState,
        target: &PuzzleState,
        count_paths: bool,
    ) -> Result<Search> {
        let states = params.check(count_paths)?;
        let graph = Graph::new(params.n, params.k);
        let source = source.encode().expect("fits by the budget check") as u32;
        let target = target.encode().expect("fits by the budget check") as u32;

        let mut distance = vec![UNSEEN; states];
        // Position of each state within its layer, for adding path counts.
        let mut slot: Vec<u32> = if count_paths {
            vec![0; states]
        } else {
            Vec::new()
        };
        let mut layers = Vec::new();
        let mut paths = None;

        let mut frontier = vec![source];
        let mut counts = vec![BigUint::from(1u32)];
        distance[source as usize] = 0;
        let mut depth: u16 = 0;

        while !frontier.is_empty() {
            layers.push(frontier.len() as u64);
            if count_paths {
                if let Some(i) = frontier.iter().position(|&s| s == target) {
                    paths = Some(MoveCount::from(counts[i].clone()));
                }
            }
            if depth == UNSEEN - 1 {
                return Err(HanoiError::ResourceLimit {
                    what: "distances beyond the 16-bit range".into(),
                    required: u128::MAX,
                    available: params.memory_budget,
                });
            }
            let next_depth = depth + 1;
            let mut next = Vec::new();
            let mut next_counts = Vec::new();
            for (i, &state) in frontier.iter().enumerate() {
                graph.for_each_neighbor(state, |nb| {
                    let d = &mut distance[nb as usize];
                    if *d == UNSEEN {
                        *d = next_depth;
                        if count_paths {
                            slot[nb as usize] = next.len() as u32;
                            next_counts.push(counts[i].clone());
                        }
                        next.push(nb);
                    } else if count_paths && *d == next_depth {
                        next_counts[slot[nb as usize] as usize] += &counts[i];
                    }
                });
            }
            frontier = next;
            counts = next_counts;
            depth = next_depth;
        }

        Ok(Search {
            params,
            graph,
            distance,
            layers,
            source,
            target,
            paths,
        })
    }

    pub fn params(&self) -> &StateGraphParams {
        &self.params
    }

    /// Shortest distance from the start to the target state.
    pub fn distance(&self) -> MoveCount {
        MoveCount::from(self.distance[self.target as usize] as u64)
    }

    /// Number of distinct shortest sequences, if counting was requested.
    pub fn path_count(&self) -> Option<&MoveCount> {
        self.paths.as_ref()
    }

    /// Number of states at each distance from the start.
    pub fn layer_sizes(&self) -> &[u64] {
        &self.layers
    }

    /// One shortest sequence. Walking back from the target, the predecessor
    /// with the lowest encoding wins every tie.
    pub fn witness(&self) -> MoveSequence {
        let mut path = vec![self.target];
        let mut current = self.target;
        while current != self.source {
            let want = self.distance[current as usize] - 1;
            let mut best = u32::MAX;
            self.graph.for_each_neighbor(current, |nb| {
                if self.distance[nb as usize] == want && nb < best {
                    best = nb;
                }
            });
            path.push(best);
            current = best;
        }
        path.reverse();
        let moves = path
            .windows(2)
            .map(|w| self.graph.move_between(w[0], w[1]))
            .collect();
        MoveSequence::from_moves(self.params.n, self.params.k, moves)
    }

    /// Layer sizes as CSV with header `layer,states,cumulative`.
    pub fn write_layers_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["layer", "states", "cumulative"])?;
        let mut total = 0u64;
        for (layer, &states) in self.layers.iter().enumerate() {
            total += states;
            writer.write_record([layer.to_string(), states.to_string(), total.to_string()])?;
        }
        writer.flush()?;
        Ok(())
    }
}

pub fn bfs_distance(params: StateGraphParams) -> Result<MoveCount> {
    Ok(Search::run(params, false)?.distance())
}

pub fn shortest_path_count(params: StateGraphParams) -> Result<MoveCount> {
    Ok(Search::run(params, true)?
        .path_count()
        .cloned()
        .expect("the goal is always reachable"))
}

pub fn extract_witness(params: StateGraphParams) -> Result<MoveSequence> {
    Ok(Search::run(params, false)?.witness())
}
