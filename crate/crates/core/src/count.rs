// SPDX-License-Identifier: Apache-2.0

//! Exact minimum move counts.
//!
//! Three recurrences live here:
//!
//! * the classic three-peg count `2^n - 1`;
//! * the two-block recursion `T(n,k) = min_{0<=l<n} 2 T(l,k) + T(n-l,k-1)`
//!   with `T(n,3) = 2^n - 1`, which for four pegs is exactly
//!   `min {2 T(l,4) + 2 T(m,3)} + 1` with `l + m + 1 = n`;
//! * Frame's multi-split definition, minimizing
//!   `2 T(n_1,k) + 2 T(n_2,k-1) + ... + 2 T(n_{k-2},3) + 1` over
//!   non-increasing positive block sizes summing to `n - 1`.
//!
//! Counts are unbounded integers: the `2^n - 1` term shows up inside every
//! recursion and overflows fixed-width types quickly.

use std::collections::HashMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{HanoiError, Result};

/// A nonnegative move count of unbounded size.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveCount(BigUint);

impl MoveCount {
    pub fn zero() -> Self {
        MoveCount(BigUint::zero())
    }

    /// `2^n - 1`.
    pub fn mersenne(n: u32) -> Self {
        MoveCount((BigUint::one() << n as usize) - 1u32)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.0.bit(0)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// `(self - 1) / 2`: the moves on either side of the largest disk's move
    /// in a solution of this length. `None` for zero or even counts.
    pub fn half_before_largest(&self) -> Option<MoveCount> {
        self.is_odd().then(|| MoveCount((&self.0 - 1u32) >> 1usize))
    }
}

impl From<u64> for MoveCount {
    fn from(v: u64) -> Self {
        MoveCount(BigUint::from(v))
    }
}

impl From<BigUint> for MoveCount {
    fn from(v: BigUint) -> Self {
        MoveCount(v)
    }
}

impl PartialEq<u64> for MoveCount {
    fn eq(&self, other: &u64) -> bool {
        self.to_u64() == Some(*other)
    }
}

impl Add for MoveCount {
    type Output = MoveCount;
    fn add(self, rhs: MoveCount) -> MoveCount {
        MoveCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a MoveCount> for &'a MoveCount {
    type Output = MoveCount;
    fn add(self, rhs: &MoveCount) -> MoveCount {
        MoveCount(&self.0 + &rhs.0)
    }
}

impl AddAssign<&MoveCount> for MoveCount {
    fn add_assign(&mut self, rhs: &MoveCount) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<u64> for MoveCount {
    fn add_assign(&mut self, rhs: u64) {
        self.0 += rhs;
    }
}

impl Mul<u32> for &MoveCount {
    type Output = MoveCount;
    fn mul(self, rhs: u32) -> MoveCount {
        MoveCount(&self.0 * rhs)
    }
}

impl Sum for MoveCount {
    fn sum<I: Iterator<Item = MoveCount>>(iter: I) -> Self {
        iter.fold(MoveCount::zero(), Add::add)
    }
}

impl fmt::Display for MoveCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for MoveCount {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(MoveCount)
    }
}

/// Serialized as a JSON number when it fits in a `u64`, else as a decimal string.
impl Serialize for MoveCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

/// `2^n - 1`, the classic three-peg count.
pub fn count_three_peg(n: u32) -> MoveCount {
    MoveCount::mersenne(n)
}

fn check_pegs(k: usize) -> Result<()> {
    if k < 3 {
        return Err(HanoiError::InvalidConfiguration(format!(
            "at least 3 pegs are required, got {k}"
        )));
    }
    Ok(())
}

/// Sizes of the blocks parked before the largest disk moves.
///
/// `blocks[0]` is moved with all `k` pegs, `blocks[1]` with `k - 1` pegs,
/// and so on down to `blocks[k - 3]`, which is moved with three pegs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SplitPlan {
    pub k: usize,
    pub blocks: Vec<u32>,
}

impl SplitPlan {
    pub fn new(k: usize, blocks: Vec<u32>) -> Result<Self> {
        check_pegs(k)?;
        if blocks.len() != k - 2 {
            return Err(HanoiError::InvalidConfiguration(format!(
                "a {k}-peg plan needs {} blocks, got {}",
                k - 2,
                blocks.len()
            )));
        }
        Ok(SplitPlan { k, blocks })
    }

    /// Tower size this plan splits: blocks plus the largest disk.
    pub fn disks(&self) -> u32 {
        self.blocks.iter().sum::<u32>() + 1
    }

    /// Pegs available while moving block `i`.
    pub fn pegs_for_block(&self, i: usize) -> usize {
        self.k - i
    }

    /// True when every block is nonempty and sizes never increase.
    pub fn is_frame_canonical(&self) -> bool {
        self.blocks.iter().all(|&b| b >= 1) && self.blocks.windows(2).all(|w| w[0] >= w[1])
    }

    /// Cost of the full transfer following this plan, each block moved optimally.
    pub fn cost(&self, engine: &mut CountEngine) -> MoveCount {
        let parked: MoveCount = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, &b)| engine.stewart_unchecked(b, self.pegs_for_block(i)))
            .sum();
        let mut total = &parked * 2;
        total += 1;
        total
    }
}

impl fmt::Display for SplitPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// Where a Frame count came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameBasis {
    /// No disks.
    Empty,
    /// Three pegs: `2^n - 1`.
    ThreePeg,
    /// `0 < n < k`: outside Frame's stated domain, so each smaller disk parks
    /// on its own spare peg and the count is `2n - 1`.
    SmallTowerFallback,
    /// Minimum over Frame-canonical partitions.
    Partition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameCount {
    pub count: MoveCount,
    pub basis: FrameBasis,
}

/// The four-peg strategies compared against the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyId {
    /// Ignore the Reservoir and play classic Hanoi on the other three pegs.
    S1,
    /// Stack all smaller disks on a single peg before each larger disk moves.
    S2,
    /// Park two halves, one on the Mediator and one on the Reservoir, each
    /// moved with three pegs.
    S3,
    /// The Frame strategy.
    Optimal,
}

impl StrategyId {
    pub const ALL: [StrategyId; 4] = [
        StrategyId::S1,
        StrategyId::S2,
        StrategyId::S3,
        StrategyId::Optimal,
    ];
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyId::S1 => "s1",
            StrategyId::S2 => "s2",
            StrategyId::S3 => "s3",
            StrategyId::Optimal => "optimal",
        })
    }
}

impl FromStr for StrategyId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "s1" => Ok(StrategyId::S1),
            "s2" => Ok(StrategyId::S2),
            "s3" => Ok(StrategyId::S3),
            "optimal" => Ok(StrategyId::Optimal),
            other => Err(format!(
                "unknown strategy `{other}` (expected optimal, s1, s2 or s3)"
            )),
        }
    }
}

/// Block sizes `(mediator, reservoir)` used by strategy S3 for an `n`-disk tower.
///
/// Odd `n = 2m + 1` splits as `(m, m)`; even `n = 2m` as `(m, m - 1)`.
pub fn s3_blocks(n: u32) -> (u32, u32) {
    if n == 0 {
        return (0, 0);
    }
    let rest = n - 1;
    (rest.div_ceil(2), rest / 2)
}

/// Memoized move counts. Not shared between threads; give each caller its own.
#[derive(Debug, Default)]
pub struct CountEngine {
    // stewart[k - 3][n] = T(n, k)
    stewart: Vec<Vec<MoveCount>>,
    frame: HashMap<(u32, usize), FrameCount>,
    canonical: HashMap<(u32, usize), SplitPlan>,
}

impl CountEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Two-block recursion count `T(n, k)`.
    pub fn stewart(&mut self, n: u32, k: usize) -> Result<MoveCount> {
        check_pegs(k)?;
        Ok(self.stewart_unchecked(n, k))
    }

    pub(crate) fn stewart_unchecked(&mut self, n: u32, k: usize) -> MoveCount {
        self.fill_stewart(n, k);
        self.stewart[k - 3][n as usize].clone()
    }

    fn fill_stewart(&mut self, n: u32, k: usize) {
        let len = n as usize + 1;
        while self.stewart.len() < k - 2 {
            self.stewart.push(Vec::new());
        }
        for row in 0..=k - 3 {
            let (lower, upper) = self.stewart.split_at_mut(row);
            let table = &mut upper[0];
            for i in table.len()..len {
                let value = if row == 0 {
                    MoveCount::mersenne(i as u32)
                } else if i == 0 {
                    MoveCount::zero()
                } else {
                    let fewer = &lower[row - 1];
                    (0..i)
                        .map(|l| &(&table[l] * 2) + &fewer[i - l])
                        .min()
                        .expect("nonempty split range")
                };
                table.push(value);
            }
        }
    }

    /// Frame's multi-split count.
    pub fn frame(&mut self, n: u32, k: usize) -> Result<MoveCount> {
        Ok(self.frame_detail(n, k)?.count)
    }

    /// Frame's count together with which branch of the definition produced it.
    pub fn frame_detail(&mut self, n: u32, k: usize) -> Result<FrameCount> {
        check_pegs(k)?;
        Ok(self.frame_unchecked(n, k))
    }

    fn frame_unchecked(&mut self, n: u32, k: usize) -> FrameCount {
        if let Some(hit) = self.frame.get(&(n, k)) {
            return hit.clone();
        }
        let result = if n == 0 {
            FrameCount {
                count: MoveCount::zero(),
                basis: FrameBasis::Empty,
            }
        } else if k == 3 {
            FrameCount {
                count: MoveCount::mersenne(n),
                basis: FrameBasis::ThreePeg,
            }
        } else if (n as usize) < k {
            FrameCount {
                count: MoveCount::from(2 * n as u64 - 1),
                basis: FrameBasis::SmallTowerFallback,
            }
        } else {
            FrameCount {
                count: self.frame_partition_min(n, k),
                basis: FrameBasis::Partition,
            }
        };
        self.frame.insert((n, k), result.clone());
        result
    }

    fn frame_partition_min(&mut self, n: u32, k: usize) -> MoveCount {
        let slots = k - 2;
        let total = n - 1;
        // costs[i][v] = 2 T(v, k - i)
        let costs: Vec<Vec<MoveCount>> = (0..slots)
            .map(|i| {
                (0..=total)
                    .map(|v| &self.frame_unchecked(v, k - i).count * 2)
                    .collect()
            })
            .collect();

        struct Search<'a> {
            costs: &'a [Vec<MoveCount>],
            memo: HashMap<(usize, u32, u32), Option<MoveCount>>,
        }

        impl Search<'_> {
            // Cheapest way to fill slots i.. with `rem` disks, each part in 1..=cap.
            fn best(&mut self, i: usize, rem: u32, cap: u32) -> Option<MoveCount> {
                let slots = self.costs.len();
                if i == slots {
                    return (rem == 0).then(MoveCount::zero);
                }
                if let Some(hit) = self.memo.get(&(i, rem, cap)) {
                    return hit.clone();
                }
                let later = (slots - i - 1) as u32;
                let mut best: Option<MoveCount> = None;
                for v in 1..=cap.min(rem) {
                    if rem - v < later {
                        break;
                    }
                    if let Some(tail) = self.best(i + 1, rem - v, v) {
                        let candidate = &self.costs[i][v as usize] + &tail;
                        if best.as_ref().is_none_or(|b| candidate < *b) {
                            best = Some(candidate);
                        }
                    }
                }
                self.memo.insert((i, rem, cap), best.clone());
                best
            }
        }

        let mut search = Search {
            costs: &costs,
            memo: HashMap::new(),
        };
        let mut count = search
            .best(0, total, total)
            .expect("n >= k leaves room for k - 2 positive blocks");
        count += 1;
        count
    }

    /// Every block plan reaching `T(n, k)` at the top level, in ascending
    /// lexicographic order. The first entry is the canonical (smallest first
    /// block) plan.
    pub fn optimal_splits(&mut self, n: u32, k: usize) -> Result<Vec<SplitPlan>> {
        check_pegs(k)?;
        if n == 0 {
            return Err(HanoiError::Domain(
                "an empty tower has no largest disk to split around".into(),
            ));
        }
        let tails = self.minimizing_blocks(n, k);
        Ok(tails
            .into_iter()
            .map(|blocks| SplitPlan { k, blocks })
            .collect())
    }

    /// The smallest-first-block minimizer for `(n, k)`.
    pub fn canonical_split(&mut self, n: u32, k: usize) -> Result<SplitPlan> {
        check_pegs(k)?;
        if n == 0 {
            return Err(HanoiError::Domain(
                "an empty tower has no largest disk to split around".into(),
            ));
        }
        if let Some(hit) = self.canonical.get(&(n, k)) {
            return Ok(hit.clone());
        }
        let mut blocks = Vec::with_capacity(k - 2);
        let (mut rest, mut pegs) = (n, k);
        while pegs > 3 {
            let target = self.stewart_unchecked(rest, pegs);
            let l = (0..rest)
                .find(|&l| {
                    &(&self.stewart_unchecked(l, pegs) * 2)
                        + &self.stewart_unchecked(rest - l, pegs - 1)
                        == target
                })
                .expect("the minimum is attained");
            blocks.push(l);
            rest -= l;
            pegs -= 1;
        }
        blocks.push(rest - 1);
        let plan = SplitPlan { k, blocks };
        self.canonical.insert((n, k), plan.clone());
        Ok(plan)
    }

    // All block lists splitting an `n`-disk tower on `k` pegs at minimum cost.
    fn minimizing_blocks(&mut self, n: u32, k: usize) -> Vec<Vec<u32>> {
        if k == 3 {
            return vec![vec![n - 1]];
        }
        let target = self.stewart_unchecked(n, k);
        let mut plans = Vec::new();
        for l in 0..n {
            let cost = &(&self.stewart_unchecked(l, k) * 2) + &self.stewart_unchecked(n - l, k - 1);
            if cost == target {
                for tail in self.minimizing_blocks(n - l, k - 1) {
                    let mut blocks = Vec::with_capacity(k - 2);
                    blocks.push(l);
                    blocks.extend(tail);
                    plans.push(blocks);
                }
            }
        }
        plans
    }

    /// Move count of a four-peg strategy.
    pub fn strategy_count(&mut self, n: u32, strategy: StrategyId) -> MoveCount {
        match strategy {
            StrategyId::S1 | StrategyId::S2 => MoveCount::mersenne(n),
            StrategyId::S3 => {
                if n == 0 {
                    return MoveCount::zero();
                }
                let (mediator, reservoir) = s3_blocks(n);
                let parked = &MoveCount::mersenne(mediator) + &MoveCount::mersenne(reservoir);
                let mut total = &parked * 2;
                total += 1;
                total
            }
            StrategyId::Optimal => self.stewart_unchecked(n, 4),
        }
    }
}

pub fn count_stewart(n: u32, k: usize) -> Result<MoveCount> {
    CountEngine::new().stewart(n, k)
}

pub fn count_frame(n: u32, k: usize) -> Result<MoveCount> {
    CountEngine::new().frame(n, k)
}

pub fn optimal_splits(n: u32, k: usize) -> Result<Vec<SplitPlan>> {
    CountEngine::new().optimal_splits(n, k)
}

pub fn strategy_count(n: u32, strategy: StrategyId) -> MoveCount {
    CountEngine::new().strategy_count(n, strategy)
}
