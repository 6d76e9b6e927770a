//! Partitions, the refinement statistic, and the brute-force enumerator used
//! as an oracle by the rest of the crate.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on `n` for brute-force enumeration.
pub const DEFAULT_ORACLE_LIMIT: u32 = 60;

/// A non-increasing sequence of positive parts. The empty partition is the
/// unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Default)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} contains a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u64 {
        weight(&self.parts)
    }

    pub fn statistic_k(&self) -> u64 {
        statistic_k(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// Sum of the parts.
pub fn weight(parts: &[u32]) -> u64 {
    parts.iter().map(|&p| u64::from(p)).sum()
}

/// Number of odd parts plus twice the number of even parts.
pub fn statistic_k(parts: &[u32]) -> u64 {
    parts.iter().map(|&p| part_statistic(p)).sum()
}

/// Contribution of a single part to the refinement statistic.
#[inline]
pub fn part_statistic(part: u32) -> u64 {
    if part % 2 == 1 {
        1
    } else {
        2
    }
}

/// Upper bound on `n` accepted by the brute-force enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OracleBound(pub u32);

impl Default for OracleBound {
    fn default() -> Self {
        OracleBound(DEFAULT_ORACLE_LIMIT)
    }
}

impl OracleBound {
    pub fn check(self, n: u32) -> Result<()> {
        if n > self.0 {
            Err(Error::BoundExceeded {
                n: u64::from(n),
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// Lexicographically decreasing iterator over the partitions of `n` whose
/// largest part is at most `max_part`.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Partitions {
    pub fn new(n: u32, max_part: Option<u32>) -> Self {
        let cap = max_part.unwrap_or(n).min(n);
        let current = if n == 0 {
            Some(Vec::new())
        } else if cap == 0 {
            None
        } else {
            let mut first = Vec::new();
            fill_greedy(&mut first, n, cap);
            Some(first)
        };
        Partitions { current }
    }

    /// Same as [`Partitions::new`] but refuses `n` above the oracle bound.
    pub fn bounded(n: u32, max_part: Option<u32>, bound: OracleBound) -> Result<Self> {
        bound.check(n)?;
        Ok(Partitions::new(n, max_part))
    }
}

fn fill_greedy(parts: &mut Vec<u32>, mut remaining: u32, cap: u32) {
    while remaining > 0 {
        let p = remaining.min(cap);
        parts.push(p);
        remaining -= p;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let out = self.current.take()?;
        // Successor: decrement the rightmost part above 1 and refill the tail greedily.
        if let Some(i) = out.iter().rposition(|&p| p > 1) {
            let mut next = out[..i].to_vec();
            let v = out[i] - 1;
            let ones = (out.len() - i - 1) as u32;
            next.push(v);
            fill_greedy(&mut next, ones + 1, v);
            self.current = Some(next);
        }
        Some(Partition { parts: out })
    }
}

/// Every partition of `n` (largest part at most `max_part` when given), each
/// exactly once, in lexicographically decreasing order.
pub fn enumerate_all(n: u32, max_part: Option<u32>, bound: OracleBound) -> Result<Vec<Partition>> {
    Ok(Partitions::bounded(n, max_part, bound)?.collect())
}
