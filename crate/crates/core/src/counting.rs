//! Exact count tables.
//!
//! | role | meaning |
//! |------|---------|
//! | `A`  | admissible partitions of `n` with statistic `k` |
//! | `B`  | partitions of `n` into `k` distinct odd parts |
//! | `a`  | `A` restricted to largest part at most `N` |
//! | `e`  | `A` restricted to largest part exactly `N` |
//!
//! The admissible counts come from a dynamic program over the largest part:
//! a partition with largest part `p` is `p` on top of either nothing, a
//! partition with largest part at most `p - 9`, or one whose largest part is
//! `p - d` for a gap `d` in 5..=8 that the rule set admits for `p`.
//! All arithmetic is checked.

use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::{overflow, Error, Result};
use crate::partitions::{part_statistic, OracleBound, Partitions};
use crate::rules::{RuleSet, RULE_GAPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    #[serde(rename = "A")]
    Admissible,
    #[serde(rename = "B")]
    DistinctOdd,
    #[serde(rename = "a")]
    LargestAtMost,
    #[serde(rename = "e")]
    LargestExactly,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Admissible => "A",
            Role::DistinctOdd => "B",
            Role::LargestAtMost => "a",
            Role::LargestExactly => "e",
        })
    }
}

/// Dense `(k, n)` table of exact counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    role: Role,
    bound: Option<i64>,
    k_max: usize,
    n_max: usize,
    entries: Vec<u64>,
}

impl CountTable {
    fn zeros(role: Role, bound: Option<i64>, k_max: usize, n_max: usize) -> Self {
        CountTable {
            role,
            bound,
            k_max,
            n_max,
            entries: vec![0; (k_max + 1) * (n_max + 1)],
        }
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// Largest-part bound `N` for roles `a` and `e`.
    pub fn bound(&self) -> Option<i64> {
        self.bound
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    #[inline]
    fn idx(&self, k: usize, n: usize) -> usize {
        k * (self.n_max + 1) + n
    }

    /// Count at `(k, n)`. Negative coordinates give 0; coordinates beyond the
    /// window are an error.
    pub fn get(&self, k: i64, n: i64) -> Result<u64> {
        if k < 0 || n < 0 {
            return Ok(0);
        }
        let (ku, nu) = (k as usize, n as usize);
        if ku > self.k_max || nu > self.n_max {
            return Err(Error::OutOfWindow {
                k,
                n,
                k_max: self.k_max,
                n_max: self.n_max,
            });
        }
        Ok(self.entries[self.idx(ku, nu)])
    }

    /// Unchecked in-window read.
    #[inline]
    pub fn at(&self, k: usize, n: usize) -> u64 {
        self.entries[self.idx(k, n)]
    }

    pub fn set(&mut self, k: usize, n: usize, value: u64) {
        let i = self.idx(k, n);
        self.entries[i] = value;
    }

    /// Cells in `(n, k)` order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..=self.n_max).flat_map(move |n| (0..=self.k_max).map(move |k| (k, n, self.at(k, n))))
    }

    /// Column sums `Σ_k count(k, n)` for each `n`.
    pub fn totals(&self) -> Result<Vec<u64>> {
        (0..=self.n_max)
            .map(|n| {
                (0..=self.k_max).try_fold(0u64, |acc, k| {
                    acc.checked_add(self.at(k, n))
                        .ok_or(overflow("column total"))
                })
            })
            .collect()
    }

    /// First `(k, n)` cell, in `(n, k)` order, where two equally sized tables differ.
    pub fn first_difference(&self, other: &CountTable) -> Result<Option<(usize, usize, u64, u64)>> {
        if self.k_max != other.k_max || self.n_max != other.n_max {
            return Err(Error::BoundMismatch {
                lhs_k: self.k_max,
                lhs_n: self.n_max,
                rhs_k: other.k_max,
                rhs_n: other.n_max,
            });
        }
        Ok(self
            .cells()
            .find(|&(k, n, v)| other.at(k, n) != v)
            .map(|(k, n, v)| (k, n, v, other.at(k, n))))
    }

    /// CSV with header `k,n,count`, rows sorted by `(n, k)`. Zero cells are
    /// included so the output covers the whole window.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "n", "count"])?;
        for (k, n, v) in self.cells() {
            w.write_record([k.to_string(), n.to_string(), v.to_string()])?;
        }
        w.flush()
    }
}

fn unit_table(role: Role, bound: Option<i64>, k_max: usize, n_max: usize) -> CountTable {
    let mut t = CountTable::zeros(role, bound, k_max, n_max);
    t.set(0, 0, 1);
    t
}

/// `a_M` tables for every `0 <= M <= n_max`, built once.
///
/// On a window with `n <= n_max` the tables stabilise: `a_M = a_{n_max}` for
/// all `M >= n_max`, and `a_M` for `M <= 0` holds only the empty partition.
#[derive(Debug, Clone)]
pub struct CountEngine {
    k_max: usize,
    n_max: usize,
    cumulative: Vec<CountTable>,
}

impl CountEngine {
    pub fn build(k_max: usize, n_max: usize) -> Result<Self> {
        Self::build_with(&RuleSet::SILADIC, k_max, n_max, n_max)
    }

    /// Builds `a_0 ..= a_top` (with `top` clamped to `n_max`).
    pub fn build_with(rules: &RuleSet, k_max: usize, n_max: usize, top: usize) -> Result<Self> {
        let top = top.min(n_max);
        let free_gap = rules.gap_floor.max(*RULE_GAPS.end() + 1) as usize;
        let mut cumulative: Vec<CountTable> = Vec::with_capacity(top + 1);
        cumulative.push(unit_table(Role::LargestAtMost, Some(0), k_max, n_max));

        for p in 1..=top {
            let mut exact = CountTable::zeros(Role::LargestExactly, Some(p as i64), k_max, n_max);
            if p as u32 != rules.forbidden_part {
                let w = part_statistic(p as u32) as usize;
                // predecessors whose largest part is exactly p - d
                let ruled: Vec<usize> = RULE_GAPS
                    .filter(|&d| d >= rules.gap_floor && (d as usize) < p)
                    .filter(|&d| rules.gap_rule_allows(d, p as u32).unwrap_or(false))
                    .map(|d| p - d as usize)
                    .collect();
                let below = &cumulative[p.saturating_sub(free_gap)];
                for k in w..=k_max {
                    for n in p..=n_max {
                        let (sk, sn) = (k - w, n - p);
                        let mut v = below.at(sk, sn);
                        for &q in &ruled {
                            let e = cumulative[q]
                                .at(sk, sn)
                                .checked_sub(cumulative[q - 1].at(sk, sn))
                                .ok_or(overflow("e_N as a difference of a tables"))?;
                            v = v.checked_add(e).ok_or(overflow("largest-part DP"))?;
                        }
                        exact.set(k, n, v);
                    }
                }
            }
            let prev = &cumulative[p - 1];
            let mut next = CountTable::zeros(Role::LargestAtMost, Some(p as i64), k_max, n_max);
            for (i, slot) in next.entries.iter_mut().enumerate() {
                *slot = prev.entries[i]
                    .checked_add(exact.entries[i])
                    .ok_or(overflow("prefix sum over largest part"))?;
            }
            cumulative.push(next);
        }
        Ok(CountEngine {
            k_max,
            n_max,
            cumulative,
        })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Largest bound whose table was computed.
    pub fn top(&self) -> usize {
        self.cumulative.len() - 1
    }

    fn cumulative_at(&self, bound: i64) -> Result<&CountTable> {
        if bound <= 0 {
            return Ok(&self.cumulative[0]);
        }
        let b = bound as usize;
        if b <= self.top() {
            Ok(&self.cumulative[b])
        } else if self.top() == self.n_max {
            Ok(&self.cumulative[self.n_max])
        } else {
            Err(Error::IndexUnavailable {
                index: bound,
                max: self.top() as i64,
            })
        }
    }

    /// `a_N` as an owned table.
    pub fn table_a(&self, bound: i64) -> Result<CountTable> {
        let mut t = self.cumulative_at(bound)?.clone();
        t.bound = Some(bound.max(0));
        Ok(t)
    }

    /// `e_N = a_N - a_{N-1}`, `N >= 1`.
    pub fn table_e(&self, bound: i64) -> Result<CountTable> {
        if bound < 1 {
            return Err(Error::Domain(format!("e_N needs N >= 1, got {bound}")));
        }
        let hi = self.cumulative_at(bound)?;
        let lo = self.cumulative_at(bound - 1)?;
        let mut t = CountTable::zeros(Role::LargestExactly, Some(bound), self.k_max, self.n_max);
        for (i, slot) in t.entries.iter_mut().enumerate() {
            *slot = hi.entries[i]
                .checked_sub(lo.entries[i])
                .ok_or(overflow("e_N as a difference of a tables"))?;
        }
        Ok(t)
    }

    /// `A`, i.e. `a_N` for any `N >= n_max`.
    #[allow(non_snake_case)]
    pub fn table_A(&self) -> Result<CountTable> {
        let mut t = self.cumulative_at(self.n_max as i64)?.clone();
        t.role = Role::Admissible;
        t.bound = None;
        Ok(t)
    }
}

/// Read access to `a_N(k, n)` and `e_N(k, n)` as signed integers, following
/// the conventions used by the recurrences: negative `k` or `n` give 0,
/// `a_N` for `N <= 0` is the empty partition only, and `e_N` for `N <= 0` is 0.
pub trait CountProvider: Sync {
    fn k_max(&self) -> usize;
    fn n_max(&self) -> usize;
    fn a(&self, bound: i64, k: i64, n: i64) -> Result<i64>;

    fn e(&self, bound: i64, k: i64, n: i64) -> Result<i64> {
        if bound <= 0 {
            return Ok(0);
        }
        Ok(self.a(bound, k, n)? - self.a(bound - 1, k, n)?)
    }
}

fn to_signed(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| overflow("count to signed conversion"))
}

impl CountProvider for CountEngine {
    fn k_max(&self) -> usize {
        self.k_max
    }

    fn n_max(&self) -> usize {
        self.n_max
    }

    fn a(&self, bound: i64, k: i64, n: i64) -> Result<i64> {
        to_signed(self.cumulative_at(bound)?.get(k, n)?)
    }
}

/// `A(k, n)` for `k <= k_max`, `n <= n_max`.
#[allow(non_snake_case)]
pub fn count_A(k_max: usize, n_max: usize) -> Result<CountTable> {
    CountEngine::build(k_max, n_max)?.table_A()
}

/// `a_N(k, n)`.
pub fn count_a(bound: i64, k_max: usize, n_max: usize) -> Result<CountTable> {
    let top = bound.max(0) as usize;
    CountEngine::build_with(&RuleSet::SILADIC, k_max, n_max, top)?.table_a(bound)
}

/// `e_N(k, n)`, `N >= 1`.
pub fn count_e(bound: i64, k_max: usize, n_max: usize) -> Result<CountTable> {
    if bound < 1 {
        return Err(Error::Domain(format!("e_N needs N >= 1, got {bound}")));
    }
    CountEngine::build_with(&RuleSet::SILADIC, k_max, n_max, bound as usize)?.table_e(bound)
}

/// `B(k, n)`: partitions of `n` into `k` distinct odd parts.
#[allow(non_snake_case)]
pub fn count_B(k_max: usize, n_max: usize) -> Result<CountTable> {
    let mut t = unit_table(Role::DistinctOdd, None, k_max, n_max);
    for part in (1..=n_max).step_by(2) {
        for k in (1..=k_max).rev() {
            for n in (part..=n_max).rev() {
                let add = t.at(k - 1, n - part);
                if add != 0 {
                    let v = t
                        .at(k, n)
                        .checked_add(add)
                        .ok_or(overflow("distinct odd DP"))?;
                    t.set(k, n, v);
                }
            }
        }
    }
    Ok(t)
}

/// Number of partitions of each `n <= n_max` into distinct odd parts,
/// ignoring the number of parts.
pub fn distinct_odd_totals(n_max: usize) -> Result<Vec<u64>> {
    let mut t = vec![0u64; n_max + 1];
    t[0] = 1;
    for part in (1..=n_max).step_by(2) {
        for n in (part..=n_max).rev() {
            t[n] = t[n]
                .checked_add(t[n - part])
                .ok_or(overflow("distinct odd totals"))?;
        }
    }
    Ok(t)
}

/// Which rule formulation filters the brute-force oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Original,
    Reformulated,
}

impl Formulation {
    pub fn admits(self, rules: &RuleSet, parts: &[u32]) -> bool {
        match self {
            Formulation::Original => rules.satisfies_original(parts),
            Formulation::Reformulated => rules.satisfies_reformulated(parts),
        }
    }
}

/// `A(k, n)` by enumerating every partition of `n <= n_max` and filtering.
/// Shares no code with [`CountEngine`]. `k_max` is `n_max`.
#[allow(non_snake_case)]
pub fn oracle_count_A(
    n_max: u32,
    bound: OracleBound,
    formulation: Formulation,
) -> Result<CountTable> {
    bound.check(n_max)?;
    let size = n_max as usize;
    let mut t = CountTable::zeros(Role::Admissible, None, size, size);
    for n in 0..=n_max {
        for p in Partitions::new(n, None) {
            if !formulation.admits(&RuleSet::SILADIC, p.parts()) {
                continue;
            }
            let k = p.statistic_k() as usize;
            if k > size {
                continue;
            }
            let v = t.at(k, n as usize) + 1;
            t.set(k, n as usize, v);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_examples() {
        let a = count_A(20, 20).unwrap();
        assert_eq!(a.get(2, 8).unwrap(), 2);
        assert_eq!(a.get(0, 0).unwrap(), 1);
        assert_eq!(a.get(1, 7).unwrap(), 1);
        assert_eq!(a.get(-1, 3).unwrap(), 0);
        assert!(matches!(a.get(21, 3), Err(Error::OutOfWindow { .. })));
    }

    #[test]
    fn distinct_odd_examples() {
        let b = count_B(20, 20).unwrap();
        assert_eq!(b.get(2, 8).unwrap(), 2);
        assert_eq!(b.get(1, 2).unwrap(), 0);
        assert_eq!(b.get(3, 9).unwrap(), 1);
        assert_eq!(b.get(0, 0).unwrap(), 1);
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(count_a(7, 12, 12).unwrap().get(2, 8).unwrap(), 1);
        assert_eq!(count_a(1, 12, 12).unwrap().get(0, 0).unwrap(), 1);
        assert_eq!(count_a(4, 12, 12).unwrap().get(2, 4).unwrap(), 1);
        let a0 = count_a(0, 12, 12).unwrap();
        assert_eq!(a0.cells().filter(|c| c.2 != 0).count(), 1);
        assert_eq!(a0.get(0, 0).unwrap(), 1);
    }

    #[test]
    fn exact_examples() {
        assert_eq!(count_e(8, 12, 12).unwrap().get(2, 8).unwrap(), 1);
        assert_eq!(count_e(8, 12, 12).unwrap().get(3, 9).unwrap(), 1);
        let e5 = count_e(5, 12, 12).unwrap();
        for k in 0..=12 {
            assert_eq!(e5.get(k, 3).unwrap(), 0);
        }
        assert_eq!(e5.get(0, 0).unwrap(), 0);
        assert!(count_e(0, 4, 4).is_err());
    }

    #[test]
    fn part_two_never_largest() {
        let e2 = count_e(2, 10, 10).unwrap();
        assert!(e2.cells().all(|c| c.2 == 0));
    }

    #[test]
    fn oracle_examples() {
        let o = oracle_count_A(12, OracleBound::default(), Formulation::Reformulated).unwrap();
        assert_eq!(o.get(3, 9).unwrap(), 1);
        for k in 1..=12 {
            assert_eq!(o.get(k, 2).unwrap(), 0);
        }
        let a = count_A(12, 12).unwrap();
        assert_eq!(o.first_difference(&a).unwrap(), None);
        assert!(oracle_count_A(61, OracleBound::default(), Formulation::Original).is_err());
    }

    #[test]
    fn distinct_odd_totals_match_refined_table() {
        let b = count_B(40, 40).unwrap();
        assert_eq!(b.totals().unwrap(), distinct_odd_totals(40).unwrap());
        // 1, 1, 0, 1, 1, 1, 1, 1, 2, 2, 2 for n = 0..=10
        assert_eq!(
            &distinct_odd_totals(10).unwrap()[..],
            &[1, 1, 0, 1, 1, 1, 1, 1, 2, 2, 2]
        );
    }

    #[test]
    fn csv_layout() {
        let t = count_A(1, 2).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "k,n,count\n0,0,1\n1,0,0\n0,1,0\n1,1,1\n0,2,0\n1,2,0\n"
        );
    }

    #[test]
    fn engine_beyond_top_stabilises() {
        let eng = CountEngine::build(30, 30).unwrap();
        assert_eq!(eng.a(500, 2, 8).unwrap(), 2);
        assert_eq!(eng.a(-3, 0, 0).unwrap(), 1);
        assert_eq!(eng.e(-3, 0, 0).unwrap(), 0);
        let partial = CountEngine::build_with(&RuleSet::SILADIC, 30, 30, 10).unwrap();
        assert!(matches!(
            partial.a(11, 0, 0),
            Err(Error::IndexUnavailable { .. })
        ));
    }
}
