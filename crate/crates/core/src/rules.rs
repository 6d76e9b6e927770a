//! Admissibility conditions on consecutive parts.
//!
//! Two equivalent formulations are kept side by side:
//!
//! - the *original* one constrains `λ_i + λ_{i+1} mod 16` for gaps 5..=8;
//! - the *reformulated* one constrains `λ_i mod 8` for the same gaps.
//!
//! Both also forbid the part 2 and require every gap to be at least 5. Gaps of
//! 9 or more carry no residue constraint.
//!
//! Given the gap `d`, the original condition depends on `2λ_{i+1} + d mod 16`,
//! and so on `λ_{i+1} mod 8`. The reformulated one depends on
//! `λ_{i+1} + d mod 8`. Checking `λ_{i+1}` over one full period `1..=16` is
//! therefore exhaustive.

use crate::error::{Error, Result};
use crate::partitions::{OracleBound, Partitions};
use crate::report::{CheckReport, Checker};

/// Smallest and largest gap carrying a residue rule.
pub const RULE_GAPS: std::ops::RangeInclusive<u32> = 5..=8;

const fn mask(residues: &[u32], modulus: u32) -> u16 {
    let mut m = 0u16;
    let mut i = 0;
    while i < residues.len() {
        m |= 1 << (residues[i] % modulus);
        i += 1;
    }
    m
}

/// `±r mod 16` expands to `{r, 16 - r}`.
const fn pm_mask(rs: &[u32]) -> u16 {
    let mut m = 0u16;
    let mut i = 0;
    while i < rs.len() {
        m |= 1 << (rs[i] % 16);
        m |= 1 << ((16 - rs[i] % 16) % 16);
        i += 1;
    }
    m
}

fn residues(mask: u16, modulus: u32) -> Vec<u32> {
    (0..modulus).filter(|r| mask & (1 << r) != 0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet {
    pub gap_floor: u32,
    pub forbidden_part: u32,
    /// Bit `r` of entry `d - 5` set when `λ_i + λ_{i+1} ≡ r (mod 16)` is forbidden at gap `d`.
    original_forbidden_sums: [u16; 4],
    /// Bit `r` of entry `d - 5` set when `λ_i ≡ r (mod 8)` is allowed at gap `d`.
    reformulated_allowed_parts: [u16; 4],
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::SILADIC
    }
}

impl RuleSet {
    pub const SILADIC: RuleSet = RuleSet {
        gap_floor: 5,
        forbidden_part: 2,
        original_forbidden_sums: [
            pm_mask(&[1, 5, 7]),
            pm_mask(&[2, 6]),
            pm_mask(&[3]),
            pm_mask(&[4]),
        ],
        reformulated_allowed_parts: [
            mask(&[1, 4], 8),
            mask(&[1, 3, 5, 7], 8),
            mask(&[0, 1, 3, 4, 6, 7], 8),
            mask(&[0, 1, 3, 4, 5, 7], 8),
        ],
    };

    fn slot(gap: u32) -> Result<usize> {
        if RULE_GAPS.contains(&gap) {
            Ok((gap - 5) as usize)
        } else {
            Err(Error::GapOutOfDomain {
                gap: i64::from(gap),
            })
        }
    }

    /// Residues mod 16 forbidden for `λ_i + λ_{i+1}` at gap `d`.
    pub fn original_forbidden_sums(&self, gap: u32) -> Result<Vec<u32>> {
        Ok(residues(self.original_forbidden_sums[Self::slot(gap)?], 16))
    }

    /// Residues mod 8 allowed for `λ_i` at gap `d`.
    pub fn reformulated_allowed_parts(&self, gap: u32) -> Result<Vec<u32>> {
        Ok(residues(
            self.reformulated_allowed_parts[Self::slot(gap)?],
            8,
        ))
    }

    /// Whether the larger part `upper` may sit at gap `gap` above its successor
    /// (mod-8 formulation).
    pub fn gap_rule_allows(&self, gap: u32, upper: u32) -> Result<bool> {
        let m = self.reformulated_allowed_parts[Self::slot(gap)?];
        Ok(m & (1 << (upper % 8)) != 0)
    }

    /// Whether the pair `(upper, upper - gap)` passes the mod-16 sum rule.
    pub fn sum_rule_allows(&self, gap: u32, upper: u32, lower: u32) -> Result<bool> {
        let m = self.original_forbidden_sums[Self::slot(gap)?];
        let sum = (u64::from(upper) + u64::from(lower)) % 16;
        Ok(m & (1 << sum) == 0)
    }

    fn pairs_ok<F>(&self, parts: &[u32], gap_ok: F) -> bool
    where
        F: Fn(u32, u32, u32) -> bool,
    {
        if parts.contains(&self.forbidden_part) {
            return false;
        }
        parts.windows(2).all(|w| {
            let (upper, lower) = (w[0], w[1]);
            if upper < lower {
                return false;
            }
            let gap = upper - lower;
            if gap < self.gap_floor {
                false
            } else if RULE_GAPS.contains(&gap) {
                gap_ok(gap, upper, lower)
            } else {
                true
            }
        })
    }

    /// No part 2, every gap at least 5, gaps 5..=8 checked against `λ_i mod 8`.
    pub fn satisfies_reformulated(&self, parts: &[u32]) -> bool {
        self.pairs_ok(parts, |gap, upper, _| {
            self.gap_rule_allows(gap, upper).unwrap_or(false)
        })
    }

    /// No part 2, every gap at least 5, gaps 5..=8 checked against the sum mod 16.
    pub fn satisfies_original(&self, parts: &[u32]) -> bool {
        self.pairs_ok(parts, |gap, upper, lower| {
            self.sum_rule_allows(gap, upper, lower).unwrap_or(false)
        })
    }
}

pub fn gap_rule_allows(gap: u32, upper: u32) -> Result<bool> {
    RuleSet::SILADIC.gap_rule_allows(gap, upper)
}

pub fn satisfies_reformulated(parts: &[u32]) -> bool {
    RuleSet::SILADIC.satisfies_reformulated(parts)
}

pub fn satisfies_original(parts: &[u32]) -> bool {
    RuleSet::SILADIC.satisfies_original(parts)
}

/// One row of the pair-level equivalence table.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PairCase {
    pub gap: u32,
    pub lower: u32,
    pub upper: u32,
    pub sum_mod16: u32,
    pub upper_mod8: u32,
    pub original: bool,
    pub reformulated: bool,
}

impl PairCase {
    pub fn agrees(&self) -> bool {
        self.original == self.reformulated
    }
}

/// All 64 pairs `(λ_{i+1} + d, λ_{i+1})` for `d` in 5..=8 and `λ_{i+1}` in 1..=16.
pub fn pair_cases(rules: &RuleSet) -> Vec<PairCase> {
    let mut out = Vec::with_capacity(64);
    for gap in RULE_GAPS {
        for lower in 1..=16u32 {
            let upper = lower + gap;
            out.push(PairCase {
                gap,
                lower,
                upper,
                sum_mod16: (upper + lower) % 16,
                upper_mod8: upper % 8,
                original: rules
                    .sum_rule_allows(gap, upper, lower)
                    .expect("gap in domain"),
                reformulated: rules.gap_rule_allows(gap, upper).expect("gap in domain"),
            });
        }
    }
    out
}

/// Exhaustive pair-level check that the two formulations agree.
pub fn verify_condition_equivalence(rules: &RuleSet) -> CheckReport {
    let mut c = Checker::new("condition_equivalence");
    for case in pair_cases(rules) {
        c.compare(
            &format!("cond{}", case.gap),
            i64::from(case.gap),
            i64::from(case.lower),
            i64::from(case.original),
            i64::from(case.reformulated),
        );
    }
    c.finish()
}

/// Whole-partition agreement of the two formulations for every partition of
/// every `n <= n_max`.
pub fn verify_partition_agreement(rules: &RuleSet, n_max: u32, bound: OracleBound) -> CheckReport {
    Checker::new("formulation_agreement")
        .param("n_max", i64::from(n_max))
        .run(|c| {
            bound.check(n_max)?;
            for n in 0..=n_max {
                for p in Partitions::new(n, None) {
                    let o = rules.satisfies_original(p.parts());
                    let r = rules.satisfies_reformulated(p.parts());
                    if !c.compare(
                        "partition",
                        p.statistic_k() as i64,
                        i64::from(n),
                        i64::from(o),
                        i64::from(r),
                    ) {
                        break;
                    }
                }
            }
            Ok(())
        })
}
