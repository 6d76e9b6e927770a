//! Exact verification machinery for the Siladić partition identity and its
//! refinement by the statistic `k` (odd parts plus twice the even parts).
//!
//! - [`partitions`]: partitions, the statistic, brute-force enumeration
//! - [`rules`]: the admissibility conditions in their mod-16 and mod-8 forms
//! - [`counting`]: exact count tables `A`, `B`, `a_N`, `e_N`
//! - [`qseries`]: truncated bivariate series in `t` and `q`
//! - [`recurrence`]: the recurrences and q-difference equations, checked
//! - [`suite`]: orchestration and report output

pub mod counting;
pub mod error;
pub mod partitions;
pub mod qseries;
pub mod recurrence;
pub mod report;
pub mod rules;
pub mod suite;

pub use counting::{
    count_A, count_B, count_a, count_e, oracle_count_A, CountEngine, CountProvider, CountTable,
    Formulation, Role,
};
pub use error::{Error, Result};
pub use partitions::{enumerate_all, statistic_k, weight, OracleBound, Partition, Partitions};
pub use qseries::BiSeries;
pub use recurrence::{build_G_recurrence, GFamily, SeriesProvider, TableSeries};
pub use report::{CheckReport, Counterexample, Status};
pub use rules::{gap_rule_allows, satisfies_original, satisfies_reformulated, RuleSet};
pub use suite::{emit_report, run_suite, run_suite_with, CheckKind, Config, OutputFormat};
