//! Suite configuration, orchestration and report serialization.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    distinct_odd_totals, oracle_count_A, CountEngine, CountProvider, Formulation,
};
use crate::error::{Error, Result};
use crate::partitions::{OracleBound, DEFAULT_ORACLE_LIMIT};
use crate::qseries::{DEFAULT_K_MAX, DEFAULT_N_MAX};
use crate::recurrence::{
    check_aux_identities, check_eq, check_eqd, check_limit_product, check_main_identity,
    check_recurrence_agreement, GFamily, TableSeries, AUX_IDENTITIES, RECURRENCES,
};
use crate::report::{CheckReport, Checker};
use crate::rules::{verify_condition_equivalence, verify_partition_agreement, RuleSet};

/// Version of the JSON report layout.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Equivalence,
    Oracle,
    Eqd,
    Eq,
    Aux,
    Main,
    Limit,
    Agreement,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Equivalence,
        CheckKind::Oracle,
        CheckKind::Eqd,
        CheckKind::Eq,
        CheckKind::Aux,
        CheckKind::Main,
        CheckKind::Limit,
        CheckKind::Agreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Equivalence => "equivalence",
            CheckKind::Oracle => "oracle",
            CheckKind::Eqd => "eqd",
            CheckKind::Eq => "eq",
            CheckKind::Aux => "aux",
            CheckKind::Main => "main",
            CheckKind::Limit => "limit",
            CheckKind::Agreement => "agreement",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown check '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Config(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    pub n_max: usize,
    pub k_max: usize,
    pub oracle_n_max: u32,
    pub checks: Vec<CheckKind>,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n_max: DEFAULT_N_MAX,
            k_max: DEFAULT_K_MAX,
            oracle_n_max: DEFAULT_ORACLE_LIMIT,
            checks: CheckKind::ALL.to_vec(),
            output_format: OutputFormat::Json,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.oracle_n_max as usize > self.n_max {
            return Err(Error::Config(format!(
                "oracle_n_max ({}) exceeds n_max ({})",
                self.oracle_n_max, self.n_max
            )));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("no checks selected".into()));
        }
        Ok(())
    }

    fn wants(&self, kind: CheckKind) -> bool {
        self.checks.contains(&kind)
    }

    /// Indices `N` for which at least one recurrence stays in the window.
    pub fn recurrence_indices(&self) -> Vec<i64> {
        (1..)
            .take_while(|&n| RECURRENCES[0].target(n) <= self.n_max as i64)
            .collect()
    }

    /// Indices `N >= 2` for which at least one auxiliary identity stays in the window.
    pub fn aux_indices(&self) -> Vec<i64> {
        (2..)
            .take_while(|&n| {
                AUX_IDENTITIES
                    .iter()
                    .any(|id| id.max_bound(n) <= self.n_max as i64)
            })
            .collect()
    }

    /// `m` with `2m <= n_max`.
    pub fn main_indices(&self) -> Vec<i64> {
        (1..=(self.n_max / 2) as i64).collect()
    }
}

type Task<'a> = Box<dyn Fn() -> CheckReport + Send + Sync + 'a>;

/// Runs the selected checks with freshly built count tables.
pub fn run_suite(cfg: &Config) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    match CountEngine::build(cfg.k_max, cfg.n_max) {
        Ok(engine) => run_suite_with(cfg, &engine),
        Err(e) => Ok(failed_build(cfg, &e)),
    }
}

fn failed_build(cfg: &Config, err: &Error) -> Vec<CheckReport> {
    cfg.checks
        .iter()
        .map(|k| {
            let mut c = Checker::new(k.name());
            c.record_error(err);
            c.finish()
        })
        .collect()
}

/// Runs the selected checks against an arbitrary count source. Reports come
/// back sorted by check name and parameters.
pub fn run_suite_with<P: CountProvider + ?Sized>(
    cfg: &Config,
    counts: &P,
) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    if counts.k_max() != cfg.k_max || counts.n_max() != cfg.n_max {
        return Err(Error::Config(format!(
            "count source window ({}, {}) does not match config ({}, {})",
            counts.k_max(),
            counts.n_max(),
            cfg.k_max,
            cfg.n_max
        )));
    }
    let rules = RuleSet::SILADIC;
    let bound = OracleBound(cfg.oracle_n_max);
    let tables = TableSeries::new(counts);
    let family = if cfg.wants(CheckKind::Agreement) {
        Some(GFamily::build(cfg.n_max, cfg.k_max, cfg.n_max))
    } else {
        None
    };

    let mut tasks: Vec<Task<'_>> = Vec::new();
    if cfg.wants(CheckKind::Equivalence) {
        tasks.push(Box::new(move || verify_condition_equivalence(&rules)));
        tasks.push(Box::new(move || {
            verify_partition_agreement(&rules, cfg.oracle_n_max, bound)
        }));
    }
    if cfg.wants(CheckKind::Oracle) {
        for f in [Formulation::Original, Formulation::Reformulated] {
            tasks.push(Box::new(move || oracle_check(cfg, counts, bound, f)));
        }
    }
    if cfg.wants(CheckKind::Eqd) {
        for n in cfg.recurrence_indices() {
            tasks.push(Box::new(move || check_eqd(n, counts)));
        }
    }
    if cfg.wants(CheckKind::Eq) {
        for n in cfg.recurrence_indices() {
            let t = &tables;
            tasks.push(Box::new(move || check_eq(n, t)));
        }
    }
    if cfg.wants(CheckKind::Aux) {
        for n in cfg.aux_indices() {
            tasks.push(Box::new(move || check_aux_identities(n, counts)));
        }
    }
    if cfg.wants(CheckKind::Main) {
        for m in cfg.main_indices() {
            let t = &tables;
            tasks.push(Box::new(move || check_main_identity(m, t)));
        }
    }
    if cfg.wants(CheckKind::Limit) {
        tasks.push(Box::new(move || check_limit_product(counts)));
        tasks.push(Box::new(move || unrefined_check(counts)));
    }
    if let Some(family) = &family {
        for m in 0..=cfg.n_max as i64 {
            let t = &tables;
            tasks.push(Box::new(move || match family {
                Ok(f) => check_recurrence_agreement(m, f, t),
                Err(e) => {
                    let mut c = Checker::new("recurrence_agreement").param("M", m);
                    c.record_error(e);
                    c.finish()
                }
            }));
        }
    }

    let mut reports: Vec<CheckReport> = tasks.par_iter().map(|t| t()).collect();
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(reports)
}

fn oracle_check<P: CountProvider + ?Sized>(
    cfg: &Config,
    counts: &P,
    bound: OracleBound,
    formulation: Formulation,
) -> CheckReport {
    let name = match formulation {
        Formulation::Original => "oracle_original",
        Formulation::Reformulated => "oracle_reformulated",
    };
    Checker::new(name)
        .param("n_max", i64::from(cfg.oracle_n_max))
        .run(|c| {
            let oracle = oracle_count_A(cfg.oracle_n_max, bound, formulation)?;
            let k_top = oracle.k_max().min(cfg.k_max) as i64;
            let top = cfg.n_max as i64;
            for n in 0..=i64::from(cfg.oracle_n_max) {
                for k in 0..=k_top {
                    c.compare(
                        "oracle_vs_dp",
                        k,
                        n,
                        oracle.get(k, n)? as i64,
                        counts.a(top, k, n)?,
                    );
                }
            }
            Ok(())
        })
}

/// `Σ_k A(k, n)` against the number of partitions of `n` into distinct odd parts.
fn unrefined_check<P: CountProvider + ?Sized>(counts: &P) -> CheckReport {
    let (k_max, n_max) = (counts.k_max() as i64, counts.n_max());
    Checker::new("unrefined_identity")
        .param("n_max", n_max as i64)
        .run(|c| {
            let odd = distinct_odd_totals(n_max)?;
            for (n, &want) in odd.iter().enumerate() {
                let mut total = 0i64;
                for k in 0..=k_max {
                    total += counts.a(n_max as i64, k, n as i64)?;
                }
                c.compare("sum_over_k", -1, n as i64, total, want as i64);
            }
            Ok(())
        })
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

#[derive(Serialize)]
struct ReportView<'a> {
    #[serde(flatten)]
    report: &'a CheckReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

#[derive(Serialize)]
struct Document<'a> {
    version: u32,
    config: &'a Config,
    reports: Vec<ReportView<'a>>,
}

fn params_text(r: &CheckReport) -> String {
    r.parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn detail_text(r: &CheckReport) -> String {
    match (&r.counterexample, &r.error) {
        (Some(cx), _) => cx.to_string(),
        (None, Some(e)) => format!("error: {e}"),
        (None, None) => String::new(),
    }
}

/// Serializes reports. Timings are omitted unless `timings` is set, so the
/// default output is byte-identical across runs.
pub fn emit_report<W: Write>(
    reports: &[CheckReport],
    cfg: &Config,
    format: OutputFormat,
    timings: bool,
    mut out: W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            let doc = Document {
                version: REPORT_VERSION,
                config: cfg,
                reports: reports
                    .iter()
                    .map(|r| ReportView {
                        report: r,
                        elapsed_ms: timings.then_some(r.elapsed_ms),
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["check", "params", "status", "counterexample"];
            if timings {
                header.push("elapsed_ms");
            }
            w.write_record(&header)?;
            for r in reports {
                let mut row = vec![
                    r.check_name.clone(),
                    params_text(r),
                    r.status.to_string(),
                    detail_text(r),
                ];
                if timings {
                    row.push(r.elapsed_ms.to_string());
                }
                w.write_record(&row)?;
            }
            w.flush()
        }
        OutputFormat::Text => {
            let width = reports
                .iter()
                .map(|r| r.check_name.len())
                .max()
                .unwrap_or(5)
                .max(5);
            writeln!(
                out,
                "{:<width$}  {:<14}  {:<6}  {:>9}  detail",
                "check", "params", "status", "cases"
            )?;
            for r in reports {
                write!(
                    out,
                    "{:<width$}  {:<14}  {:<6}  {:>9}  {}",
                    r.check_name,
                    params_text(r),
                    r.status,
                    r.cases,
                    detail_text(r)
                )?;
                if timings {
                    write!(out, " ({} ms)", r.elapsed_ms)?;
                }
                writeln!(out)?;
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            writeln!(
                out,
                "{} checks, {} passed, {} failed",
                reports.len(),
                reports.len() - failed,
                failed
            )
        }
    }
}
