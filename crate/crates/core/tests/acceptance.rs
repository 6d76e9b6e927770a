//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use siladic_core::counting::{
    count_B, distinct_odd_totals, oracle_count_A, CountEngine, CountTable, Formulation,
};
use siladic_core::partitions::{enumerate_all, OracleBound, Partitions};
use siladic_core::recurrence::{AUX_IDENTITIES, RECURRENCES};
use siladic_core::rules::{pair_cases, verify_partition_agreement, RuleSet};
use siladic_core::suite::{emit_report, run_suite_with, CheckKind, Config, OutputFormat};
use siladic_core::CheckReport;

const WINDOW: usize = 200;
const ORACLE_N: u32 = 45;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Fixture) -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn tables_equal(lhs: &CountTable, rhs: &CountTable) -> Result<(), String> {
    match lhs.first_difference(rhs).map_err(e)? {
        None => Ok(()),
        Some((k, n, l, r)) => Err(format!("k={k} n={n}: {l} vs {r}")),
    }
}

fn reports_named<'a>(reports: &'a [CheckReport], name: &str) -> Vec<&'a CheckReport> {
    reports.iter().filter(|r| r.check_name == name).collect()
}

/// All reports with `name` pass, and their `param` values are exactly `want`.
fn sweep(
    reports: &[CheckReport],
    name: &str,
    param: &str,
    want: &BTreeSet<i64>,
) -> Result<usize, String> {
    let found = reports_named(reports, name);
    let got: BTreeSet<i64> = found
        .iter()
        .filter_map(|r| r.parameters.get(param).copied())
        .collect();
    ensure(&got == want, || {
        format!("{name}: {param} values {got:?}, expected {want:?}")
    })?;
    if let Some(bad) = found.iter().find(|r| !r.passed()) {
        return Err(format!(
            "{name} {param}={} failed: {}",
            bad.parameters[param],
            bad.counterexample
                .as_ref()
                .map(ToString::to_string)
                .or_else(|| bad.error.clone())
                .unwrap_or_default()
        ));
    }
    Ok(found.len())
}

/// Each equation must be evaluated at exactly the indices where its largest
/// referenced index stays within the window.
fn coverage(
    reports: &[CheckReport],
    name: &str,
    expected: &[(&str, BTreeSet<i64>)],
) -> Result<(), String> {
    for (eq, want) in expected {
        let got: BTreeSet<i64> = reports_named(reports, name)
            .iter()
            .filter(|r| r.equations.contains_key(*eq))
            .map(|r| r.parameters["N"])
            .collect();
        ensure(&got == want, || {
            format!("{eq} evaluated at {got:?}, expected {want:?}")
        })?;
    }
    Ok(())
}

fn range(from: i64, to: i64) -> BTreeSet<i64> {
    (from..=to).collect()
}

struct Fixture {
    engine: CountEngine,
    reports: Vec<CheckReport>,
    config: Config,
}

fn refinement(f: &Fixture) -> Outcome {
    let a = f.engine.table_A().map_err(e)?;
    let b = count_B(WINDOW, WINDOW).map_err(e)?;
    tables_equal(&a, &b)?;
    Ok(format!("{} cells", (WINDOW + 1) * (WINDOW + 1)))
}

fn unrefined(f: &Fixture) -> Outcome {
    let totals = f.engine.table_A().map_err(e)?.totals().map_err(e)?;
    let odd = distinct_odd_totals(WINDOW).map_err(e)?;
    if let Some(n) = (0..=WINDOW).find(|&n| totals[n] != odd[n]) {
        return Err(format!("n={n}: {} vs {}", totals[n], odd[n]));
    }
    sweep(
        &f.reports,
        "unrefined_identity",
        "n_max",
        &range(WINDOW as i64, WINDOW as i64),
    )?;
    Ok(format!("n <= {WINDOW}, {} at n={WINDOW}", odd[WINDOW]))
}

fn oracle(f: &Fixture) -> Outcome {
    let a = f.engine.table_A().map_err(e)?;
    for form in [Formulation::Original, Formulation::Reformulated] {
        let o = oracle_count_A(ORACLE_N, OracleBound(ORACLE_N), form).map_err(e)?;
        for n in 0..=ORACLE_N as i64 {
            for k in 0..=o.k_max() as i64 {
                let (want, got) = (o.get(k, n).map_err(e)?, a.get(k, n).map_err(e)?);
                ensure(want == got, || {
                    format!("{form:?} k={k} n={n}: oracle {want}, dp {got}")
                })?;
            }
        }
    }
    Ok(format!("both formulations, n <= {ORACLE_N}"))
}

fn equivalence(_: &Fixture) -> Outcome {
    let cases = pair_cases(&RuleSet::SILADIC);
    ensure(cases.len() == 64, || format!("{} pair cases", cases.len()))?;
    if let Some(c) = cases.iter().find(|c| !c.agrees()) {
        return Err(format!("gap={} lower={} disagrees", c.gap, c.lower));
    }
    let report = verify_partition_agreement(&RuleSet::SILADIC, ORACLE_N, OracleBound(ORACLE_N));
    ensure(report.passed(), || format!("{:?}", report.counterexample))?;
    let total: usize = (0..=ORACLE_N)
        .map(|n| Partitions::new(n, None).count())
        .sum();
    ensure(report.cases == total as u64, || {
        format!("{} of {total} partitions compared", report.cases)
    })?;
    Ok(format!("64/64 pairs, {total} partitions"))
}

fn recurrence_coverage(kind: fn(usize) -> &'static str) -> Vec<(&'static str, BTreeSet<i64>)> {
    RECURRENCES
        .iter()
        .enumerate()
        .map(|(i, r)| {
            (
                kind(i),
                (1..)
                    .take_while(|&n| r.target(n) <= WINDOW as i64)
                    .collect(),
            )
        })
        .collect()
}

fn eqd(f: &Fixture) -> Outcome {
    let n = sweep(&f.reports, "eqd", "N", &range(1, 25))?;
    coverage(
        &f.reports,
        "eqd",
        &recurrence_coverage(|i| RECURRENCES[i].count_name),
    )?;
    Ok(format!("{n} indices"))
}

fn eq(f: &Fixture) -> Outcome {
    let n = sweep(&f.reports, "eq", "N", &range(1, 25))?;
    coverage(
        &f.reports,
        "eq",
        &recurrence_coverage(|i| RECURRENCES[i].series_name),
    )?;
    Ok(format!("{n} indices"))
}

fn aux(f: &Fixture) -> Outcome {
    let n = sweep(&f.reports, "aux", "N", &range(2, 25))?;
    let expected: Vec<_> = AUX_IDENTITIES
        .iter()
        .map(|id| {
            (
                id.name,
                (2..)
                    .take_while(|&n| id.max_bound(n) <= WINDOW as i64)
                    .collect(),
            )
        })
        .collect();
    coverage(&f.reports, "aux", &expected)?;
    ensure(expected.iter().all(|(_, s)| !s.is_empty()), || {
        "an identity is never evaluated".into()
    })?;
    Ok(format!("{n} indices, {} identities", expected.len()))
}

fn main_identity(f: &Fixture) -> Outcome {
    let n = sweep(&f.reports, "main", "m", &range(1, 100))?;
    Ok(format!("m = 1..={n}"))
}

fn limit(f: &Fixture) -> Outcome {
    let r = reports_named(&f.reports, "limit_product");
    ensure(r.len() == 1 && r[0].passed(), || format!("{r:?}"))?;
    Ok(format!("{} cells", r[0].cases))
}

fn agreement(f: &Fixture) -> Outcome {
    let n = sweep(
        &f.reports,
        "recurrence_agreement",
        "M",
        &range(0, WINDOW as i64),
    )?;
    Ok(format!("{n} indices"))
}

fn anchor(_: &Fixture) -> Outcome {
    let all = enumerate_all(4, None, OracleBound::default()).map_err(e)?;
    let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
    ensure(all.len() == 5, || format!("{shown:?}"))?;
    Ok(shown.join(" "))
}

fn determinism(f: &Fixture) -> Outcome {
    let second = run_suite_with(&f.config, &f.engine).map_err(e)?;
    for format in [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text] {
        let mut a = Vec::new();
        let mut b = Vec::new();
        emit_report(&f.reports, &f.config, format, false, &mut a).map_err(e)?;
        emit_report(&second, &f.config, format, false, &mut b).map_err(e)?;
        ensure(a == b, || format!("{format:?} reports differ"))?;
    }
    Ok(format!("{} reports, json/csv/text identical", second.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let engine = CountEngine::build(WINDOW, WINDOW).expect("count tables build");
    let config = Config {
        n_max: WINDOW,
        k_max: WINDOW,
        oracle_n_max: ORACLE_N,
        checks: CheckKind::ALL.to_vec(),
        output_format: OutputFormat::Json,
    };
    let reports = run_suite_with(&config, &engine).expect("suite runs");
    println!(
        "setup: tables and suite in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    let fixture = Fixture {
        engine,
        reports,
        config,
    };

    let criteria: [Criterion; 12] = [
        ("refinement A(k,n) = B(k,n)", refinement),
        ("unrefined identity", unrefined),
        ("oracle agreement", oracle),
        ("rule equivalence", equivalence),
        ("count recurrences eqd1-eqd8", eqd),
        ("q-difference equations eq1-eq8", eq),
        ("auxiliary identities", aux),
        ("G_2m = (1+tq) G_2m-3(tq^2,q)", main_identity),
        ("limit product", limit),
        ("recurrence/direct agreement", agreement),
        ("partitions of 4", anchor),
        ("determinism", determinism),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run(&fixture);
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
