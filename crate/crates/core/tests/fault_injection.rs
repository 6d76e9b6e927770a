use std::collections::BTreeSet;

use siladic_core::counting::{CountEngine, CountProvider};
use siladic_core::suite::{run_suite_with, CheckKind, Config, OutputFormat};
use siladic_core::Result;

/// Count source that adds one to a single cell of a single `a_N` table.
struct Perturbed {
    inner: CountEngine,
    cell: (i64, i64, i64),
}

impl CountProvider for Perturbed {
    fn k_max(&self) -> usize {
        self.inner.k_max()
    }

    fn n_max(&self) -> usize {
        self.inner.n_max()
    }

    fn a(&self, bound: i64, k: i64, n: i64) -> Result<i64> {
        let v = self.inner.a(bound, k, n)?;
        Ok(if (bound, k, n) == self.cell { v + 1 } else { v })
    }
}

fn config(n_max: usize) -> Config {
    Config {
        n_max,
        k_max: n_max,
        oracle_n_max: 20,
        checks: CheckKind::ALL.to_vec(),
        output_format: OutputFormat::Json,
    }
}

fn failing(reports: &[siladic_core::CheckReport]) -> BTreeSet<String> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let params: Vec<String> = r
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            format!("{} {}", r.check_name, params.join(","))
        })
        .collect()
}

#[test]
fn unperturbed_source_passes() {
    let cfg = config(60);
    let reports = run_suite_with(&cfg, &CountEngine::build(60, 60).unwrap()).unwrap();
    assert!(failing(&reports).is_empty(), "{:?}", failing(&reports));
}

#[test]
fn single_cell_fault_is_localized() {
    let cfg = config(60);
    let p = Perturbed {
        inner: CountEngine::build(60, 60).unwrap(),
        cell: (8, 2, 8),
    };
    let reports = run_suite_with(&cfg, &p).unwrap();
    let want: BTreeSet<String> = [
        "aux N=2",
        "eq N=1",
        "eqd N=1",
        "main m=4",
        "recurrence_agreement M=8",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(failing(&reports), want);
    for r in reports.iter().filter(|r| !r.passed()) {
        let cx = r
            .counterexample
            .as_ref()
            .expect("failing report carries a counterexample");
        assert_ne!(cx.lhs, cx.rhs);
        assert!(r.error.is_none());
    }
    let eqd = reports
        .iter()
        .find(|r| r.check_name == "eqd" && r.parameters["N"] == 1)
        .unwrap();
    let cx = eqd.counterexample.as_ref().unwrap();
    assert_eq!(
        (cx.equation.as_str(), cx.k, cx.n, cx.lhs, cx.rhs),
        ("eqd1", 2, 8, 3, 2)
    );
}

#[test]
fn fault_in_the_top_table_breaks_the_global_checks() {
    let cfg = config(40);
    let p = Perturbed {
        inner: CountEngine::build(40, 40).unwrap(),
        cell: (40, 3, 15),
    };
    let reports = run_suite_with(&cfg, &p).unwrap();
    let failed = failing(&reports);
    for name in [
        "limit_product k_max=40,n_max=40",
        "unrefined_identity n_max=40",
        "oracle_original n_max=20",
        "oracle_reformulated n_max=20",
    ] {
        assert!(failed.contains(name), "{name} should fail: {failed:?}");
    }
}

#[test]
fn mismatched_window_is_a_config_error() {
    let engine = CountEngine::build(30, 30).unwrap();
    assert!(run_suite_with(&config(40), &engine).is_err());
}
