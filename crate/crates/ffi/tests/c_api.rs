use std::ffi::{CStr, CString};
use std::ptr;

use siladic_ffi::*;

fn last_error() -> String {
    let p = siladic_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

struct Counts(*mut SiladicCounts);

impl Counts {
    fn new(k_max: usize, n_max: usize) -> Self {
        let mut h = ptr::null_mut();
        assert_eq!(
            unsafe { siladic_counts_new(k_max, n_max, &mut h) },
            SiladicStatus::Ok
        );
        assert!(!h.is_null());
        Counts(h)
    }
}

impl Drop for Counts {
    fn drop(&mut self) {
        unsafe { siladic_counts_free(self.0) }
    }
}

struct Series(*mut SiladicSeries);

impl Drop for Series {
    fn drop(&mut self) {
        unsafe { siladic_series_free(self.0) }
    }
}

fn coeff(s: &Series, k: i64, n: i64) -> i64 {
    let mut v = 0;
    assert_eq!(
        unsafe { siladic_series_coeff(s.0, k, n, &mut v) },
        SiladicStatus::Ok
    );
    v
}

#[test]
fn version_is_nonempty() {
    let v = unsafe { CStr::from_ptr(siladic_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn counts_match_known_values() {
    let c = Counts::new(40, 40);
    let mut a = 0u64;
    let mut b = 0u64;
    for n in 0..=40 {
        for k in 0..=40 {
            unsafe {
                assert_eq!(
                    siladic_counts_admissible(c.0, k, n, &mut a),
                    SiladicStatus::Ok
                );
                assert_eq!(
                    siladic_counts_distinct_odd(c.0, k, n, &mut b),
                    SiladicStatus::Ok
                );
            }
            assert_eq!(a, b, "k={k} n={n}");
        }
    }
    // [7,1] and [8] have k=2 and n=8; only [8] has largest part 8.
    let mut v = 0i64;
    unsafe {
        assert_eq!(
            siladic_counts_at_most(c.0, 8, 2, 8, &mut v),
            SiladicStatus::Ok
        );
        assert_eq!(v, 2);
        assert_eq!(
            siladic_counts_exactly(c.0, 8, 2, 8, &mut v),
            SiladicStatus::Ok
        );
        assert_eq!(v, 1);
        assert_eq!(
            siladic_counts_at_most(c.0, 5, -1, 3, &mut v),
            SiladicStatus::Ok
        );
        assert_eq!(v, 0);
    }
}

#[test]
fn out_of_window_is_reported() {
    let c = Counts::new(10, 10);
    let mut v = 0u64;
    let status = unsafe { siladic_counts_admissible(c.0, 3, 11, &mut v) };
    assert_eq!(status, SiladicStatus::OutOfWindow);
    assert!(!last_error().is_empty());
}

#[test]
fn null_pointers_are_rejected() {
    let mut v = 0u64;
    assert_eq!(
        unsafe { siladic_counts_admissible(ptr::null(), 0, 0, &mut v) },
        SiladicStatus::NullPointer
    );
    assert!(last_error().contains("null"));
    assert_eq!(
        unsafe { siladic_counts_new(1, 1, ptr::null_mut()) },
        SiladicStatus::NullPointer
    );
    assert_eq!(
        unsafe { siladic_series_coeff(ptr::null(), 0, 0, ptr::null_mut()) },
        SiladicStatus::NullPointer
    );
    unsafe {
        siladic_counts_free(ptr::null_mut());
        siladic_series_free(ptr::null_mut());
        siladic_string_free(ptr::null_mut());
    }
}

#[test]
fn series_from_counts_and_recurrence_agree() {
    let c = Counts::new(30, 30);
    for m in [0i64, 3, 7, 12, 30] {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        unsafe {
            assert_eq!(
                siladic_series_from_counts(c.0, m, &mut a),
                SiladicStatus::Ok
            );
            assert_eq!(
                siladic_series_recurrence(m, 30, 30, &mut b),
                SiladicStatus::Ok
            );
        }
        let (a, b) = (Series(a), Series(b));
        let (mut eq, mut k, mut n) = (false, 0, 0);
        assert_eq!(
            unsafe { siladic_series_equal(a.0, b.0, &mut eq, &mut k, &mut n) },
            SiladicStatus::Ok
        );
        assert!(eq, "M={m} differs at k={k} n={n}");
        assert_eq!((k, n), (-1, -1));
    }
}

#[test]
fn product_series_differs_from_a_finite_index() {
    let c = Counts::new(20, 20);
    let mut p = ptr::null_mut();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            siladic_series_distinct_odd(20, 20, &mut p),
            SiladicStatus::Ok
        );
        assert_eq!(
            siladic_series_from_counts(c.0, 5, &mut g),
            SiladicStatus::Ok
        );
    }
    let (p, g) = (Series(p), Series(g));
    assert_eq!(coeff(&p, 0, 0), 1);
    assert_eq!(coeff(&p, 2, 8), 2);
    assert_eq!(coeff(&p, 1, 2), 0);
    assert_eq!(coeff(&p, 99, 99), 0);
    let (mut eq, mut k, mut n) = (true, 0, 0);
    assert_eq!(
        unsafe { siladic_series_equal(p.0, g.0, &mut eq, &mut k, &mut n) },
        SiladicStatus::Ok
    );
    assert!(!eq);
    // [5,1] is the first product term that G_5 lacks.
    assert_eq!((k, n), (2, 6));
}

#[test]
fn gap_rule_matches_residues() {
    let allowed = |gap: u32, part: u32| {
        let mut v = false;
        assert_eq!(
            unsafe { siladic_gap_rule_allows(gap, part, &mut v) },
            SiladicStatus::Ok
        );
        v
    };
    assert!(allowed(5, 9));
    assert!(!allowed(5, 10));
    assert!(allowed(6, 7));
    assert!(!allowed(6, 8));
    assert!(allowed(8, 8));
    assert!(!allowed(8, 10));
    let mut v = false;
    assert_eq!(
        unsafe { siladic_gap_rule_allows(4, 9, &mut v) },
        SiladicStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { siladic_gap_rule_allows(9, 9, &mut v) },
        SiladicStatus::InvalidArgument
    );
}

#[test]
fn partition_predicates() {
    let check = |parts: &[u32], f: SiladicFormulation| {
        let mut v = false;
        let st = unsafe { siladic_partition_admissible(parts.as_ptr(), parts.len(), f, &mut v) };
        (st, v)
    };
    for f in [
        SiladicFormulation::Original,
        SiladicFormulation::Reformulated,
    ] {
        assert_eq!(check(&[7, 1], f), (SiladicStatus::Ok, true));
        assert_eq!(check(&[6, 1], f), (SiladicStatus::Ok, false));
        assert_eq!(check(&[2], f), (SiladicStatus::Ok, false));
        assert_eq!(check(&[], f), (SiladicStatus::Ok, true));
        assert_eq!(check(&[1, 7], f).0, SiladicStatus::InvalidArgument);
    }
    let mut v = false;
    let st = unsafe {
        siladic_partition_admissible(ptr::null(), 0, SiladicFormulation::Original, &mut v)
    };
    assert_eq!((st, v), (SiladicStatus::Ok, true));
    let st = unsafe {
        siladic_partition_admissible(ptr::null(), 2, SiladicFormulation::Original, &mut v)
    };
    assert_eq!(st, SiladicStatus::NullPointer);

    let mut k = 0u64;
    let parts = [12u32, 7, 4, 1];
    assert_eq!(
        unsafe { siladic_partition_statistic(parts.as_ptr(), 4, &mut k) },
        SiladicStatus::Ok
    );
    assert_eq!(k, 6);
}

fn verify(
    checks: Option<&str>,
    n_max: usize,
    oracle: u32,
    format: SiladicFormat,
) -> (SiladicStatus, String) {
    let checks = checks.map(|c| CString::new(c).unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe {
        siladic_verify(
            n_max,
            n_max,
            oracle,
            checks.as_ref().map_or(ptr::null(), |c| c.as_ptr()),
            format,
            &mut out,
        )
    };
    if out.is_null() {
        return (st, String::new());
    }
    let text = unsafe { CStr::from_ptr(out) }
        .to_string_lossy()
        .into_owned();
    unsafe { siladic_string_free(out) };
    (st, text)
}

#[test]
fn verify_small_suite_passes() {
    let (st, json) = verify(None, 40, 20, SiladicFormat::Json);
    assert_eq!(st, SiladicStatus::Ok);
    assert!(json.contains("\"version\": 1"));
    assert!(!json.contains("\"fail\""));
    let (st, text) = verify(Some("equivalence,main"), 40, 20, SiladicFormat::Text);
    assert_eq!(st, SiladicStatus::Ok);
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_rejects_bad_configuration() {
    let (st, out) = verify(Some("nonsense"), 40, 20, SiladicFormat::Json);
    assert_eq!(st, SiladicStatus::InvalidArgument);
    assert!(out.is_empty());
    assert!(last_error().contains("nonsense"));
    let (st, _) = verify(None, 40, 41, SiladicFormat::Csv);
    assert_eq!(st, SiladicStatus::InvalidArgument);
}

#[test]
fn header_declares_every_entry_point() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/siladic.h")).unwrap();
    for name in [
        "siladic_version",
        "siladic_last_error",
        "siladic_string_free",
        "siladic_counts_new",
        "siladic_counts_free",
        "siladic_counts_at_most",
        "siladic_counts_exactly",
        "siladic_counts_admissible",
        "siladic_counts_distinct_odd",
        "siladic_series_from_counts",
        "siladic_series_recurrence",
        "siladic_series_distinct_odd",
        "siladic_series_coeff",
        "siladic_series_equal",
        "siladic_series_free",
        "siladic_gap_rule_allows",
        "siladic_partition_admissible",
        "siladic_partition_statistic",
        "siladic_verify",
        "SILADIC_STATUS_CHECK_FAILED = 1",
        "typedef struct SiladicCounts SiladicCounts;",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
