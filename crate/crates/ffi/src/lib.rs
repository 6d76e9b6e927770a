//! C ABI for `siladic-core`.
//!
//! Every fallible entry point returns a [`SiladicStatus`] and writes results
//! through out-pointers. Tables and series are opaque handles owned by the
//! caller and released with the matching `*_free` function. Strings returned
//! through `out` pointers are released with [`siladic_string_free`]. After a
//! non-OK status, [`siladic_last_error`] describes the failure on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use siladic_core::counting::{count_B, CountEngine, CountProvider, CountTable, Formulation};
use siladic_core::qseries::BiSeries;
use siladic_core::recurrence::build_G_recurrence;
use siladic_core::rules::RuleSet;
use siladic_core::suite::{all_passed, emit_report, run_suite, CheckKind, Config, OutputFormat};
use siladic_core::{Error, Partition};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiladicStatus {
    Ok = 0,
    /// The suite ran and at least one check failed.
    CheckFailed = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    Overflow = 4,
    BoundExceeded = 5,
    OutOfWindow = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiladicFormulation {
    /// Conditions on the sum of consecutive parts mod 16.
    Original = 0,
    /// Conditions on the larger part mod 8.
    Reformulated = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiladicFormat {
    Json = 0,
    Csv = 1,
    Text = 2,
}

/// `a_N` tables for every `N <= n_max` plus the distinct-odd table.
pub struct SiladicCounts {
    engine: CountEngine,
    distinct_odd: CountTable,
}

/// A truncated series in `t` and `q`.
pub struct SiladicSeries {
    series: BiSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> SiladicStatus {
    match err {
        Error::Overflow { .. } => SiladicStatus::Overflow,
        Error::BoundExceeded { .. } => SiladicStatus::BoundExceeded,
        Error::OutOfWindow { .. } | Error::IndexUnavailable { .. } => SiladicStatus::OutOfWindow,
        _ => SiladicStatus::InvalidArgument,
    }
}

fn fail(status: SiladicStatus, msg: impl Into<String>) -> SiladicStatus {
    set_last_error(msg.into());
    status
}

fn guard<F>(body: F) -> SiladicStatus
where
    F: FnOnce() -> Result<SiladicStatus, Error>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(e)) => fail(status_of(&e), e.to_string()),
        Err(_) => fail(SiladicStatus::Internal, "panic inside siladic"),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(SiladicStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn siladic_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn siladic_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned through an `out` pointer.
///
/// # Safety
/// `s` must be NULL or a pointer produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn siladic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds every count table on the window `k <= k_max`, `n <= n_max`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn siladic_counts_new(
    k_max: usize,
    n_max: usize,
    out: *mut *mut SiladicCounts,
) -> SiladicStatus {
    non_null!(out);
    guard(|| {
        let engine = CountEngine::build(k_max, n_max)?;
        let distinct_odd = count_B(k_max, n_max)?;
        *out = Box::into_raw(Box::new(SiladicCounts {
            engine,
            distinct_odd,
        }));
        Ok(SiladicStatus::Ok)
    })
}

/// # Safety
/// `h` must be NULL or a handle from [`siladic_counts_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn siladic_counts_free(h: *mut SiladicCounts) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `a_N(k, n)`: admissible partitions with largest part at most `bound`.
/// Negative `k` or `n` give 0.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_counts_at_most(
    h: *const SiladicCounts,
    bound: i64,
    k: i64,
    n: i64,
    out: *mut i64,
) -> SiladicStatus {
    non_null!(h, out);
    guard(|| {
        *out = (*h).engine.a(bound, k, n)?;
        Ok(SiladicStatus::Ok)
    })
}

/// `e_N(k, n)`: admissible partitions with largest part exactly `bound`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_counts_exactly(
    h: *const SiladicCounts,
    bound: i64,
    k: i64,
    n: i64,
    out: *mut i64,
) -> SiladicStatus {
    non_null!(h, out);
    guard(|| {
        *out = (*h).engine.e(bound, k, n)?;
        Ok(SiladicStatus::Ok)
    })
}

/// `A(k, n)`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_counts_admissible(
    h: *const SiladicCounts,
    k: i64,
    n: i64,
    out: *mut u64,
) -> SiladicStatus {
    non_null!(h, out);
    guard(|| {
        let e = &(*h).engine;
        *out = e.a(e.n_max() as i64, k, n)? as u64;
        Ok(SiladicStatus::Ok)
    })
}

/// `B(k, n)`: partitions of `n` into `k` distinct odd parts.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_counts_distinct_odd(
    h: *const SiladicCounts,
    k: i64,
    n: i64,
    out: *mut u64,
) -> SiladicStatus {
    non_null!(h, out);
    guard(|| {
        *out = (*h).distinct_odd.get(k, n)?;
        Ok(SiladicStatus::Ok)
    })
}

unsafe fn put_series(out: *mut *mut SiladicSeries, series: BiSeries) {
    *out = Box::into_raw(Box::new(SiladicSeries { series }));
}

/// `G_M` read off the `a_M` table of `h`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_series_from_counts(
    h: *const SiladicCounts,
    m: i64,
    out: *mut *mut SiladicSeries,
) -> SiladicStatus {
    non_null!(h, out);
    guard(|| {
        let e = &(*h).engine;
        let s = BiSeries::from_count_table(&e.table_a(m)?, e.k_max(), e.n_max())?;
        put_series(out, s);
        Ok(SiladicStatus::Ok)
    })
}

/// `G_M` rebuilt from the initial conditions and the q-difference equations.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_series_recurrence(
    m: i64,
    k_max: usize,
    n_max: usize,
    out: *mut *mut SiladicSeries,
) -> SiladicStatus {
    non_null!(out);
    guard(|| {
        put_series(out, build_G_recurrence(m, k_max, n_max)?);
        Ok(SiladicStatus::Ok)
    })
}

/// The product of `(1 + t q^(2j+1))` over `j >= 0`, truncated.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_series_distinct_odd(
    k_max: usize,
    n_max: usize,
    out: *mut *mut SiladicSeries,
) -> SiladicStatus {
    non_null!(out);
    guard(|| {
        put_series(out, BiSeries::product_distinct_odd(k_max, n_max)?);
        Ok(SiladicStatus::Ok)
    })
}

/// Coefficient of `t^k q^n`; 0 outside the window.
///
/// # Safety
/// `s` must be a live series handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_series_coeff(
    s: *const SiladicSeries,
    k: i64,
    n: i64,
    out: *mut i64,
) -> SiladicStatus {
    non_null!(s, out);
    *out = (*s).series.coeff(k, n);
    SiladicStatus::Ok
}

/// Compares two series on their common window. When they differ, `k_out`
/// and `n_out` receive the first differing cell in `(n, k)` order.
///
/// # Safety
/// `a` and `b` must be live series handles; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn siladic_series_equal(
    a: *const SiladicSeries,
    b: *const SiladicSeries,
    equal_out: *mut bool,
    k_out: *mut i64,
    n_out: *mut i64,
) -> SiladicStatus {
    non_null!(a, b, equal_out, k_out, n_out);
    guard(|| {
        match (*a).series.first_difference(&(*b).series)? {
            None => {
                *equal_out = true;
                *k_out = -1;
                *n_out = -1;
            }
            Some(m) => {
                *equal_out = false;
                *k_out = m.k as i64;
                *n_out = m.n as i64;
            }
        }
        Ok(SiladicStatus::Ok)
    })
}

/// # Safety
/// `s` must be NULL or a series handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn siladic_series_free(s: *mut SiladicSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Whether a larger part `part` may sit `gap` above the next part (gap 5..=8).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn siladic_gap_rule_allows(
    gap: u32,
    part: u32,
    out: *mut bool,
) -> SiladicStatus {
    non_null!(out);
    guard(|| {
        *out = RuleSet::SILADIC.gap_rule_allows(gap, part)?;
        Ok(SiladicStatus::Ok)
    })
}

unsafe fn read_partition(parts: *const u32, len: usize) -> Result<Partition, Error> {
    let slice = if len == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(parts, len)
    };
    Partition::new(slice.to_vec())
}

/// Whether the non-increasing sequence `parts[0..len]` is admissible.
///
/// # Safety
/// `parts` must point to `len` readable values (it may be NULL when `len` is 0)
/// and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn siladic_partition_admissible(
    parts: *const u32,
    len: usize,
    formulation: SiladicFormulation,
    out: *mut bool,
) -> SiladicStatus {
    non_null!(out);
    if len > 0 && parts.is_null() {
        return fail(SiladicStatus::NullPointer, "`parts` is null");
    }
    guard(|| {
        let p = read_partition(parts, len)?;
        let f = match formulation {
            SiladicFormulation::Original => Formulation::Original,
            SiladicFormulation::Reformulated => Formulation::Reformulated,
        };
        *out = f.admits(&RuleSet::SILADIC, p.parts());
        Ok(SiladicStatus::Ok)
    })
}

/// Odd parts plus twice the even parts.
///
/// # Safety
/// As for [`siladic_partition_admissible`].
#[no_mangle]
pub unsafe extern "C" fn siladic_partition_statistic(
    parts: *const u32,
    len: usize,
    out: *mut u64,
) -> SiladicStatus {
    non_null!(out);
    if len > 0 && parts.is_null() {
        return fail(SiladicStatus::NullPointer, "`parts` is null");
    }
    guard(|| {
        *out = read_partition(parts, len)?.statistic_k();
        Ok(SiladicStatus::Ok)
    })
}

/// Runs the suite and writes the serialized report to `*out`.
///
/// `checks` is a comma-separated list of check names, or NULL for all.
/// Returns `SILADIC_STATUS_CHECK_FAILED` when the report contains failures;
/// `*out` is set in that case too.
///
/// # Safety
/// `checks` must be NULL or a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn siladic_verify(
    n_max: usize,
    k_max: usize,
    oracle_n_max: u32,
    checks: *const c_char,
    format: SiladicFormat,
    out: *mut *mut c_char,
) -> SiladicStatus {
    non_null!(out);
    guard(|| {
        let checks = if checks.is_null() {
            CheckKind::ALL.to_vec()
        } else {
            let text = CStr::from_ptr(checks)
                .to_str()
                .map_err(|_| Error::Config("checks is not UTF-8".into()))?;
            text.split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<Vec<CheckKind>, _>>()?
        };
        let output_format = match format {
            SiladicFormat::Json => OutputFormat::Json,
            SiladicFormat::Csv => OutputFormat::Csv,
            SiladicFormat::Text => OutputFormat::Text,
        };
        let cfg = Config {
            n_max,
            k_max,
            oracle_n_max,
            checks,
            output_format,
        };
        let reports = run_suite(&cfg)?;
        let mut buf = Vec::new();
        emit_report(&reports, &cfg, output_format, false, &mut buf)
            .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
        let text = CString::new(buf).map_err(|_| Error::Config("report contains NUL".into()))?;
        *out = text.into_raw();
        Ok(if all_passed(&reports) {
            SiladicStatus::Ok
        } else {
            SiladicStatus::CheckFailed
        })
    })
}
