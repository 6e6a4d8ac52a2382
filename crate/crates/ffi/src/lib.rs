//! C interface to `unitforge`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `uf_*_free`. Every fallible call returns a
//! `UfStatus`; on failure the message is available from
//! `uf_last_error_message` on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use unitforge::freeness::{self, FreenessError, FreenessReport, Verdict};
use unitforge::group::{catalog, FiniteGroup, GroupError};
use unitforge::units::{self, OrderVerdict, PredictedOrder, Side, UnitDescriptor, UnitError};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    GroupError = 3,
    UnitError = 4,
    HypothesisViolation = 5,
    FreenessError = 6,
    Panic = 7,
}

/// Verdict of a freeness report.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UfVerdict {
    CertifiedCondition = 0,
    PassedToBound = 1,
    Violation = 2,
    Inconclusive = 3,
}

/// Which side of the subgroup sum `g` sits on.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UfSide {
    Left = 0,
    Right = 1,
}

/// A finite group.
pub struct UfGroup {
    inner: Arc<FiniteGroup>,
}

/// A unit of the integral group ring.
pub struct UfUnit {
    inner: UnitDescriptor,
}

/// Result of a freeness check.
pub struct UfReport {
    inner: FreenessReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(UfStatus, String);

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure(UfStatus::GroupError, e.to_string())
    }
}

impl From<UnitError> for Failure {
    fn from(e: UnitError) -> Self {
        let status = match e {
            UnitError::Hypothesis(_) | UnitError::TrivialCase | UnitError::BadBassParams { .. } => {
                UfStatus::HypothesisViolation
            }
            _ => UfStatus::UnitError,
        };
        Failure(status, e.to_string())
    }
}

impl From<FreenessError> for Failure {
    fn from(e: FreenessError) -> Self {
        let status = match e {
            FreenessError::BadBassParams { .. } => UfStatus::HypothesisViolation,
            _ => UfStatus::FreenessError,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            UfStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(UfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(UfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(UfStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(UfStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn uf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn uf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn uf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in group by key, e.g. `"d8"` or `"heis27"`.
#[no_mangle]
pub unsafe extern "C" fn uf_group_catalog(key: *const c_char, out: *mut *mut UfGroup) -> UfStatus {
    guard(|| {
        let key = read_str(key, "key")?;
        let g = catalog(key)?.group;
        write_out(out, UfGroup { inner: g })
    })
}

/// Loads a group from its JSON description.
#[no_mangle]
pub unsafe extern "C" fn uf_group_from_json(json: *const c_char, out: *mut *mut UfGroup) -> UfStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let g = unitforge::group::load_group_json(text, true)?;
        write_out(out, UfGroup { inner: Arc::new(g) })
    })
}

/// Order of the group, 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn uf_group_order(group: *const UfGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.order())
}

/// Index of the element with the given display name.
#[no_mangle]
pub unsafe extern "C" fn uf_group_find(group: *const UfGroup, name: *const c_char, out_index: *mut usize) -> UfStatus {
    guard(|| {
        let g = borrow(group, "group")?;
        let name = read_str(name, "name")?;
        let idx = g.inner.find(name)?;
        if out_index.is_null() {
            return Err(Failure(UfStatus::NullPointer, "out_index is null".into()));
        }
        *out_index = idx;
        Ok(())
    })
}

/// Order of a group element, 0 if the index is out of range.
#[no_mangle]
pub unsafe extern "C" fn uf_group_element_order(group: *const UfGroup, x: usize) -> usize {
    match group.as_ref() {
        Some(g) if x < g.inner.order() => g.inner.element_order(x),
        _ => 0,
    }
}

/// Inverse of a group element, `SIZE_MAX` if the index is out of range.
#[no_mangle]
pub unsafe extern "C" fn uf_group_inverse(group: *const UfGroup, x: usize) -> usize {
    match group.as_ref() {
        Some(g) if x < g.inner.order() => g.inner.inv(x),
        _ => usize::MAX,
    }
}

#[no_mangle]
pub unsafe extern "C" fn uf_group_free(group: *mut UfGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

fn side(s: UfSide) -> Side {
    match s {
        UfSide::Left => Side::Left,
        UfSide::Right => Side::Right,
    }
}

/// Bicyclic unit `1 + (1-h) g h~` (left) or `1 + h~ g (1-h)` (right).
#[no_mangle]
pub unsafe extern "C" fn uf_unit_bicyclic(
    group: *const UfGroup,
    g: usize,
    h: usize,
    which: UfSide,
    out: *mut *mut UfUnit,
) -> UfStatus {
    guard(|| {
        let grp = &borrow(group, "group")?.inner;
        let u = match side(which) {
            Side::Left => units::bicyclic_left(grp, g, h)?,
            Side::Right => units::bicyclic_right(grp, h, g)?,
        };
        write_out(out, UfUnit { inner: u })
    })
}

/// Bovdi unit with exponent `k`.
#[no_mangle]
pub unsafe extern "C" fn uf_unit_bovdi(
    group: *const UfGroup,
    k: u64,
    g: usize,
    h: usize,
    which: UfSide,
    out: *mut *mut UfUnit,
) -> UfStatus {
    guard(|| {
        let grp = &borrow(group, "group")?.inner;
        let u = match side(which) {
            Side::Left => units::bovdi_left(grp, k, g, h)?,
            Side::Right => units::bovdi_right(grp, k, h, g)?,
        };
        write_out(out, UfUnit { inner: u })
    })
}

/// Bass cyclic unit `u_{k,m}(g)`.
#[no_mangle]
pub unsafe extern "C" fn uf_unit_bass(group: *const UfGroup, g: usize, k: u64, m: u64, out: *mut *mut UfUnit) -> UfStatus {
    guard(|| {
        let grp = &borrow(group, "group")?.inner;
        write_out(out, UfUnit { inner: units::bass(grp, g, k, m)? })
    })
}

/// Predicted multiplicative order: positive for finite, 0 for infinite, -1 if unknown.
#[no_mangle]
pub unsafe extern "C" fn uf_unit_predicted_order(unit: *const UfUnit) -> i64 {
    match unit.as_ref().map(|u| u.inner.predicted_order) {
        Some(PredictedOrder::Finite(n)) => n as i64,
        Some(PredictedOrder::Infinite) => 0,
        _ => -1,
    }
}

/// Exact order check up to `bound`: positive order, 0 for confirmed infinite, -1 if the bound was reached.
#[no_mangle]
pub unsafe extern "C" fn uf_unit_verify_order(unit: *const UfUnit, bound: u64) -> i64 {
    match unit.as_ref().map(|u| units::verify_order(&u.inner, bound)) {
        Some(OrderVerdict::ConfirmedFinite(n)) => n as i64,
        Some(OrderVerdict::ConfirmedInfinite) => 0,
        _ => -1,
    }
}

/// JSON descriptor of the unit. Free with `uf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn uf_unit_json(unit: *const UfUnit) -> *mut c_char {
    match unit.as_ref() {
        Some(u) => serde_json::to_string(&u.inner.to_json(None)).map_or(ptr::null_mut(), to_c_string),
        None => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn uf_unit_free(unit: *mut UfUnit) {
    if !unit.is_null() {
        drop(Box::from_raw(unit));
    }
}

/// Exhaustive search for a relation between two torsion units up to `max_syllables`.
#[no_mangle]
pub unsafe extern "C" fn uf_free_product_oracle(
    u: *const UfUnit,
    ord_u: u64,
    v: *const UfUnit,
    ord_v: u64,
    max_syllables: usize,
    out: *mut *mut UfReport,
) -> UfStatus {
    guard(|| {
        let u = &borrow(u, "u")?.inner;
        let v = &borrow(v, "v")?.inner;
        let rep = freeness::free_product_oracle(&u.element, ord_u, &v.element, ord_v, max_syllables)?;
        write_out(out, UfReport { inner: rep })
    })
}

/// Exhaustive search for a relation in the group generated by two units.
#[no_mangle]
pub unsafe extern "C" fn uf_free_group_oracle(
    a: *const UfUnit,
    b: *const UfUnit,
    max_length: usize,
    out: *mut *mut UfReport,
) -> UfStatus {
    guard(|| {
        let a = &borrow(a, "a")?.inner;
        let b = &borrow(b, "b")?.inner;
        let rep = freeness::free_group_oracle(&a.element, &b.element, max_length)?;
        write_out(out, UfReport { inner: rep })
    })
}

/// Exhaustive search for a collision of positive words up to `max_length`.
#[no_mangle]
pub unsafe extern "C" fn uf_free_monoid_oracle(
    a: *const UfUnit,
    b: *const UfUnit,
    max_length: usize,
    out: *mut *mut UfReport,
) -> UfStatus {
    guard(|| {
        let a = &borrow(a, "a")?.inner;
        let b = &borrow(b, "b")?.inner;
        let rep = freeness::free_monoid_oracle(&a.element, &b.element, max_length)?;
        write_out(out, UfReport { inner: rep })
    })
}

/// Verdict of a report. A null handle reads as inconclusive.
#[no_mangle]
pub unsafe extern "C" fn uf_report_verdict(report: *const UfReport) -> UfVerdict {
    match report.as_ref().map(|r| r.inner.verdict) {
        Some(Verdict::CertifiedCondition) => UfVerdict::CertifiedCondition,
        Some(Verdict::PassedToBound) => UfVerdict::PassedToBound,
        Some(Verdict::Violation) => UfVerdict::Violation,
        _ => UfVerdict::Inconclusive,
    }
}

/// Number of words examined by the search.
#[no_mangle]
pub unsafe extern "C" fn uf_report_words_checked(report: *const UfReport) -> u64 {
    report.as_ref().map_or(0, |r| r.inner.words_checked)
}

/// JSON form of the report. Free with `uf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn uf_report_json(report: *const UfReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => serde_json::to_string(&r.inner).map_or(ptr::null_mut(), to_c_string),
        None => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn uf_report_free(report: *mut UfReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
