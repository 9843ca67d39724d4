//! C ABI for lefkit.
//!
//! Groups, tables and presentations cross the boundary as opaque handles.
//! Everything else is JSON in the same `lefkit/1` shapes the `lef` tool
//! prints. Every fallible call returns a [`LefStatus`]; on failure the
//! message is available from [`lef_last_error_message`] on the same thread.
//! Strings returned through `out` parameters belong to the caller and must
//! be released with [`lef_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lefkit::fpgroups::{self, Presentation, QuotientOutcome, TargetFamily};
use lefkit::partial::{extract_table, verify_local_embedding, Assignment, PartialGroupTable};
use lefkit::search::{
    single_target, sweep_cyclic, sweep_symmetric, CertificateOutcome, SearchBudget, SweepOutcome,
};
use lefkit::{abelian, words, Error, Group};
use serde_json::Value;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LefStatus {
    Ok = 0,
    InvalidInput = 1,
    ResourceLimit = 2,
    NotEnumerable = 3,
    /// The search stopped on its budget; the result in `out` is still set.
    BudgetExceeded = 4,
    NullPointer = 5,
    Panic = 6,
}

pub struct LefGroup(Group);
pub struct LefTable(PartialGroupTable);
pub struct LefPresentation(Presentation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> LefStatus {
    match err {
        Error::ResourceLimit(_) => LefStatus::ResourceLimit,
        Error::NotEnumerable(_) => LefStatus::NotEnumerable,
        _ => LefStatus::InvalidInput,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail::Lib(e.into())
    }
}

fn guard(f: impl FnOnce() -> Result<LefStatus, Fail>) -> LefStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            LefStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            LefStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    // SAFETY: caller passes null or a live handle from this library.
    unsafe { p.as_ref() }.ok_or(Fail::Null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    // SAFETY: caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

unsafe fn read_json(p: *const c_char, what: &'static str) -> Result<Value, Fail> {
    Ok(serde_json::from_str(unsafe { read_str(p, what) }?)?)
}

unsafe fn read_budget(p: *const c_char) -> Result<SearchBudget, Fail> {
    let budget = if p.is_null() {
        SearchBudget::default()
    } else {
        serde_json::from_value(unsafe { read_json(p, "budget") }?)?
    };
    budget.validate()?;
    Ok(budget)
}

unsafe fn write<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    // SAFETY: caller passes a writable pointer.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Result<(), Fail> {
    let text = CString::new(v.to_string()).expect("JSON has no NUL");
    unsafe { write(out, text.into_raw(), "out") }
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    unsafe { write(out, Box::into_raw(Box::new(value)), "out") }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next lefkit call on the same thread.
#[no_mangle]
pub extern "C" fn lef_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lef_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parse a backend spec such as `{"kind":"cyclic","m":8}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_group_from_json(
    json: *const c_char,
    out: *mut *mut LefGroup,
) -> LefStatus {
    guard(|| {
        let g: Group = serde_json::from_value(unsafe { read_json(json, "json") }?)?;
        unsafe { write_handle(out, LefGroup(g)) }?;
        Ok(LefStatus::Ok)
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lef_group_free(g: *mut LefGroup) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_group_order(g: *const LefGroup, out: *mut u64) -> LefStatus {
    guard(|| {
        let g = unsafe { borrow(g, "group") }?;
        unsafe { write(out, g.0.order()?, "out") }?;
        Ok(LefStatus::Ok)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_group_to_json(g: *const LefGroup, out: *mut *mut c_char) -> LefStatus {
    guard(|| {
        let g = unsafe { borrow(g, "group") }?;
        unsafe { write_json(out, &serde_json::to_value(&g.0)?) }?;
        Ok(LefStatus::Ok)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_table_from_json(
    json: *const c_char,
    out: *mut *mut LefTable,
) -> LefStatus {
    guard(|| {
        let t: PartialGroupTable = serde_json::from_value(unsafe { read_json(json, "json") }?)?;
        unsafe { write_handle(out, LefTable(t)) }?;
        Ok(LefStatus::Ok)
    })
}

/// Partial multiplication table of a JSON array of elements of `g`.
///
/// # Safety
/// `g` must be a live handle, `subset` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lef_table_extract(
    g: *const LefGroup,
    subset: *const c_char,
    out: *mut *mut LefTable,
) -> LefStatus {
    guard(|| {
        let g = unsafe { borrow(g, "group") }?;
        let Value::Array(xs) = unsafe { read_json(subset, "subset") }? else {
            return Err(Error::InvalidInput("subset must be a JSON array".into()).into());
        };
        let elements = xs
            .iter()
            .map(|x| g.0.element_from_json(x))
            .collect::<lefkit::Result<Vec<_>>>()?;
        unsafe { write_handle(out, LefTable(extract_table(&g.0, &elements)?)) }?;
        Ok(LefStatus::Ok)
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lef_table_free(t: *mut LefTable) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_table_size(t: *const LefTable, out: *mut usize) -> LefStatus {
    guard(|| {
        let t = unsafe { borrow(t, "table") }?;
        unsafe { write(out, t.0.size(), "out") }?;
        Ok(LefStatus::Ok)
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_table_to_json(t: *const LefTable, out: *mut *mut c_char) -> LefStatus {
    guard(|| {
        let t = unsafe { borrow(t, "table") }?;
        unsafe { write_json(out, &serde_json::to_value(&t.0)?) }?;
        Ok(LefStatus::Ok)
    })
}

fn sweep_status(outcome: &SweepOutcome) -> LefStatus {
    match outcome {
        SweepOutcome::Certificate(c) if c.outcome == CertificateOutcome::BudgetExceeded => {
            LefStatus::BudgetExceeded
        }
        _ => LefStatus::Ok,
    }
}

/// Sweep `family` (`"cyclic"` or `"symmetric"`) for a local embedding of `t`.
/// `budget` is JSON with any of `max_cyclic_m`, `max_symmetric_n`,
/// `node_limit`, `time_limit_ms`, or null for the defaults. `out` receives
/// either a witness or an exhaustion certificate.
///
/// # Safety
/// `t` must be a live handle, `family` a NUL-terminated string, `budget`
/// null or a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lef_search_family(
    t: *const LefTable,
    family: *const c_char,
    budget: *const c_char,
    out: *mut *mut c_char,
) -> LefStatus {
    guard(|| {
        let t = unsafe { borrow(t, "table") }?;
        let budget = unsafe { read_budget(budget) }?;
        let outcome = match unsafe { read_str(family, "family") }? {
            "cyclic" => sweep_cyclic(&t.0, &budget)?,
            "symmetric" => sweep_symmetric(&t.0, &budget)?,
            other => {
                return Err(Error::InvalidInput(format!("unknown family `{other}`")).into());
            }
        };
        unsafe { write_json(out, &outcome.to_json()) }?;
        Ok(sweep_status(&outcome))
    })
}

/// Search a single finite target.
///
/// # Safety
/// `t` and `g` must be live handles, `budget` null or a NUL-terminated
/// string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lef_search_target(
    t: *const LefTable,
    g: *const LefGroup,
    budget: *const c_char,
    out: *mut *mut c_char,
) -> LefStatus {
    guard(|| {
        let t = unsafe { borrow(t, "table") }?;
        let g = unsafe { borrow(g, "group") }?;
        let budget = unsafe { read_budget(budget) }?;
        let outcome = single_target(&t.0, &g.0, &budget)?;
        unsafe { write_json(out, &outcome.to_json()) }?;
        Ok(sweep_status(&outcome))
    })
}

/// Check an assignment `{"target": spec, "images": [...]}` against `t`.
/// `out` receives 1 for a local embedding and 0 otherwise.
///
/// # Safety
/// `t` must be a live handle, `assignment` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lef_verify_assignment(
    t: *const LefTable,
    assignment: *const c_char,
    out: *mut i32,
) -> LefStatus {
    guard(|| {
        let t = unsafe { borrow(t, "table") }?;
        let a = Assignment::from_json(&unsafe { read_json(assignment, "assignment") }?)?;
        let report = verify_local_embedding(&t.0, &a.target, &a.images)?;
        unsafe { write(out, i32::from(report.is_local_embedding()), "out") }?;
        Ok(LefStatus::Ok)
    })
}

/// Closed-form witness for a JSON array of elements of an abelian backend.
///
/// # Safety
/// `g` must be a live handle, `subset` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lef_abelian_witness(
    g: *const LefGroup,
    subset: *const c_char,
    out: *mut *mut c_char,
) -> LefStatus {
    guard(|| {
        let g = unsafe { borrow(g, "group") }?;
        let Value::Array(xs) = unsafe { read_json(subset, "subset") }? else {
            return Err(Error::InvalidInput("subset must be a JSON array".into()).into());
        };
        let elements = xs
            .iter()
            .map(|x| g.0.element_from_json(x))
            .collect::<lefkit::Result<Vec<_>>>()?;
        let w = abelian::witness_for(&g.0, &elements)?;
        unsafe { write_json(out, &w.to_json()) }?;
        Ok(LefStatus::Ok)
    })
}

/// Number of reduced words of length at most `radius` in the free group of `rank`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_ball_size(rank: usize, radius: usize, out: *mut u64) -> LefStatus {
    guard(|| {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()).into());
        }
        let n = words::ball_size(rank, radius)
            .ok_or_else(|| Error::ResourceLimit("ball size overflows".into()))?;
        unsafe { write(out, n, "out") }?;
        Ok(LefStatus::Ok)
    })
}

/// Parse `{"rank": r, "relators": ["x0^2", ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lef_presentation_from_json(
    json: *const c_char,
    out: *mut *mut LefPresentation,
) -> LefStatus {
    guard(|| {
        let p: Presentation = serde_json::from_value(unsafe { read_json(json, "json") }?)?;
        unsafe { write_handle(out, LefPresentation(p)) }?;
        Ok(LefStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lef_presentation_free(p: *mut LefPresentation) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Search cyclic then symmetric quotients, minimising collisions on the
/// ball of `radius`.
///
/// # Safety
/// `p` must be a live handle, `budget` null or a NUL-terminated string,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lef_quotient_search(
    p: *const LefPresentation,
    radius: usize,
    budget: *const c_char,
    out: *mut *mut c_char,
) -> LefStatus {
    guard(|| {
        let p = unsafe { borrow(p, "presentation") }?;
        let budget = unsafe { read_budget(budget) }?;
        let families = [TargetFamily::Cyclic, TargetFamily::Symmetric];
        let outcome = fpgroups::lef_quotient_search(&p.0, radius, &families, &budget)?;
        let complete = match &outcome {
            QuotientOutcome::Found(r) => r.exhaustive,
            QuotientOutcome::NoQuotientFound { exhaustive, .. } => *exhaustive,
        };
        unsafe { write_json(out, &outcome.to_json(&p.0)) }?;
        Ok(if complete {
            LefStatus::Ok
        } else {
            LefStatus::BudgetExceeded
        })
    })
}
