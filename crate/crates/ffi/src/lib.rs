//! C interface to the `prequant` library.
//!
//! Every function returns a [`PrequantStatus`]. On failure a message is
//! available from [`prequant_last_error_message`] on the same thread.
//! Strings handed out by the library must be released with
//! [`prequant_string_free`], groups with [`prequant_group_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prequant::alcove::{self, CartanPoint, Rational, Verdict};
use prequant::catalog::{Catalog, GroupId, Z3Lift};
use prequant::report::L0Report;
use prequant::{Error, ErrorKind, Style};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrequantStatus {
    Ok = 0,
    /// Malformed input: a group string, a non-UTF-8 string, a bad rational.
    ParseError = 1,
    /// Well-formed input outside the supported domain.
    DomainError = 2,
    /// An internal consistency check failed.
    InternalError = 3,
    NullPointer = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrequantVerdict {
    No = 0,
    Yes = 1,
    Open = 2,
}

/// Opaque handle to a parsed group.
pub struct PrequantGroup {
    id: GroupId,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(PrequantStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.kind() {
            ErrorKind::Parse => PrequantStatus::ParseError,
            ErrorKind::Domain => PrequantStatus::DomainError,
            ErrorKind::Internal => PrequantStatus::InternalError,
        };
        Failure(status, e.to_string())
    }
}

fn fail<E: Into<Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

fn null(what: &str) -> Failure {
    Failure(PrequantStatus::NullPointer, format!("{what} is null"))
}

/// Run `body`, converting errors and panics into a status code.
fn guard<F: FnOnce() -> Result<(), Failure>>(body: F) -> PrequantStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PrequantStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            PrequantStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure(PrequantStatus::ParseError, format!("{what} is not valid UTF-8")))
}

unsafe fn group<'a>(g: *const PrequantGroup) -> Result<&'a GroupId, Failure> {
    unsafe { g.as_ref() }.map(|g| &g.id).ok_or_else(|| null("group"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    unsafe { out.write(value) };
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

unsafe fn point(n: usize, nums: *const i64, dens: *const i64) -> Result<CartanPoint, Failure> {
    if nums.is_null() || dens.is_null() {
        return Err(null("coordinates"));
    }
    let (nums, dens) = unsafe { (std::slice::from_raw_parts(nums, n), std::slice::from_raw_parts(dens, n)) };
    let mut coords = Vec::with_capacity(n);
    for (&a, &b) in nums.iter().zip(dens) {
        if b == 0 {
            return Err(Failure(PrequantStatus::ParseError, "zero denominator".into()));
        }
        coords.push(Rational::new(a, b));
    }
    CartanPoint::new(coords).map_err(fail)
}

/// Parse a group such as `PU:6`, `SU:8/4`, `PSp:3`, `SO:9`, `PO:14`, `Ss:8`,
/// `PE6` or `PE7`. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prequant_group_parse(text: *const c_char, out: *mut *mut PrequantGroup) -> PrequantStatus {
    guard(|| {
        let text = unsafe { read_str(text, "text") }?;
        let id: GroupId = text.parse().map_err(fail)?;
        unsafe { write(out, Box::into_raw(Box::new(PrequantGroup { id })), "out") }
    })
}

/// # Safety
/// `g` must come from [`prequant_group_parse`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn prequant_group_free(g: *mut PrequantGroup) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Display name of the group, e.g. `SU(8)/Z4`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prequant_group_name(g: *const PrequantGroup, out: *mut *mut c_char) -> PrequantStatus {
    guard(|| {
        let id = unsafe { group(g) }?;
        unsafe { write(out, into_c_string(id.to_string()), "out") }
    })
}

/// Minimal pre-quantizable level.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prequant_l0(g: *const PrequantGroup, out: *mut u64) -> PrequantStatus {
    guard(|| {
        let id = unsafe { group(g) }?;
        let r = Catalog::default().l0(id).map_err(fail)?;
        unsafe { write(out, r.value, "out") }
    })
}

/// Minimal level with its per-prime breakdown, as a JSON object.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prequant_l0_json(g: *const PrequantGroup, out: *mut *mut c_char) -> PrequantStatus {
    guard(|| {
        let id = unsafe { group(g) }?;
        let r = Catalog::default().l0(id).map_err(fail)?;
        let json = serde_json::to_string(&L0Report::new(&r)).expect("report serializes");
        unsafe { write(out, into_c_string(json), "out") }
    })
}

/// Whether `level` admits a pre-quantization for surfaces of the given genus.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prequant_check_level(
    g: *const PrequantGroup,
    level: u64,
    genus: u64,
    out: *mut bool,
) -> PrequantStatus {
    guard(|| {
        let id = unsafe { group(g) }?;
        let c = Catalog::default().check_level(id, level, genus).map_err(fail)?;
        unsafe { write(out, c.admits, "out") }
    })
}

/// Pullback of the degree-3 generator under the commutator map, mod `prime`.
/// `*out` is set to null when no explicit class is available at this prime.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prequant_phi_star(
    g: *const PrequantGroup,
    prime: u64,
    ascii: bool,
    out: *mut *mut c_char,
) -> PrequantStatus {
    guard(|| {
        let id = unsafe { group(g) }?;
        let data = Catalog::default().entry(id, prime).map_err(fail)?;
        let style = if ascii { Style::Ascii } else { Style::Unicode };
        let value = match &data.lift {
            Z3Lift::Algebraic { .. } => data.lift_image().map_err(fail)?,
            Z3Lift::Pinned(pin) => pin.result.clone(),
            Z3Lift::Pushforward { .. } => None,
        };
        let ptr = match value {
            Some(v) => into_c_string(data.presentation().format_tensor(&v, style)),
            None => ptr::null_mut(),
        };
        unsafe { write(out, ptr, "out") }
    })
}

/// Run the Hopf axiom checks through `max_degree`.
///
/// # Safety
/// `g` must be a live handle; `checks` and `failures` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn prequant_verify_hopf(
    g: *const PrequantGroup,
    prime: u64,
    max_degree: u32,
    checks: *mut u64,
    failures: *mut u64,
) -> PrequantStatus {
    guard(|| {
        let id = unsafe { group(g) }?;
        let catalog = Catalog::new(max_degree.max(prequant::catalog::DEFAULT_DEGREE_CAP)).map_err(fail)?;
        let data = catalog.entry(id, prime).map_err(fail)?;
        let report = data.hopf.verify_axioms(max_degree).map_err(fail)?;
        unsafe {
            write(checks, report.total_checks() as u64, "checks")?;
            write(failures, report.failures.len() as u64, "failures")
        }
    })
}

/// Integrality of the conjugacy class of exp(ζ) at `level`. ζ is given by
/// `n` numerators and `n` denominators and must lie in the fundamental alcove.
///
/// # Safety
/// `nums` and `dens` must point to `n` values each; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn prequant_conjclass_check(
    n: usize,
    nums: *const i64,
    dens: *const i64,
    level: u64,
    out: *mut bool,
) -> PrequantStatus {
    guard(|| {
        let zeta = unsafe { point(n, nums, dens) }?;
        let ok = alcove::conjclass_preq_check(&zeta, level).map_err(fail)?;
        unsafe { write(out, ok, "out") }
    })
}

/// Verdict for PU(n) with `count` marked classes, stored row by row
/// (`count * n` numerators and denominators).
///
/// # Safety
/// `nums` and `dens` must point to `count * n` values each (or may be null when
/// `count` is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn prequant_marked_points(
    n: usize,
    level: u64,
    nums: *const i64,
    dens: *const i64,
    count: usize,
    out: *mut PrequantVerdict,
) -> PrequantStatus {
    guard(|| {
        let mut classes = Vec::with_capacity(count);
        for i in 0..count {
            if nums.is_null() || dens.is_null() {
                return Err(null("coordinates"));
            }
            classes.push(unsafe { point(n, nums.add(i * n), dens.add(i * n)) }?);
        }
        let v = alcove::marked_points_check(n, level, &classes).map_err(fail)?;
        let verdict = match v.verdict {
            Verdict::Yes => PrequantVerdict::Yes,
            Verdict::No => PrequantVerdict::No,
            Verdict::Open => PrequantVerdict::Open,
        };
        unsafe { write(out, verdict, "out") }
    })
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn prequant_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn prequant_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn prequant_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
