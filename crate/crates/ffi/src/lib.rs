//! C ABI over `legendre_susy`.
//!
//! Elements are opaque `LsElement` handles released with `ls_element_free`.
//! Every fallible call returns an `LsStatus`; on failure a message is
//! available from `ls_last_error_message` on the same thread. Strings handed
//! out by the library are released with `ls_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use legendre_susy::polynomials::{assoc_legendre, legendre};
use legendre_susy::ring::parse_fraction;
use legendre_susy::shape_invariance::{legendre_chain, spectrum};
use legendre_susy::{
    verify_identity, AssocMethod, Error, HalfPower, IdentityId, LegendreMethod,
    SuperpotentialFamily,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Domain = 4,
    Algebra = 5,
    Internal = 6,
}

/// Opaque handle to an element `(1 - x^2)^(k/2) p(x)`.
pub struct LsElement {
    inner: HalfPower,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> LsStatus {
    match err {
        Error::RangeError { .. }
        | Error::ParamOutOfRange { .. }
        | Error::NonPositiveFrequency(_) => LsStatus::OutOfRange,
        Error::DomainError { .. } => LsStatus::Domain,
        Error::UnknownIdentity(_) | Error::Parse(_) | Error::DegreeMismatch { .. } => {
            LsStatus::InvalidArgument
        }
        _ => LsStatus::Algebra,
    }
}

struct Failure(LsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(LsStatus::InvalidArgument, msg.into())
}

/// Runs `body`, records any failure and turns panics into `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(LsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            LsStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn element_ref<'a>(elem: *const LsElement) -> Result<&'a HalfPower, Failure> {
    elem.as_ref()
        .map(|e| &e.inner)
        .ok_or_else(|| Failure(LsStatus::NullPointer, "element is null".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c =
        CString::new(s).map_err(|_| Failure(LsStatus::Internal, "string has a nul byte".into()))?;
    write_out(out, c.into_raw())
}

fn boxed(inner: HalfPower) -> *mut LsElement {
    Box::into_raw(Box::new(LsElement { inner }))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ls_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// `P_n`, built with the ladder.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_legendre(n: u32, out: *mut *mut LsElement) -> LsStatus {
    guard(|| write_out(out, boxed(legendre(n, LegendreMethod::Ladder))))
}

/// `P_{n,m}` for `|m| <= n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_assoc_legendre(
    n: u32,
    m: i64,
    condon_shortley: bool,
    out: *mut *mut LsElement,
) -> LsStatus {
    guard(|| {
        let value = assoc_legendre(n, m, AssocMethod::Ladder, condon_shortley)?;
        write_out(out, boxed(value))
    })
}

/// # Safety
/// `elem` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ls_element_free(elem: *mut LsElement) {
    if !elem.is_null() {
        drop(Box::from_raw(elem));
    }
}

/// Twice the exponent of `(1 - x^2)` in the element.
///
/// # Safety
/// `elem` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_element_half_power(elem: *const LsElement, out: *mut i64) -> LsStatus {
    guard(|| write_out(out, element_ref(elem)?.k()))
}

/// # Safety
/// `elem` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_element_eval(
    elem: *const LsElement,
    x: f64,
    out: *mut f64,
) -> LsStatus {
    guard(|| {
        let v = element_ref(elem)?.eval_f64(x)?;
        write_out(out, v)
    })
}

/// Plain-text rendering, e.g. `(3x^2 - 1)/2`.
///
/// # Safety
/// `elem` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_element_to_text(
    elem: *const LsElement,
    out: *mut *mut c_char,
) -> LsStatus {
    guard(|| write_string(out, element_ref(elem)?.to_text()))
}

/// `{"k": .., "coeffs": [["num", "den"], ..]}`.
///
/// # Safety
/// `elem` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_element_to_json(
    elem: *const LsElement,
    out: *mut *mut c_char,
) -> LsStatus {
    guard(|| {
        let json = serde_json::to_string(element_ref(elem)?)
            .map_err(|e| Failure(LsStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// Checks one identity exactly. `params` is a comma-separated list of
/// integers or fractions such as `"3,-1/2"`; null or empty means none.
/// `report_json` may be null.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `holds` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn ls_verify_identity(
    identity: *const c_char,
    params: *const c_char,
    holds: *mut bool,
    report_json: *mut *mut c_char,
) -> LsStatus {
    guard(|| {
        let id: IdentityId = str_arg(identity, "identity")?.parse()?;
        let params = if params.is_null() {
            Vec::new()
        } else {
            str_arg(params, "params")?
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_fraction)
                .collect::<Result<Vec<_>, _>>()?
        };
        let report = verify_identity(id, &params)?;
        if !report_json.is_null() {
            let json = serde_json::to_string(&report)
                .map_err(|e| Failure(LsStatus::Internal, e.to_string()))?;
            write_string(report_json, json)?;
        }
        write_out(holds, report.holds)
    })
}

/// Levels of `"legendre"` or `"oscillator"` as JSON
/// `{"params": [..], "shifts": [..], "levels": [..]}` with fraction strings.
/// `omega` is required for the oscillator and ignored otherwise.
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn ls_spectrum_json(
    chain: *const c_char,
    levels: u32,
    omega: *const c_char,
    out: *mut *mut c_char,
) -> LsStatus {
    guard(|| {
        let result = match str_arg(chain, "chain")? {
            "legendre" => legendre_chain(levels as usize),
            "oscillator" => {
                let omega = parse_fraction(str_arg(omega, "omega")?)?;
                spectrum(&SuperpotentialFamily::oscillator(omega)?, levels as usize)?
            }
            other => return Err(invalid(format!("unknown chain `{other}`"))),
        };
        let json = serde_json::to_string(&result)
            .map_err(|e| Failure(LsStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
