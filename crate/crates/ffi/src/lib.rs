//! C ABI over `singzeta`.
//!
//! Objects are opaque handles created by `sz_polynomial_parse`,
//! `sz_member_from_json` and similar, and released by the matching `sz_*_free`. Every fallible call
//! returns an [`SzStatus`]; on failure a message is kept per thread and can be
//! read with [`sz_last_error_message`]. Strings returned by the library are
//! owned by the caller and must be released with [`sz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use singzeta::family::{assemble_zeta, FamilyMember};
use singzeta::io::{member_from_json, parse, print};
use singzeta::newton::{newton_boundary, newton_number};
use singzeta::poly::Polynomial;
use singzeta::resolution::{build_dual_graph, builtin_catalog, graphs_isomorphic, DualGraph};
use singzeta::zeta::{milnor_from_zeta, varchenko_zeta, ZetaFunction};
use singzeta::Error;

/// Result codes. `SZ_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SzStatus {
    SzOk = 0,
    SzNullPointer = 1,
    SzInvalidUtf8 = 2,
    SzParseError = 3,
    SzInvalidInput = 4,
    SzNotConvenient = 5,
    SzUncatalogued = 6,
    SzGraphError = 7,
    SzIoError = 8,
    SzInternalError = 9,
}

/// A polynomial with rational coefficients.
pub struct SzPolynomial(Polynomial);
/// A monodromy zeta-function.
pub struct SzZeta(ZetaFunction);
/// A validated member of the family.
pub struct SzMember(FamilyMember);
/// A decorated dual resolution graph.
pub struct SzGraph(DualGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SzStatus {
    match e {
        Error::Parse { .. } => SzStatus::SzParseError,
        Error::NotConvenient => SzStatus::SzNotConvenient,
        Error::Uncatalogued(_) => SzStatus::SzUncatalogued,
        Error::Graph(_) => SzStatus::SzGraphError,
        Error::Io(_) => SzStatus::SzIoError,
        _ => SzStatus::SzInvalidInput,
    }
}

fn fail(status: SzStatus, msg: &str) -> SzStatus {
    set_error(msg);
    status
}

/// Run `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), SzStatus>>(f: F) -> SzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SzStatus::SzOk,
        Ok(Err(s)) => s,
        Err(_) => fail(SzStatus::SzInternalError, "internal panic"),
    }
}

fn lib<T>(r: singzeta::Result<T>) -> Result<T, SzStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn read_text<'a>(p: *const c_char) -> Result<&'a str, SzStatus> {
    if p.is_null() {
        return Err(fail(SzStatus::SzNullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SzStatus::SzInvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, SzStatus> {
    p.as_ref().ok_or_else(|| fail(SzStatus::SzNullPointer, "null handle"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), SzStatus> {
    if out.is_null() {
        return Err(fail(SzStatus::SzNullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_value<T>(out: *mut T, value: T) -> Result<(), SzStatus> {
    if out.is_null() {
        return Err(fail(SzStatus::SzNullPointer, "null output pointer"));
    }
    *out = value;
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), SzStatus> {
    let c = CString::new(s).map_err(|_| fail(SzStatus::SzInternalError, "string contains nul"))?;
    if out.is_null() {
        return Err(fail(SzStatus::SzNullPointer, "null output pointer"));
    }
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn sz_clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn sz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a polynomial in `z1, z2, z3`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_polynomial_parse(text: *const c_char, out: *mut *mut SzPolynomial) -> SzStatus {
    guard(|| {
        let p = lib(parse(read_text(text)?))?;
        store(out, SzPolynomial(p))
    })
}

/// # Safety
/// `p` must be null or a handle from `sz_polynomial_parse`.
#[no_mangle]
pub unsafe extern "C" fn sz_polynomial_free(p: *mut SzPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text form.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_polynomial_to_string(p: *const SzPolynomial, out: *mut *mut c_char) -> SzStatus {
    guard(|| store_string(out, print(&handle(p)?.0)))
}

/// Newton number of a convenient germ.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_newton_number(p: *const SzPolynomial, out: *mut i64) -> SzStatus {
    guard(|| {
        let b = lib(newton_boundary(&handle(p)?.0))?;
        store_value(out, lib(newton_number(&b))?)
    })
}

/// Zeta-function from the Newton boundary.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_varchenko_zeta(p: *const SzPolynomial, out: *mut *mut SzZeta) -> SzStatus {
    guard(|| {
        let b = lib(newton_boundary(&handle(p)?.0))?;
        store(out, SzZeta(lib(varchenko_zeta(&b))?))
    })
}

/// # Safety
/// `z` must be null or a zeta handle.
#[no_mangle]
pub unsafe extern "C" fn sz_zeta_free(z: *mut SzZeta) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}

/// Pretty form, e.g. `(1-t^5)^2 (1-t^10)^-5`.
///
/// # Safety
/// `z` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_zeta_to_string(z: *const SzZeta, out: *mut *mut c_char) -> SzStatus {
    guard(|| store_string(out, handle(z)?.0.to_string()))
}

/// Number of factors; exponents are read with [`sz_zeta_factor`].
///
/// # Safety
/// `z` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sz_zeta_factor_count(z: *const SzZeta, out: *mut usize) -> SzStatus {
    guard(|| store_value(out, handle(z)?.0.factors().len()))
}

/// The `index`-th factor `(1 - t^degree)^exponent`, in increasing degree.
///
/// # Safety
/// `z` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_zeta_factor(
    z: *const SzZeta,
    index: usize,
    degree: *mut u64,
    exponent: *mut i64,
) -> SzStatus {
    guard(|| {
        let pairs = handle(z)?.0.pairs();
        let (d, nu) = *pairs
            .get(index)
            .ok_or_else(|| fail(SzStatus::SzInvalidInput, "factor index out of range"))?;
        store_value(degree, d)?;
        store_value(exponent, nu)
    })
}

/// Milnor number `(-1)^n (deg ζ + 1)`.
///
/// # Safety
/// `z` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_zeta_milnor(z: *const SzZeta, nvars: usize, out: *mut i64) -> SzStatus {
    guard(|| store_value(out, milnor_from_zeta(&handle(z)?.0, nvars)))
}

/// Load a member from its JSON description.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_member_from_json(json: *const c_char, out: *mut *mut SzMember) -> SzStatus {
    guard(|| store(out, SzMember(lib(member_from_json(read_text(json)?))?)))
}

/// # Safety
/// `m` must be null or a member handle.
#[no_mangle]
pub unsafe extern "C" fn sz_member_free(m: *mut SzMember) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Zeta-function of the member's germ at the origin.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_member_zeta(m: *const SzMember, out: *mut *mut SzZeta) -> SzStatus {
    guard(|| store(out, SzZeta(lib(assemble_zeta(&handle(m)?.0))?)))
}

/// Dual graph using the bundled catalogue.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_graph_build(m: *const SzMember, out: *mut *mut SzGraph) -> SzStatus {
    guard(|| store(out, SzGraph(lib(build_dual_graph(&handle(m)?.0, &builtin_catalog()))?)))
}

/// # Safety
/// `g` must be null or a graph handle.
#[no_mangle]
pub unsafe extern "C" fn sz_graph_free(g: *mut SzGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_graph_to_dot(g: *const SzGraph, out: *mut *mut c_char) -> SzStatus {
    guard(|| store_string(out, handle(g)?.0.to_dot()))
}

/// Writes 1 to `out` if the graphs are isomorphic as decorated graphs.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sz_graphs_isomorphic(
    a: *const SzGraph,
    b: *const SzGraph,
    compare_multiplicity: bool,
    out: *mut bool,
) -> SzStatus {
    guard(|| store_value(out, graphs_isomorphic(&handle(a)?.0, &handle(b)?.0, compare_multiplicity)))
}
