//! C ABI over the workbench core.
//!
//! Handles are opaque and owned by the caller; free each with its
//! `*_free`. Strings handed out are NUL-terminated and freed with
//! `mcn_string_free`. Every entry point returns an `MCN_*` code; on a
//! nonzero code `mcn_last_error` describes what went wrong on this thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mcnaughton::calculus::{compile, PLFunction};
use mcnaughton::closed_set::ClosedSetDesc;
use mcnaughton::decision::{decide_sss, ideal_membership, DecisionConfig, IdealMembership, SssVerdict};
use mcnaughton::formula::parse;
use mcnaughton::geometry::format_rational;
use mcnaughton::io::{
    closedset_from_record, parse_point, plfunction_from_record, plfunction_record, verify_document,
    witness_document, Document, RecordKind,
};
use mcnaughton::Error;

pub const MCN_OK: i32 = 0;
pub const MCN_ERR_NULL: i32 = 1;
pub const MCN_ERR_UTF8: i32 = 2;
pub const MCN_ERR_SYNTAX: i32 = 3;
pub const MCN_ERR_ARITY: i32 = 4;
pub const MCN_ERR_EMPTY: i32 = 5;
pub const MCN_ERR_INVALID: i32 = 6;
pub const MCN_ERR_INTERNAL: i32 = 7;
pub const MCN_ERR_PANIC: i32 = 8;

pub const MCN_SSS: i32 = 0;
pub const MCN_NOT_SSS: i32 = 1;
pub const MCN_UNKNOWN: i32 = 4;

pub const MCN_MEMBER: i32 = 0;
pub const MCN_NOT_MEMBER: i32 = 1;

/// Compiled piecewise-linear function.
pub struct McnFunction {
    inner: PLFunction,
}

/// Closed subset of the unit cube.
pub struct McnSet {
    inner: ClosedSetDesc,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } => MCN_ERR_SYNTAX,
        Error::Arity { .. } | Error::ZeroVariable => MCN_ERR_ARITY,
        Error::EmptySet => MCN_ERR_EMPTY,
        Error::Invalid(_) => MCN_ERR_INVALID,
        _ => MCN_ERR_INTERNAL,
    }
}

struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(code_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MCN_OK
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("panic inside the library");
            MCN_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(MCN_ERR_NULL, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MCN_ERR_UTF8, format!("{what} is not UTF-8")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(MCN_ERR_NULL, format!("{what} is null")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(MCN_ERR_NULL, format!("{what} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failing call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mcn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn mcn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse and compile a formula such as `(x1 + !x2)` over `arity` variables.
#[no_mangle]
pub unsafe extern "C" fn mcn_function_compile(formula: *const c_char, arity: usize, out: *mut *mut McnFunction) -> i32 {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let f = parse(text(formula, "formula")?, Some(arity))?;
        let inner = compile(&f, arity)?;
        *out = Box::into_raw(Box::new(McnFunction { inner }));
        Ok(())
    })
}

/// Read the first `plfunction` record of a workbench document.
#[no_mangle]
pub unsafe extern "C" fn mcn_function_parse(document: *const c_char, out: *mut *mut McnFunction) -> i32 {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let doc = Document::parse(text(document, "document")?)?;
        let rec = doc
            .first(RecordKind::PlFunction)
            .ok_or_else(|| Fail(MCN_ERR_INVALID, "no plfunction record".into()))?;
        let inner = plfunction_from_record(rec)?;
        *out = Box::into_raw(Box::new(McnFunction { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mcn_function_free(f: *mut McnFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

#[no_mangle]
pub unsafe extern "C" fn mcn_function_arity(f: *const McnFunction) -> usize {
    f.as_ref().map_or(0, |f| f.inner.arity())
}

#[no_mangle]
pub unsafe extern "C" fn mcn_function_cells(f: *const McnFunction) -> usize {
    f.as_ref().map_or(0, |f| f.inner.pieces().len())
}

/// Exact value at a point written like `(1/2,1/3)`; the result is a
/// rational string such as `5/6`.
#[no_mangle]
pub unsafe extern "C" fn mcn_function_eval(f: *const McnFunction, point: *const c_char, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let f = handle(f, "function")?;
        let p = parse_point(text(point, "point")?, f.inner.arity())?;
        *out = c_string(format_rational(&f.inner.eval(&p)?));
        Ok(())
    })
}

/// The function as a `plfunction` record.
#[no_mangle]
pub unsafe extern "C" fn mcn_function_to_text(f: *const McnFunction, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let f = handle(f, "function")?;
        let doc = Document {
            records: vec![plfunction_record("f", &f.inner)],
        };
        *out = c_string(doc.to_string());
        Ok(())
    })
}

/// Read the first `closedset` record of a workbench document.
#[no_mangle]
pub unsafe extern "C" fn mcn_set_parse(document: *const c_char, out: *mut *mut McnSet) -> i32 {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let doc = Document::parse(text(document, "document")?)?;
        let rec = doc
            .first(RecordKind::ClosedSet)
            .ok_or_else(|| Fail(MCN_ERR_INVALID, "no closedset record".into()))?;
        let inner = closedset_from_record(rec)?;
        *out = Box::into_raw(Box::new(McnSet { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn mcn_set_free(x: *mut McnSet) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

#[no_mangle]
pub unsafe extern "C" fn mcn_set_dim(x: *const McnSet) -> usize {
    x.as_ref().map_or(0, |x| x.inner.ambient_dim())
}

/// Strong semisimplicity of M(X). `verdict` receives `MCN_SSS`,
/// `MCN_NOT_SSS` or `MCN_UNKNOWN`. When `witness` is non-null it receives
/// the witness document for `MCN_NOT_SSS` and null otherwise.
#[no_mangle]
pub unsafe extern "C" fn mcn_check_sss(x: *const McnSet, kmax: u64, verdict: *mut i32, witness: *mut *mut c_char) -> i32 {
    guard(|| {
        let verdict = out_ptr(verdict, "verdict")?;
        let witness = witness.as_mut();
        let x = handle(x, "set")?;
        let cfg = DecisionConfig {
            kmax,
            ..DecisionConfig::default()
        };
        let v = decide_sss(&x.inner, &cfg);
        *verdict = match &v {
            SssVerdict::StronglySemisimple(_) => MCN_SSS,
            SssVerdict::NotStronglySemisimple(_) => MCN_NOT_SSS,
            SssVerdict::Unknown(_) => MCN_UNKNOWN,
        };
        if let Some(w) = witness {
            *w = match &v {
                SssVerdict::NotStronglySemisimple(nw) => c_string(witness_document(&x.inner, nw).to_string()),
                _ => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// `f ∈ ⟨g⟩` on X searching multipliers up to `cap`. `status` receives
/// `MCN_MEMBER`, `MCN_NOT_MEMBER` or `MCN_UNKNOWN`; `k` the minimal
/// multiplier for members and 0 otherwise.
#[no_mangle]
pub unsafe extern "C" fn mcn_ideal_member(
    f: *const McnFunction,
    g: *const McnFunction,
    x: *const McnSet,
    cap: u64,
    status: *mut i32,
    k: *mut u64,
) -> i32 {
    guard(|| {
        let status = out_ptr(status, "status")?;
        let k = out_ptr(k, "k")?;
        let (f, g, x) = (handle(f, "f")?, handle(g, "g")?, handle(x, "set")?);
        let m = ideal_membership(&f.inner, &g.inner, &x.inner, cap)?;
        (*status, *k) = match m {
            IdealMembership::Member { k, .. } => (MCN_MEMBER, k),
            IdealMembership::NotMember { .. } => (MCN_NOT_MEMBER, 0),
            IdealMembership::Unknown { .. } => (MCN_UNKNOWN, 0),
        };
        Ok(())
    })
}

/// Re-run the exact checks of every certificate in a document. `ok` is 1
/// when there is at least one certificate and all of them pass.
#[no_mangle]
pub unsafe extern "C" fn mcn_verify(document: *const c_char, ok: *mut i32) -> i32 {
    guard(|| {
        let ok = out_ptr(ok, "ok")?;
        let doc = Document::parse(text(document, "document")?)?;
        let rs = verify_document(&doc)?;
        *ok = i32::from(!rs.is_empty() && rs.iter().all(|r| r.ok));
        Ok(())
    })
}
