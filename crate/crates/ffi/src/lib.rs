//! C ABI for the quartic56 pipeline.
//!
//! A `Q56Session` is an opaque handle caching computed stages. Calls return
//! a `Q56Status`; on failure `q56_last_error` gives a message valid until the
//! next call on the same thread. Strings returned through out-parameters are
//! owned by the caller and released with `q56_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use quartic56::report::{commands, run_criterion, Cache, Session, CRITERIA};
use quartic56::Error;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Q56Status {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Precondition = 3,
    Unsupported = 4,
    Internal = 5,
    Io = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque handle owning the lazily computed pipeline stages.
pub struct Q56Session {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> Q56Status {
    match e {
        Error::Input(_) | Error::NotIsometry(_) | Error::NotInLocalRing { .. } => Q56Status::InvalidInput,
        Error::Precondition(_) | Error::Dimension { .. } | Error::NotUnique(_) => Q56Status::Precondition,
        Error::Unsupported(_) => Q56Status::Unsupported,
        Error::Internal(_) => Q56Status::Internal,
        Error::Io(_) | Error::Serde(_) => Q56Status::Io,
    }
}

struct Failure {
    status: Q56Status,
    message: String,
}

fn fail(status: Q56Status, message: impl Into<String>) -> Failure {
    Failure { status, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording its error message and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Q56Status {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Q56Status::Ok,
        Ok(Err(failure)) => {
            set_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_error("panic inside quartic56");
            Q56Status::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    fail(Q56Status::NullPointer, format!("{what} is null"))
}

unsafe fn session<'a>(s: *const Q56Session) -> Result<&'a Session, Failure> {
    s.as_ref().map(|s| &s.inner).ok_or_else(|| null("session"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(Q56Status::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| fail(Q56Status::Internal, "report contains a NUL byte"))?;
    *out = c.into_raw();
    Ok(())
}

/// Creates a session. `cache_dir` may be null to disable the on-disk cache.
/// Returns null on failure.
///
/// # Safety
/// `cache_dir` is null or a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn q56_session_new(cache_dir: *const c_char) -> *mut Q56Session {
    let mut handle = ptr::null_mut();
    guard(|| {
        let cache = if cache_dir.is_null() { None } else { Some(Cache::open(Path::new(text(cache_dir, "cache_dir")?))?) };
        handle = Box::into_raw(Box::new(Q56Session { inner: Session::new(cache) }));
        Ok(())
    });
    handle
}

/// Releases a session; null is ignored.
///
/// # Safety
/// `s` is null or a handle from `q56_session_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn q56_session_free(s: *mut Q56Session) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of acceptance criteria, numbered from 1.
#[no_mangle]
pub extern "C" fn q56_criterion_count() -> u32 {
    CRITERIA.len() as u32
}

/// Evaluates one criterion and stores whether all its claims hold.
///
/// # Safety
/// `s` is a live session and `pass` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn q56_run_criterion(s: *const Q56Session, number: u8, pass: *mut bool) -> Q56Status {
    guard(|| {
        let s = session(s)?;
        if pass.is_null() {
            return Err(null("pass"));
        }
        if !CRITERIA.iter().any(|c| c.number == number) {
            return Err(fail(Q56Status::InvalidInput, format!("no criterion {number}")));
        }
        *pass = run_criterion(number, s).pass;
        Ok(())
    })
}

/// JSON report of a subcommand without parameters: "fermat", "configs",
/// "derive-psi", "lines-x56", "aut-x56" or "verify-all".
///
/// # Safety
/// `s` is a live session, `command` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn q56_command_json(s: *const Q56Session, command: *const c_char, out: *mut *mut c_char) -> Q56Status {
    guard(|| {
        let s = session(s)?;
        let report = match text(command, "command")? {
            "fermat" => commands::fermat(s)?,
            "configs" => commands::configs(s, None)?,
            "derive-psi" => commands::derive_psi(s)?,
            "lines-x56" => commands::lines_x56(s)?,
            "aut-x56" => commands::aut_x56(s)?,
            "verify-all" => commands::verify_all(s)?.1,
            other => return Err(fail(Q56Status::InvalidInput, format!("unknown command {other:?}"))),
        };
        write_string(out, serde_json::to_string(&report.json).map_err(Error::from)?)
    })
}

/// JSON census of the classes of relative degree `d` (1 to 6).
///
/// # Safety
/// `s` is a live session and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn q56_census_json(s: *const Q56Session, d: i64, out: *mut *mut c_char) -> Q56Status {
    guard(|| {
        let report = commands::census(session(s)?, d)?;
        write_string(out, serde_json::to_string(&report.json).map_err(Error::from)?)
    })
}

/// JSON reduction report at the primes above `prime`, or the smoothness
/// certificate with its audits when `prime` is 0.
///
/// # Safety
/// `s` is a live session and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn q56_reduce_json(
    s: *const Q56Session,
    prime: u64,
    all_orderings: bool,
    out: *mut *mut c_char,
) -> Q56Status {
    guard(|| {
        let report = commands::reduce(session(s)?, (prime != 0).then_some(prime), all_orderings)?;
        write_string(out, serde_json::to_string(&report.json).map_err(Error::from)?)
    })
}

/// Copies the 20×20 Gram matrix, row-major, into `buf` of length `len ≥ 400`.
///
/// # Safety
/// `s` is a live session and `buf` is valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn q56_gram(s: *const Q56Session, buf: *mut i64, len: usize) -> Q56Status {
    guard(|| {
        let m = session(s)?.model()?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let gram = m.lattice.int_gram().ok_or_else(|| Error::Internal("Gram matrix is not integral".into()))?;
        let flat: Vec<i64> = gram.iter().flatten().copied().collect();
        if len < flat.len() {
            return Err(fail(Q56Status::BufferTooSmall, format!("need {} entries", flat.len())));
        }
        ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `p` is null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn q56_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or "".
#[no_mangle]
pub extern "C" fn q56_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn q56_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
