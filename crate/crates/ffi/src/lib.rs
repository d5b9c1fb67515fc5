//! C ABI over the `bimorph` engine.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`BimorphStatus`]; on anything but `BIMORPH_STATUS_OK` the message is
//! available from [`bimorph_last_error`] on the same thread. Strings
//! returned to the caller are released with [`bimorph_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bimorph::algebras::{count_algebra_morphisms, Algebra};
use bimorph::classify::tensor;
use bimorph::cli::Workspace;
use bimorph::monads::{check_monad_laws, test_sets, MonadInstance};
use bimorph::strength::{canonical_strength, is_commutative};
use bimorph::{Budget, Error, FinMap, FinSet};

/// Outcome of a call. Values 0 to 3 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BimorphStatus {
    Ok = 0,
    /// The call ran but a checked property does not hold.
    CheckFailed = 1,
    /// Bad arguments, unknown names or invalid definitions.
    Invalid = 2,
    /// A size budget was exceeded.
    Budget = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// The engine panicked; this is a bug.
    Internal = 6,
}

/// A monad on finite sets.
pub struct BimorphMonad(MonadInstance);

/// An algebra for a monad.
pub struct BimorphAlgebra(Algebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(err: Error) -> BimorphStatus {
    set_error(err.to_string());
    if err.is_budget() {
        BimorphStatus::Budget
    } else {
        BimorphStatus::Invalid
    }
}

/// Runs `body`, turning panics into `Internal` and clearing the last error
/// on success.
fn guard(body: impl FnOnce() -> Result<BimorphStatus, BimorphStatus>) -> BimorphStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            if status == BimorphStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            status
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            BimorphStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, BimorphStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(BimorphStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        BimorphStatus::InvalidUtf8
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, BimorphStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        BimorphStatus::NullPointer
    })
}

fn out<T>(p: *mut T) -> Result<*mut T, BimorphStatus> {
    if p.is_null() {
        set_error("null output pointer");
        return Err(BimorphStatus::NullPointer);
    }
    Ok(p)
}

fn budget(limit: u64) -> Budget {
    if limit == 0 {
        Budget::default()
    } else {
        Budget::new(limit as u128)
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bimorph_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bimorph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a monad expression such as `semimodule(f2)` or `writer(z3)`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out_monad` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bimorph_monad_parse(expr: *const c_char, out_monad: *mut *mut BimorphMonad) -> BimorphStatus {
    guard(|| {
        let expr = text(expr)?;
        let slot = out(out_monad)?;
        let t = Workspace::empty(Budget::default()).single_monad(expr).map_err(fail)?;
        *slot = Box::into_raw(Box::new(BimorphMonad(t)));
        Ok(BimorphStatus::Ok)
    })
}

/// # Safety
/// `monad` must come from [`bimorph_monad_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bimorph_monad_free(monad: *mut BimorphMonad) {
    if !monad.is_null() {
        drop(Box::from_raw(monad));
    }
}

/// The monad's name as a new string, or null on a null handle.
///
/// # Safety
/// `monad` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bimorph_monad_name(monad: *const BimorphMonad) -> *mut c_char {
    match monad.as_ref() {
        Some(m) => owned_string(m.0.name()),
        None => ptr::null_mut(),
    }
}

/// `|T(n)|`.
///
/// # Safety
/// `monad` must be a live handle; `out_size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bimorph_monad_obj_size(monad: *const BimorphMonad, n: u64, out_size: *mut u64) -> BimorphStatus {
    guard(|| {
        let m = handle(monad)?;
        let slot = out(out_size)?;
        let size = m.0.obj_size(n as u128).map_err(fail)?;
        *slot = u64::try_from(size).map_err(|_| fail(Error::unrepresentable("T(n) as a 64-bit size", size)))?;
        Ok(BimorphStatus::Ok)
    })
}

/// Monad laws on all sets of size `<= max_size`. A `budget_limit` of 0
/// means the default. Returns `CheckFailed` when a law fails.
///
/// # Safety
/// `monad` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bimorph_monad_check_laws(monad: *const BimorphMonad, max_size: u64, budget_limit: u64) -> BimorphStatus {
    guard(|| {
        let m = handle(monad)?;
        let report = check_monad_laws(&m.0, &test_sets(max_size as u128), budget(budget_limit));
        match report.first_failure() {
            None => Ok(BimorphStatus::Ok),
            Some(c) => {
                set_error(c.to_string());
                Ok(BimorphStatus::CheckFailed)
            }
        }
    })
}

/// Whether the two double strengths agree on sets of size `<= max_size`.
///
/// # Safety
/// `monad` must be a live handle; `out_commutative` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bimorph_monad_is_commutative(
    monad: *const BimorphMonad,
    max_size: u64,
    budget_limit: u64,
    out_commutative: *mut bool,
) -> BimorphStatus {
    guard(|| {
        let m = handle(monad)?;
        let slot = out(out_commutative)?;
        let c = is_commutative(&canonical_strength(&m.0), &test_sets(max_size as u128), budget(budget_limit));
        *slot = c.commutative;
        Ok(BimorphStatus::Ok)
    })
}

/// The free algebra on a set of size `base`.
///
/// # Safety
/// `monad` must be a live handle; `out_algebra` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bimorph_algebra_free_on(monad: *const BimorphMonad, base: u64, out_algebra: *mut *mut BimorphAlgebra) -> BimorphStatus {
    guard(|| {
        let m = handle(monad)?;
        let slot = out(out_algebra)?;
        let a = Algebra::free_on(&m.0, &FinSet::new(base as u128)).map_err(fail)?;
        *slot = Box::into_raw(Box::new(BimorphAlgebra(a)));
        Ok(BimorphStatus::Ok)
    })
}

/// An algebra on `{0, .., carrier-1}` with structure map given by `table`,
/// one entry per element of `T(carrier)`. The axioms are checked.
///
/// # Safety
/// `table` must point to `len` readable values; `out_algebra` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn bimorph_algebra_new(
    monad: *const BimorphMonad,
    carrier: u64,
    table: *const u64,
    len: usize,
    budget_limit: u64,
    out_algebra: *mut *mut BimorphAlgebra,
) -> BimorphStatus {
    guard(|| {
        let m = handle(monad)?;
        let slot = out(out_algebra)?;
        if table.is_null() && len > 0 {
            set_error("null table");
            return Err(BimorphStatus::NullPointer);
        }
        let entries: Vec<u128> = if len == 0 {
            vec![]
        } else {
            std::slice::from_raw_parts(table, len).iter().map(|&x| x as u128).collect()
        };
        let c = FinSet::new(carrier as u128);
        let tc = m.0.obj(&c).map_err(fail)?;
        let alpha = FinMap::new(tc, c.clone(), entries).map_err(fail)?;
        let a = Algebra::new(&m.0, &c, alpha, budget(budget_limit)).map_err(fail)?;
        *slot = Box::into_raw(Box::new(BimorphAlgebra(a)));
        Ok(BimorphStatus::Ok)
    })
}

/// # Safety
/// `algebra` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bimorph_algebra_free(algebra: *mut BimorphAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Size of the carrier, or 0 on a null handle.
///
/// # Safety
/// `algebra` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bimorph_algebra_size(algebra: *const BimorphAlgebra) -> u64 {
    algebra.as_ref().map_or(0, |a| a.0.size() as u64)
}

/// Number of algebra morphisms `from -> to`.
///
/// # Safety
/// Both handles must be live; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bimorph_count_morphisms(
    from: *const BimorphAlgebra,
    to: *const BimorphAlgebra,
    budget_limit: u64,
    out_count: *mut u64,
) -> BimorphStatus {
    guard(|| {
        let (a, b) = (handle(from)?, handle(to)?);
        let slot = out(out_count)?;
        *slot = count_algebra_morphisms(&a.0, &b.0, budget(budget_limit)).map_err(fail)? as u64;
        Ok(BimorphStatus::Ok)
    })
}

/// The tensor product of two algebras over a commutative monad, returned
/// as a new algebra handle.
///
/// # Safety
/// Both handles must be live; `out_algebra` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bimorph_tensor(
    left: *const BimorphAlgebra,
    right: *const BimorphAlgebra,
    budget_limit: u64,
    out_algebra: *mut *mut BimorphAlgebra,
) -> BimorphStatus {
    guard(|| {
        let (a, b) = (handle(left)?, handle(right)?);
        let slot = out(out_algebra)?;
        let co = tensor(&a.0, &b.0, budget(budget_limit)).map_err(fail)?;
        *slot = Box::into_raw(Box::new(BimorphAlgebra(co.result().clone())));
        Ok(BimorphStatus::Ok)
    })
}

/// Runs a command-line invocation (without the program name) and hands
/// back its JSON report. The status is the command's exit code.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out_json` must be
/// writable. `*out_json` is set to null when no report was produced.
#[no_mangle]
pub unsafe extern "C" fn bimorph_run(argv: *const *const c_char, argc: usize, out_json: *mut *mut c_char) -> BimorphStatus {
    guard(|| {
        let slot = out(out_json)?;
        *slot = ptr::null_mut();
        if argv.is_null() && argc > 0 {
            set_error("null argv");
            return Err(BimorphStatus::NullPointer);
        }
        let mut args = vec!["bimorph".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i))?.to_string());
        }
        args.extend(["--json".to_string(), "-".to_string()]);
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        let code = bimorph::cli::run(args, &mut stdout, &mut stderr);
        if !stderr.is_empty() {
            set_error(String::from_utf8_lossy(&stderr).trim_end().to_string());
        }
        if code <= 1 {
            *slot = owned_string(String::from_utf8_lossy(&stdout).into_owned());
        }
        Ok(match code {
            0 => BimorphStatus::Ok,
            1 => BimorphStatus::CheckFailed,
            3 => BimorphStatus::Budget,
            _ => BimorphStatus::Invalid,
        })
    })
}
