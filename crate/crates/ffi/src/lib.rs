//! C ABI over the k4hol engine.
//!
//! Every function returns a [`K4holStatus`]; results come back through out
//! pointers. Handles are opaque and owned by the caller once returned, to be
//! released with the matching `_free`. Strings handed out by the library
//! must be released with [`k4hol_string_free`]. After a non-`Ok` status,
//! [`k4hol_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use k4hol::chevalley::{self, StructureConstants};
use k4hol::labeledgroups;
use k4hol::rootsys::{CartanType, RootSystem};
use k4hol::weylorbit;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K4holStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8 or named nothing known.
    InvalidArgument = 2,
    /// The computation itself failed or a check did not hold.
    MathError = 3,
    /// An internal panic was caught at the boundary.
    Panic = 4,
}

/// A root system.
pub struct K4holRootSystem {
    inner: RootSystem,
}

/// A split Lie algebra given by Chevalley structure constants.
pub struct K4holAlgebra {
    inner: StructureConstants,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Fail(K4holStatus, String);

impl Fail {
    fn math(e: impl Into<k4hol::Error>) -> Self {
        Fail(K4holStatus::MathError, e.into().to_string())
    }
    fn null(what: &str) -> Self {
        Fail(K4holStatus::NullArgument, format!("{what} is null"))
    }
}

/// Runs `f`, records any failure and converts it into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> K4holStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            K4holStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            K4holStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(K4holStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail::null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::null(what))
}

fn json_out(out: &mut *mut c_char, value: &impl serde::Serialize) -> Result<(), Fail> {
    let text = serde_json::to_string(value).map_err(|e| Fail(K4holStatus::MathError, e.to_string()))?;
    // serde_json never emits interior NUL bytes
    *out = CString::new(text).expect("JSON has no NUL").into_raw();
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn k4hol_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn k4hol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn k4hol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the root system named by `name`, such as `"E7"` or `"a3"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_root_system_new(name: *const c_char, out: *mut *mut K4holRootSystem) -> K4holStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let name = str_arg(name, "name")?;
        let ctype: CartanType = name
            .parse()
            .map_err(|e: k4hol::rootsys::RootSystemError| Fail(K4holStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(K4holRootSystem {
            inner: RootSystem::new(ctype),
        }));
        Ok(())
    })
}

/// Releases a root system. Null is ignored.
///
/// # Safety
/// `rs` must come from [`k4hol_root_system_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn k4hol_root_system_free(rs: *mut K4holRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Rank and number of roots.
///
/// # Safety
/// `rs` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k4hol_root_system_size(
    rs: *const K4holRootSystem,
    rank: *mut usize,
    root_count: *mut usize,
) -> K4holStatus {
    guard(|| {
        let rs = &handle(rs, "rs")?.inner;
        *out_arg(rank, "rank")? = rs.rank();
        *out_arg(root_count, "root_count")? = rs.len();
        Ok(())
    })
}

/// Copies the Cartan matrix, row-major, into `buf` of `len` entries.
/// `len` must be at least rank squared.
///
/// # Safety
/// `rs` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn k4hol_root_system_cartan(
    rs: *const K4holRootSystem,
    buf: *mut i32,
    len: usize,
) -> K4holStatus {
    guard(|| {
        let rs = &handle(rs, "rs")?.inner;
        if buf.is_null() {
            return Err(Fail::null("buf"));
        }
        let n = rs.rank();
        if len < n * n {
            return Err(Fail(
                K4holStatus::InvalidArgument,
                format!("buffer holds {len} entries, need {}", n * n),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(buf, n * n);
        for (k, v) in rs.cartan_matrix().iter().flatten().enumerate() {
            dst[k] = *v;
        }
        Ok(())
    })
}

/// Weyl orbits of involutions of `rs` as a JSON string.
///
/// # Safety
/// `rs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_classify_involutions_json(
    rs: *const K4holRootSystem,
    out: *mut *mut c_char,
) -> K4holStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let rs = &handle(rs, "rs")?.inner;
        let table = weylorbit::enumerate_involution_classes(rs).map_err(Fail::math)?;
        json_out(out, &table)
    })
}

/// Chevalley basis structure constants for a simply laced root system.
///
/// # Safety
/// `rs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_algebra_new(rs: *const K4holRootSystem, out: *mut *mut K4holAlgebra) -> K4holStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let rs = &handle(rs, "rs")?.inner;
        let sc = chevalley::build_chevalley(rs.ctype()).map_err(Fail::math)?;
        *out = Box::into_raw(Box::new(K4holAlgebra { inner: sc }));
        Ok(())
    })
}

/// Releases an algebra. Null is ignored.
///
/// # Safety
/// `alg` must come from [`k4hol_algebra_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn k4hol_algebra_free(alg: *mut K4holAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra.
///
/// # Safety
/// `alg` must be a live handle and `dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_algebra_dim(alg: *const K4holAlgebra, dim: *mut usize) -> K4holStatus {
    guard(|| {
        *out_arg(dim, "dim")? = handle(alg, "alg")?.inner.dim();
        Ok(())
    })
}

/// `N(a, b)` for root indices `a` and `b`: `[X_a, X_b] = N(a, b) X_{a+b}`,
/// zero when `a + b` is not a root.
///
/// # Safety
/// `alg` must be a live handle and `n` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_algebra_structure_constant(
    alg: *const K4holAlgebra,
    a: usize,
    b: usize,
    n: *mut i64,
) -> K4holStatus {
    guard(|| {
        let sc = &handle(alg, "alg")?.inner;
        let n = out_arg(n, "n")?;
        let roots = sc.root_system().len();
        if a >= roots || b >= roots {
            return Err(Fail(
                K4holStatus::InvalidArgument,
                format!("root index out of range 0..{roots}"),
            ));
        }
        *n = sc.n(a, b);
        Ok(())
    })
}

/// Runs the E6 verification (Jacobi, compact form, four fixed subalgebras)
/// and writes the report as JSON. Returns `MathError` with the report still
/// written when some map does not match its expected fixed type.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_chevalley_verify_json(out: *mut *mut c_char) -> K4holStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let report = chevalley::verify_e6().map_err(Fail::math)?;
        json_out(out, &report)?;
        if !report.all_match() {
            return Err(Fail(
                K4holStatus::MathError,
                "fixed subalgebras differ from expectations".into(),
            ));
        }
        Ok(())
    })
}

/// Admissible pairs over the whole catalog of labeled groups as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_admissible_pairs_json(out: *mut *mut c_char) -> K4holStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let pairs = labeledgroups::all_admissible_pairs().map_err(Fail::math)?;
        json_out(out, &pairs)
    })
}

/// Admissible pairs of one catalog group, such as `"x1-x4"`, as JSON.
///
/// # Safety
/// `group` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn k4hol_group_pairs_json(group: *const c_char, out: *mut *mut c_char) -> K4holStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let name = str_arg(group, "group")?;
        let g = labeledgroups::catalog_group(name).map_err(|e| Fail(K4holStatus::InvalidArgument, e.to_string()))?;
        let pairs = labeledgroups::admissible_pairs(g).map_err(Fail::math)?;
        json_out(out, &pairs)
    })
}
