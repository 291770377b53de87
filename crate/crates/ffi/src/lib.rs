//! C ABI over `permlab`.
//!
//! Every fallible function returns a [`PmStatus`] and writes its result
//! through an out-pointer. Objects cross the boundary as opaque handles that
//! the caller releases with the matching `*_free`. Strings returned to the
//! caller are NUL-terminated and released with [`pm_string_free`]. After a
//! non-`PM_STATUS_OK` status, [`pm_last_error`] describes the failure on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use permlab::constructions::{cantor_bernstein, union_mov};
use permlab::lattice::{extend_to_level, level_json, to_dot, LatticeError, LatticeModel, Tower};
use permlab::perm::Perm;
use permlab::suites;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    /// The operation ran but a property check failed.
    VerificationFailed = 4,
    /// Output buffer too small; the required length has been written.
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmFormat {
    Json = 0,
    Dot = 1,
}

/// Permutation of `{0, …, len - 1}`.
pub struct PmPerm(Perm);

/// Lattice levels `A_0 ⊆ … ⊆ A_top` with their verified orders.
pub struct PmLattice(LatticeModel);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(PmStatus, String);

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure(PmStatus::InvalidArgument, msg.into())
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        let status = match e {
            LatticeError::LevelCap { .. } | LatticeError::Cap { .. } => PmStatus::CapExceeded,
            LatticeError::Verification(_) => PmStatus::VerificationFailed,
            _ => PmStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn record(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, converting errors and panics into status codes.
fn call(f: impl FnOnce() -> Result<(), Failure>) -> PmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            record("");
            PmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            record(&msg);
            status
        }
        Err(_) => {
            record("internal panic");
            PmStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(PmStatus::NullPointer, format!("{what} is null")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure(PmStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PmStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(PmStatus::Internal, "interior NUL in output".into()))
}

/// Message for the last failing call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a permutation from its image vector.
///
/// # Safety
/// `images` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_perm_new(
    images: *const usize,
    len: usize,
    out: *mut *mut PmPerm,
) -> PmStatus {
    call(|| {
        let images = slice(images, len, "images")?.to_vec();
        let p = Perm::from_images(images).map_err(|e| Failure::invalid(e.to_string()))?;
        write(out, Box::into_raw(Box::new(PmPerm(p))), "out")
    })
}

/// # Safety
/// `p` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pm_perm_free(p: *mut PmPerm) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of the permutation; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_perm_len(p: *const PmPerm) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_perm_apply(p: *const PmPerm, x: usize, out: *mut usize) -> PmStatus {
    call(|| {
        let p = &deref(p, "perm")?.0;
        if x >= p.len() {
            return Err(Failure::invalid(format!(
                "point {x} outside 0..{}",
                p.len()
            )));
        }
        write(out, p.apply(x), "out")
    })
}

/// Copies the image vector into `buf`. If `cap` is too small, writes the
/// required length to `len_out` and returns `PM_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `buf` must have room for `cap` values; `len_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_perm_images(
    p: *const PmPerm,
    buf: *mut usize,
    cap: usize,
    len_out: *mut usize,
) -> PmStatus {
    call(|| {
        let p = &deref(p, "perm")?.0;
        write(len_out, p.len(), "len_out")?;
        if cap < p.len() {
            return Err(Failure(
                PmStatus::BufferTooSmall,
                format!("need {} slots", p.len()),
            ));
        }
        if !p.is_empty() && buf.is_null() {
            return Err(Failure(PmStatus::NullPointer, "buf is null".into()));
        }
        for (i, x) in p.images().iter().enumerate() {
            buf.add(i).write(*x);
        }
        Ok(())
    })
}

/// `a ∘ b`, so that `x ↦ a(b(x))`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_perm_compose(
    a: *const PmPerm,
    b: *const PmPerm,
    out: *mut *mut PmPerm,
) -> PmStatus {
    call(|| {
        let (a, b) = (&deref(a, "a")?.0, &deref(b, "b")?.0);
        let c = a.compose(b).map_err(|e| Failure::invalid(e.to_string()))?;
        write(out, Box::into_raw(Box::new(PmPerm(c))), "out")
    })
}

/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_perm_inverse(p: *const PmPerm, out: *mut *mut PmPerm) -> PmStatus {
    call(|| {
        let inv = deref(p, "perm")?.0.inverse();
        write(out, Box::into_raw(Box::new(PmPerm(inv))), "out")
    })
}

/// Permutation moving exactly the points moved by `f` or by `g`.
///
/// # Safety
/// `f`, `g` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_union_mov(
    f: *const PmPerm,
    g: *const PmPerm,
    out: *mut *mut PmPerm,
) -> PmStatus {
    call(|| {
        let h = union_mov(&deref(f, "f")?.0, &deref(g, "g")?.0)
            .map_err(|e| Failure::invalid(e.to_string()))?;
        write(out, Box::into_raw(Box::new(PmPerm(h))), "out")
    })
}

/// Bijection `x → y` from injections `f: x → y` and `g: y → x`, written to
/// `out[0..nx]`.
///
/// # Safety
/// `f` holds `nx` values, `g` holds `ny` values, `out` has room for `nx`.
#[no_mangle]
pub unsafe extern "C" fn pm_cantor_bernstein(
    f: *const usize,
    nx: usize,
    g: *const usize,
    ny: usize,
    out: *mut usize,
) -> PmStatus {
    call(|| {
        let f = slice(f, nx, "f")?;
        let g = slice(g, ny, "g")?;
        let h = cantor_bernstein(f, g).map_err(|e| Failure::invalid(e.to_string()))?;
        if nx > 0 && out.is_null() {
            return Err(Failure(PmStatus::NullPointer, "out is null".into()));
        }
        for (i, y) in h.into_iter().enumerate() {
            out.add(i).write(y);
        }
        Ok(())
    })
}

/// Builds levels `A_0 … A_top` (at most the library cap).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_lattice_new(top: usize, out: *mut *mut PmLattice) -> PmStatus {
    call(|| {
        let model = LatticeModel::new(top)?;
        write(out, Box::into_raw(Box::new(PmLattice(model))), "out")
    })
}

/// # Safety
/// `l` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_lattice_free(l: *mut PmLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// `|A_n|`.
///
/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_lattice_size(
    l: *const PmLattice,
    n: usize,
    out: *mut usize,
) -> PmStatus {
    call(|| {
        let model = &deref(l, "lattice")?.0;
        if n > model.top() {
            return Err(LatticeError::LevelCap {
                n,
                cap: model.top(),
            }
            .into());
        }
        write(out, model.tower().size(n), "out")
    })
}

/// Whether `a ≤ b` in `A_n`.
///
/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_lattice_leq(
    l: *const PmLattice,
    n: usize,
    a: usize,
    b: usize,
    out: *mut bool,
) -> PmStatus {
    call(|| {
        let level = deref(l, "lattice")?.0.level(n)?;
        if a >= level.len() || b >= level.len() {
            return Err(LatticeError::OutOfRange {
                elem: a.max(b),
                len: level.len(),
            }
            .into());
        }
        write(out, level.poset.leq(a, b), "out")
    })
}

/// Runs every building-block check on `A_n`. On success `out_pass` holds
/// the verdict; `report_json`, if not null, receives the report.
///
/// # Safety
/// `l` must be a live handle; `out_pass` writable; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pm_lattice_verify(
    l: *const PmLattice,
    n: usize,
    out_pass: *mut bool,
    report_json: *mut *mut c_char,
) -> PmStatus {
    call(|| {
        let model = &deref(l, "lattice")?.0;
        if n > model.top() {
            return Err(LatticeError::LevelCap {
                n,
                cap: model.top(),
            }
            .into());
        }
        let report = suites::level_check(model, n).normalized(false);
        write(out_pass, report.pass, "out_pass")?;
        if !report_json.is_null() {
            let s = serde_json::to_string(&report)
                .map_err(|e| Failure(PmStatus::Internal, e.to_string()))?;
            report_json.write(c_string(s)?);
        }
        Ok(())
    })
}

/// `A_n` as JSON or a DOT Hasse diagram.
///
/// # Safety
/// `l` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_lattice_export(
    l: *const PmLattice,
    n: usize,
    format: PmFormat,
    out: *mut *mut c_char,
) -> PmStatus {
    call(|| {
        let model = &deref(l, "lattice")?.0;
        let level = model.level(n)?;
        let tower: &Tower = model.tower();
        let s = match format {
            PmFormat::Json => level_json(tower, level).to_string(),
            PmFormat::Dot => to_dot(tower, level),
        };
        write(out, c_string(s)?, "out")
    })
}

/// Extends an automorphism `g` of `A_m` to `A_n` (`n - m` even).
///
/// # Safety
/// `l`, `g` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pm_lattice_extend(
    l: *const PmLattice,
    m: usize,
    g: *const PmPerm,
    n: usize,
    out: *mut *mut PmPerm,
) -> PmStatus {
    call(|| {
        let h = extend_to_level(&deref(l, "lattice")?.0, m, &deref(g, "g")?.0, n)?;
        write(out, Box::into_raw(Box::new(PmPerm(h))), "out")
    })
}

/// Runs the construction suite; `only` may be null. The verdict goes to
/// `out_pass` and the JSON report, if requested, to `report_json`.
///
/// # Safety
/// `only` must be null or a NUL-terminated string; `out_pass` writable;
/// `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pm_constructions_test(
    size: usize,
    only: *const c_char,
    seed: u64,
    out_pass: *mut bool,
    report_json: *mut *mut c_char,
) -> PmStatus {
    call(|| {
        let only = if only.is_null() {
            None
        } else {
            Some(
                CStr::from_ptr(only)
                    .to_str()
                    .map_err(|_| Failure::invalid("only is not UTF-8"))?,
            )
        };
        if size > suites::SIZE_CAP {
            return Err(Failure(
                PmStatus::CapExceeded,
                format!("size {size} exceeds cap {}", suites::SIZE_CAP),
            ));
        }
        let checks = suites::construction_checks(size, only, seed).map_err(Failure::invalid)?;
        let report = permlab::report::Report::composite("constructions", checks).normalized(false);
        write(out_pass, report.pass, "out_pass")?;
        if !report_json.is_null() {
            let s = serde_json::to_string(&report)
                .map_err(|e| Failure(PmStatus::Internal, e.to_string()))?;
            report_json.write(c_string(s)?);
        }
        Ok(())
    })
}
