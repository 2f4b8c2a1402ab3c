//! C ABI over `qcoh`.
//!
//! States and bases are opaque handles returned through out-pointers by the
//! `qcoh_state_*` and `qcoh_basis_*` constructors and released with the
//! matching `_free`. Every fallible call returns a
//! [`QcohStatus`]; on failure the message is available from
//! [`qcoh_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qcoh::coherence::{bi_coherence, rel_ent_coherence, theorem1_split};
use qcoh::correlations::{bd_report, bell_diagonal, BellDiagonalParams};
use qcoh::duality::duality_budget;
use qcoh::entropy::von_neumann;
use qcoh::io::{parse_basis, parse_state};
use qcoh::qstate::bloch_to_qubit;
use qcoh::{Basis, BlochVector, DensityMatrix, QcohError};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcohStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Malformed = 3,
    DimensionMismatch = 4,
    Io = 5,
    Panic = 6,
}

/// Opaque density matrix.
pub struct QcohState {
    inner: DensityMatrix,
}

/// Opaque orthonormal basis.
pub struct QcohBasis {
    inner: Basis,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QcohSplit {
    pub total: f64,
    pub basis_part: f64,
    pub residual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QcohBudget {
    pub wave: f64,
    pub particle: f64,
    pub entanglement: f64,
    pub total: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QcohBellReport {
    pub bi_coherence: f64,
    pub comp_coherence: f64,
    pub discord: f64,
    pub entanglement: f64,
    /// 1 when the ordering holds, 0 otherwise.
    pub hierarchy_ok: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &QcohError) -> QcohStatus {
    match e.exit_code() {
        3 => QcohStatus::DimensionMismatch,
        4 => QcohStatus::Io,
        _ => QcohStatus::Malformed,
    }
}

enum Fail {
    Status(QcohStatus, String),
    Core(QcohError),
}

impl From<QcohError> for Fail {
    fn from(e: QcohError) -> Self {
        Fail::Core(e)
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(QcohStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QcohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcohStatus::Ok,
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            QcohStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(QcohStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn state_ref<'a>(p: *const QcohState) -> Result<&'a DensityMatrix, Fail> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null("state"))
}

unsafe fn basis_ref<'a>(p: *const QcohBasis) -> Result<&'a Basis, Fail> {
    p.as_ref().map(|b| &b.inner).ok_or_else(|| null("basis"))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

unsafe fn give_state(out: *mut *mut QcohState, rho: DensityMatrix) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(QcohState { inner: rho })))
}

unsafe fn give_basis(out: *mut *mut QcohBasis, b: Basis) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(QcohBasis { inner: b })))
}

/// Message for the most recent failure on this thread, or null.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn qcoh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Parse a state from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qcoh_state_from_json(json: *const c_char, out: *mut *mut QcohState) -> QcohStatus {
    guard(|| {
        let s = str_arg(json, "json")?;
        give_state(out, parse_state(s)?)
    })
}

/// Qubit state with Bloch vector `(x, y, z)`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qcoh_state_from_bloch(x: f64, y: f64, z: f64, out: *mut *mut QcohState) -> QcohStatus {
    guard(|| give_state(out, bloch_to_qubit(BlochVector::new(x, y, z)?)?))
}

/// Bell-diagonal two-qubit state with correlations `(c1, c2, c3)`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qcoh_state_bell_diagonal(c1: f64, c2: f64, c3: f64, out: *mut *mut QcohState) -> QcohStatus {
    guard(|| give_state(out, bell_diagonal(&BellDiagonalParams::new(c1, c2, c3)?)))
}

/// Dimension of a state, or 0 for null.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcoh_state_dim(state: *const QcohState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.dim())
}

/// # Safety
/// `state` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcoh_state_free(state: *mut QcohState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qcoh_basis_computational(dim: usize, out: *mut *mut QcohBasis) -> QcohStatus {
    guard(|| {
        if dim == 0 {
            return Err(QcohError::Empty.into());
        }
        give_basis(out, Basis::computational(dim))
    })
}

/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qcoh_basis_fourier(dim: usize, out: *mut *mut QcohBasis) -> QcohStatus {
    guard(|| {
        if dim == 0 {
            return Err(QcohError::Empty.into());
        }
        give_basis(out, Basis::fourier(dim))
    })
}

/// Parse a basis (columns are the vectors) from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn qcoh_basis_from_json(json: *const c_char, out: *mut *mut QcohBasis) -> QcohStatus {
    guard(|| {
        let s = str_arg(json, "json")?;
        give_basis(out, parse_basis(s)?)
    })
}

/// # Safety
/// `basis` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcoh_basis_free(basis: *mut QcohBasis) {
    if !basis.is_null() {
        drop(Box::from_raw(basis));
    }
}

/// Von Neumann entropy in bits.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_von_neumann(state: *const QcohState, out: *mut f64) -> QcohStatus {
    guard(|| write_out(out, von_neumann(state_ref(state)?)))
}

/// Basis-independent coherence `log2 d - S`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_bi_coherence(state: *const QcohState, out: *mut f64) -> QcohStatus {
    guard(|| write_out(out, bi_coherence(state_ref(state)?)))
}

/// Relative entropy of coherence in `basis`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_rel_ent_coherence(
    state: *const QcohState,
    basis: *const QcohBasis,
    out: *mut f64,
) -> QcohStatus {
    guard(|| write_out(out, rel_ent_coherence(state_ref(state)?, basis_ref(basis)?)?))
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_theorem1_split(
    state: *const QcohState,
    basis: *const QcohBasis,
    out: *mut QcohSplit,
) -> QcohStatus {
    guard(|| {
        let s = theorem1_split(state_ref(state)?, basis_ref(basis)?)?;
        write_out(out, QcohSplit { total: s.total, basis_part: s.basis_part, residual: s.residual })
    })
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_duality_budget(
    state: *const QcohState,
    basis: *const QcohBasis,
    out: *mut QcohBudget,
) -> QcohStatus {
    guard(|| {
        let b = duality_budget(state_ref(state)?, basis_ref(basis)?)?;
        write_out(out, QcohBudget { wave: b.wave, particle: b.particle, entanglement: b.entanglement, total: b.total })
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcoh_bell_diagonal_report(c1: f64, c2: f64, c3: f64, out: *mut QcohBellReport) -> QcohStatus {
    guard(|| {
        let r = bd_report(&BellDiagonalParams::new(c1, c2, c3)?);
        write_out(
            out,
            QcohBellReport {
                bi_coherence: r.bi_coherence,
                comp_coherence: r.comp_coherence,
                discord: r.discord,
                entanglement: r.entanglement,
                hierarchy_ok: r.hierarchy_ok as i32,
            },
        )
    })
}
