//! C ABI over the advreal library.
//!
//! Matrices cross the boundary as opaque handles; results come back as
//! newline-separated rationals in heap strings owned by the caller, to be
//! released with `advr_string_free`. Every call returns an [`AdvrStatus`];
//! on failure `advr_last_error` describes the cause until the next call on
//! the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use advreal::exact::RatMatrix;
use advreal::linalg::{diag_with_count, eigenvalues_with_multiplicity, evec_with_logmult, rank_with_upper};
use advreal::search::BoundStream;
use advreal::{io, Error, Fuel, MatrixName, Outcome, RealName};

/// Status codes; the numeric values match the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdvrStatus {
    Ok = 0,
    InputError = 2,
    FuelExhausted = 3,
    AdviceSuspect = 4,
    NullPointer = 5,
}

impl From<Outcome> for AdvrStatus {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Ok => AdvrStatus::Ok,
            Outcome::InputError => AdvrStatus::InputError,
            Outcome::FuelExhausted => AdvrStatus::FuelExhausted,
            Outcome::AdviceSuspect => AdvrStatus::AdviceSuspect,
        }
    }
}

/// Opaque exact rational matrix.
pub struct AdvrMatrix {
    inner: RatMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(e: &Error) -> AdvrStatus {
    set_error(e.to_string());
    e.outcome().into()
}

fn null(what: &str) -> AdvrStatus {
    set_error(format!("null pointer passed as {what}"));
    AdvrStatus::NullPointer
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Option<Result<&'a str, AdvrStatus>> {
    if p.is_null() {
        return None;
    }
    Some(CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        AdvrStatus::InputError
    }))
}

/// # Safety
/// `out` is null or valid for one pointer write.
unsafe fn write_string(out: *mut *mut c_char, text: String) -> AdvrStatus {
    if out.is_null() {
        return null("out");
    }
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            AdvrStatus::Ok
        }
        Err(_) => {
            set_error("result contains a nul byte");
            AdvrStatus::InputError
        }
    }
}

fn fuel(steps: u64) -> Fuel {
    Fuel::new(Fuel::default().max_precision(), steps)
}

fn lines(rows: &[Vec<advreal::Rational>]) -> String {
    rows.iter().map(|r| io::format_row(r) + "\n").collect()
}

/// Parse a matrix in the `rows cols` text format into a new handle.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn advr_matrix_parse(text: *const c_char, out: *mut *mut AdvrMatrix) -> AdvrStatus {
    clear_error();
    if out.is_null() {
        return null("out");
    }
    let text = match read_str(text) {
        None => return null("text"),
        Some(Err(s)) => return s,
        Some(Ok(t)) => t,
    };
    match io::parse_matrix(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(AdvrMatrix { inner }));
            AdvrStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `m` is null or a handle from `advr_matrix_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn advr_matrix_free(m: *mut AdvrMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Row count; 0 for a null handle.
///
/// # Safety
/// `m` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn advr_matrix_rows(m: *const AdvrMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rows())
}

/// Column count; 0 for a null handle.
///
/// # Safety
/// `m` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn advr_matrix_cols(m: *const AdvrMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.cols())
}

/// Rank given the advice that it is at most `upper`.
///
/// # Safety
/// `m` is a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn advr_rank(m: *const AdvrMatrix, upper: usize, fuel_steps: u64, out: *mut usize) -> AdvrStatus {
    clear_error();
    let Some(m) = m.as_ref() else { return null("matrix") };
    if out.is_null() {
        return null("out");
    }
    let a = MatrixName::exact(m.inner.clone());
    match rank_with_upper(&a, &BoundStream::constant(upper as i64), &fuel(fuel_steps)) {
        Ok(r) => {
            *out = r;
            AdvrStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

fn symmetric(m: &AdvrMatrix) -> Result<MatrixName, AdvrStatus> {
    if !m.inner.is_square() || !m.inner.is_symmetric() {
        set_error("matrix must be square and symmetric");
        return Err(AdvrStatus::InputError);
    }
    Ok(MatrixName::exact(m.inner.clone()))
}

/// Sorted eigenvalues with multiplicity within `2^-precision`, one per line.
///
/// # Safety
/// `m` is a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn advr_eigenvalues(m: *const AdvrMatrix, precision: u32, out: *mut *mut c_char) -> AdvrStatus {
    clear_error();
    let Some(m) = m.as_ref() else { return null("matrix") };
    let a = match symmetric(m) {
        Ok(a) => a,
        Err(s) => return s,
    };
    match eigenvalues_with_multiplicity(&a, precision) {
        Ok(vs) => write_string(out, io::format_tuple(&vs)),
        Err(e) => fail(&e),
    }
}

/// Diagonalization given the number of distinct eigenvalues: `d` lines of
/// eigenvalues, then `d` lines of eigenvector entries.
///
/// # Safety
/// `m` is a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn advr_diag(
    m: *const AdvrMatrix,
    count: usize,
    precision: u32,
    fuel_steps: u64,
    out: *mut *mut c_char,
) -> AdvrStatus {
    clear_error();
    let Some(m) = m.as_ref() else { return null("matrix") };
    let a = match symmetric(m) {
        Ok(a) => a,
        Err(s) => return s,
    };
    match diag_with_count(&a, count, precision, &fuel(fuel_steps)) {
        Ok(dg) => write_string(out, io::format_tuple(&dg.approx_values) + &lines(&dg.approx_vectors)),
        Err(e) => fail(&e),
    }
}

/// One eigenvector given `floor(log2)` of the least eigenspace dimension:
/// the eigenvalue line, then the vector line.
///
/// # Safety
/// `m` is a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn advr_evec(
    m: *const AdvrMatrix,
    logmult: u32,
    precision: u32,
    fuel_steps: u64,
    out: *mut *mut c_char,
) -> AdvrStatus {
    clear_error();
    let Some(m) = m.as_ref() else { return null("matrix") };
    let a = match symmetric(m) {
        Ok(a) => a,
        Err(s) => return s,
    };
    match evec_with_logmult(&a, logmult, precision, &fuel(fuel_steps)) {
        Ok(ev) => write_string(out, io::format_tuple(&[ev.eigenvalue.query(precision)]) + &lines(&[ev.value])),
        Err(e) => fail(&e),
    }
}

/// Floor of the rational `x` given the parity of that floor (`odd` non-zero
/// for odd); written as a decimal integer.
///
/// # Safety
/// `x` is a nul-terminated string; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn advr_floor_parity(x: *const c_char, odd: c_int, out: *mut *mut c_char) -> AdvrStatus {
    clear_error();
    let text = match read_str(x) {
        None => return null("x"),
        Some(Err(s)) => return s,
        Some(Ok(t)) => t,
    };
    let x = match advreal::rational::parse_rational(text.trim()) {
        Ok(q) => RealName::exact(q),
        Err(e) => return fail(&e),
    };
    let parity = if odd != 0 { advreal::advice::Parity::Odd } else { advreal::advice::Parity::Even };
    write_string(out, advreal::basics::floor_with_parity(&x, parity).to_string())
}

/// Run the command line with `argv` (without the program name); standard
/// input reads as empty, so pass `--input`. The stdout payload goes to
/// `out`, also on failure, and the stderr text to the last-error slot.
///
/// # Safety
/// `argv` holds `argc` nul-terminated strings; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn advr_run(argc: c_int, argv: *const *const c_char, out: *mut *mut c_char) -> AdvrStatus {
    clear_error();
    if argc < 0 || (argc > 0 && argv.is_null()) {
        return null("argv");
    }
    let mut args = vec!["advreal".to_string()];
    for i in 0..argc as usize {
        match read_str(*argv.add(i)) {
            None => return null("argv entry"),
            Some(Err(s)) => return s,
            Some(Ok(t)) => args.push(t.to_string()),
        }
    }
    let report = advreal::cli::run_with_stdin(args, &mut || Ok(String::new()));
    set_error(report.diagnostics());
    let status = write_string(out, report.stdout.clone());
    if status != AdvrStatus::Ok {
        return status;
    }
    report.outcome.into()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn advr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn advr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
