//! C ABI for `tamequot`.
//!
//! Every fallible call returns a [`TqStatus`]; results travel through out
//! pointers. Presentations and models are opaque handles released with their
//! `_free` function. Strings returned by the library are released with
//! [`tq_string_free`]. The message of the most recent failure on the calling
//! thread is available from [`tq_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tamequot::action::WeightSystem;
use tamequot::count::{brute_force_model_counts, count_points_stratified};
use tamequot::fiber::StratifiedModel;
use tamequot::invariant::{quotient_presentation, ToricPresentation};
use tamequot::motivic::{check_serre_theorem, check_volume_congruence};
use tamequot::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TqStatus {
    Ok = 0,
    NotPrime = 1,
    NoSuchRoot = 2,
    TameViolation = 3,
    DomainMismatch = 4,
    InvalidEndomorphism = 5,
    NotFiniteOrder = 6,
    NotDiagonalizable = 7,
    PinnedInconsistent = 8,
    LengthMismatch = 9,
    NotGaloisWeights = 10,
    InvalidWeights = 11,
    ComponentMismatch = 12,
    ArityMismatch = 13,
    NotARingMap = 14,
    NotQGroup = 15,
    TooLarge = 16,
    InvalidInput = 17,
    NullPointer = 100,
    InvalidUtf8 = 101,
    OutOfRange = 102,
    BufferTooSmall = 103,
    Panic = 199,
}

impl From<&Error> for TqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotPrime { .. } => TqStatus::NotPrime,
            Error::NoSuchRoot { .. } => TqStatus::NoSuchRoot,
            Error::TameViolation { .. } => TqStatus::TameViolation,
            Error::DomainMismatch => TqStatus::DomainMismatch,
            Error::InvalidEndomorphism(_) => TqStatus::InvalidEndomorphism,
            Error::NotFiniteOrder { .. } => TqStatus::NotFiniteOrder,
            Error::NotDiagonalizable { .. } => TqStatus::NotDiagonalizable,
            Error::PinnedInconsistent(_) => TqStatus::PinnedInconsistent,
            Error::LengthMismatch { .. } => TqStatus::LengthMismatch,
            Error::NotGaloisWeights { .. } => TqStatus::NotGaloisWeights,
            Error::InvalidWeights(_) => TqStatus::InvalidWeights,
            Error::ComponentMismatch => TqStatus::ComponentMismatch,
            Error::ArityMismatch { .. } => TqStatus::ArityMismatch,
            Error::NotARingMap(_) => TqStatus::NotARingMap,
            Error::NotQGroup { .. } => TqStatus::NotQGroup,
            Error::TooLarge(_) => TqStatus::TooLarge,
            Error::InvalidInput(_) => TqStatus::InvalidInput,
        }
    }
}

/// Opaque presentation of an invariant ring.
pub struct TqPresentation(ToricPresentation);

/// Opaque stratified model.
pub struct TqModel(StratifiedModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn fail(status: TqStatus, message: impl Into<String>) -> TqStatus {
    set_error(message);
    status
}

fn lib_error(e: Error) -> TqStatus {
    fail(TqStatus::from(&e), e.to_string())
}

/// Runs `body` with panics turned into [`TqStatus::Panic`].
fn guard(body: impl FnOnce() -> TqStatus) -> TqStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(TqStatus::Panic, "internal panic"))
}

unsafe fn weights_from(r: u64, weights: *const u64, len: usize) -> Result<WeightSystem, TqStatus> {
    if weights.is_null() && len > 0 {
        return Err(fail(TqStatus::NullPointer, "weights is null"));
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(weights, len) };
    WeightSystem::new(r, slice.to_vec()).map_err(lib_error)
}

unsafe fn str_from<'a>(s: *const c_char, what: &str) -> Result<&'a str, TqStatus> {
    if s.is_null() {
        return Err(fail(TqStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(TqStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! deref {
    ($p:expr, $what:literal) => {
        match $p.as_ref() {
            Some(v) => v,
            None => return fail(TqStatus::NullPointer, concat!($what, " is null")),
        }
    };
}

macro_rules! out {
    ($p:expr, $v:expr) => {
        if !$p.is_null() {
            *$p = $v;
        }
    };
}

/// Stable name of a status code, e.g. `"NotPrime"`. Never null.
#[no_mangle]
pub extern "C" fn tq_status_name(status: TqStatus) -> *const c_char {
    let name: &'static CStr = match status {
        TqStatus::Ok => c"Ok",
        TqStatus::NotPrime => c"NotPrime",
        TqStatus::NoSuchRoot => c"NoSuchRoot",
        TqStatus::TameViolation => c"TameViolation",
        TqStatus::DomainMismatch => c"DomainMismatch",
        TqStatus::InvalidEndomorphism => c"InvalidEndomorphism",
        TqStatus::NotFiniteOrder => c"NotFiniteOrder",
        TqStatus::NotDiagonalizable => c"NotDiagonalizable",
        TqStatus::PinnedInconsistent => c"PinnedInconsistent",
        TqStatus::LengthMismatch => c"LengthMismatch",
        TqStatus::NotGaloisWeights => c"NotGaloisWeights",
        TqStatus::InvalidWeights => c"InvalidWeights",
        TqStatus::ComponentMismatch => c"ComponentMismatch",
        TqStatus::ArityMismatch => c"ArityMismatch",
        TqStatus::NotARingMap => c"NotARingMap",
        TqStatus::NotQGroup => c"NotQGroup",
        TqStatus::TooLarge => c"TooLarge",
        TqStatus::InvalidInput => c"InvalidInput",
        TqStatus::NullPointer => c"NullPointer",
        TqStatus::InvalidUtf8 => c"InvalidUtf8",
        TqStatus::OutOfRange => c"OutOfRange",
        TqStatus::BufferTooSmall => c"BufferTooSmall",
        TqStatus::Panic => c"Panic",
    };
    name.as_ptr()
}

/// Message of the last failure on this thread, or null. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Releases a string returned by the library. Accepts null.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Smallest residue of exact multiplicative order `r` in `F_p`.
///
/// # Safety
/// `out` must be null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tq_primitive_root(p: u64, r: u64, out: *mut u64) -> TqStatus {
    guard(|| match tamequot::algebra::primitive_root_of_unity(p, r) {
        Ok(z) => {
            out!(out, z);
            TqStatus::Ok
        }
        Err(e) => lib_error(e),
    })
}

/// Presents the invariant ring of `mu_r` acting with the given weights.
///
/// # Safety
/// `weights` must point to `len` values; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_new(
    r: u64,
    weights: *const u64,
    len: usize,
    out: *mut *mut TqPresentation,
) -> TqStatus {
    guard(|| {
        if out.is_null() {
            return fail(TqStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let w = match weights_from(r, weights, len) {
            Ok(w) => w,
            Err(status) => return status,
        };
        match quotient_presentation(&w) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(TqPresentation(p)));
                TqStatus::Ok
            }
            Err(e) => lib_error(e),
        }
    })
}

/// # Safety
/// `p` must be null or a handle from [`tq_presentation_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_free(p: *mut TqPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of invariant monomial generators; 0 for null.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_generator_count(p: *const TqPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.generator_count())
}

/// Number of binomial relations; 0 for null.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_relation_count(p: *const TqPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.relations.len())
}

/// Number of coordinates `t, x_1, ..., x_n`; 0 for null.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_arity(p: *const TqPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.0.weight_system().len())
}

/// Index of the uniformizer generator, or -1 when there is none.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_uniformizer(p: *const TqPresentation) -> i64 {
    p.as_ref().and_then(|p| p.0.uniformizer).map_or(-1, |i| i as i64)
}

/// Writes the exponent vector of generator `index` into `exps`, which holds
/// `cap` entries and must fit the arity.
///
/// # Safety
/// `p` must be a live handle and `exps` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_generator(
    p: *const TqPresentation,
    index: usize,
    exps: *mut u32,
    cap: usize,
) -> TqStatus {
    guard(|| {
        let p = deref!(p, "presentation");
        let Some(g) = p.0.basis.generators.get(index) else {
            return fail(TqStatus::OutOfRange, format!("no generator {index}"));
        };
        copy_out(&g.0, exps, cap)
    })
}

/// Writes relation `index` as two generator exponent vectors, each of length
/// [`tq_presentation_generator_count`].
///
/// # Safety
/// `p` must be a live handle; `lhs` and `rhs` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_relation(
    p: *const TqPresentation,
    index: usize,
    lhs: *mut u32,
    rhs: *mut u32,
    cap: usize,
) -> TqStatus {
    guard(|| {
        let p = deref!(p, "presentation");
        let Some(rel) = p.0.relations.get(index) else {
            return fail(TqStatus::OutOfRange, format!("no relation {index}"));
        };
        match copy_out(&rel.lhs, lhs, cap) {
            TqStatus::Ok => copy_out(&rel.rhs, rhs, cap),
            status => status,
        }
    })
}

unsafe fn copy_out(values: &[u32], dst: *mut u32, cap: usize) -> TqStatus {
    if dst.is_null() {
        return fail(TqStatus::NullPointer, "output buffer is null");
    }
    if cap < values.len() {
        return fail(TqStatus::BufferTooSmall, format!("need {} entries", values.len()));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), dst, values.len());
    TqStatus::Ok
}

/// Presentation as JSON; release with [`tq_string_free`]. Null on null input.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tq_presentation_json(p: *const TqPresentation) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| into_c_string(p.0.to_json().to_string()))
}

/// Builds a model from a description such as `"affine:1,torus:1"`.
///
/// # Safety
/// `description` must be a C string, `weights` point to `len` values and `out`
/// be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tq_model_new(
    description: *const c_char,
    r: u64,
    weights: *const u64,
    len: usize,
    out: *mut *mut TqModel,
) -> TqStatus {
    guard(|| {
        if out.is_null() {
            return fail(TqStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let desc = match str_from(description, "description") {
            Ok(d) => d,
            Err(status) => return status,
        };
        let w = match weights_from(r, weights, len) {
            Ok(w) => w,
            Err(status) => return status,
        };
        match StratifiedModel::parse(desc, w) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(TqModel(m)));
                TqStatus::Ok
            }
            Err(e) => lib_error(e),
        }
    })
}

/// # Safety
/// `m` must be null or a handle from [`tq_model_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tq_model_free(m: *mut TqModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Compares the Serre invariant of the weak Néron fiber with that of the
/// fixed locus.
///
/// # Safety
/// `m` must be a live handle; out pointers null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tq_model_serre(m: *const TqModel, lhs: *mut i64, rhs: *mut i64, pass: *mut bool) -> TqStatus {
    guard(|| {
        let m = deref!(m, "model");
        let report = check_serre_theorem(&m.0);
        out!(lhs, report.serre_lhs.0);
        out!(rhs, report.serre_rhs.0);
        out!(pass, report.pass);
        TqStatus::Ok
    })
}

/// Rational volume congruence modulo `q` for a `q`-group model.
///
/// # Safety
/// `m` must be a live handle; out pointers null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tq_model_volume(
    m: *const TqModel,
    q: u64,
    s_xl: *mut i64,
    s_x: *mut i64,
    pass: *mut bool,
) -> TqStatus {
    guard(|| {
        let m = deref!(m, "model");
        match check_volume_congruence(&m.0, q) {
            Ok(report) => {
                out!(s_xl, report.s_xl);
                out!(s_x, report.s_x);
                out!(pass, report.pass);
                TqStatus::Ok
            }
            Err(e) => lib_error(e),
        }
    })
}

/// Counts `F_q`-points of the special fiber by brute force and from its class.
///
/// # Safety
/// `m` must be a live handle; out pointers null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tq_model_count(m: *const TqModel, q: u64, counted: *mut u64, predicted: *mut i64) -> TqStatus {
    guard(|| {
        let m = deref!(m, "model");
        let (all, _, _) = match brute_force_model_counts(&m.0, q) {
            Ok(c) => c,
            Err(e) => return lib_error(e),
        };
        let class = match count_points_stratified(&m.0, q) {
            Ok(c) => c,
            Err(e) => return lib_error(e),
        };
        let Ok(class) = i64::try_from(class) else {
            return fail(TqStatus::TooLarge, "count exceeds 64 bits");
        };
        out!(counted, all);
        out!(predicted, class);
        TqStatus::Ok
    })
}

/// Runs the command-line interface on `argc` arguments (excluding the program
/// name) and returns its exit code. The JSON output is stored in `*out` when
/// `out` is non-null; release it with [`tq_string_free`].
///
/// # Safety
/// `argv` must hold `argc` C strings; `out` null or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn tq_run_cli(argc: c_int, argv: *const *const c_char, out: *mut *mut c_char) -> c_int {
    out!(out, ptr::null_mut());
    let mut args = vec!["tamequot".to_string()];
    if argc > 0 {
        if argv.is_null() {
            set_error("argv is null");
            return tamequot::cli::EXIT_INVALID;
        }
        for i in 0..argc as usize {
            match str_from(*argv.add(i), "argument") {
                Ok(a) => args.push(a.to_string()),
                Err(_) => return tamequot::cli::EXIT_INVALID,
            }
        }
    }
    let (code, text) = match catch_unwind(|| tamequot::cli::run(args)) {
        Ok(result) => result,
        Err(_) => {
            set_error("internal panic");
            return tamequot::cli::EXIT_INTERNAL;
        }
    };
    out!(out, into_c_string(text));
    code
}
