//! C interface to the astheno engine.
//!
//! Forms cross the boundary as opaque `AsthenoForm` handles owned by the
//! caller and released with `astheno_form_free`. Strings returned by the
//! library are released with `astheno_string_free`. Every fallible call
//! returns an `AsthenoStatus`; on failure a message is kept per thread and
//! read with `astheno_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use astheno::algebra::{Form, ProductGeometry};
use astheno::calculus::{d_c, exterior_d, j_action, ConditionKind, LeibnizConvention};
use astheno::classify::{classify, FactorKind, StructureSpec, Verdict};
use astheno::expr_io::{from_record, parse, print_latex, print_text, to_record};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsthenoStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    RecordError = 4,
    InvalidGeometry = 5,
    InvalidArgument = 6,
    CalculusError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsthenoConvention {
    Graded = 0,
    Ungraded = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsthenoCondition {
    Astheno = 0,
    Skt = 1,
    Gauduchon = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsthenoFactor {
    AlphaSasakian = 0,
    BetaKenmotsu = 1,
    Cosymplectic = 2,
    TransSasakian = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsthenoVerdict {
    IdenticallyZero = 0,
    Nonzero = 1,
    ConditionallyZero = 2,
}

/// Factor half-dimensions and normalization switches.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct AsthenoGeometry {
    pub m1: u32,
    pub m2: u32,
    pub truncate: bool,
    pub reduce_ring: bool,
}

/// Opaque form handle.
pub struct AsthenoForm(Form);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (AsthenoStatus, String);

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> AsthenoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => AsthenoStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {message}"));
            AsthenoStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    (AsthenoStatus::NullArgument, format!("{name} is null"))
}

unsafe fn form_ref<'a>(f: *const AsthenoForm, name: &str) -> Result<&'a Form, Failure> {
    f.as_ref().map(|f| &f.0).ok_or_else(|| null(name))
}

unsafe fn text_arg<'a>(s: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (AsthenoStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn emit_form(out: *mut *mut AsthenoForm, f: Form) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(AsthenoForm(f)));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s)
        .map_err(|e| (AsthenoStatus::InvalidArgument, e.to_string()))?
        .into_raw();
    Ok(())
}

fn geometry(g: &AsthenoGeometry) -> Result<ProductGeometry, Failure> {
    ProductGeometry::new(g.m1, g.m2)
        .map(|p| {
            p.with_truncation(g.truncate)
                .with_ring_reduction(g.reduce_ring)
        })
        .map_err(|e| (AsthenoStatus::InvalidGeometry, e.to_string()))
}

unsafe fn geometry_arg(g: *const AsthenoGeometry) -> Result<ProductGeometry, Failure> {
    geometry(g.as_ref().ok_or_else(|| null("geometry"))?)
}

// Enum arguments arrive as raw codes: an out-of-range value in a Rust enum
// parameter would be undefined behavior.

fn bad_code(what: &str, code: u32) -> Failure {
    (
        AsthenoStatus::InvalidArgument,
        format!("unknown {what} code {code}"),
    )
}

fn convention(code: u32) -> Result<LeibnizConvention, Failure> {
    match code {
        c if c == AsthenoConvention::Graded as u32 => Ok(LeibnizConvention::Graded),
        c if c == AsthenoConvention::Ungraded as u32 => Ok(LeibnizConvention::Ungraded),
        c => Err(bad_code("convention", c)),
    }
}

fn factor(code: u32) -> Result<FactorKind, Failure> {
    match code {
        c if c == AsthenoFactor::AlphaSasakian as u32 => Ok(FactorKind::AlphaSasakian),
        c if c == AsthenoFactor::BetaKenmotsu as u32 => Ok(FactorKind::BetaKenmotsu),
        c if c == AsthenoFactor::Cosymplectic as u32 => Ok(FactorKind::Cosymplectic),
        c if c == AsthenoFactor::TransSasakian as u32 => Ok(FactorKind::TransSasakian),
        c => Err(bad_code("factor", c)),
    }
}

fn condition(code: u32) -> Result<ConditionKind, Failure> {
    match code {
        c if c == AsthenoCondition::Astheno as u32 => Ok(ConditionKind::Astheno),
        c if c == AsthenoCondition::Skt as u32 => Ok(ConditionKind::Skt),
        c if c == AsthenoCondition::Gauduchon as u32 => Ok(ConditionKind::Gauduchon),
        c => Err(bad_code("condition", c)),
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn astheno_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn astheno_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `text` in the plain-text grammar.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_parse(
    text: *const c_char,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| {
        let text = text_arg(text, "text")?;
        let f = parse(text).map_err(|e| (AsthenoStatus::ParseError, e.to_string()))?;
        emit_form(out, f)
    })
}

/// Reads a form from its JSON record.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_from_record(
    json: *const c_char,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| {
        let json = text_arg(json, "json")?;
        let value: serde_json::Value =
            serde_json::from_str(json).map_err(|e| (AsthenoStatus::RecordError, e.to_string()))?;
        let f = from_record(&value).map_err(|e| (AsthenoStatus::RecordError, e.to_string()))?;
        emit_form(out, f)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `form` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_free(form: *mut AsthenoForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_clone(
    form: *const AsthenoForm,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| emit_form(out, form_ref(form, "form")?.clone()))
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_to_text(
    form: *const AsthenoForm,
    out: *mut *mut c_char,
) -> AsthenoStatus {
    guard(|| emit_string(out, print_text(form_ref(form, "form")?)))
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_to_latex(
    form: *const AsthenoForm,
    out: *mut *mut c_char,
) -> AsthenoStatus {
    guard(|| emit_string(out, print_latex(form_ref(form, "form")?)))
}

/// Compact JSON record of the form.
///
/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_to_record(
    form: *const AsthenoForm,
    out: *mut *mut c_char,
) -> AsthenoStatus {
    guard(|| emit_string(out, to_record(form_ref(form, "form")?).to_string()))
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_is_zero(
    form: *const AsthenoForm,
    out: *mut bool,
) -> AsthenoStatus {
    guard(|| {
        let f = form_ref(form, "form")?;
        *out.as_mut().ok_or_else(|| null("out"))? = f.is_zero();
        Ok(())
    })
}

/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_equal(
    lhs: *const AsthenoForm,
    rhs: *const AsthenoForm,
    out: *mut bool,
) -> AsthenoStatus {
    guard(|| {
        let eq = form_ref(lhs, "lhs")? == form_ref(rhs, "rhs")?;
        *out.as_mut().ok_or_else(|| null("out"))? = eq;
        Ok(())
    })
}

/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_add(
    lhs: *const AsthenoForm,
    rhs: *const AsthenoForm,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| emit_form(out, form_ref(lhs, "lhs")? + form_ref(rhs, "rhs")?))
}

/// # Safety
/// Both handles and `geometry` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_wedge(
    lhs: *const AsthenoForm,
    rhs: *const AsthenoForm,
    geometry: *const AsthenoGeometry,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| {
        let g = geometry_arg(geometry)?;
        emit_form(out, form_ref(lhs, "lhs")?.wedge(form_ref(rhs, "rhs")?, &g))
    })
}

/// Exterior derivative; `conv` is an `AsthenoConvention` code.
///
/// # Safety
/// `form` and `geometry` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_d(
    form: *const AsthenoForm,
    conv: u32,
    geometry: *const AsthenoGeometry,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| {
        let g = geometry_arg(geometry)?;
        emit_form(
            out,
            exterior_d(form_ref(form, "form")?, convention(conv)?, &g),
        )
    })
}

/// J applied after d; `conv` is an `AsthenoConvention` code.
///
/// # Safety
/// `form` and `geometry` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_dc(
    form: *const AsthenoForm,
    conv: u32,
    geometry: *const AsthenoGeometry,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| {
        let g = geometry_arg(geometry)?;
        emit_form(out, d_c(form_ref(form, "form")?, convention(conv)?, &g))
    })
}

/// # Safety
/// `form` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_form_j(
    form: *const AsthenoForm,
    out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| emit_form(out, j_action(form_ref(form, "form")?)))
}

/// Classifies a condition for a pair of structure types with symbolic
/// coefficients. `cond`, `factor1`, `factor2` and `conv` are
/// `AsthenoCondition`, `AsthenoFactor` and `AsthenoConvention` codes.
/// `residual_out` may be null.
///
/// # Safety
/// `geometry` must be valid and `verdict_out` writable.
#[no_mangle]
pub unsafe extern "C" fn astheno_classify(
    cond: u32,
    geometry: *const AsthenoGeometry,
    factor1: u32,
    factor2: u32,
    conv: u32,
    verdict_out: *mut AsthenoVerdict,
    residual_out: *mut *mut AsthenoForm,
) -> AsthenoStatus {
    guard(|| {
        let g = geometry_arg(geometry)?;
        let verdict_out = verdict_out.as_mut().ok_or_else(|| null("verdict_out"))?;
        let spec = StructureSpec::symbolic(factor(factor1)?, factor(factor2)?);
        let report = classify(condition(cond)?, &g, &spec, convention(conv)?)
            .map_err(|e| (AsthenoStatus::CalculusError, e.to_string()))?;
        *verdict_out = match report.verdict {
            Verdict::IdenticallyZero => AsthenoVerdict::IdenticallyZero,
            Verdict::Nonzero => AsthenoVerdict::Nonzero,
            Verdict::ConditionallyZero => AsthenoVerdict::ConditionallyZero,
        };
        if !residual_out.is_null() {
            emit_form(residual_out, report.residual)?;
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn astheno_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
