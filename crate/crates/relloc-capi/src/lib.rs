//! C ABI for the relloc localisation library.
//!
//! The interface follows a conventional handle/status-code pattern:
//!
//! * states are opaque [`RellocState`] handles created from the same JSON
//!   documents the CLI consumes and released with [`relloc_state_free`];
//! * every fallible call returns a [`RellocStatus`]; on failure a
//!   human-readable message is retrievable via [`relloc_last_error`];
//! * results are written through caller-provided out pointers.
//!
//! The generated header lives in `include/relloc.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use relloc::elementary::{momenta, ElementarySystem, State, StateFile};
use relloc::localisation::{moller_disc, nw_position_coords, standard_aliases};
use relloc::obsexpr::parser::{parse_with_aliases, AliasTable};
use relloc::obsexpr::poisson_bracket;
use relloc::poincare::Hyperplane;
use relloc::verify::{run_all, run_suite, RunConfig, SuiteId};

/// Result of a C API call. Anything other than `Ok` leaves a message in
/// [`relloc_last_error`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RellocStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The state JSON could not be parsed or failed validation.
    InvalidState = 3,
    /// An observable expression could not be parsed.
    ParseError = 4,
    /// An observable expression could not be evaluated.
    EvalError = 5,
    /// A geometric operation was outside its domain.
    DomainError = 6,
    /// The verification suite name is not recognised.
    UnknownSuite = 7,
}

/// Opaque handle to a validated system + state pair.
pub struct RellocState {
    system: ElementarySystem,
    state: State,
    aliases: AliasTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("NUL stripped above"));
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

/// Message describing the most recent failure on the calling thread, or null
/// if no call has failed. The pointer stays valid until the next failing call
/// on the same thread.
#[no_mangle]
pub extern "C" fn relloc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |message| message.as_ptr())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn relloc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `pointer` must be null or a NUL-terminated string.
unsafe fn text_argument<'a>(pointer: *const c_char) -> Result<&'a str, RellocStatus> {
    if pointer.is_null() {
        set_error("null pointer argument");
        return Err(RellocStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(pointer) }.to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        RellocStatus::InvalidUtf8
    })
}

unsafe fn state_argument<'a>(handle: *const RellocState) -> Result<&'a RellocState, RellocStatus> {
    if handle.is_null() {
        set_error("null state handle");
        return Err(RellocStatus::NullArgument);
    }
    Ok(unsafe { &*handle })
}

fn out_pointer<'a, T>(pointer: *mut T) -> Result<&'a mut T, RellocStatus> {
    if pointer.is_null() {
        set_error("null out pointer");
        return Err(RellocStatus::NullArgument);
    }
    Ok(unsafe { &mut *pointer })
}

macro_rules! ffi_try {
    ($e:expr) => {
        match $e {
            Ok(value) => value,
            Err(status) => return status,
        }
    };
}

/// Parses and validates a state document and returns a new handle through
/// `out`. The document is the same JSON the CLI accepts:
/// `{"m": .., "S": .., "c": .., "x": [..], "p": [..], "s_hat": [..]}`.
///
/// On success the caller owns the handle and must release it with
/// [`relloc_state_free`].
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relloc_state_from_json(
    json: *const c_char,
    out: *mut *mut RellocState,
) -> RellocStatus {
    clear_error();
    let text = ffi_try!(unsafe { text_argument(json) });
    let out = ffi_try!(out_pointer(out));
    let file: StateFile = match serde_json::from_str(text) {
        Ok(file) => file,
        Err(err) => {
            set_error(format!("state JSON: {err}"));
            return RellocStatus::InvalidState;
        }
    };
    match file.into_validated() {
        Ok((system, state)) => {
            let aliases = standard_aliases(&system);
            *out = Box::into_raw(Box::new(RellocState {
                system,
                state,
                aliases,
            }));
            RellocStatus::Ok
        }
        Err(err) => {
            set_error(format!("state: {err}"));
            RellocStatus::InvalidState
        }
    }
}

/// Releases a handle created by [`relloc_state_from_json`]. Null is ignored.
///
/// # Safety
/// `handle` must be null or a pointer previously returned by
/// [`relloc_state_from_json`] that has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn relloc_state_free(handle: *mut RellocState) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

fn parse_observable(
    handle: &RellocState,
    text: &str,
) -> Result<relloc::obsexpr::Expression, RellocStatus> {
    parse_with_aliases(text, &handle.aliases).map_err(|err| {
        set_error(format!("parse error: {err}"));
        RellocStatus::ParseError
    })
}

fn evaluate_observable(
    handle: &RellocState,
    expr: &relloc::obsexpr::Expression,
) -> Result<f64, RellocStatus> {
    let ctx = handle.system.eval_context(&handle.state);
    expr.evaluate(&ctx).map_err(|err| {
        set_error(format!("evaluation error: {err}"));
        RellocStatus::EvalError
    })
}

/// Evaluates an observable expression at the handle's state and writes the
/// value through `out`. Accepts the same grammar and aliases as the CLI
/// (`x1..x3`, `p1..p3`, `s1..s3`, `m`, `S`, `c`, `P0..P3`, `J12`, `W0..W3`,
/// `X1..X3`, ...).
///
/// # Safety
/// `handle` must be a live handle, `expr` a NUL-terminated string, `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relloc_eval(
    handle: *const RellocState,
    expr: *const c_char,
    out: *mut f64,
) -> RellocStatus {
    clear_error();
    let handle = ffi_try!(unsafe { state_argument(handle) });
    let text = ffi_try!(unsafe { text_argument(expr) });
    let out = ffi_try!(out_pointer(out));
    let parsed = ffi_try!(parse_observable(handle, text));
    *out = ffi_try!(evaluate_observable(handle, &parsed));
    RellocStatus::Ok
}

/// Evaluates the Poisson bracket `{f, g}` of two observable expressions at
/// the handle's state.
///
/// # Safety
/// As for [`relloc_eval`]; both `f` and `g` must be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn relloc_bracket(
    handle: *const RellocState,
    f: *const c_char,
    g: *const c_char,
    out: *mut f64,
) -> RellocStatus {
    clear_error();
    let handle = ffi_try!(unsafe { state_argument(handle) });
    let f_text = ffi_try!(unsafe { text_argument(f) });
    let g_text = ffi_try!(unsafe { text_argument(g) });
    let out = ffi_try!(out_pointer(out));
    let f_expr = ffi_try!(parse_observable(handle, f_text));
    let g_expr = ffi_try!(parse_observable(handle, g_text));
    let bracket = poisson_bracket(&f_expr, &g_expr);
    *out = ffi_try!(evaluate_observable(handle, &bracket));
    RellocStatus::Ok
}

/// Writes the three Newton-Wigner position coordinates of the state to
/// `out[0..3]`.
///
/// # Safety
/// `handle` must be a live handle; `out` must point to at least 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn relloc_nw_position(
    handle: *const RellocState,
    out: *mut f64,
) -> RellocStatus {
    clear_error();
    let handle = ffi_try!(unsafe { state_argument(handle) });
    if out.is_null() {
        set_error("null out pointer");
        return RellocStatus::NullArgument;
    }
    match nw_position_coords(&handle.system, &handle.state, &Hyperplane::rest_frame()) {
        Ok(coords) => {
            let slice = unsafe { std::slice::from_raw_parts_mut(out, 3) };
            slice.copy_from_slice(&coords);
            RellocStatus::Ok
        }
        Err(err) => {
            set_error(format!("position: {err}"));
            RellocStatus::DomainError
        }
    }
}

/// Computes the disc of possible centre positions on the state's
/// momentum-orthogonal hyperplane through the origin. Writes the disc radius
/// through `radius` and, when the corresponding pointers are non-null, the
/// centre and normal components to `centre[0..4]` and `normal[0..4]`.
///
/// # Safety
/// `handle` must be a live handle; `radius` must be a valid pointer;
/// `centre`/`normal` must each be null or point to at least 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn relloc_moller_disc(
    handle: *const RellocState,
    radius: *mut f64,
    centre: *mut f64,
    normal: *mut f64,
) -> RellocStatus {
    clear_error();
    let handle = ffi_try!(unsafe { state_argument(handle) });
    let radius = ffi_try!(out_pointer(radius));
    let mv = match momenta(&handle.system, &handle.state) {
        Ok(mv) => mv,
        Err(err) => {
            set_error(format!("momenta: {err}"));
            return RellocStatus::DomainError;
        }
    };
    let sigma = match Hyperplane::new(mv.p.raise() / handle.system.mc(), 0.0) {
        Ok(sigma) => sigma,
        Err(err) => {
            set_error(format!("slice: {err}"));
            return RellocStatus::DomainError;
        }
    };
    match moller_disc(&mv, &sigma) {
        Ok(disc) => {
            *radius = disc.radius;
            if !centre.is_null() {
                let slice = unsafe { std::slice::from_raw_parts_mut(centre, 4) };
                slice.copy_from_slice(&disc.centre.0);
            }
            if !normal.is_null() {
                let slice = unsafe { std::slice::from_raw_parts_mut(normal, 4) };
                slice.copy_from_slice(&disc.normal.0);
            }
            RellocStatus::Ok
        }
        Err(err) => {
            set_error(format!("disc: {err}"));
            RellocStatus::DomainError
        }
    }
}

/// Runs a verification suite (or `"all"`) with the given seed and sample
/// count and writes `true` through `passed` when every check succeeded.
/// A completed run reports `Ok` even when checks fail; inspect `passed`.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `passed` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn relloc_verify(
    suite: *const c_char,
    seed: u64,
    samples: usize,
    passed: *mut bool,
) -> RellocStatus {
    clear_error();
    let name = ffi_try!(unsafe { text_argument(suite) });
    let passed = ffi_try!(out_pointer(passed));
    if samples == 0 {
        set_error("samples must be at least 1");
        return RellocStatus::DomainError;
    }
    let config = RunConfig {
        seed,
        samples,
        ..RunConfig::default()
    };
    if name == "all" {
        *passed = run_all(&config).iter().all(|report| report.passed);
        return RellocStatus::Ok;
    }
    match SuiteId::from_name(name) {
        Some(id) => {
            *passed = run_suite(id, &config).passed;
            RellocStatus::Ok
        }
        None => {
            set_error(format!("unknown suite `{name}`"));
            RellocStatus::UnknownSuite
        }
    }
}
