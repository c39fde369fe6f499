//! C ABI for the qplane library.
//!
//! The interface hands out opaque `QplaneDatum` handles and reports
//! failures through `QplaneStatus` codes; no Rust types cross the
//! boundary. Strings returned through out-parameters are heap-allocated
//! and must be released with [`qplane_string_free`]. All functions are
//! panic-safe: internal panics surface as `QPLANE_STATUS_INTERNAL`.
//!
//! The matching C header lives in `include/qplane.h` and is regenerated
//! by the build script via cbindgen.

// Raw pointer arguments are the C calling convention here; every entry
// point null-checks before dereferencing, and handle validity is the
// caller's contract as documented per function.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qplane::abelian::Character;
use qplane::datum::{drinfeld_taft_datum, uqsl2_datum, Datum, DatumSpec};
use qplane::error::Error;
use qplane::modules::{exponent, is_self_dual};
use qplane::trace::{
    form_matrix_closed, form_matrix_semantic, trace_bruteforce, trace_closed,
};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QplaneStatus {
    Ok = 0,
    NullPointer,
    InvalidArgument,
    ParseError,
    ConditionOneViolated,
    ConditionTwoViolated,
    ConditionThreeViolated,
    EvenOrder,
    NotSelfDual,
    IndexOutOfRange,
    Internal,
}

fn status_of(err: &Error) -> QplaneStatus {
    match err {
        Error::Parse(_) | Error::InvalidGroup(_) => QplaneStatus::ParseError,
        Error::ConditionOneViolated(_) => QplaneStatus::ConditionOneViolated,
        Error::ConditionTwoViolated => QplaneStatus::ConditionTwoViolated,
        Error::ConditionThreeViolated => QplaneStatus::ConditionThreeViolated,
        Error::EvenOrder(_) => QplaneStatus::EvenOrder,
        Error::NotSelfDual => QplaneStatus::NotSelfDual,
        Error::IndexOutOfRange(_) => QplaneStatus::IndexOutOfRange,
        Error::GroupMismatch | Error::DatumMismatch => QplaneStatus::InvalidArgument,
        _ => QplaneStatus::Internal,
    }
}

/// Opaque handle to a validated datum and its weight table.
pub struct QplaneDatum {
    datum: Datum,
    weights: Vec<Character>,
}

impl QplaneDatum {
    fn new(datum: Datum) -> Self {
        let weights = datum.group().characters();
        QplaneDatum { datum, weights }
    }

    fn weight(&self, index: u64) -> Option<&Character> {
        self.weights.get(index as usize)
    }
}

fn emit_datum(result: Result<Datum, Error>, out: *mut *mut QplaneDatum) -> QplaneStatus {
    if out.is_null() {
        return QplaneStatus::NullPointer;
    }
    match result {
        Ok(datum) => {
            let handle = Box::new(QplaneDatum::new(datum));
            unsafe { *out = Box::into_raw(handle) };
            QplaneStatus::Ok
        }
        Err(err) => {
            unsafe { *out = std::ptr::null_mut() };
            status_of(&err)
        }
    }
}

fn guarded(f: impl FnOnce() -> QplaneStatus) -> QplaneStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QplaneStatus::Internal)
}

/// Build the u_q(sl2) datum at odd order n >= 3.
#[no_mangle]
pub extern "C" fn qplane_datum_uqsl2(n: u64, out: *mut *mut QplaneDatum) -> QplaneStatus {
    guarded(|| emit_datum(uqsl2_datum(n), out))
}

/// Build the Drinfeld-double-of-Taft datum at odd order n >= 3.
#[no_mangle]
pub extern "C" fn qplane_datum_drinfeld_taft(
    n: u64,
    out: *mut *mut QplaneDatum,
) -> QplaneStatus {
    guarded(|| emit_datum(drinfeld_taft_datum(n), out))
}

/// Parse and validate a datum from its JSON form
/// `{"group":[...],"a":[...],"b":[...],"chi":[...]}`.
#[no_mangle]
pub extern "C" fn qplane_datum_from_json(
    json: *const c_char,
    out: *mut *mut QplaneDatum,
) -> QplaneStatus {
    guarded(|| {
        if json.is_null() {
            return QplaneStatus::NullPointer;
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => return QplaneStatus::ParseError,
        };
        let result = DatumSpec::from_json(text).and_then(|spec| spec.build());
        emit_datum(result, out)
    })
}

/// Release a datum handle. Null is allowed.
#[no_mangle]
pub extern "C" fn qplane_datum_free(datum: *mut QplaneDatum) {
    if !datum.is_null() {
        drop(unsafe { Box::from_raw(datum) });
    }
}

/// The nilpotency degree n = |chi(a)|, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn qplane_datum_n(datum: *const QplaneDatum) -> u64 {
    if datum.is_null() {
        return 0;
    }
    unsafe { &*datum }.datum.n()
}

/// The group order |G|, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn qplane_datum_group_order(datum: *const QplaneDatum) -> u64 {
    if datum.is_null() {
        return 0;
    }
    unsafe { &*datum }.datum.group().order()
}

/// The number of weights (equals |G|), or 0 for a null handle.
#[no_mangle]
pub extern "C" fn qplane_datum_weight_count(datum: *const QplaneDatum) -> u64 {
    if datum.is_null() {
        return 0;
    }
    unsafe { &*datum }.weights.len() as u64
}

fn with_weight(
    datum: *const QplaneDatum,
    index: u64,
    f: impl FnOnce(&QplaneDatum, &Character) -> QplaneStatus,
) -> QplaneStatus {
    guarded(|| {
        if datum.is_null() {
            return QplaneStatus::NullPointer;
        }
        let handle = unsafe { &*datum };
        match handle.weight(index) {
            Some(lambda) => f(handle, lambda),
            None => QplaneStatus::IndexOutOfRange,
        }
    })
}

/// The exponent e(lambda) of the weight at `index` (weights are in
/// lexicographic enumeration order).
#[no_mangle]
pub extern "C" fn qplane_weight_exponent(
    datum: *const QplaneDatum,
    index: u64,
    out: *mut u64,
) -> QplaneStatus {
    with_weight(datum, index, |handle, lambda| {
        if out.is_null() {
            return QplaneStatus::NullPointer;
        }
        match exponent(&handle.datum, lambda) {
            Ok(e) => {
                unsafe { *out = e as u64 };
                QplaneStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// The dimension e(lambda) + 1 of the simple module at `index`.
#[no_mangle]
pub extern "C" fn qplane_weight_dimension(
    datum: *const QplaneDatum,
    index: u64,
    out: *mut u64,
) -> QplaneStatus {
    with_weight(datum, index, |handle, lambda| {
        if out.is_null() {
            return QplaneStatus::NullPointer;
        }
        match exponent(&handle.datum, lambda) {
            Ok(e) => {
                unsafe { *out = e as u64 + 1 };
                QplaneStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Whether the simple module at `index` is self-dual.
#[no_mangle]
pub extern "C" fn qplane_weight_is_self_dual(
    datum: *const QplaneDatum,
    index: u64,
    out: *mut bool,
) -> QplaneStatus {
    with_weight(datum, index, |handle, lambda| {
        if out.is_null() {
            return QplaneStatus::NullPointer;
        }
        match is_self_dual(&handle.datum, lambda) {
            Ok(sd) => {
                unsafe { *out = sd };
                QplaneStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

fn emit_string(text: String, out: *mut *mut c_char) -> QplaneStatus {
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            QplaneStatus::Ok
        }
        Err(_) => QplaneStatus::Internal,
    }
}

/// The trace of the antipode on the self-dual module at `index`, as the
/// canonical cyclotomic string `c0 + c1*z + ...` with z = zeta_E.
/// Fails with `QPLANE_STATUS_NOT_SELF_DUAL` otherwise.
#[no_mangle]
pub extern "C" fn qplane_trace_closed(
    datum: *const QplaneDatum,
    index: u64,
    out: *mut *mut c_char,
) -> QplaneStatus {
    with_weight(datum, index, |handle, lambda| {
        if out.is_null() {
            return QplaneStatus::NullPointer;
        }
        match trace_closed(&handle.datum, lambda) {
            Ok(value) => emit_string(value.to_string(), out),
            Err(err) => status_of(&err),
        }
    })
}

/// Recompute the trace by all three routes and report whether they
/// agree exactly.
#[no_mangle]
pub extern "C" fn qplane_trace_routes_agree(
    datum: *const QplaneDatum,
    index: u64,
    out: *mut bool,
) -> QplaneStatus {
    with_weight(datum, index, |handle, lambda| {
        if out.is_null() {
            return QplaneStatus::NullPointer;
        }
        let run = || -> Result<bool, Error> {
            let closed = trace_closed(&handle.datum, lambda)?;
            let via_closed = trace_bruteforce(&form_matrix_closed(&handle.datum, lambda)?)?;
            let via_semantic =
                trace_bruteforce(&form_matrix_semantic(&handle.datum, lambda)?)?;
            Ok(closed == via_closed && closed == via_semantic)
        };
        match run() {
            Ok(agree) => {
                unsafe { *out = agree };
                QplaneStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Canonical serialization of the datum, e.g.
/// `G=[3];a=[1];b=[1];chi=[2]`.
#[no_mangle]
pub extern "C" fn qplane_datum_serial(
    datum: *const QplaneDatum,
    out: *mut *mut c_char,
) -> QplaneStatus {
    guarded(|| {
        if datum.is_null() || out.is_null() {
            return QplaneStatus::NullPointer;
        }
        let handle = unsafe { &*datum };
        emit_string(handle.datum.serial(), out)
    })
}

/// Release a string returned by this library. Null is allowed.
#[no_mangle]
pub extern "C" fn qplane_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qplane_status_message(status: QplaneStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        QplaneStatus::Ok => c"ok",
        QplaneStatus::NullPointer => c"null pointer argument",
        QplaneStatus::InvalidArgument => c"invalid argument",
        QplaneStatus::ParseError => c"cannot parse datum",
        QplaneStatus::ConditionOneViolated => c"condition (1) violated: |chi(a)| <= 1",
        QplaneStatus::ConditionTwoViolated => c"condition (2) violated: chi(a) != chi(b)",
        QplaneStatus::ConditionThreeViolated => c"condition (3) violated: ab = 1",
        QplaneStatus::EvenOrder => c"order must be odd and at least 3",
        QplaneStatus::NotSelfDual => c"module is not self-dual",
        QplaneStatus::IndexOutOfRange => c"index out of range",
        QplaneStatus::Internal => c"internal error",
    };
    msg.as_ptr()
}
