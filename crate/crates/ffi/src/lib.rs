//! C ABI over the `pmconv` engine.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`/
//! `*_load` and released with the matching `*_free`. Every fallible call
//! returns a [`PmStatus`]; the message of the last failure on the calling
//! thread is available from [`pm_last_error`]. Strings returned to C are owned
//! by the caller and released with [`pm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pmconv::convergence::{strong_converges, strong_ik_converges};
use pmconv::ddf::{Ddf, Ext};
use pmconv::error::Error;
use pmconv::expr::{parse_ideal, parse_set};
use pmconv::ideal::IdealSpec;
use pmconv::levy::{distance_to_identity, levy_distance};
use pmconv::num::{from_f64, to_f64};
use pmconv::report::{run_scenarios, Options};
use pmconv::scenario::Scenario;
use pmconv::sets::SymbolicSet;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Scenario = 5,
    TrivialIdeal = 6,
    UnknownCheck = 7,
    Cap = 8,
    Search = 9,
    Panic = 10,
}

pub struct PmDdf(Ddf);
pub struct PmSet(SymbolicSet);
pub struct PmIdeal(IdealSpec);
pub struct PmScenario(Scenario);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => PmStatus::Parse,
            Error::Scenario(_) | Error::UnknownPoint(_) | Error::MissingEntry(..) | Error::Partition(_) => {
                PmStatus::Scenario
            }
            Error::TrivialIdeal(_) => PmStatus::TrivialIdeal,
            Error::UnknownCheck(_) => PmStatus::UnknownCheck,
            Error::Cap(_) | Error::ModulusCap { .. } => PmStatus::Cap,
            Error::Search(_) => PmStatus::Search,
            _ => PmStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PmStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PmStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PmStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(PmStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(PmStatus::NullPointer, "null handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(PmStatus::NullPointer, "null output pointer".into()))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

/// Message of the last failed call on this thread, or NULL. Free with
/// `pm_string_free`.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a d.d.f. from `n` steps; a location of `INFINITY` marks the step at
/// infinity. Doubles are converted exactly.
///
/// # Safety
/// `locations` and `values` must point to `n` doubles; `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_ddf_new(
    locations: *const f64,
    values: *const f64,
    n: usize,
    result: *mut *mut PmDdf,
) -> PmStatus {
    guard(|| {
        let result = out(result)?;
        if n > 0 && (locations.is_null() || values.is_null()) {
            return Err(Failure(PmStatus::NullPointer, "null step array".into()));
        }
        let mut steps = Vec::with_capacity(n);
        for j in 0..n {
            let (x, v) = (*locations.add(j), *values.add(j));
            let loc = if x == f64::INFINITY { Ext::Infinity } else { Ext::Finite(from_f64(x)?) };
            steps.push((loc, from_f64(v)?));
        }
        *result = Box::into_raw(Box::new(PmDdf(Ddf::from_steps(steps)?)));
        Ok(())
    })
}

/// # Safety
/// `ddf` must be NULL or a handle from `pm_ddf_new`.
#[no_mangle]
pub unsafe extern "C" fn pm_ddf_free(ddf: *mut PmDdf) {
    if !ddf.is_null() {
        drop(Box::from_raw(ddf));
    }
}

/// Certified bracket `[lower, upper]` around the Lévy distance.
///
/// # Safety
/// Handles and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_levy_distance(
    f: *const PmDdf,
    g: *const PmDdf,
    tolerance: f64,
    lower: *mut f64,
    upper: *mut f64,
) -> PmStatus {
    guard(|| {
        let r = levy_distance(&handle(f)?.0, &handle(g)?.0, &from_f64(tolerance)?)?;
        *out(lower)? = to_f64(&r.lower);
        *out(upper)? = to_f64(&r.upper);
        Ok(())
    })
}

/// Exact distance to the unit step at 0, rounded to a double.
///
/// # Safety
/// Handle and output pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_distance_to_identity(g: *const PmDdf, result: *mut f64) -> PmStatus {
    guard(|| {
        *out(result)? = to_f64(&distance_to_identity(&handle(g)?.0));
        Ok(())
    })
}

/// Parses a set expression such as `ap:0,2 | finite:[3]`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_set_parse(expr: *const c_char, result: *mut *mut PmSet) -> PmStatus {
    guard(|| {
        let set = parse_set(text(expr)?)?;
        *out(result)? = Box::into_raw(Box::new(PmSet(set)));
        Ok(())
    })
}

/// Canonical text of a set. Free with `pm_string_free`.
///
/// # Safety
/// `set` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn pm_set_to_string(set: *const PmSet) -> *mut c_char {
    set.as_ref().map_or(ptr::null_mut(), |s| owned(s.0.to_string()))
}

/// # Safety
/// `set` must be NULL or a handle from `pm_set_parse`.
#[no_mangle]
pub unsafe extern "C" fn pm_set_free(set: *mut PmSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Parses an ideal expression such as `join(fin, powerset(ap:0,2))`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_ideal_parse(expr: *const c_char, result: *mut *mut PmIdeal) -> PmStatus {
    guard(|| {
        let ideal = parse_ideal(text(expr)?)?;
        *out(result)? = Box::into_raw(Box::new(PmIdeal(ideal)));
        Ok(())
    })
}

/// # Safety
/// `ideal` must be NULL or a handle from `pm_ideal_parse`.
#[no_mangle]
pub unsafe extern "C" fn pm_ideal_free(ideal: *mut PmIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// Handles and output pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_ideal_contains(ideal: *const PmIdeal, set: *const PmSet, result: *mut bool) -> PmStatus {
    guard(|| {
        *out(result)? = handle(ideal)?.0.contains(&handle(set)?.0)?;
        Ok(())
    })
}

/// # Safety
/// Handle and output pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_ideal_is_nontrivial(ideal: *const PmIdeal, result: *mut bool) -> PmStatus {
    guard(|| {
        *out(result)? = handle(ideal)?.0.is_nontrivial()?;
        Ok(())
    })
}

/// # Safety
/// Handle and output pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_ideal_is_admissible(ideal: *const PmIdeal, result: *mut bool) -> PmStatus {
    guard(|| {
        *out(result)? = handle(ideal)?.0.is_admissible()?;
        Ok(())
    })
}

/// Loads a scenario from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `result` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_scenario_load(json: *const c_char, result: *mut *mut PmScenario) -> PmStatus {
    guard(|| {
        let scenario = Scenario::from_json("ffi", text(json)?)?;
        *out(result)? = Box::into_raw(Box::new(PmScenario(scenario)));
        Ok(())
    })
}

/// # Safety
/// `scenario` must be NULL or a handle from `pm_scenario_load`.
#[no_mangle]
pub unsafe extern "C" fn pm_scenario_free(scenario: *mut PmScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Runs the scenario's checks. `report` receives the JSON report (free with
/// `pm_string_free`) and `all_passed` the overall verdict.
///
/// # Safety
/// Handle and output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_scenario_run(
    scenario: *const PmScenario,
    tolerance: f64,
    universe_size: u32,
    report: *mut *mut c_char,
    all_passed: *mut bool,
) -> PmStatus {
    guard(|| {
        let s = handle(scenario)?;
        if !(1..=pmconv::ap::MAX_UNIVERSE).contains(&universe_size) {
            return Err(Error::Cap(format!("universe size {universe_size}")).into());
        }
        let opts = Options { tolerance: from_f64(tolerance)?, universe: universe_size, only: None };
        let r = run_scenarios(std::slice::from_ref(&s.0), &opts, None);
        *out(all_passed)? = r.all_passed();
        *out(report)? = owned(r.to_json());
        Ok(())
    })
}

/// Strong-`I` convergence of a scenario function to a named point.
///
/// # Safety
/// Handle, strings and output pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_scenario_strong_converges(
    scenario: *const PmScenario,
    function: *const c_char,
    ideal: *const c_char,
    point: *const c_char,
    result: *mut bool,
) -> PmStatus {
    guard(|| {
        let s = &handle(scenario)?.0;
        let f = s.function(text(function)?)?;
        let i = s.ideal(text(ideal)?)?;
        let p = s.space.id(text(point)?)?;
        *out(result)? = strong_converges(f, i, &s.space, p)?.converges;
        Ok(())
    })
}

/// Strong-`I^K` convergence of a scenario function to a named point.
///
/// # Safety
/// Handle, strings and output pointer must be valid.
#[no_mangle]
pub unsafe extern "C" fn pm_scenario_strong_ik_converges(
    scenario: *const PmScenario,
    function: *const c_char,
    ideal_i: *const c_char,
    ideal_k: *const c_char,
    point: *const c_char,
    result: *mut bool,
) -> PmStatus {
    guard(|| {
        let s = &handle(scenario)?.0;
        let f = s.function(text(function)?)?;
        let i = s.ideal(text(ideal_i)?)?;
        let k = s.ideal(text(ideal_k)?)?;
        let p = s.space.id(text(point)?)?;
        *out(result)? = strong_ik_converges(f, i, k, &s.space, p)?.converges;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        let f: Failure = Error::Parse { line: 1, column: 2, message: "x".into() }.into();
        assert_eq!(f.0, PmStatus::Parse);
        let f: Failure = Error::TrivialIdeal("x".into()).into();
        assert_eq!(f.0, PmStatus::TrivialIdeal);
        assert_eq!(guard(|| panic!("boom")), PmStatus::Panic);
    }
}
