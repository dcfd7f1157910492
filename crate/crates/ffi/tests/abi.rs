use std::ffi::{CStr, CString};
use std::ptr;

use pmconv_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pm_string_free(s);
    out
}

const SCENARIO: &str = r#"{
  "space": {"metric": {"points": ["x", "y"], "distances": [["x", "y", "1/2"]]}},
  "ideals": {"I": "powerset(ap:0,2)", "K": "powerset(ap:0,3)"},
  "functions": {"f": [{"set": "ap:0,3", "value": "y"}, {"set": "~ap:0,3", "value": "x"}]},
  "checks": [{"id": "example-3-counterexample", "bindings": {"f": "f", "I": "I", "K": "K", "p": "x"}}]
}"#;

#[test]
fn unit_step_distance() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pm_ddf_new([0.25].as_ptr(), [1.0].as_ptr(), 1, &mut g), PmStatus::Ok);
        let mut e0 = ptr::null_mut();
        assert_eq!(pm_ddf_new([0.0].as_ptr(), [1.0].as_ptr(), 1, &mut e0), PmStatus::Ok);
        let (mut lo, mut hi, mut exact) = (0.0, 0.0, 0.0);
        assert_eq!(pm_levy_distance(g, e0, 1e-9, &mut lo, &mut hi), PmStatus::Ok);
        assert_eq!(pm_distance_to_identity(g, &mut exact), PmStatus::Ok);
        assert_eq!(exact, 0.25);
        assert!(lo <= 0.25 && 0.25 <= hi && hi - lo <= 1e-9);
        pm_ddf_free(g);
        pm_ddf_free(e0);
    }
}

#[test]
fn invalid_ddf_sets_the_last_error() {
    unsafe {
        let mut g = ptr::null_mut();
        let status = pm_ddf_new([1.0, 2.0].as_ptr(), [0.5, 0.25].as_ptr(), 2, &mut g);
        assert_eq!(status, PmStatus::Domain);
        assert!(g.is_null());
        assert!(!take(pm_last_error()).is_empty());
        assert_eq!(pm_ddf_new(ptr::null(), ptr::null(), 1, &mut g), PmStatus::NullPointer);
    }
}

#[test]
fn ideals_and_sets() {
    unsafe {
        let (mut i, mut a) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pm_ideal_parse(c("join(fin, powerset(ap:0,2))").as_ptr(), &mut i), PmStatus::Ok);
        assert_eq!(pm_set_parse(c("ap:0,4 | finite:[3, 5]").as_ptr(), &mut a), PmStatus::Ok);
        assert_eq!(take(pm_set_to_string(a)), "ap:0,4 | finite:[3,5]");
        let mut yes = false;
        assert_eq!(pm_ideal_contains(i, a, &mut yes), PmStatus::Ok);
        assert!(yes);
        assert_eq!(pm_ideal_is_admissible(i, &mut yes), PmStatus::Ok);
        assert!(yes);
        assert_eq!(pm_ideal_is_nontrivial(i, &mut yes), PmStatus::Ok);
        assert!(yes);
        pm_set_free(a);
        pm_ideal_free(i);
        let mut bad = ptr::null_mut();
        assert_eq!(pm_set_parse(c("ap:0;2").as_ptr(), &mut bad), PmStatus::Parse);
        assert!(take(pm_last_error()).contains("column 5"));
    }
}

#[test]
fn scenario_round_trip() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(pm_scenario_load(c(SCENARIO).as_ptr(), &mut s), PmStatus::Ok);
        let (x, f) = (c("x"), c("f"));
        let mut v = true;
        assert_eq!(pm_scenario_strong_converges(s, f.as_ptr(), c("I").as_ptr(), x.as_ptr(), &mut v), PmStatus::Ok);
        assert!(!v);
        assert_eq!(
            pm_scenario_strong_ik_converges(s, f.as_ptr(), c("I").as_ptr(), c("K").as_ptr(), x.as_ptr(), &mut v),
            PmStatus::Ok
        );
        assert!(v);
        assert_eq!(pm_scenario_strong_converges(s, f.as_ptr(), c("Q").as_ptr(), x.as_ptr(), &mut v), PmStatus::Scenario);
        let (mut report, mut passed) = (ptr::null_mut(), false);
        assert_eq!(pm_scenario_run(s, 1e-9, 4, &mut report, &mut passed), PmStatus::Ok);
        assert!(passed);
        assert!(take(report).contains("\"schema_version\": 1"));
        pm_scenario_free(s);
    }
}
