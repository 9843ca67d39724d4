use std::ffi::{c_char, CStr, CString};
use std::ptr;

use lefkit_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    lef_string_free(s);
    v
}

fn last_error() -> String {
    let p = lef_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn extract_search_verify() {
    unsafe {
        let mut z = ptr::null_mut();
        let spec = c(r#"{"kind":"fg-abelian","rank":1}"#);
        assert_eq!(lef_group_from_json(spec.as_ptr(), &mut z), LefStatus::Ok);

        let mut t = ptr::null_mut();
        let subset = c("[1,2,3]");
        assert_eq!(lef_table_extract(z, subset.as_ptr(), &mut t), LefStatus::Ok);
        let mut n = 0usize;
        assert_eq!(lef_table_size(t, &mut n), LefStatus::Ok);
        assert_eq!(n, 3);

        let mut out = ptr::null_mut();
        let family = c("cyclic");
        assert_eq!(
            lef_search_family(t, family.as_ptr(), ptr::null(), &mut out),
            LefStatus::Ok
        );
        let w = take(out);
        assert_eq!(w["target"]["m"], 3);
        assert_eq!(w["verified"], true);

        let mut ok = -1;
        let a = c(&w.to_string());
        assert_eq!(lef_verify_assignment(t, a.as_ptr(), &mut ok), LefStatus::Ok);
        assert_eq!(ok, 1);
        let bad = c(r#"{"target":{"kind":"cyclic","m":3},"images":[1,1,2]}"#);
        assert_eq!(
            lef_verify_assignment(t, bad.as_ptr(), &mut ok),
            LefStatus::Ok
        );
        assert_eq!(ok, 0);

        let mut json = ptr::null_mut();
        assert_eq!(lef_table_to_json(t, &mut json), LefStatus::Ok);
        let tj = take(json);
        assert_eq!(
            tj["triples"],
            serde_json::json!([[0, 0, 1], [0, 1, 2], [1, 0, 2]])
        );

        lef_table_free(t);
        lef_group_free(z);
    }
}

#[test]
fn single_target_and_budget() {
    unsafe {
        let mut t = ptr::null_mut();
        let table = c(r#"{"size":3,"triples":[[0,0,1],[0,1,2],[1,0,2]]}"#);
        assert_eq!(lef_table_from_json(table.as_ptr(), &mut t), LefStatus::Ok);

        let mut g = ptr::null_mut();
        let s3 = c(r#"{"kind":"symmetric","n":3}"#);
        assert_eq!(lef_group_from_json(s3.as_ptr(), &mut g), LefStatus::Ok);
        let mut order = 0u64;
        assert_eq!(lef_group_order(g, &mut order), LefStatus::Ok);
        assert_eq!(order, 6);

        let mut out = ptr::null_mut();
        assert_eq!(
            lef_search_target(t, g, ptr::null(), &mut out),
            LefStatus::Ok
        );
        assert!(take(out)["images"].is_array());

        let family = c("cyclic");
        let budget = c(r#"{"max_cyclic_m":8,"node_limit":1}"#);
        assert_eq!(
            lef_search_family(t, family.as_ptr(), budget.as_ptr(), &mut out),
            LefStatus::BudgetExceeded
        );
        assert_eq!(take(out)["outcome"], "budget-exceeded");

        lef_group_free(g);
        lef_table_free(t);
    }
}

#[test]
fn abelian_ball_quotient() {
    unsafe {
        let mut z = ptr::null_mut();
        let spec = c(r#"{"kind":"lattice","rank":1}"#);
        assert_eq!(lef_group_from_json(spec.as_ptr(), &mut z), LefStatus::Ok);
        let mut out = ptr::null_mut();
        let subset = c("[2,5,9]");
        assert_eq!(
            lef_abelian_witness(z, subset.as_ptr(), &mut out),
            LefStatus::Ok
        );
        let w = take(out);
        assert_eq!(w["target"]["m"], 8);
        assert_eq!(w["images"], serde_json::json!([2, 5, 1]));
        lef_group_free(z);

        let mut n = 0u64;
        assert_eq!(lef_ball_size(2, 2, &mut n), LefStatus::Ok);
        assert_eq!(n, 17);

        let mut p = ptr::null_mut();
        let pres = c(r#"{"rank":1,"relators":["x0^2"]}"#);
        assert_eq!(
            lef_presentation_from_json(pres.as_ptr(), &mut p),
            LefStatus::Ok
        );
        assert_eq!(
            lef_quotient_search(p, 2, ptr::null(), &mut out),
            LefStatus::Ok
        );
        let q = take(out);
        assert_eq!(q["outcome"], "found");
        assert_eq!(q["target"]["m"], 2);
        lef_presentation_free(p);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = c(r#"{"kind":"cyclic","m":0}"#);
        assert_eq!(
            lef_group_from_json(bad.as_ptr(), &mut g),
            LefStatus::InvalidInput
        );
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            lef_group_from_json(ptr::null(), &mut g),
            LefStatus::NullPointer
        );
        assert!(last_error().contains("null"));

        let z = c(r#"{"kind":"free","rank":2}"#);
        assert_eq!(lef_group_from_json(z.as_ptr(), &mut g), LefStatus::Ok);
        let mut order = 0u64;
        assert_eq!(lef_group_order(g, &mut order), LefStatus::NotEnumerable);
        lef_group_free(g);

        let mut n = 0u64;
        assert_eq!(lef_ball_size(0, 2, &mut n), LefStatus::InvalidInput);
        assert_eq!(lef_ball_size(3, 1, &mut n), LefStatus::Ok);
        assert!(lef_last_error_message().is_null());

        let mut t = ptr::null_mut();
        let table = c(r#"{"size":2,"triples":[[0,0,1],[0,0,0]]}"#);
        assert_eq!(
            lef_table_from_json(table.as_ptr(), &mut t),
            LefStatus::InvalidInput
        );

        lef_string_free(ptr::null_mut());
        lef_table_free(ptr::null_mut());
    }
}
