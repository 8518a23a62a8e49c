use std::ffi::{c_char, CStr, CString};
use std::ptr;

use premon_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn instance(spec: &str) -> *mut PremonInstance {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { premon_instance_new(c(spec).as_ptr(), &mut out) }, PremonStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = premon_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn take_json(p: *mut c_char) -> Value {
    let v = serde_json::from_str(CStr::from_ptr(p).to_str().unwrap()).unwrap();
    premon_string_free(p);
    v
}

#[test]
fn classify_and_queries() {
    let h = instance(r#"{"family":"puiseux","a":2,"b":3}"#);
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(premon_classify(h, c("2").as_ptr(), ptr::null(), &mut json), PremonStatus::Ok);
        let v = take_json(json);
        assert_eq!(v["is_quark"], "false");
        assert_eq!(v["height"]["infinite"]["witnessed_depth"], 30);

        let mut t = PremonTri::Unknown;
        assert_eq!(premon_is_quark(h, c("1").as_ptr(), ptr::null(), &mut t), PremonStatus::Ok);
        assert_eq!(t, PremonTri::True);
        assert_eq!(premon_is_irreducible(h, c("2").as_ptr(), 2, ptr::null(), &mut t), PremonStatus::Ok);
        assert_eq!(t, PremonTri::False);
        assert_eq!(premon_is_irreducible(h, c("2/3").as_ptr(), 0, ptr::null(), &mut t), PremonStatus::Ok);
        assert_eq!(t, PremonTri::True);

        let mut budget = premon_budget_default();
        assert_eq!(budget.chain_depth, 30);
        budget.chain_depth = 4;
        let mut height = PremonHeight { kind: PremonHeightKind::Exact, value: 0 };
        assert_eq!(premon_height(h, c("2").as_ptr(), &budget, &mut height), PremonStatus::Ok);
        assert_eq!(height, PremonHeight { kind: PremonHeightKind::Infinite, value: 4 });
        assert_eq!(premon_height(h, c("1").as_ptr(), &budget, &mut height), PremonStatus::Ok);
        assert_eq!(height, PremonHeight { kind: PremonHeightKind::Exact, value: 1 });

        let mut json = ptr::null_mut();
        assert_eq!(premon_chain(h, ptr::null(), 3, ptr::null(), &mut json), PremonStatus::Ok);
        let v = take_json(json);
        assert_eq!(v["elements"], serde_json::json!(["2", "4/3", "8/9"]));
        assert_eq!(v["strict"], true);
        premon_instance_free(h);
    }
}

#[test]
fn finite_and_presented_instances() {
    let f = instance(r#"{"family":"finite","size":2,"identity":0,"table":[[0,1],[1,1]]}"#);
    let m = instance(r#"{"family":"presented","h":2,"k":3}"#);
    unsafe {
        let mut t = PremonTri::Unknown;
        assert_eq!(premon_is_quark(f, c("1").as_ptr(), ptr::null(), &mut t), PremonStatus::Ok);
        assert_eq!(t, PremonTri::True);
        assert_eq!(premon_is_quark(m, c("y2").as_ptr(), ptr::null(), &mut t), PremonStatus::Ok);
        assert_eq!(t, PremonTri::True);
        assert_eq!(premon_is_quark(m, c("x0").as_ptr(), ptr::null(), &mut t), PremonStatus::Ok);
        assert_eq!(t, PremonTri::False);
        premon_instance_free(f);
        premon_instance_free(m);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(premon_instance_new(ptr::null(), &mut out), PremonStatus::NullPointer);
        assert_eq!(premon_instance_new(c("{").as_ptr(), &mut out), PremonStatus::InvalidInput);
        assert!(last_error().contains("invalid instance"));
        assert_eq!(
            premon_instance_new(c(r#"{"family":"puiseux","a":3,"b":2}"#).as_ptr(), &mut out),
            PremonStatus::InvalidInput
        );
        let bytes = [0xffu8, 0];
        assert_eq!(premon_instance_new(bytes.as_ptr().cast(), &mut out), PremonStatus::InvalidUtf8);

        let h = instance(r#"{"family":"puiseux","a":2,"b":3}"#);
        let mut t = PremonTri::Unknown;
        assert_eq!(premon_is_quark(h, c("1/5").as_ptr(), ptr::null(), &mut t), PremonStatus::InvalidInput);
        assert_eq!(premon_is_quark(h, c("0").as_ptr(), ptr::null(), &mut t), PremonStatus::InvalidInput);
        assert!(last_error().contains("unit"), "{}", last_error());
        assert_eq!(premon_is_irreducible(h, c("2").as_ptr(), 1, ptr::null(), &mut t), PremonStatus::InvalidInput);
        assert_eq!(premon_is_quark(h, c("1").as_ptr(), ptr::null(), ptr::null_mut()), PremonStatus::NullPointer);
        let mut budget = premon_budget_default();
        budget.node_cap = 0;
        assert_eq!(premon_is_quark(h, c("1").as_ptr(), &budget, &mut t), PremonStatus::InvalidBudget);
        premon_instance_free(h);
        premon_instance_free(ptr::null_mut());
        premon_string_free(ptr::null_mut());
    }
}

#[test]
fn monoid_counts_and_version() {
    let mut n = 0usize;
    for (order, count) in [(1, 1), (2, 2), (3, 7), (4, 35)] {
        assert_eq!(unsafe { premon_monoid_count(order, &mut n) }, PremonStatus::Ok);
        assert_eq!(n, count);
    }
    assert_eq!(unsafe { premon_monoid_count(9, &mut n) }, PremonStatus::InvalidInput);
    let v = unsafe { CStr::from_ptr(premon_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
