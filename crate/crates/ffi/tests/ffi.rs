use std::ffi::{CStr, CString};
use std::ptr;

use unitforge_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = uf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    uf_string_free(p);
    s
}

unsafe fn load(key: &str) -> *mut UfGroup {
    let mut g = ptr::null_mut();
    assert_eq!(uf_group_catalog(cstr(key).as_ptr(), &mut g), UfStatus::Ok);
    g
}

unsafe fn find(g: *const UfGroup, name: &str) -> usize {
    let mut idx = usize::MAX;
    assert_eq!(uf_group_find(g, cstr(name).as_ptr(), &mut idx), UfStatus::Ok);
    idx
}

#[test]
fn heis27_bovdi_pair_through_c_api() {
    unsafe {
        let g = load("heis27");
        assert_eq!(uf_group_order(g), 27);
        let (x, y) = (find(g, "g"), find(g, "h"));
        assert_eq!(uf_group_element_order(g, y), 3);

        let (mut u, mut v) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(uf_unit_bovdi(g, 1, x, y, UfSide::Left, &mut u), UfStatus::Ok);
        let ginv = uf_group_inverse(g, x);
        assert_eq!(uf_group_inverse(g, 27), usize::MAX);
        assert_eq!(uf_unit_bovdi(g, 1, ginv, y, UfSide::Right, &mut v), UfStatus::Ok);
        let ord = uf_unit_predicted_order(u);
        assert!(ord > 1);
        assert_eq!(uf_unit_verify_order(u, 64), ord);

        let json = take_string(uf_unit_json(u));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["kind"], "BOVDI_LEFT");

        let mut rep = ptr::null_mut();
        let ord_v = uf_unit_predicted_order(v) as u64;
        assert_eq!(uf_free_product_oracle(u, ord as u64, v, ord_v, 6, &mut rep), UfStatus::Ok);
        assert_eq!(uf_report_verdict(rep), UfVerdict::PassedToBound);
        assert!(uf_report_words_checked(rep) > 0);
        let rj: serde_json::Value = serde_json::from_str(&take_string(uf_report_json(rep))).unwrap();
        assert_eq!(rj["verdict"], "PASSED_TO_BOUND");

        uf_report_free(rep);
        uf_unit_free(u);
        uf_unit_free(v);
        uf_group_free(g);
    }
}

#[test]
fn identical_units_give_a_violation() {
    unsafe {
        let g = load("d8");
        let (r, s) = (find(g, "r"), find(g, "s"));
        let mut u = ptr::null_mut();
        assert_eq!(uf_unit_bovdi(g, 1, r, s, UfSide::Left, &mut u), UfStatus::Ok);
        let ord = uf_unit_predicted_order(u) as u64;
        let mut rep = ptr::null_mut();
        assert_eq!(uf_free_product_oracle(u, ord, u, ord, 4, &mut rep), UfStatus::Ok);
        assert_eq!(uf_report_verdict(rep), UfVerdict::Violation);
        let rj: serde_json::Value = serde_json::from_str(&take_string(uf_report_json(rep))).unwrap();
        assert!(rj["witness"].is_array());
        uf_report_free(rep);

        let mut b = ptr::null_mut();
        assert_eq!(uf_unit_bicyclic(g, r, s, UfSide::Left, &mut b), UfStatus::Ok);
        assert_eq!(uf_unit_predicted_order(b), 0);
        let mut rep = ptr::null_mut();
        assert_eq!(uf_free_monoid_oracle(b, b, 3, &mut rep), UfStatus::Ok);
        assert_eq!(uf_report_verdict(rep), UfVerdict::Violation);
        uf_report_free(rep);
        uf_unit_free(b);
        uf_unit_free(u);
        uf_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(uf_group_catalog(cstr("nope").as_ptr(), &mut g), UfStatus::GroupError);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(uf_group_catalog(ptr::null(), &mut g), UfStatus::NullPointer);
        assert_eq!(last_error(), "key is null");

        let g = load("d8");
        let (r, s) = (find(g, "r"), find(g, "s"));
        let mut u = ptr::null_mut();
        assert_eq!(uf_unit_bovdi(g, 0, r, s, UfSide::Left, &mut u), UfStatus::HypothesisViolation);
        assert!(u.is_null());
        assert_eq!(uf_unit_bass(g, r, 2, 1, &mut u), UfStatus::HypothesisViolation);
        assert_eq!(uf_unit_bicyclic(g, 99, s, UfSide::Right, &mut u), UfStatus::HypothesisViolation);
        let mut idx = 0;
        assert_eq!(uf_group_find(g, cstr("zz").as_ptr(), &mut idx), UfStatus::GroupError);
        assert_eq!(uf_unit_bovdi(g, 1, r, s, UfSide::Left, &mut u), UfStatus::Ok);
        assert!(uf_last_error_message().is_null());

        let h = load("q8");
        let mut w = ptr::null_mut();
        assert_eq!(uf_unit_bicyclic(h, find(h, "i"), find(h, "j"), UfSide::Left, &mut w), UfStatus::Ok);
        let mut rep = ptr::null_mut();
        assert_eq!(uf_free_group_oracle(u, w, 2, &mut rep), UfStatus::FreenessError);
        assert!(rep.is_null());

        assert_eq!(uf_report_verdict(ptr::null()), UfVerdict::Inconclusive);
        assert!(uf_unit_json(ptr::null()).is_null());
        uf_unit_free(ptr::null_mut());
        uf_unit_free(w);
        uf_unit_free(u);
        uf_group_free(h);
        uf_group_free(g);
    }
}

#[test]
fn group_from_json_and_version() {
    unsafe {
        let mut g = ptr::null_mut();
        let text = cstr(r#"{"order": 2, "mul": [[0,1],[1,0]], "names": ["1","t"]}"#);
        assert_eq!(uf_group_from_json(text.as_ptr(), &mut g), UfStatus::Ok);
        assert_eq!(uf_group_order(g), 2);
        uf_group_free(g);
        let v = CStr::from_ptr(uf_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/unitforge.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct UfGroup UfGroup;"));
}
