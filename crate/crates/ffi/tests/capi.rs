//! The C ABI exercised from Rust, plus a C program linked against the
//! static library and compiled with the generated header.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use itercomp_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(itc_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    itc_string_free(p);
    s
}

struct Handles {
    field: *mut ItcField,
    f: *mut ItcPoly,
    g: *mut ItcPoly,
}

impl Handles {
    fn new(field: &str, f: &str, g: &str) -> Handles {
        let mut h = Handles { field: ptr::null_mut(), f: ptr::null_mut(), g: ptr::null_mut() };
        unsafe {
            assert_eq!(itc_field_new(cstr(field).as_ptr(), ptr::null(), &mut h.field), ItcStatus::Ok);
            assert_eq!(itc_poly_parse(h.field, cstr(f).as_ptr(), &mut h.f), ItcStatus::Ok);
            assert_eq!(itc_poly_parse(h.field, cstr(g).as_ptr(), &mut h.g), ItcStatus::Ok);
        }
        h
    }
}

impl Drop for Handles {
    fn drop(&mut self) {
        unsafe {
            itc_poly_free(self.f);
            itc_poly_free(self.g);
            itc_field_free(self.field);
        }
    }
}

#[test]
fn profile_of_x_plus_one_under_squaring() {
    // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F_3.
    let h = Handles::new("3", "x+1", "x^2");
    unsafe {
        for mode in [ItcMode::Direct, ItcMode::ViaRoot] {
            let mut prof = ptr::null_mut();
            assert_eq!(itc_profile_compute(h.f, h.g, 2, mode, ptr::null(), &mut prof), ItcStatus::Ok);
            let mut v = ItcProfileValues::default();
            assert_eq!(itc_profile_values(prof, &mut v), ItcStatus::Ok);
            assert_eq!((v.n, v.count, v.max_deg, v.min_deg, v.delta, v.max_mult), (2, 2, 2, 2, 4, 1));
            assert_eq!(itc_profile_census_len(prof), 1);
            let mut row = ItcCensusRow::default();
            assert_eq!(itc_profile_census_row(prof, 0, &mut row), ItcStatus::Ok);
            assert_eq!(row, ItcCensusRow { degree: 2, multiplicity: 1, count: 2 });
            assert_eq!(itc_profile_census_row(prof, 1, &mut row), ItcStatus::OutOfRange);
            let mut json = ptr::null_mut();
            assert_eq!(itc_profile_to_json(prof, &mut json), ItcStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
            assert_eq!((v["schema"].as_u64(), v["N"].as_u64(), v["A"].as_str()), (Some(1), Some(2), Some("4/2")));
            itc_profile_free(prof);
        }
    }
}

#[test]
fn classification_and_round_trip() {
    let h = Handles::new("2", "x", "x^2+1");
    unsafe {
        let mut class = ItcPairClass::Generic;
        assert_eq!(itc_classify(h.f, h.g, &mut class), ItcStatus::Ok);
        assert_eq!(class, ItcPairClass::PCritical);
        let mut s = ptr::null_mut();
        assert_eq!(itc_poly_to_string(h.g, &mut s), ItcStatus::Ok);
        assert_eq!(take_string(s), "x^2 + 1");
        assert_eq!(itc_field_order(h.field), 2);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut field = ptr::null_mut();
        assert_eq!(itc_field_new(cstr("6").as_ptr(), ptr::null(), &mut field), ItcStatus::Parse);
        assert!(last_error().contains("prime power"), "{}", last_error());
        assert_eq!(itc_field_new(ptr::null(), ptr::null(), &mut field), ItcStatus::NullPointer);
        assert_eq!(itc_field_new(cstr("9").as_ptr(), ptr::null(), &mut field), ItcStatus::Ok);
        assert_eq!(last_error(), "");
        let mut poly = ptr::null_mut();
        assert_eq!(itc_poly_parse(field, cstr("x^2 + ?").as_ptr(), &mut poly), ItcStatus::Parse);
        assert!(poly.is_null());
        itc_field_free(field);
    }
    let h = Handles::new("3", "x+1", "x^2");
    unsafe {
        let mut cfg = itc_config_default();
        cfg.degree_cap = 10;
        let mut prof = ptr::null_mut();
        assert_eq!(itc_profile_compute(h.f, h.g, 4, ItcMode::Direct, &cfg, &mut prof), ItcStatus::Cap);
        assert!(prof.is_null());
        let mut class = ItcPairClass::Generic;
        let lin = Handles::new("3", "x+1", "x+2");
        assert_eq!(itc_classify(lin.f, lin.g, &mut class), ItcStatus::InvalidInput);
        itc_string_free(ptr::null_mut());
        itc_profile_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/itercomp.h")).unwrap();
    for name in [
        "itc_field_new",
        "itc_poly_parse",
        "itc_poly_to_string",
        "itc_classify",
        "itc_profile_compute",
        "itc_profile_values",
        "itc_profile_census_row",
        "itc_profile_to_json",
        "itc_last_error",
        "ITC_STATUS_NOT_GENERIC",
        "typedef struct ItcPoly ItcPoly",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "itercomp.h"

int main(void) {
    ItcField *field = NULL;
    ItcPoly *f = NULL, *g = NULL;
    ItcProfile *prof = NULL;
    if (itc_field_new("3", NULL, &field) != ITC_STATUS_OK) return 1;
    if (itc_poly_parse(field, "x+1", &f) != ITC_STATUS_OK) return 2;
    if (itc_poly_parse(field, "x^2", &g) != ITC_STATUS_OK) return 3;
    if (itc_profile_compute(f, g, 3, ITC_MODE_DIRECT, NULL, &prof) != ITC_STATUS_OK) return 4;
    ItcProfileValues v;
    if (itc_profile_values(prof, &v) != ITC_STATUS_OK) return 5;
    printf("N=%llu M=%llu\n", (unsigned long long)v.count, (unsigned long long)v.max_deg);
    if (itc_poly_parse(field, "(x+1)^2", &f) != ITC_STATUS_PARSE) return 6;
    if (strlen(itc_last_error()) == 0) return 7;
    itc_profile_free(prof);
    itc_poly_free(g);
    itc_poly_free(f);
    itc_field_free(field);
    return 0;
}
"#;

/// Compiles and runs a C client when a C compiler and the static library
/// are available; otherwise reports the skip and passes.
#[test]
fn c_client_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Integration tests run from target/<profile>/deps; the static library
    // sits one level up.
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = lib_dir.join("libitercomp_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C client: no cc or no {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.path().join("client");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to compile");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C client exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "N=2 M=4\n");
}
