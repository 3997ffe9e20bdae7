use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use prequant_ffi::*;

fn parse(text: &str) -> *mut PrequantGroup {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { prequant_group_parse(c.as_ptr(), &mut g) }, PrequantStatus::Ok);
    g
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { prequant_string_free(p) };
    s
}

fn last_error() -> String {
    let p = prequant_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn minimal_levels() {
    for (text, want) in [("PU:6", 6), ("SU:8/4", 2), ("PO:10", 4), ("PE6", 3), ("SO:9", 1)] {
        let g = parse(text);
        let mut l0 = 0;
        assert_eq!(unsafe { prequant_l0(g, &mut l0) }, PrequantStatus::Ok);
        assert_eq!(l0, want, "{text}");
        let mut json = ptr::null_mut();
        assert_eq!(unsafe { prequant_l0_json(g, &mut json) }, PrequantStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["l0"], want);
        unsafe { prequant_group_free(g) };
    }
}

#[test]
fn names_levels_and_pullbacks() {
    let g = parse("PU:3");
    let mut name = ptr::null_mut();
    assert_eq!(unsafe { prequant_group_name(g, &mut name) }, PrequantStatus::Ok);
    assert_eq!(take_string(name), "PU(3)");
    let mut admits = false;
    assert_eq!(unsafe { prequant_check_level(g, 6, 3, &mut admits) }, PrequantStatus::Ok);
    assert!(admits);
    let mut phi = ptr::null_mut();
    assert_eq!(unsafe { prequant_phi_star(g, 3, true, &mut phi) }, PrequantStatus::Ok);
    assert_eq!(take_string(phi), "x1 (x) y2 - y2 (x) x1");
    let mut checks = 0;
    let mut failures = 1;
    assert_eq!(unsafe { prequant_verify_hopf(g, 3, 8, &mut checks, &mut failures) }, PrequantStatus::Ok);
    assert!(checks > 0);
    assert_eq!(failures, 0);
    unsafe { prequant_group_free(g) };

    let su = parse("SU:8/4");
    let mut phi = ptr::dangling_mut();
    assert_eq!(unsafe { prequant_phi_star(su, 2, false, &mut phi) }, PrequantStatus::Ok);
    assert!(phi.is_null());
    unsafe { prequant_group_free(su) };
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    let bad = CString::new("PO:6").unwrap();
    assert_eq!(unsafe { prequant_group_parse(bad.as_ptr(), &mut g) }, PrequantStatus::ParseError);
    assert!(last_error().contains("PO(6)"));
    assert_eq!(unsafe { prequant_group_parse(ptr::null(), &mut g) }, PrequantStatus::NullPointer);
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { prequant_group_parse(invalid.as_ptr().cast(), &mut g) }, PrequantStatus::ParseError);

    let pu6 = parse("PU:6");
    let mut phi = ptr::null_mut();
    assert_eq!(unsafe { prequant_phi_star(pu6, 5, false, &mut phi) }, PrequantStatus::DomainError);
    let mut l0 = 0;
    assert_eq!(unsafe { prequant_l0(ptr::null(), &mut l0) }, PrequantStatus::NullPointer);
    assert_eq!(unsafe { prequant_l0(pu6, ptr::null_mut()) }, PrequantStatus::NullPointer);
    assert_eq!(unsafe { prequant_l0(pu6, &mut l0) }, PrequantStatus::Ok);
    assert!(prequant_last_error_message().is_null());
    unsafe { prequant_group_free(pu6) };
    unsafe { prequant_group_free(ptr::null_mut()) };
    unsafe { prequant_string_free(ptr::null_mut()) };
}

#[test]
fn alcove_checks() {
    // barycenter of SU(3): (1/3, 0, -1/3)
    let nums = [1i64, 0, -1];
    let dens = [3i64, 1, 3];
    for level in 1..=9 {
        let mut ok = false;
        assert_eq!(unsafe { prequant_conjclass_check(3, nums.as_ptr(), dens.as_ptr(), level, &mut ok) }, PrequantStatus::Ok);
        assert_eq!(ok, level % 3 == 0);
    }
    let outside = [2i64, -2, 0];
    let ones = [1i64, 1, 1];
    let mut ok = false;
    assert_eq!(
        unsafe { prequant_conjclass_check(3, outside.as_ptr(), ones.as_ptr(), 1, &mut ok) },
        PrequantStatus::DomainError
    );
    let zero_den = [1i64, 0, 1];
    assert_eq!(
        unsafe { prequant_conjclass_check(3, nums.as_ptr(), zero_den.as_ptr(), 1, &mut ok) },
        PrequantStatus::ParseError
    );

    let z4n = [3i64, 1, -1, -3];
    let z4d = [8i64; 4];
    let mut v = PrequantVerdict::No;
    assert_eq!(unsafe { prequant_marked_points(4, 4, z4n.as_ptr(), z4d.as_ptr(), 1, &mut v) }, PrequantStatus::Ok);
    assert_eq!(v, PrequantVerdict::Open);
    assert_eq!(unsafe { prequant_marked_points(4, 1, ptr::null(), ptr::null(), 0, &mut v) }, PrequantStatus::Ok);
    assert_eq!(v, PrequantVerdict::Yes);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(prequant_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

fn have(tool: &str) -> bool {
    Command::new(tool).arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn header_compiles_and_links_from_c() {
    if !have("cc") {
        eprintln!("no C compiler; skipping");
        return;
    }
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libprequant_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("prequant_c_smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
