use std::ffi::{c_char, CStr, CString};
use std::ptr;

use k4hol_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { k4hol_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(k4hol_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn root_system(name: &str) -> *mut K4holRootSystem {
    let name = CString::new(name).unwrap();
    let mut rs = ptr::null_mut();
    assert_eq!(
        unsafe { k4hol_root_system_new(name.as_ptr(), &mut rs) },
        K4holStatus::Ok
    );
    rs
}

#[test]
fn e7_root_system_and_involutions() {
    let rs = root_system("E7");
    let (mut rank, mut count) = (0, 0);
    assert_eq!(
        unsafe { k4hol_root_system_size(rs, &mut rank, &mut count) },
        K4holStatus::Ok
    );
    assert_eq!((rank, count), (7, 126));

    let mut cartan = vec![0i32; 49];
    assert_eq!(
        unsafe { k4hol_root_system_cartan(rs, cartan.as_mut_ptr(), 49) },
        K4holStatus::Ok
    );
    assert!((0..7).all(|i| cartan[i * 8] == 2));
    assert_eq!(cartan.iter().filter(|&&c| c == -1).count(), 12);
    assert_eq!(
        unsafe { k4hol_root_system_cartan(rs, cartan.as_mut_ptr(), 10) },
        K4holStatus::InvalidArgument
    );

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { k4hol_classify_involutions_json(rs, &mut out) },
        K4holStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["rows"].as_array().map(Vec::len), Some(3));
    unsafe { k4hol_root_system_free(rs) };
}

#[test]
fn algebra_constants() {
    let rs = root_system("A2");
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { k4hol_algebra_new(rs, &mut alg) }, K4holStatus::Ok);
    let mut dim = 0;
    assert_eq!(unsafe { k4hol_algebra_dim(alg, &mut dim) }, K4holStatus::Ok);
    assert_eq!(dim, 8);
    // each root has two partners at 120 degrees, all with N = +-1
    let mut n = 0;
    let mut nonzero = 0;
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(
                unsafe { k4hol_algebra_structure_constant(alg, a, b, &mut n) },
                K4holStatus::Ok
            );
            assert!(n.abs() <= 1);
            nonzero += (n != 0) as usize;
        }
    }
    assert_eq!(nonzero, 12);
    assert_eq!(
        unsafe { k4hol_algebra_structure_constant(alg, 6, 0, &mut n) },
        K4holStatus::InvalidArgument
    );
    unsafe {
        k4hol_algebra_free(alg);
        k4hol_root_system_free(rs);
    }

    let b2 = root_system("B2");
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { k4hol_algebra_new(b2, &mut alg) }, K4holStatus::MathError);
    assert!(alg.is_null());
    assert!(!last_error().is_empty());
    unsafe { k4hol_root_system_free(b2) };
}

#[test]
fn catalog_pairs() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { k4hol_admissible_pairs_json(&mut out) }, K4holStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v.as_array().map(Vec::len), Some(10));

    let name = CString::new("y3-y4").unwrap();
    assert_eq!(
        unsafe { k4hol_group_pairs_json(name.as_ptr(), &mut out) },
        K4holStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v.as_array().map(Vec::len), Some(3));

    let bad = CString::new("z9").unwrap();
    assert_eq!(
        unsafe { k4hol_group_pairs_json(bad.as_ptr(), &mut out) },
        K4holStatus::InvalidArgument
    );
    assert!(last_error().contains("z9"));
}

#[test]
fn e6_verification() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { k4hol_chevalley_verify_json(&mut out) }, K4holStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["dim"], 78);
}

#[test]
fn bad_arguments() {
    let mut rs = ptr::null_mut();
    assert_eq!(
        unsafe { k4hol_root_system_new(ptr::null(), &mut rs) },
        K4holStatus::NullArgument
    );
    let name = CString::new("Q4").unwrap();
    assert_eq!(
        unsafe { k4hol_root_system_new(name.as_ptr(), &mut rs) },
        K4holStatus::InvalidArgument
    );
    assert!(!last_error().is_empty());
    let bytes = [0xffu8, 0];
    assert_eq!(
        unsafe { k4hol_root_system_new(bytes.as_ptr().cast(), &mut rs) },
        K4holStatus::InvalidArgument
    );
    assert!(rs.is_null());
    let mut dim = 0;
    assert_eq!(
        unsafe { k4hol_algebra_dim(ptr::null(), &mut dim) },
        K4holStatus::NullArgument
    );
    unsafe {
        k4hol_string_free(ptr::null_mut());
        k4hol_root_system_free(ptr::null_mut());
        k4hol_algebra_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(k4hol_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// The generated header compiles as C.
#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/k4hol.h");
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .status();
    match status {
        Ok(s) => assert!(s.success()),
        Err(e) => eprintln!("skipping, no C compiler: {e}"),
    }
}
