use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use vlalg_ffi::*;

fn builtin(name: &str, dim: usize) -> *mut VlalgAlgebra {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { vlalg_builtin(name.as_ptr(), dim, &mut out) },
        VlalgStatus::Ok
    );
    assert!(!out.is_null());
    out
}

fn check(a: *const VlalgAlgebra, axioms: &str) -> (VlalgStatus, Option<String>) {
    let axioms = CString::new(axioms).unwrap();
    let mut report = ptr::null_mut();
    let status = unsafe { vlalg_check(a, axioms.as_ptr(), 2, -1, &mut report) };
    let text = (!report.is_null()).then(|| {
        let s = unsafe { CStr::from_ptr(report) }
            .to_str()
            .unwrap()
            .to_owned();
        unsafe { vlalg_string_free(report) };
        s
    });
    (status, text)
}

fn last_error() -> String {
    let p = vlalg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn builtin_checks_pass() {
    let w = builtin("W", 2);
    let (status, report) = check(w, "skew,jacobi");
    assert_eq!(status, VlalgStatus::Ok);
    assert!(report.unwrap().contains("\"axiom\":\"jacobi\""));
    assert!(vlalg_last_error_message().is_null());
    unsafe { vlalg_algebra_free(w) };
}

#[test]
fn violation_and_inapplicable_axiom() {
    let text = CString::new(
        "{\"kind\":\"pseudoalgebra\",\"dim\":1,\"generators\":[\"L\"]}\n\
         {\"pair\":[\"L\",\"L\"],\"lambda\":[0],\"gen\":\"L\",\"poly\":[[[0],[\"1\",\"1\"]]]}",
    )
    .unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { vlalg_parse(text.as_ptr(), &mut a) },
        VlalgStatus::Ok
    );
    let (status, report) = check(a, "skew");
    assert_eq!(status, VlalgStatus::Violation);
    assert!(report.unwrap().contains("2*L"));
    unsafe { vlalg_algebra_free(a) };

    let h = builtin("H", 2);
    assert_eq!(check(h, "closure").0, VlalgStatus::Domain);
    assert!(last_error().contains("closure"));
    assert_eq!(check(h, "associativity").0, VlalgStatus::Argument);
    unsafe { vlalg_algebra_free(h) };
}

#[test]
fn bad_arguments() {
    let mut out = ptr::null_mut();
    let name = CString::new("H").unwrap();
    assert_eq!(
        unsafe { vlalg_builtin(name.as_ptr(), 3, &mut out) },
        VlalgStatus::Argument
    );
    assert!(out.is_null());
    assert_eq!(
        unsafe { vlalg_builtin(ptr::null(), 2, &mut out) },
        VlalgStatus::NullPointer
    );
    assert_eq!(
        unsafe { vlalg_builtin(name.as_ptr(), 2, ptr::null_mut()) },
        VlalgStatus::NullPointer
    );
    let text = CString::new("{\"kind\":\"lie\",\"generators\":[]}").unwrap();
    assert_eq!(
        unsafe { vlalg_parse(text.as_ptr(), &mut out) },
        VlalgStatus::Parse
    );
    let missing = CString::new("/nonexistent/file.jsonl").unwrap();
    assert_eq!(
        unsafe { vlalg_load_file(missing.as_ptr(), &mut out) },
        VlalgStatus::Parse
    );
    assert_eq!(check(ptr::null(), "skew").0, VlalgStatus::NullPointer);
    assert!(unsafe { vlalg_emit(ptr::null()) }.is_null());
    unsafe {
        vlalg_algebra_free(ptr::null_mut());
        vlalg_string_free(ptr::null_mut());
    }
}

#[test]
fn emit_load_roundtrip() {
    let s = builtin("S", 3);
    let text = unsafe { vlalg_emit(s) };
    let owned = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.jsonl");
    std::fs::write(&path, &owned).unwrap();
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { vlalg_load_file(cpath.as_ptr(), &mut back) },
        VlalgStatus::Ok
    );
    let again = unsafe { vlalg_emit(back) };
    assert_eq!(unsafe { CStr::from_ptr(again) }.to_str().unwrap(), owned);
    unsafe {
        vlalg_string_free(text);
        vlalg_string_free(again);
        vlalg_algebra_free(s);
        vlalg_algebra_free(back);
    }
}

#[test]
fn harmonic_dimensions() {
    assert_eq!(vlalg_h_dim(1, 0), 1);
    assert_eq!(vlalg_h_dim(1, 3), 0);
    assert_eq!(vlalg_h_dim(3, 2), 5);
    assert_eq!(vlalg_h_dim(4, 2), 9);
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib_dir = deps.parent().unwrap();
    let lib = lib_dir.join("libvlalg_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    let Ok(status) = status else {
        eprintln!("skipping: no C compiler");
        return;
    };
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "h_dim(3,2) = 5\nW(2) skew,jacobi: 0\nH(3): 4\n"
    );
}
