use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gorfro_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gorfro_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn check(id: &str, field: Option<&str>) -> (GorfroStatus, *mut GorfroReport) {
    let id = cstr(id);
    let field = field.map(cstr);
    let mut out = ptr::null_mut();
    let st = unsafe {
        gorfro_check_example(
            id.as_ptr(),
            field.as_ref().map_or(ptr::null(), |f| f.as_ptr()),
            0,
            &mut out,
        )
    };
    (st, out)
}

fn betti(report: *const GorfroReport) -> Vec<[usize; 3]> {
    let mut s = GorfroSummary::default();
    assert_eq!(
        unsafe { gorfro_report_summary(report, &mut s) },
        GorfroStatus::Ok
    );
    (0..s.betti_len)
        .map(|k| {
            let (mut p, mut q, mut b) = (0, 0, 0);
            let st = unsafe { gorfro_report_betti(report, k, &mut p, &mut q, &mut b) };
            assert_eq!(st, GorfroStatus::Ok);
            [p, q, b]
        })
        .collect()
}

#[test]
fn catalog_entry_round_trip() {
    let (st, r) = check("veronese:1,3", None);
    assert_eq!(st, GorfroStatus::Ok, "{}", last_error());
    let mut s = GorfroSummary::default();
    unsafe { gorfro_report_summary(r, &mut s) };
    assert_eq!((s.nvars, s.dim, s.pd, s.cm_type), (4, 2, 2, 2));
    assert_eq!((s.gorenstein, s.frobenius, s.failed), (0, 0, 0));
    assert_eq!(betti(r), vec![[0, 0, 1], [1, 2, 3], [2, 3, 2]]);

    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { gorfro_report_json(r, &mut json) },
        GorfroStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["example"], "veronese:1,3");
    assert_eq!(value["gorenstein"], false);
    unsafe {
        gorfro_string_free(json);
        gorfro_report_free(r);
    }
}

#[test]
fn prime_field_and_subcanonical_entry() {
    let (st, r) = check("plucker2:4", Some("p"));
    assert_eq!(st, GorfroStatus::Ok);
    let mut s = GorfroSummary::default();
    unsafe { gorfro_report_summary(r, &mut s) };
    assert_eq!((s.gorenstein, s.subcanonical, s.subcanonical_n), (1, 1, 4));
    unsafe { gorfro_report_free(r) };
}

#[test]
fn ideal_text() {
    let text = cstr("ring n=3\nx0*x2 - x1^2\n");
    let mut out = ptr::null_mut();
    let st = unsafe { gorfro_check_ideal_text(text.as_ptr(), ptr::null(), 0, &mut out) };
    assert_eq!(st, GorfroStatus::Ok, "{}", last_error());
    assert_eq!(betti(out), vec![[0, 0, 1], [1, 2, 1]]);
    unsafe { gorfro_report_free(out) };

    let bad = cstr("ring n=2\nx0 + x1^2\n");
    let st = unsafe { gorfro_check_ideal_text(bad.as_ptr(), ptr::null(), 0, &mut out) };
    assert_eq!(st, GorfroStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().contains("inhomogeneous"), "{}", last_error());
}

#[test]
fn error_codes() {
    let (st, r) = check("nope:1", None);
    assert_eq!(st, GorfroStatus::Parse);
    assert!(r.is_null());
    assert!(!last_error().is_empty());

    let (st, _) = check("ci:2,2", Some("p:32004"));
    assert_ne!(st, GorfroStatus::Ok);

    let mut out = ptr::null_mut();
    let st = unsafe { gorfro_check_example(ptr::null(), ptr::null(), 0, &mut out) };
    assert_eq!(st, GorfroStatus::NullPointer);

    let invalid = [0xffu8, 0];
    let st = unsafe { gorfro_check_example(invalid.as_ptr().cast(), ptr::null(), 0, &mut out) };
    assert_eq!(st, GorfroStatus::InvalidUtf8);

    let (st, r) = check("ci:4", None);
    assert_eq!(st, GorfroStatus::Ok);
    assert!(last_error().is_empty());
    let (mut p, mut q, mut b) = (0, 0, 0);
    let st = unsafe { gorfro_report_betti(r, 99, &mut p, &mut q, &mut b) };
    assert_eq!(st, GorfroStatus::InvalidInput);
    unsafe {
        gorfro_report_free(r);
        gorfro_report_free(ptr::null_mut());
        gorfro_string_free(ptr::null_mut());
    }
}

#[test]
fn subcanonical_orbits() {
    let ty = cstr("A3");
    let (mut holds, mut n) = (0u8, 0u64);
    let w = [0i64, 1, 0];
    let st = unsafe { gorfro_subcanonical(ty.as_ptr(), w.as_ptr(), w.len(), &mut holds, &mut n) };
    assert_eq!(st, GorfroStatus::Ok);
    assert_eq!((holds, n), (1, 4));

    let ty = cstr("A2");
    let w = [1i64, 1];
    unsafe { gorfro_subcanonical(ty.as_ptr(), w.as_ptr(), w.len(), &mut holds, &mut n) };
    assert_eq!((holds, n), (1, 2));

    let w = [0i64, 0];
    let st = unsafe { gorfro_subcanonical(ty.as_ptr(), w.as_ptr(), w.len(), &mut holds, &mut n) };
    assert_eq!(st, GorfroStatus::InvalidInput);

    let w = [1i64];
    let st = unsafe { gorfro_subcanonical(ty.as_ptr(), w.as_ptr(), w.len(), &mut holds, &mut n) };
    assert_eq!(st, GorfroStatus::InvalidInput);
}

#[test]
fn header_declares_every_symbol() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gorfro.h")).unwrap();
    for sym in [
        "gorfro_last_error",
        "gorfro_check_example",
        "gorfro_check_ideal_text",
        "gorfro_report_free",
        "gorfro_string_free",
        "gorfro_report_json",
        "gorfro_report_summary",
        "gorfro_report_betti",
        "gorfro_subcanonical",
        "typedef struct GorfroReport GorfroReport",
        "GORFRO_STATUS_PANIC = 7",
    ] {
        assert!(header.contains(sym), "header lacks {sym}");
    }
}

/// Compiles the C smoke program against the header and the static library
/// when a C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libgorfro_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "pd=2 type=2 gorenstein=0\nb0,0=1\nb1,2=3\nb2,3=2\nholds=1 N=4\nstatus=3 null=1\n"
    );
}
