use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use qkernel_ffi::*;

fn c(re: f64) -> QkComplex {
    QkComplex { re, im: 0.0 }
}

fn last_error() -> String {
    let p = qk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn poch_finite_and_infinite() {
    let mut out = QkComplex::default();
    assert_eq!(unsafe { qk_poch(c(0.5), c(0.5), 2, &mut out) }, QkStatus::Ok);
    assert!((out.re - 0.5 * 0.75).abs() < 1e-15);
    assert_eq!(unsafe { qk_poch(c(0.5), c(0.5), -1, &mut out) }, QkStatus::Ok);
    let want: f64 = (0..200).map(|k| 1.0 - 0.5 * 0.5f64.powi(k)).product();
    assert!((out.re - want).abs() < 1e-14);
}

#[test]
fn bad_base_sets_error() {
    let mut out = QkComplex::default();
    assert_eq!(unsafe { qk_poch(c(0.5), c(1.5), -1, &mut out) }, QkStatus::Domain);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { qk_poch(c(0.5), c(0.5), 3, ptr::null_mut()) }, QkStatus::NullPointer);
    assert!(last_error().contains("null"));
}

#[test]
fn phi_q_binomial_theorem() {
    // 1phi0(a; -; q, z) = (az; q)_inf / (z; q)_inf
    let (a, q, z) = (0.3, 0.6, 0.4);
    let mut got = QkComplex::default();
    let st = unsafe { qk_phi(&c(a), 1, ptr::null(), 0, c(q), c(z), -1, &mut got) };
    assert_eq!(st, QkStatus::Ok);
    let inf = |x: f64| (0..400).map(|k| 1.0 - x * q.powi(k)).product::<f64>();
    assert!((got.re - inf(a * z) / inf(z)).abs() < 1e-13);
}

#[test]
fn phi_terminating_vandermonde() {
    // 2phi1(q^-n, b; c; q, q) = (c/b; q)_n b^n / (c; q)_n
    let (n, b, cc, q) = (4i32, 0.3, 0.7, 0.5f64);
    let num = [c(q.powi(-n)), c(b)];
    let mut got = QkComplex::default();
    let st = unsafe { qk_phi(num.as_ptr(), 2, &c(cc), 1, c(q), c(q), n as i64, &mut got) };
    assert_eq!(st, QkStatus::Ok);
    let fin = |x: f64| (0..n).map(|k| 1.0 - x * q.powi(k)).product::<f64>();
    let want = fin(cc / b) * b.powi(n) / fin(cc);
    assert!((got.re - want).abs() < 1e-9 * want.abs());
}

#[test]
fn identity_listing() {
    let n = qk_identity_count();
    assert!(n > 10);
    let first = unsafe { CStr::from_ptr(qk_identity_id(0)) }.to_str().unwrap();
    assert!(!first.is_empty());
    assert!(qk_identity_id(n).is_null());
}

#[test]
fn check_with_partial_params() {
    let id = CString::new("rogers_6phi5").unwrap();
    let name = CString::new("c").unwrap();
    let names = [name.as_ptr()];
    let mut e = QkEntry {
        status: QkCheckStatus::Fail,
        draw: 9,
        pinned: true,
        rel_err: 0.0,
        abs_err: 0.0,
        threshold: 0.0,
        lhs: QkComplex::default(),
        rhs: QkComplex::default(),
    };
    let st = unsafe { qk_check(ptr::null(), id.as_ptr(), names.as_ptr(), &c(0.8), 1, &mut e) };
    assert_eq!(st, QkStatus::Ok);
    assert_eq!(e.status, QkCheckStatus::Pass);
    assert!(e.rel_err <= e.threshold);
    assert!((e.lhs.re - e.rhs.re).abs() <= 1e-9 * e.rhs.re.abs());

    // outside the convergence region the check is skipped, not failed
    let st = unsafe { qk_check(ptr::null(), id.as_ptr(), names.as_ptr(), &c(3.0), 1, &mut e) };
    assert_eq!(st, QkStatus::Ok);
    assert_eq!(e.status, QkCheckStatus::Skipped);
    assert!(e.rel_err.is_nan());
}

#[test]
fn unknown_identity_code() {
    let id = CString::new("no_such_identity").unwrap();
    let mut s: *mut QkSuite = ptr::null_mut();
    let ids = [id.as_ptr()];
    assert_eq!(unsafe { qk_suite_run(ptr::null(), ids.as_ptr(), 1, 1, 0, 1, &mut s) }, QkStatus::UnknownIdentity);
    assert!(s.is_null());
    let cfg = qk_config_new();
    assert_eq!(unsafe { qk_config_set_threshold(cfg, id.as_ptr(), 1e-3) }, QkStatus::UnknownIdentity);
    unsafe { qk_config_free(cfg) };
}

#[test]
fn suite_handle_roundtrip() {
    let id = CString::new("q_gauss").unwrap();
    let ids = [id.as_ptr()];
    let cfg = qk_config_new();
    assert_eq!(unsafe { qk_config_set_threshold(cfg, id.as_ptr(), 1e-9) }, QkStatus::Ok);
    let mut suite: *mut QkSuite = ptr::null_mut();
    assert_eq!(unsafe { qk_suite_run(cfg, ids.as_ptr(), 1, 3, 11, 2, &mut suite) }, QkStatus::Ok);
    let mut sum = QkSummary::default();
    assert_eq!(unsafe { qk_suite_summary(suite, &mut sum) }, QkStatus::Ok);
    let len = unsafe { qk_suite_len(suite) };
    assert_eq!(sum.total, len);
    assert_eq!(sum.pass + sum.fail + sum.skipped, sum.total);
    for i in 0..len {
        let mut e = QkEntry {
            status: QkCheckStatus::Fail,
            draw: 0,
            pinned: false,
            rel_err: 0.0,
            abs_err: 0.0,
            threshold: 0.0,
            lhs: QkComplex::default(),
            rhs: QkComplex::default(),
        };
        assert_eq!(unsafe { qk_suite_entry(suite, i, &mut e) }, QkStatus::Ok);
        assert_eq!(e.threshold, 1e-9);
        let name = unsafe { CStr::from_ptr(qk_suite_id(suite, i)) };
        assert_eq!(name.to_str().unwrap(), "q_gauss");
    }
    assert!(unsafe { qk_suite_id(suite, len) }.is_null());

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { qk_suite_to_json(suite, cfg, true, &mut json) }, QkStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { qk_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["seed"], 11);
    assert!(v.get("generated_at").is_none());
    assert_eq!(v["reports"].as_array().unwrap().len(), len);

    unsafe {
        qk_suite_free(suite);
        qk_config_free(cfg);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        qk_suite_free(ptr::null_mut());
        qk_config_free(ptr::null_mut());
        qk_string_free(ptr::null_mut());
        assert_eq!(qk_suite_len(ptr::null()), 0);
        assert_eq!(qk_config_set_tolerance(ptr::null_mut(), 1e-3), QkStatus::NullPointer);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cc() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

fn compile_syntax(cc: &str, file: &Path, extra: &[&str]) {
    let out = Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Wextra", "-Werror"])
        .args(extra)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(file)
        .output()
        .expect("run the C compiler");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let header = crate_dir().join("include/qkernel.h");
    assert!(header.exists());
    compile_syntax(&cc, &header, &["-x", "c", "-std=c11"]);
    compile_syntax(&cc, &crate_dir().join("tests/c/smoke.c"), &["-std=c11"]);
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/qkernel.h")).unwrap();
    let src = std::fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    for line in src.lines() {
        let Some(rest) = line.split("extern \"C\" fn ").nth(1) else { continue };
        let name = rest.split('(').next().unwrap();
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = cc() else { return };
    // test binaries live in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile.join("libqkernel_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let bin = profile.join("qkernel_ffi_smoke");
    let out = Command::new(&cc)
        .arg("-std=c11")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .expect("run the C compiler");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).ends_with("rogers_6phi5\n"));
}
