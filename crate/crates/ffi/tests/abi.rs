use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use permlab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pm_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn perm(images: &[usize]) -> *mut PmPerm {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { pm_perm_new(images.as_ptr(), images.len(), &mut p) },
        PmStatus::Ok
    );
    p
}

fn images(p: *const PmPerm) -> Vec<usize> {
    let mut len = 0;
    assert_eq!(
        unsafe { pm_perm_images(p, ptr::null_mut(), 0, &mut len) },
        if unsafe { pm_perm_len(p) } == 0 {
            PmStatus::Ok
        } else {
            PmStatus::BufferTooSmall
        }
    );
    let mut buf = vec![0; len];
    assert_eq!(
        unsafe { pm_perm_images(p, buf.as_mut_ptr(), len, &mut len) },
        PmStatus::Ok
    );
    buf
}

#[test]
fn perm_round_trip() {
    let p = perm(&[1, 2, 0, 3]);
    let mut inv = ptr::null_mut();
    let mut id = ptr::null_mut();
    unsafe {
        assert_eq!(pm_perm_inverse(p, &mut inv), PmStatus::Ok);
        assert_eq!(pm_perm_compose(p, inv, &mut id), PmStatus::Ok);
    }
    assert_eq!(images(inv), [2, 0, 1, 3]);
    assert_eq!(images(id), [0, 1, 2, 3]);
    let mut y = 0;
    assert_eq!(
        unsafe { pm_perm_apply(p, 4, &mut y) },
        PmStatus::InvalidArgument
    );
    assert!(last_error().contains('4'));
    unsafe {
        pm_perm_free(p);
        pm_perm_free(inv);
        pm_perm_free(id);
        pm_perm_free(ptr::null_mut());
    }
}

#[test]
fn null_and_invalid_inputs() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { pm_perm_new(ptr::null(), 3, &mut out) },
        PmStatus::NullPointer
    );
    assert_eq!(
        unsafe { pm_perm_new([0usize, 0].as_ptr(), 2, &mut out) },
        PmStatus::InvalidArgument
    );
    assert!(out.is_null());
    assert_eq!(
        unsafe { pm_perm_inverse(ptr::null(), &mut out) },
        PmStatus::NullPointer
    );
    let p = perm(&[0]);
    assert_eq!(
        unsafe { pm_perm_inverse(p, ptr::null_mut()) },
        PmStatus::NullPointer
    );
    unsafe { pm_perm_free(p) };
    let empty = perm(&[]);
    assert_eq!(images(empty), Vec::<usize>::new());
    unsafe { pm_perm_free(empty) };
}

#[test]
fn union_mov_and_bernstein() {
    let f = perm(&[1, 0, 2, 3]);
    let g = perm(&[0, 1, 3, 2]);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { pm_union_mov(f, g, &mut h) }, PmStatus::Ok);
    let hi = images(h);
    assert!((0..4).all(|z| hi[z] != z));
    unsafe {
        pm_perm_free(f);
        pm_perm_free(g);
        pm_perm_free(h);
    }
    let fx = [1usize, 2, 0];
    let gy = [0usize, 2, 1];
    let mut out = [9usize; 3];
    let st = unsafe { pm_cantor_bernstein(fx.as_ptr(), 3, gy.as_ptr(), 3, out.as_mut_ptr()) };
    assert_eq!(st, PmStatus::Ok);
    let mut sorted = out;
    sorted.sort_unstable();
    assert_eq!(sorted, [0, 1, 2]);
    let gy = [0usize, 0, 1];
    let st = unsafe { pm_cantor_bernstein(fx.as_ptr(), 3, gy.as_ptr(), 3, out.as_mut_ptr()) };
    assert_eq!(st, PmStatus::InvalidArgument);
    assert!(!last_error().is_empty());
}

#[test]
fn lattice_handle() {
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { pm_lattice_new(4, &mut l) }, PmStatus::Ok);
    let sizes: Vec<usize> = (0..=4)
        .map(|n| {
            let mut s = 0;
            assert_eq!(unsafe { pm_lattice_size(l, n, &mut s) }, PmStatus::Ok);
            s
        })
        .collect();
    assert_eq!(sizes, [1, 2, 6, 19, 215]);
    let mut leq = false;
    assert_eq!(
        unsafe { pm_lattice_leq(l, 2, 0, 2, &mut leq) },
        PmStatus::Ok
    );
    assert!(leq);
    assert_eq!(
        unsafe { pm_lattice_leq(l, 2, 2, 1, &mut leq) },
        PmStatus::Ok
    );
    assert!(!leq);
    assert_eq!(
        unsafe { pm_lattice_leq(l, 2, 6, 1, &mut leq) },
        PmStatus::InvalidArgument
    );

    let mut pass = false;
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { pm_lattice_verify(l, 4, &mut pass, &mut report) },
        PmStatus::Ok
    );
    assert!(pass);
    let json: serde_json::Value =
        serde_json::from_str(unsafe { CStr::from_ptr(report) }.to_str().unwrap()).unwrap();
    assert_eq!(json["check"], "level-4");
    unsafe { pm_string_free(report) };

    let mut doc = ptr::null_mut();
    assert_eq!(
        unsafe { pm_lattice_export(l, 2, PmFormat::Json, &mut doc) },
        PmStatus::Ok
    );
    let json: serde_json::Value =
        serde_json::from_str(unsafe { CStr::from_ptr(doc) }.to_str().unwrap()).unwrap();
    assert_eq!(json["size"], 6);
    unsafe { pm_string_free(doc) };

    let g = perm(&[0, 3, 2, 1, 4, 5]);
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { pm_lattice_extend(l, 2, g, 4, &mut h) },
        PmStatus::Ok
    );
    let hi = images(h);
    assert_eq!(hi.len(), 215);
    assert_eq!(&hi[..6], [0, 3, 2, 1, 4, 5]);
    assert_eq!(
        unsafe { pm_lattice_extend(l, 2, g, 3, &mut h) },
        PmStatus::InvalidArgument
    );
    assert!(last_error().contains("parity"), "{}", last_error());
    let mut s = 0;
    assert_eq!(
        unsafe { pm_lattice_size(l, 5, &mut s) },
        PmStatus::CapExceeded
    );
    unsafe {
        pm_perm_free(g);
        pm_perm_free(h);
        pm_lattice_free(l);
    }
    assert_eq!(unsafe { pm_lattice_new(99, &mut l) }, PmStatus::CapExceeded);
}

#[test]
fn construction_suite() {
    let only = CString::new("diagonal").unwrap();
    let mut pass = false;
    let mut report = ptr::null_mut();
    let st = unsafe { pm_constructions_test(3, only.as_ptr(), 0, &mut pass, &mut report) };
    assert_eq!(st, PmStatus::Ok);
    assert!(pass);
    let text = unsafe { CStr::from_ptr(report) }
        .to_str()
        .unwrap()
        .to_owned();
    assert!(text.contains("\"diagonal\""));
    unsafe { pm_string_free(report) };
    let st = unsafe { pm_constructions_test(99, ptr::null(), 0, &mut pass, ptr::null_mut()) };
    assert_eq!(st, PmStatus::CapExceeded);
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = root.join("include/permlab.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in [
        "pm_perm_new",
        "pm_lattice_verify",
        "pm_constructions_test",
        "PM_STATUS_CAP_EXCEEDED",
    ] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let lib = target_dir().join("libpermlab_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!(
            "skipping C link test: {} or {cc} unavailable",
            lib.display()
        );
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let status = Command::new(&cc)
        .args(["-std=c11", "-Wall", "-Werror", "-I"])
        .arg(root.join("include"))
        .arg(root.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
