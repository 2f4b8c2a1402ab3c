use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use qcoh_ffi::*;

fn last_error() -> String {
    let p = qcoh_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn bloch_state_split_matches_closed_form() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qcoh_state_from_bloch(0.4, 0.0, 0.3, &mut s), QcohStatus::Ok);
        assert_eq!(qcoh_state_dim(s), 2);
        let mut b = ptr::null_mut();
        assert_eq!(qcoh_basis_fourier(2, &mut b), QcohStatus::Ok);
        let mut split = QcohSplit::default();
        assert_eq!(qcoh_theorem1_split(s, b, &mut split), QcohStatus::Ok);
        assert!((split.total - split.basis_part - split.residual).abs() < 1e-12);
        let h = |t: f64| if t <= 0.0 { 0.0 } else { -t * t.log2() };
        let res = 1.0 - h(0.7) - h(0.3);
        assert!((split.residual - res).abs() < 1e-12);
        let mut c = 0.0;
        assert_eq!(qcoh_bi_coherence(s, &mut c), QcohStatus::Ok);
        assert!((c - split.total).abs() < 1e-15);
        let mut budget = QcohBudget::default();
        assert_eq!(qcoh_duality_budget(s, b, &mut budget), QcohStatus::Ok);
        assert!((budget.total - 1.0).abs() < 1e-9);
        qcoh_basis_free(b);
        qcoh_state_free(s);
    }
}

#[test]
fn json_roundtrip_and_dimension_mismatch() {
    let json = CString::new(r#"{"dim":2,"rows":[[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]]}"#).unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qcoh_state_from_json(json.as_ptr(), &mut s), QcohStatus::Ok);
        let mut e = -1.0;
        assert_eq!(qcoh_von_neumann(s, &mut e), QcohStatus::Ok);
        assert!(e.abs() < 1e-12);
        let mut b = ptr::null_mut();
        assert_eq!(qcoh_basis_computational(3, &mut b), QcohStatus::Ok);
        let mut c = 0.0;
        assert_eq!(qcoh_rel_ent_coherence(s, b, &mut c), QcohStatus::DimensionMismatch);
        assert!(last_error().contains("DimensionMismatch"));
        qcoh_basis_free(b);
        qcoh_state_free(s);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qcoh_state_from_bloch(1.0, 1.0, 0.0, &mut s), QcohStatus::Malformed);
        assert!(s.is_null());
        assert!(last_error().contains("BlochNormExceeded"));
        assert_eq!(qcoh_state_bell_diagonal(1.0, 1.0, 1.0, &mut s), QcohStatus::Malformed);
        let bad = CString::new("{not json").unwrap();
        assert_eq!(qcoh_state_from_json(bad.as_ptr(), &mut s), QcohStatus::Malformed);
        assert_eq!(qcoh_state_from_json(ptr::null(), &mut s), QcohStatus::NullPointer);
        let mut c = 0.0;
        assert_eq!(qcoh_bi_coherence(ptr::null(), &mut c), QcohStatus::NullPointer);
        assert_eq!(qcoh_basis_fourier(0, &mut ptr::null_mut()), QcohStatus::Malformed);
        assert_eq!(qcoh_state_dim(ptr::null()), 0);
        qcoh_state_free(ptr::null_mut());
        qcoh_basis_free(ptr::null_mut());
    }
}

#[test]
fn bell_report() {
    let mut r = QcohBellReport::default();
    unsafe {
        assert_eq!(qcoh_bell_diagonal_report(-1.0, 1.0, 1.0, &mut r), QcohStatus::Ok);
    }
    for (v, want) in [(r.bi_coherence, 2.0), (r.comp_coherence, 1.0), (r.discord, 1.0), (r.entanglement, 1.0)] {
        assert!((v - want).abs() < 1e-9);
    }
    assert_eq!(r.hierarchy_ok, 1);
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/qcoh.h");
    assert!(header.exists());
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let dir = std::env::temp_dir().join(format!("qcoh_ffi_c_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include "qcoh.h"
#include <math.h>
int main(void) {
    QcohState *s = NULL;
    QcohBasis *b = NULL;
    QcohSplit split;
    if (qcoh_state_from_bloch(0.0, 0.0, 1.0, &s) != QCOH_STATUS_OK) return 1;
    if (qcoh_basis_computational(2, &b) != QCOH_STATUS_OK) return 2;
    if (qcoh_theorem1_split(s, b, &split) != QCOH_STATUS_OK) return 3;
    if (fabs(split.total - 1.0) > 1e-12 || fabs(split.basis_part) > 1e-12) return 4;
    qcoh_state_free(s);
    if (qcoh_state_from_bloch(2.0, 0.0, 0.0, &s) != QCOH_STATUS_MALFORMED) return 5;
    if (qcoh_last_error_message() == NULL) return 6;
    qcoh_basis_free(b);
    return 0;
}
"#,
    )
    .unwrap();
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let out = dir.join("main");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(lib_dir.join("libqcoh_ffi.a"))
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).status().unwrap();
    assert_eq!(run.code(), Some(0));
    let _ = std::fs::remove_dir_all(&dir);
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
