use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use diracgate_ffi::*;

fn last_error() -> String {
    let p = dg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn named(name: &str) -> *mut DgMatrix {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dg_gate_named(name.as_ptr(), &mut m) }, DG_OK);
    m
}

fn entries(m: *const DgMatrix) -> Vec<(f64, f64)> {
    let d = unsafe { dg_matrix_dim(m) };
    let mut out = Vec::new();
    for r in 0..d {
        for c in 0..d {
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(unsafe { dg_matrix_get(m, r, c, &mut re, &mut im) }, DG_OK);
            out.push((re, im));
        }
    }
    out
}

#[test]
fn named_gate_round_trip() {
    let ccc = named("CCC");
    let got: Vec<f64> = entries(ccc).iter().map(|e| e.0).collect();
    #[rustfmt::skip]
    let want = [
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        1.0, 0.0, 0.0, 0.0,
    ];
    assert_eq!(got, want);
    let mut err = -1.0;
    assert_eq!(unsafe { dg_matrix_unitarity_error(ccc, &mut err) }, DG_OK);
    assert_eq!(err, 0.0);
    unsafe { dg_matrix_free(ccc) };
}

#[test]
fn compile_matches_named() {
    let expr = CString::new("co(I, X)").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dg_gate_compile(expr.as_ptr(), &mut m) }, DG_OK);
    let cnot = named("cnot");
    assert_eq!(entries(m), entries(cnot));
    unsafe {
        dg_matrix_free(m);
        dg_matrix_free(cnot);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut m = ptr::null_mut();
    let bad = CString::new("co(I,").unwrap();
    assert_eq!(
        unsafe { dg_gate_compile(bad.as_ptr(), &mut m) },
        DG_ERR_PARSE
    );
    assert!(m.is_null());
    assert!(last_error().contains("position 5"), "{}", last_error());

    let mismatch = CString::new("co(X, CNOT)").unwrap();
    assert_eq!(
        unsafe { dg_gate_compile(mismatch.as_ptr(), &mut m) },
        DG_ERR_DIMENSION
    );

    assert_eq!(unsafe { dg_gate_compile(ptr::null(), &mut m) }, DG_ERR_NULL);
    assert_eq!(unsafe { dg_theta(9, 0, &mut m) }, DG_ERR_DIMENSION);
    assert_eq!(unsafe { dg_theta(2, 4, &mut m) }, DG_ERR_INVALID);
    assert_eq!(
        unsafe { dg_landau_spectrum(1.0, -1.0, 3, [0.0; 4].as_mut_ptr()) },
        DG_ERR_INVALID
    );
    assert_eq!(unsafe { dg_matrix_dim(ptr::null()) }, 0);
    unsafe { dg_matrix_free(ptr::null_mut()) };
    unsafe { dg_string_free(ptr::null_mut()) };
}

#[test]
fn decompose_hadamard() {
    let h = named("hadamard");
    let (mut re, mut im) = ([0.0; 4], [0.0; 4]);
    assert_eq!(
        unsafe { dg_pauli_decompose(h, re.as_mut_ptr(), im.as_mut_ptr()) },
        DG_OK
    );
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for (got, want) in re.iter().zip([0.0, r, 0.0, r]) {
        assert!((got - want).abs() < 1e-15);
    }
    assert!(im.iter().all(|v| v.abs() < 1e-15));
    unsafe { dg_matrix_free(h) };
}

#[test]
fn matrix_from_parts() {
    let re = [0.0, 1.0, 1.0, 0.0];
    let im = [0.0; 4];
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { dg_matrix_from_row_major(2, re.as_ptr(), im.as_ptr(), &mut m) },
        DG_OK
    );
    let (mut a, mut b) = ([0.0; 4], [0.0; 4]);
    assert_eq!(
        unsafe { dg_pauli_decompose(m, a.as_mut_ptr(), b.as_mut_ptr()) },
        DG_OK
    );
    assert_eq!(a, [0.0, 1.0, 0.0, 0.0]);
    unsafe { dg_matrix_free(m) };
    assert_eq!(
        unsafe { dg_matrix_from_row_major(0, re.as_ptr(), im.as_ptr(), &mut m) },
        DG_ERR_DIMENSION
    );
    assert_eq!(
        unsafe { dg_matrix_from_row_major(3, [0.0; 9].as_ptr(), [0.0; 9].as_ptr(), &mut m) },
        DG_OK
    );
    assert_eq!(
        unsafe { dg_pauli_decompose(m, a.as_mut_ptr(), b.as_mut_ptr()) },
        DG_ERR_DIMENSION
    );
    unsafe { dg_matrix_free(m) };
}

#[test]
fn physics_entry_points() {
    let mut out = [0.0; 4];
    let (v, e, b) = ([1.0, 0.0, 1.0, 0.0], [0.0; 3], [0.0, 0.0, 1.0]);
    assert_eq!(
        unsafe { dg_lorentz_force(1.0, v.as_ptr(), e.as_ptr(), b.as_ptr(), out.as_mut_ptr()) },
        DG_OK
    );
    assert_eq!(out, [0.0, 1.0, 0.0, 0.0]);

    let mut eps = [0.0; 5];
    assert_eq!(
        unsafe { dg_landau_spectrum(1.0, 2.0, 4, eps.as_mut_ptr()) },
        DG_OK
    );
    assert!((eps[4] / eps[1] - 2.0).abs() < 1e-15);

    let mut theta = ptr::null_mut();
    assert_eq!(unsafe { dg_theta(3, 2, &mut theta) }, DG_OK);
    assert_eq!(unsafe { dg_matrix_dim(theta) }, 8);
    unsafe { dg_matrix_free(theta) };

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dg_table_scenario_json(0, &mut s) }, DG_OK);
    let json: serde_json::Value =
        serde_json::from_str(&unsafe { CStr::from_ptr(s) }.to_string_lossy()).unwrap();
    assert_eq!(json["label"], "U0");
    assert_eq!(json["delta_v_match"], true);
    unsafe { dg_string_free(s) };
    assert_eq!(unsafe { dg_table_scenario_json(4, &mut s) }, DG_ERR_INVALID);
}

fn header() -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/diracgate.h");
    std::fs::read_to_string(p).expect("header generated by build.rs")
}

#[test]
fn header_declares_api() {
    let h = header();
    for sym in [
        "typedef struct DgMatrix DgMatrix;",
        "#define DG_OK 0",
        "#define DG_ERR_PARSE 2",
        "#define DG_ERR_DIMENSION 3",
        "int32_t dg_gate_named(const char *name, struct DgMatrix **out);",
        "void dg_matrix_free(struct DgMatrix *m);",
        "const char *dg_last_error_message(void);",
        "void dg_string_free(char *s);",
        "dg_table_scenario_json",
        "dg_lorentz_force",
    ] {
        assert!(h.contains(sym), "header lacks `{sym}`");
    }
}

/// Directory holding the staticlib built alongside this test binary.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_staticlib() {
    let lib = artifact_dir().join("libdiracgate_ffi.a");
    if !lib.exists() {
        panic!("static library not found at {}", lib.display());
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::temp_dir().join(format!("diracgate_ffi_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0.1.0"));
}
