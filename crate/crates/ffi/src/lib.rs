//! C ABI over `diracgate`.
//!
//! Conventions:
//! - every fallible function returns a status code (`DG_OK` on success) and
//!   writes results through out-pointers;
//! - on failure [`dg_last_error_message`] describes the error for the
//!   calling thread;
//! - matrices are opaque [`DgMatrix`] handles released with [`dg_matrix_free`];
//! - strings returned by the library are released with [`dg_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use diracgate::cliffgen::clifford_level;
use diracgate::darboux::{lorentz_force, run_table_scenario, FieldConfig, TableId};
use diracgate::gates::{parse_expr, pauli_decompose, NamedGate};
use diracgate::io::to_json_string;
use diracgate::landau::{landau_spectrum, LandauConfig};
use diracgate::{Error, GateMatrix};

pub const DG_OK: i32 = 0;
pub const DG_ERR_INVALID: i32 = 1;
pub const DG_ERR_PARSE: i32 = 2;
pub const DG_ERR_DIMENSION: i32 = 3;
pub const DG_ERR_VERIFICATION: i32 = 4;
pub const DG_ERR_NULL: i32 = 5;
pub const DG_ERR_PANIC: i32 = 6;

/// Opaque dense complex square matrix.
pub struct DgMatrix {
    inner: GateMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => DG_ERR_PARSE,
        Error::Dimension { .. } | Error::Resource(_) => DG_ERR_DIMENSION,
        Error::Verification(_) => DG_ERR_VERIFICATION,
        Error::InvalidInput(_) | Error::Io(_) => DG_ERR_INVALID,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DG_OK,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            code_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            DG_ERR_NULL
        }
        Err(_) => {
            set_error("internal panic");
            DG_ERR_PANIC
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

unsafe fn mat_arg<'a>(m: *const DgMatrix) -> Result<&'a GateMatrix, Fail> {
    m.as_ref().map(|m| &m.inner).ok_or(Fail::Null("matrix"))
}

unsafe fn put_matrix(out: *mut *mut DgMatrix, m: GateMatrix) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(DgMatrix { inner: m }));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = CString::new(s)
        .map_err(|_| Fail::Lib(Error::InvalidInput("string contains NUL".into())))?
        .into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn dg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn dg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn dg_matrix_free(m: *mut DgMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Named gate such as "CC", "SWAP", "hadamard", "toffoli".
#[no_mangle]
pub unsafe extern "C" fn dg_gate_named(name: *const c_char, out: *mut *mut DgMatrix) -> i32 {
    guard(|| {
        let g = NamedGate::from_name(str_arg(name, "name")?)?;
        put_matrix(out, diracgate::gates::named_gate(g))
    })
}

/// Coupling expression such as "co(I, X)" or "cyf(I, X)".
#[no_mangle]
pub unsafe extern "C" fn dg_gate_compile(expr: *const c_char, out: *mut *mut DgMatrix) -> i32 {
    guard(|| {
        let e = parse_expr(str_arg(expr, "expr")?)?;
        put_matrix(out, e.to_matrix()?)
    })
}

/// Matrix from `dim*dim` row-major real and imaginary parts.
#[no_mangle]
pub unsafe extern "C" fn dg_matrix_from_row_major(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut DgMatrix,
) -> i32 {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(Fail::Null("re/im"));
        }
        let n = dim
            .checked_mul(dim)
            .ok_or(Fail::Lib(Error::InvalidInput("dim overflows".into())))?;
        let re = std::slice::from_raw_parts(re, n);
        let im = std::slice::from_raw_parts(im, n);
        let entries = re
            .iter()
            .zip(im)
            .map(|(r, i)| Complex64::new(*r, *i))
            .collect();
        put_matrix(out, GateMatrix::from_row_major(entries)?)
    })
}

/// Row/column count of the matrix, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn dg_matrix_dim(m: *const DgMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.dim())
}

#[no_mangle]
pub unsafe extern "C" fn dg_matrix_get(
    m: *const DgMatrix,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> i32 {
    guard(|| {
        let m = mat_arg(m)?;
        if re.is_null() || im.is_null() {
            return Err(Fail::Null("re/im"));
        }
        if row >= m.dim() || col >= m.dim() {
            return Err(Error::Dimension {
                path: "dg_matrix_get".into(),
                message: format!("index ({row}, {col}) outside {}x{}", m.dim(), m.dim()),
            }
            .into());
        }
        let z = m[(row, col)];
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// `max |(M†M − I)_ij|`.
#[no_mangle]
pub unsafe extern "C" fn dg_matrix_unitarity_error(m: *const DgMatrix, out: *mut f64) -> i32 {
    guard(|| {
        let m = mat_arg(m)?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        *out = m.unitarity_error();
        Ok(())
    })
}

/// Coefficients a_0..a_3 of a 2x2 matrix over σ0..σ3; `re` and `im` hold 4 doubles each.
#[no_mangle]
pub unsafe extern "C" fn dg_pauli_decompose(m: *const DgMatrix, re: *mut f64, im: *mut f64) -> i32 {
    guard(|| {
        let v = pauli_decompose(mat_arg(m)?)?;
        if re.is_null() || im.is_null() {
            return Err(Fail::Null("re/im"));
        }
        for (k, c) in v.c.iter().enumerate() {
            *re.add(k) = c.re;
            *im.add(k) = c.im;
        }
        Ok(())
    })
}

/// θ^mu of hierarchy level n (1 ≤ n ≤ 8, 0 ≤ mu ≤ 3).
#[no_mangle]
pub unsafe extern "C" fn dg_theta(n: u32, mu: u32, out: *mut *mut DgMatrix) -> i32 {
    guard(|| {
        if mu > 3 {
            return Err(Error::InvalidInput(format!("mu must be 0..=3, got {mu}")).into());
        }
        let level = clifford_level(n)?;
        put_matrix(out, level.theta(mu as usize).clone())
    })
}

/// Positive Landau energies ω_c√N for N = 0..=nmax into `eps` (nmax + 1 doubles).
#[no_mangle]
pub unsafe extern "C" fn dg_landau_spectrum(vf: f64, b: f64, nmax: usize, eps: *mut f64) -> i32 {
    guard(|| {
        if eps.is_null() {
            return Err(Fail::Null("eps"));
        }
        let cfg = LandauConfig {
            vf,
            b,
            nmax,
            ..Default::default()
        };
        for (k, level) in landau_spectrum(&cfg)?.iter().enumerate() {
            *eps.add(k) = level.eps_plus;
        }
        Ok(())
    })
}

/// `ṗ^α = q v_β F^{αβ}` for constant fields. `v` has 4 doubles, `e` and `b`
/// 3 each, `out` receives 4.
#[no_mangle]
pub unsafe extern "C" fn dg_lorentz_force(
    q: f64,
    v: *const f64,
    e: *const f64,
    b: *const f64,
    out: *mut f64,
) -> i32 {
    guard(|| {
        if v.is_null() || e.is_null() || b.is_null() || out.is_null() {
            return Err(Fail::Null("v/e/b/out"));
        }
        let v: [f64; 4] = std::slice::from_raw_parts(v, 4)
            .try_into()
            .expect("length 4");
        let e: [f64; 3] = std::slice::from_raw_parts(e, 3)
            .try_into()
            .expect("length 3");
        let b: [f64; 3] = std::slice::from_raw_parts(b, 3)
            .try_into()
            .expect("length 3");
        let p = lorentz_force(&FieldConfig::from_fields(q, v, e, b))?;
        for (k, c) in p.c.iter().enumerate() {
            *out.add(k) = c.re;
        }
        Ok(())
    })
}

/// JSON report of built-in scenario `table` (0..=3). Free with [`dg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn dg_table_scenario_json(table: u32, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let id = TableId::ALL
            .get(table as usize)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("table must be 0..=3, got {table}")))?;
        put_string(out, to_json_string(&run_table_scenario(id), false))
    })
}
