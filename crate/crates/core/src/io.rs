//! Serialization helpers shared by the CLI and the FFI layer.
//!
//! Matrices are row-major arrays of `[re, im]` pairs. Every float leaving the
//! crate is rounded to 12 significant digits so that output is stable across
//! platforms and reruns.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fourvec::PauliVector;
use crate::matrix::GateMatrix;
use crate::poly::MatrixPolynomial;

pub const SIGNIFICANT_DIGITS: i32 = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits; `−0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, x);
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if !(n.is_i64() || n.is_u64()) => {
                serde_json::Number::from_f64(round_sig(f)).map_or(Value::Null, Value::Number)
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

/// JSON tree of `x` with all floats rounded. Non-finite floats become `null`.
pub fn to_json_value<T: Serialize + ?Sized>(x: &T) -> Value {
    round_value(serde_json::to_value(x).expect("in-memory serialization"))
}

pub fn to_json_string<T: Serialize + ?Sized>(x: &T, pretty: bool) -> String {
    let v = to_json_value(x);
    if pretty {
        serde_json::to_string_pretty(&v)
    } else {
        serde_json::to_string(&v)
    }
    .expect("Value serializes")
}

/// Shortest representation of a rounded float.
pub fn fmt_float(x: f64) -> String {
    let r = round_sig(x);
    if r.is_finite() && r == r.trunc() && r.abs() < 1e15 {
        format!("{}", r as i64)
    } else if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    let (re, im) = (round_sig(z.re), round_sig(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => fmt_float(re),
        (true, false) => format!("{}i", fmt_float(im)),
        (false, false) if im < 0.0 => format!("{}-{}i", fmt_float(re), fmt_float(-im)),
        _ => format!("{}+{}i", fmt_float(re), fmt_float(im)),
    }
}

/// `row,col,re,im` lines with a header.
pub fn matrix_to_csv(m: &GateMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    for (r, row) in m.rows().enumerate() {
        for (c, z) in row.iter().enumerate() {
            out.push_str(&format!(
                "{r},{c},{},{}\n",
                fmt_float(z.re),
                fmt_float(z.im)
            ));
        }
    }
    out
}

/// Aligned human-readable grid.
pub fn matrix_to_pretty(m: &GateMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|r| r.iter().map(|z| fmt_complex(*z)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_error(message: impl Into<String>) -> Error {
    Error::Parse {
        position: 0,
        message: message.into(),
    }
}

pub fn parse_json(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| Error::Parse {
        position: src
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1),
        message: e.to_string(),
    })
}

/// A number, or an `[re, im]` pair.
pub fn complex_from_value(v: &Value) -> Result<Complex64> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_number) => Ok(Complex64::new(
            a[0].as_f64().unwrap_or(f64::NAN),
            a[1].as_f64().unwrap_or(f64::NAN),
        )),
        other => Err(parse_error(format!(
            "expected a number or [re, im], found {other}"
        ))),
    }
}

fn is_scalar(v: &Value) -> bool {
    complex_from_value(v).is_ok()
}

/// Square matrix from rows of scalars (numbers or `[re, im]`).
pub fn matrix_from_value(v: &Value) -> Result<GateMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_error("matrix must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_error("matrix row must be an array"))?
                .iter()
                .map(complex_from_value)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GateMatrix::from_rows(&rows)
}

pub fn parse_matrix(src: &str) -> Result<GateMatrix> {
    matrix_from_value(&parse_json(src)?)
}

/// One Pauli four-vector: `{"c0": .., "c1": .., "c2": .., "c3": ..}` or `[c0, c1, c2, c3]`.
pub fn pauli_from_value(v: &Value) -> Result<PauliVector> {
    match v {
        Value::Object(o) => {
            let mut c = [Complex64::new(0.0, 0.0); 4];
            for (k, val) in o {
                let idx = match k.as_str() {
                    "c0" => 0,
                    "c1" => 1,
                    "c2" => 2,
                    "c3" => 3,
                    _ => return Err(parse_error(format!("unknown Pauli key '{k}'"))),
                };
                c[idx] = complex_from_value(val)?;
            }
            Ok(PauliVector { c })
        }
        Value::Array(a) if a.len() == 4 && a.iter().all(is_scalar) => {
            let c: Vec<Complex64> = a.iter().map(complex_from_value).collect::<Result<_>>()?;
            Ok(PauliVector::new(c[0], c[1], c[2], c[3]))
        }
        other => Err(parse_error(format!(
            "expected a Pauli four-vector, found {other}"
        ))),
    }
}

fn is_pauli_form(v: &Value) -> bool {
    v.is_object() || matches!(v, Value::Array(a) if a.len() == 4 && a.iter().all(is_scalar))
}

/// Polynomial potential as a list of coefficients for t^0, t^1, ….
///
/// Each coefficient is a Pauli four-vector (2×2 potentials) or a square
/// matrix. A bare coefficient is read as a constant potential; a list that
/// also parses as a square matrix is read as that matrix.
pub fn potential_from_value(v: &Value) -> Result<MatrixPolynomial> {
    let items: Vec<&Value> = match v {
        Value::Object(_) => vec![v],
        Value::Array(a) if !a.is_empty() && (is_pauli_form(v) || matrix_from_value(v).is_ok()) => {
            vec![v]
        }
        Value::Array(a) => a.iter().collect(),
        other => {
            return Err(parse_error(format!(
                "expected a coefficient list, found {other}"
            )))
        }
    };
    if items.is_empty() {
        return Err(parse_error("potential needs at least one coefficient"));
    }
    let coeffs = items
        .iter()
        .map(|c| {
            if is_pauli_form(c) {
                pauli_from_value(c).map(|p| p.to_matrix())
            } else {
                matrix_from_value(c)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = coeffs[0].dim();
    MatrixPolynomial::new(dim, coeffs)
}

pub fn parse_potential(src: &str) -> Result<MatrixPolynomial> {
    potential_from_value(&parse_json(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pauli, I};

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(-0.0), 0.0);
        assert!(round_sig(-0.0).is_sign_positive());
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        #[allow(clippy::approx_constant)]
        let rounded = 0.707106781187;
        assert_eq!(round_sig(std::f64::consts::FRAC_1_SQRT_2), rounded);
        assert_eq!(round_sig(-1e-20), -1e-20);
    }

    #[test]
    fn json_matrix_shape() {
        let s = to_json_string(&pauli(2), false);
        assert_eq!(s, "[[[0.0,0.0],[0.0,-1.0]],[[0.0,1.0],[0.0,0.0]]]");
        assert_eq!(parse_matrix(&s).unwrap(), pauli(2));
        assert_eq!(parse_matrix("[[0,1],[1,0]]").unwrap(), pauli(1));
    }

    #[test]
    fn bad_json_is_parse_error() {
        assert!(matches!(parse_matrix("[[0,1],"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_matrix("[[0,1],[1]]"),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn potential_forms() {
        let p = parse_potential(r#"[[0,0,0,0],[0,0,1,[0,-1]]]"#).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeff(1), &pauli(2) - &pauli(3).scale(I));
        let q = parse_potential(r#"[{"c0":[0,0]}, {"c2":1, "c3":[0,-1]}]"#).unwrap();
        assert_eq!(p, q);
        let c = parse_potential("[0.5, 0, 0, 0]").unwrap();
        assert_eq!(c.degree(), 0);
        let m = parse_potential("[[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]]").unwrap();
        assert_eq!(m.dim(), 4);
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0)), "-1i");
        assert_eq!(fmt_complex(Complex64::new(0.5, 0.25)), "0.5+0.25i");
        assert_eq!(fmt_complex(Complex64::new(-0.0, 0.0)), "0");
        assert_eq!(fmt_float(2.5e-7), "2.5e-7");
        assert_eq!(fmt_float(0.125), "0.125");
    }
}
