//! Test-side oracles, written against plain arrays so they share no code
//! with the library.

#![allow(dead_code)]

use num_complex::Complex64 as C;

use diracgate::GateMatrix;

pub type M2 = [[C; 2]; 2];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn sigma(k: usize) -> M2 {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match k {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, -i], [i, z]],
        3 => [[o, z], [z, -o]],
        _ => unreachable!(),
    }
}

pub fn mul2(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for col in 0..2 {
            out[r][col] = a[r][0] * b[0][col] + a[r][1] * b[1][col];
        }
    }
    out
}

/// a0 σ0 + a1 σ1 + a2 σ2 + a3 σ3 as a 2x2 array.
pub fn from_coeffs(a: &[C; 4]) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for (k, ak) in a.iter().enumerate() {
        let s = sigma(k);
        for r in 0..2 {
            for col in 0..2 {
                out[r][col] += ak * s[r][col];
            }
        }
    }
    out
}

/// Coefficients of a 2x2 array over σ0..σ3 by explicit formulas.
pub fn to_coeffs(m: &M2) -> [C; 4] {
    let half = 0.5;
    [
        (m[0][0] + m[1][1]) * half,
        (m[0][1] + m[1][0]) * half,
        (m[1][0] - m[0][1]) * c(0.0, -half),
        (m[0][0] - m[1][1]) * half,
    ]
}

pub fn to_gate(m: &M2) -> GateMatrix {
    GateMatrix::from_row_major(vec![m[0][0], m[0][1], m[1][0], m[1][1]]).unwrap()
}

pub fn dense(m: &GateMatrix) -> Vec<Vec<C>> {
    m.rows().map(|r| r.to_vec()).collect()
}

/// e^{iφ} [[a, b], [−b̄, ā]] with |a|² + |b|² = 1.
pub fn unitary_from_angles(phi: f64, theta: f64, x: f64, y: f64) -> M2 {
    let a = C::from_polar(theta.cos(), x);
    let b = C::from_polar(theta.sin(), y);
    let g = C::from_polar(1.0, phi);
    [[g * a, g * b], [-g * b.conj(), g * a.conj()]]
}

/// Direct q(v0 E + v⃗ × B) with temporal part q v⃗·E.
pub fn lorentz_direct(q: f64, v: [f64; 4], e: [f64; 3], b: [f64; 3]) -> [f64; 4] {
    let [_, vx, vy, vz] = v;
    let cross = [
        vy * b[2] - vz * b[1],
        vz * b[0] - vx * b[2],
        vx * b[1] - vy * b[0],
    ];
    [
        q * (vx * e[0] + vy * e[1] + vz * e[2]),
        q * (v[0] * e[0] + cross[0]),
        q * (v[0] * e[1] + cross[1]),
        q * (v[0] * e[2] + cross[2]),
    ]
}

/// Index of the basis state after flipping the last of `bits` qubits when
/// all leading ones are set (qubit 0 is the most significant).
pub fn toffoli_chain_image(state: usize, bits: u32) -> usize {
    let controls = state >> 1;
    if controls == (1 << (bits - 1)) - 1 {
        state ^ 1
    } else {
        state
    }
}

pub fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}
