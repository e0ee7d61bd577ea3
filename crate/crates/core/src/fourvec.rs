//! Complex four-vectors over the Pauli basis {σ0, σ1, σ2, σ3}.
//!
//! A [`PauliVector`] `v = Σ c_i σ_i` is at the same time a Minkowski
//! four-vector (scalar part `c0`, spatial part `c1..c3`) and a 2×2 matrix.
//! Potentials of the one-dimensional Dirac equation and their perturbations
//! are both expressed in this form.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{pauli, GateMatrix, I, ONE, ZERO};

/// Diagonal metric with signature (+, −, −, −).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MinkowskiMetric;

impl MinkowskiMetric {
    pub const SIGNATURE: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

    /// g_{μν}
    pub fn g(mu: usize, nu: usize) -> f64 {
        if mu == nu {
            Self::SIGNATURE[mu]
        } else {
            0.0
        }
    }
}

/// Levi-Civita symbol on spatial indices 1..=3.
pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "PauliVectorRepr", into = "PauliVectorRepr")]
pub struct PauliVector {
    pub c: [Complex64; 4],
}

#[derive(Serialize, Deserialize)]
struct PauliVectorRepr {
    c0: Complex64,
    c1: Complex64,
    c2: Complex64,
    c3: Complex64,
}

impl From<PauliVectorRepr> for PauliVector {
    fn from(r: PauliVectorRepr) -> Self {
        Self::new(r.c0, r.c1, r.c2, r.c3)
    }
}

impl From<PauliVector> for PauliVectorRepr {
    fn from(v: PauliVector) -> Self {
        let [c0, c1, c2, c3] = v.c;
        Self { c0, c1, c2, c3 }
    }
}

impl PauliVector {
    pub const ZERO: Self = Self { c: [ZERO; 4] };

    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn real(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Self::new(c0.into(), c1.into(), c2.into(), c3.into())
    }

    /// The basis vector σ_k.
    pub fn basis(k: usize) -> Self {
        let mut v = Self::ZERO;
        v.c[k] = ONE;
        v
    }

    pub fn scalar(&self) -> Complex64 {
        self.c[0]
    }

    pub fn spatial(&self) -> [Complex64; 3] {
        [self.c[1], self.c[2], self.c[3]]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            c: self.c.map(|x| x * s),
        }
    }

    /// M = Σ c_i σ_i
    pub fn to_matrix(&self) -> GateMatrix {
        (0..4).fold(GateMatrix::zeros(2), |acc, k| {
            &acc + &pauli(k).scale(self.c[k])
        })
    }

    /// Inverse of [`to_matrix`](Self::to_matrix): c_i = tr(σ_i M) / 2.
    pub fn from_matrix(m: &GateMatrix) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::dim(
                "PauliVector::from_matrix",
                format!("expected 2x2, got {}x{}", m.dim(), m.dim()),
            ));
        }
        let mut c = [ZERO; 4];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (&pauli(k) * m).trace() / 2.0;
        }
        Ok(Self { c })
    }

    /// Euclidean norm of the four complex coefficients.
    pub fn coefficient_norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for PauliVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            c: std::array::from_fn(|k| self.c[k] + rhs.c[k]),
        }
    }
}

impl Sub for PauliVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            c: std::array::from_fn(|k| self.c[k] - rhs.c[k]),
        }
    }
}

impl Neg for PauliVector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul<PauliVector> for Complex64 {
    type Output = PauliVector;
    fn mul(self, rhs: PauliVector) -> PauliVector {
        rhs.scale(self)
    }
}

/// (c0, −c1, −c2, −c3)
pub fn conjugate(v: &PauliVector) -> PauliVector {
    let [c0, c1, c2, c3] = v.c;
    PauliVector::new(c0, -c1, -c2, -c3)
}

/// a0·b0 − a1·b1 − a2·b2 − a3·b3 (bilinear, no complex conjugation).
pub fn lorentz_product(a: &PauliVector, b: &PauliVector) -> Complex64 {
    (0..4)
        .map(|k| a.c[k] * b.c[k] * MinkowskiMetric::SIGNATURE[k])
        .sum()
}

/// The algebraic product `a · b*`.
///
/// Scalar part is the Lorentz product; the γ-component of the vector part is
/// `(a_γ b_0 − b_γ a_0) − i ε_{αβγ} a_α b_β`. This coincides with the 2×2
/// matrix product `a · conjugate(b)`.
pub fn algebraic_product(a: &PauliVector, b: &PauliVector) -> PauliVector {
    let mut out = PauliVector::ZERO;
    out.c[0] = lorentz_product(a, b);
    for g in 1..4 {
        let mut cross = ZERO;
        for al in 1..4 {
            for be in 1..4 {
                let e = levi_civita(al, be, g);
                if e != 0.0 {
                    cross += a.c[al] * b.c[be] * e;
                }
            }
        }
        out.c[g] = (a.c[g] * b.c[0] - b.c[g] * a.c[0]) - I * cross;
    }
    out
}

/// Wedge of two basis elements, as (coefficient, basis index).
///
/// σ_κ∧σ_κ = σ0, σ_a∧σ_b = i ε_{abc} σ_c for distinct spatial a, b, and σ0
/// acts as the identity on either side.
pub fn wedge_basis(a: usize, b: usize) -> (Complex64, usize) {
    assert!(a < 4 && b < 4, "basis index out of range");
    match (a, b) {
        (0, k) | (k, 0) => (ONE, k),
        (x, y) if x == y => (ONE, 0),
        (x, y) => {
            let c = 6 - x - y;
            (I * levi_civita(x, y, c), c)
        }
    }
}

/// Bilinear extension of [`wedge_basis`].
pub fn wedge(a: &PauliVector, b: &PauliVector) -> PauliVector {
    let mut out = PauliVector::ZERO;
    for i in 0..4 {
        if a.c[i] == ZERO {
            continue;
        }
        for j in 0..4 {
            if b.c[j] == ZERO {
                continue;
            }
            let (coef, k) = wedge_basis(i, j);
            out.c[k] += coef * a.c[i] * b.c[j];
        }
    }
    out
}
