//! Polynomials in the time variable t with scalar or matrix coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourvec::PauliVector;
use crate::matrix::{GateMatrix, ZERO};

/// Σ_k c_k t^k with complex coefficients.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct ScalarPoly {
    pub coeffs: Vec<Complex64>,
}

impl ScalarPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }.trimmed()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&ZERO) {
            self.coeffs.pop();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Coefficients with magnitude below `tol` set to zero.
    pub fn chop(&self, tol: f64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let re = if c.re.abs() < tol { 0.0 } else { c.re };
                    let im = if c.im.abs() < tol { 0.0 } else { c.im };
                    Complex64::new(re, im)
                })
                .collect(),
        )
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ScalarPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ScalarPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

/// Σ_k C_k t^k with dim×dim complex matrix coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    dim: usize,
    coeffs: Vec<GateMatrix>,
}

impl MatrixPolynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: vec![],
        }
    }

    pub fn new(dim: usize, coeffs: Vec<GateMatrix>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.dim() != dim) {
            return Err(Error::dim(
                "MatrixPolynomial::new",
                format!(
                    "coefficient is {}x{}, expected {dim}x{dim}",
                    bad.dim(),
                    bad.dim()
                ),
            ));
        }
        Ok(Self { dim, coeffs }.trimmed())
    }

    pub fn constant(m: GateMatrix) -> Self {
        let dim = m.dim();
        Self {
            dim,
            coeffs: vec![m],
        }
        .trimmed()
    }

    /// `p(t) · M`
    pub fn from_scalar(p: &ScalarPoly, m: &GateMatrix) -> Self {
        Self {
            dim: m.dim(),
            coeffs: p.coeffs.iter().map(|c| m.scale(*c)).collect(),
        }
        .trimmed()
    }

    /// Pauli-vector valued polynomial, one [`PauliVector`] per power of t.
    pub fn from_pauli(coeffs: &[PauliVector]) -> Self {
        Self {
            dim: 2,
            coeffs: coeffs.iter().map(PauliVector::to_matrix).collect(),
        }
        .trimmed()
    }

    pub fn to_pauli(&self) -> Result<Vec<PauliVector>> {
        self.coeffs.iter().map(PauliVector::from_matrix).collect()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.max_abs() == 0.0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[GateMatrix] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> GateMatrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| GateMatrix::zeros(self.dim))
    }

    pub fn eval(&self, t: f64) -> GateMatrix {
        self.coeffs
            .iter()
            .rev()
            .fold(GateMatrix::zeros(self.dim), |acc, c| {
                &acc.scale(t.into()) + c
            })
    }

    pub fn derivative(&self) -> Self {
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale((k as f64).into()))
                .collect(),
        }
        .trimmed()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
        .trimmed()
    }

    /// Largest coefficient-entry magnitude; 0 for the zero polynomial.
    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(GateMatrix::max_abs)
            .fold(0.0, f64::max)
    }

    fn check(&self, rhs: &Self, op: &str) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::dim(
                op,
                format!("polynomial dims {} and {}", self.dim, rhs.dim),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs, "MatrixPolynomial::add")?;
        Ok(self + rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs, "MatrixPolynomial::mul")?;
        Ok(self * rhs)
    }
}

impl Add for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn add(self, rhs: &MatrixPolynomial) -> MatrixPolynomial {
        assert_eq!(self.dim, rhs.dim);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        MatrixPolynomial {
            dim: self.dim,
            coeffs: (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect(),
        }
        .trimmed()
    }
}

impl Sub for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn sub(self, rhs: &MatrixPolynomial) -> MatrixPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn neg(self) -> MatrixPolynomial {
        self.scale(-crate::matrix::ONE)
    }
}

impl Mul for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn mul(self, rhs: &MatrixPolynomial) -> MatrixPolynomial {
        assert_eq!(self.dim, rhs.dim);
        if self.is_zero() || rhs.is_zero() {
            return MatrixPolynomial::zero(self.dim);
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut coeffs = vec![GateMatrix::zeros(self.dim); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        MatrixPolynomial {
            dim: self.dim,
            coeffs,
        }
        .trimmed()
    }
}
