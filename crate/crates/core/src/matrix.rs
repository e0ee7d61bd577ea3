//! Dense complex square matrices.
//!
//! Everything in this crate lives at dimension 2^n with n ≤ 8, so a flat
//! row-major `Vec<Complex64>` is all we need.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default tolerance for unitarity checks on analytically exact constructions.
pub const UNITARY_TOL: f64 = 1e-12;

/// A dense complex square matrix in row-major order.
#[derive(Clone, PartialEq)]
pub struct GateMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl GateMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m[(k, k)] = ONE;
        }
        m
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (k, v) in values.iter().enumerate() {
            m[(k, k)] = *v;
        }
        m
    }

    /// Builds from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() || dim == 0 {
            return Err(Error::dim(
                "matrix",
                format!("{} entries do not form a square matrix", entries.len()),
            ));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::dim("matrix", "rows do not form a square matrix"));
        }
        Ok(Self {
            dim,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    /// Convenience for tests and tables of exact small-integer matrices.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "non-square literal");
        Self {
            dim,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
                .collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim)
    }

    pub fn qubits(&self) -> Option<u32> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    /// Kronecker product `self ⊗ rhs`; `self` is the outer (leftmost) factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (a, b) = (self.dim, rhs.dim);
        let n = a * b;
        let mut out = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let s = self[(i, j)];
                if s == ZERO {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = s * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs, "mul")?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_dim(rhs, "add")?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    fn check_same_dim(&self, rhs: &Self, op: &str) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::dim(
                op,
                format!("{}x{} vs {}x{}", self.dim, self.dim, rhs.dim, rhs.dim),
            ));
        }
        Ok(())
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }

    fn zip(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self * rhs - rhs * self
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        self * rhs + rhs * self
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| &acc * self)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim, rhs.dim, "max_abs_diff on mismatched dims");
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |(M†M − I)_ij|
    pub fn unitarity_error(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// True when every entry is 0 or 1 and each row and column holds exactly one 1.
    pub fn is_permutation(&self) -> bool {
        self.permutation().is_some()
    }

    /// For a permutation matrix, returns `p` with `M |k⟩ = |p[k]⟩`.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        let n = self.dim;
        let mut image = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for r in 0..n {
            for c in 0..n {
                let z = self[(r, c)];
                if z == ONE {
                    if image[c] != usize::MAX || hit[r] {
                        return None;
                    }
                    image[c] = r;
                    hit[r] = true;
                } else if z != ZERO {
                    return None;
                }
            }
        }
        image.iter().all(|&r| r != usize::MAX).then_some(image)
    }

    /// Determinant by partial-pivot LU.
    pub fn det(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            if a[pivot * n + col] == ZERO {
                return ZERO;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                if f == ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }
}

/// Serialized as rows of `[re, im]` pairs.
impl Serialize for GateMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}

impl Index<(usize, usize)> for GateMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for GateMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}

// Operator impls panic on mismatched dimensions; fallible callers use try_*.
impl<'a> Mul<&'a GateMatrix> for &'a GateMatrix {
    type Output = GateMatrix;
    fn mul(self, rhs: &GateMatrix) -> GateMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Mul<GateMatrix> for GateMatrix {
    type Output = GateMatrix;
    fn mul(self, rhs: GateMatrix) -> GateMatrix {
        &self * &rhs
    }
}

impl Mul<Complex64> for &GateMatrix {
    type Output = GateMatrix;
    fn mul(self, rhs: Complex64) -> GateMatrix {
        self.scale(rhs)
    }
}

impl<'a> Add<&'a GateMatrix> for &'a GateMatrix {
    type Output = GateMatrix;
    fn add(self, rhs: &GateMatrix) -> GateMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        self.zip(rhs, |a, b| a + b)
    }
}

impl Add<GateMatrix> for GateMatrix {
    type Output = GateMatrix;
    fn add(self, rhs: GateMatrix) -> GateMatrix {
        &self + &rhs
    }
}

impl<'a> Sub<&'a GateMatrix> for &'a GateMatrix {
    type Output = GateMatrix;
    fn sub(self, rhs: &GateMatrix) -> GateMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        self.zip(rhs, |a, b| a - b)
    }
}

impl Sub<GateMatrix> for GateMatrix {
    type Output = GateMatrix;
    fn sub(self, rhs: GateMatrix) -> GateMatrix {
        &self - &rhs
    }
}

impl Neg for &GateMatrix {
    type Output = GateMatrix;
    fn neg(self) -> GateMatrix {
        self.scale(-ONE)
    }
}

impl fmt::Debug for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GateMatrix {}x{} [", self.dim, self.dim)?;
        for row in self.rows() {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The Pauli basis σ0..σ3.
pub fn pauli(k: usize) -> GateMatrix {
    match k {
        0 => GateMatrix::identity(2),
        1 => GateMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]),
        2 => GateMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap(),
        3 => GateMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]),
        _ => panic!("Pauli index {k} out of range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_products() {
        // σ1σ2 = iσ3 and cyclic
        assert_eq!(&pauli(1) * &pauli(2), pauli(3).scale(I));
        assert_eq!(&pauli(2) * &pauli(3), pauli(1).scale(I));
        assert_eq!(&pauli(3) * &pauli(1), pauli(2).scale(I));
        for k in 0..4 {
            assert_eq!(&pauli(k) * &pauli(k), GateMatrix::identity(2));
        }
    }

    #[test]
    fn kron_orders_left_factor_outermost() {
        let x = pauli(1);
        let id = GateMatrix::identity(2);
        // X ⊗ I flips the high bit: |00⟩ → |10⟩
        let m = x.kron(&id);
        assert_eq!(m.permutation().unwrap(), vec![2, 3, 0, 1]);
        let m = id.kron(&x);
        assert_eq!(m.permutation().unwrap(), vec![1, 0, 3, 2]);
    }

    #[test]
    fn det_of_pauli_and_permutations() {
        assert_eq!(pauli(1).det(), -ONE);
        assert!((pauli(2).det() + ONE).norm() < 1e-15);
        assert_eq!(pauli(1).kron(&pauli(1)).det(), ONE);
        assert_eq!(GateMatrix::zeros(3).det(), ZERO);
    }

    #[test]
    fn non_square_rejected() {
        assert!(GateMatrix::from_row_major(vec![ONE; 3]).is_err());
        assert!(GateMatrix::from_rows(&[vec![ONE, ONE], vec![ONE]]).is_err());
    }

    #[test]
    fn permutation_detection() {
        assert!(GateMatrix::identity(4).is_permutation());
        assert!(!GateMatrix::identity(2).scale(I).is_permutation());
        assert!(!GateMatrix::zeros(2).is_permutation());
    }
}
