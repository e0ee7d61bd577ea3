//! Operator-coefficient form of the intertwining relation `L h0 = h1 L`.
//!
//! With `h = iK d/dt + V(t)` and `L = d/dt + B(t)`, expanding both sides and
//! collecting powers of d/dt gives (the ψ'' terms cancel)
//!
//! ```text
//! ψ'  : R1 = (V0 + i B K) − (i K B + V1)
//! ψ   : R0 = (V0' + B V0) − (i K B' + V1 B)
//! ```
//!
//! and the relation holds iff both polynomials vanish identically.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::cliffgen::CliffordLevel;
use crate::error::{Error, Result};
use crate::fourvec::{wedge, PauliVector};
use crate::matrix::{GateMatrix, I, ONE, ZERO};
use crate::poly::{MatrixPolynomial, ScalarPoly};

/// `h = i K d/dt + V(t)`, optionally with the energy of a stationary problem.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracHamiltonian {
    pub kinetic: GateMatrix,
    pub potential: MatrixPolynomial,
    pub energy: Option<Complex64>,
}

impl DiracHamiltonian {
    pub fn new(level: &CliffordLevel, potential: MatrixPolynomial) -> Result<Self> {
        if potential.dim() != level.dim() {
            return Err(Error::dim(
                "DiracHamiltonian::new",
                format!(
                    "potential is {}x{}, level {} is {}x{}",
                    potential.dim(),
                    potential.dim(),
                    level.n(),
                    level.dim(),
                    level.dim()
                ),
            ));
        }
        Ok(Self {
            kinetic: level.kinetic(),
            potential,
            energy: None,
        })
    }

    pub fn with_energy(mut self, e: Complex64) -> Self {
        self.energy = Some(e);
        self
    }

    pub fn dim(&self) -> usize {
        self.kinetic.dim()
    }
}

/// Which side the gate multiplies a matrix-valued potential on in `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    /// `(V − β) · U`
    #[default]
    Left,
    /// `U · (V − β)`
    Right,
}

/// `L = d/dt + B` with `B = α I + P(t) − β U`.
///
/// `P` carries the initial-potential profile: `v(t) U` for a scalar profile,
/// `V(t) U` or `U V(t)` for a matrix one. So with a scalar profile
/// `B = α σ0 + (v − β) U`.
#[derive(Debug, Clone, PartialEq)]
pub struct Intertwiner {
    pub alpha: ScalarPoly,
    pub beta: ScalarPoly,
    pub gate: GateMatrix,
    pub profile_term: MatrixPolynomial,
}

impl Intertwiner {
    /// Scalar-profile intertwiner `α + (v − β) U`.
    pub fn with_scalar_profile(
        alpha: ScalarPoly,
        beta: ScalarPoly,
        gate: GateMatrix,
        profile: &ScalarPoly,
    ) -> Self {
        let profile_term = MatrixPolynomial::from_scalar(profile, &gate);
        Self {
            alpha,
            beta,
            gate,
            profile_term,
        }
    }

    /// Matrix-profile intertwiner `α + (V − β) U` (or `U (V − β)`).
    pub fn with_matrix_profile(
        alpha: ScalarPoly,
        beta: ScalarPoly,
        gate: GateMatrix,
        potential: &MatrixPolynomial,
        ordering: Ordering,
    ) -> Result<Self> {
        let u = MatrixPolynomial::constant(gate.clone());
        let profile_term = match ordering {
            Ordering::Left => potential.try_mul(&u)?,
            Ordering::Right => u.try_mul(potential)?,
        };
        Ok(Self {
            alpha,
            beta,
            gate,
            profile_term,
        })
    }

    /// The trivial intertwiner `L = d/dt`.
    pub fn trivial(dim: usize) -> Self {
        Self {
            alpha: ScalarPoly::zero(),
            beta: ScalarPoly::zero(),
            gate: GateMatrix::identity(dim),
            profile_term: MatrixPolynomial::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.gate.dim()
    }

    pub fn b(&self) -> MatrixPolynomial {
        let d = self.dim();
        let a = MatrixPolynomial::from_scalar(&self.alpha, &GateMatrix::identity(d));
        let bu = MatrixPolynomial::from_scalar(&self.beta, &self.gate);
        &(&a + &self.profile_term) - &bu
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    /// coefficient of dψ/dt
    pub first_order: MatrixPolynomial,
    /// coefficient of ψ
    pub zeroth_order: MatrixPolynomial,
}

impl Residual {
    pub fn max_abs(&self) -> f64 {
        self.first_order
            .max_coeff_abs()
            .max(self.zeroth_order.max_coeff_abs())
    }
}

pub fn intertwine_residual(
    h0: &DiracHamiltonian,
    h1: &DiracHamiltonian,
    l: &Intertwiner,
) -> Result<Residual> {
    if h0.dim() != h1.dim() || h0.dim() != l.dim() {
        return Err(Error::dim(
            "intertwine_residual",
            format!("h0 is {}, h1 is {}, L is {}", h0.dim(), h1.dim(), l.dim()),
        ));
    }
    if h0.kinetic != h1.kinetic {
        return Err(Error::InvalidInput(
            "h0 and h1 must share the kinetic matrix".into(),
        ));
    }
    let v0 = &h0.potential;
    let v1 = &h1.potential;
    let b = l.b();
    let ik = MatrixPolynomial::constant(h0.kinetic.scale(I));
    // i B K = B (iK)
    let first_order = &(&(v0 + &(&b * &ik)) - &(&ik * &b)) - v1;
    let zeroth_order = &(&(&v0.derivative() + &(&b * v0)) - &(&ik * &b.derivative())) - &(v1 * &b);
    Ok(Residual {
        first_order,
        zeroth_order,
    })
}

/// `ΔV = −i θ_3 ∧ U` as a matrix.
///
/// At one qubit this is the Pauli-basis wedge of σ_z with U. Above, U is
/// split into the parts commuting (U_c) and anticommuting (U_a) with θ_3 and
/// `θ_3 ∧ U = θ_3 U_c + ½[θ_3, U_a]`, which restricts to the Pauli rule at
/// n = 1.
pub fn delta_v(u: &GateMatrix, level: &CliffordLevel) -> Result<GateMatrix> {
    if u.dim() != level.dim() {
        return Err(Error::dim(
            "delta_v",
            format!(
                "gate is {}x{}, level {} is {}x{}",
                u.dim(),
                u.dim(),
                level.n(),
                level.dim(),
                level.dim()
            ),
        ));
    }
    if level.n() == 1 {
        let uv = PauliVector::from_matrix(u)?;
        return Ok(wedge(&PauliVector::basis(3), &uv).scale(-I).to_matrix());
    }
    Ok(wedge_matrix(&level.kinetic(), u).scale(-I))
}

/// `K ∧ U` for K with K² = ±I.
pub fn wedge_matrix(k: &GateMatrix, u: &GateMatrix) -> GateMatrix {
    let k2 = k * k;
    let sign = k2[(0, 0)];
    debug_assert!(k2.max_abs_diff(&GateMatrix::identity(k.dim()).scale(sign)) < 1e-12);
    let k_inv = k.scale(ONE / sign);
    let conj = &(k * u) * &k_inv;
    let half = Complex64::new(0.5, 0.0);
    let commuting = (u + &conj).scale(half);
    let anticommuting = (u - &conj).scale(half);
    &(k * &commuting) + &k.commutator(&anticommuting).scale(half)
}

/// Scalar profile of V along the direction of U: tr(U† V) / dim, per power of t.
pub fn scalar_profile(potential: &MatrixPolynomial, u: &GateMatrix) -> ScalarPoly {
    let ud = u.adjoint();
    let norm = (&ud * u).trace();
    ScalarPoly::new(
        potential
            .coeffs()
            .iter()
            .map(|c| (&ud * c).trace() / norm)
            .collect(),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaBetaSolution {
    pub alpha: ScalarPoly,
    pub beta: ScalarPoly,
    pub max_residual: f64,
    pub first_order_residual: f64,
    pub zeroth_order_residual: f64,
    pub solution_exists: bool,
    #[serde(skip)]
    pub intertwiner: Intertwiner,
}

/// How the initial potential enters `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// `(v(t) − β) U` with v the scalar coefficient of V0 along U
    Scalar,
    /// `(V0(t) − β) U` or `U (V0(t) − β)`
    Matrix(Ordering),
}

/// Finds polynomial α(t), β(t) minimizing the intertwining residual.
///
/// The residual is affine in the coefficients of α and β, so this is a
/// linear least-squares problem over polynomials of degree ≤ deg(V) + 1.
/// `solution_exists` is set when the best residual is at most `tol`.
pub fn solve_alpha_beta(
    h0: &DiracHamiltonian,
    h1: &DiracHamiltonian,
    gate: &GateMatrix,
    profile: Profile,
    tol: f64,
) -> Result<AlphaBetaSolution> {
    if gate.dim() != h0.dim() {
        return Err(Error::dim(
            "solve_alpha_beta",
            format!(
                "gate is {}x{}, Hamiltonian is {}",
                gate.dim(),
                gate.dim(),
                h0.dim()
            ),
        ));
    }
    let degree = h0.potential.degree().max(h1.potential.degree()) + 1;
    let n_unknowns = 2 * (degree + 1);

    let make = |x: &[Complex64]| -> Result<Intertwiner> {
        let alpha = ScalarPoly::new(x[..=degree].to_vec());
        let beta = ScalarPoly::new(x[degree + 1..].to_vec());
        match profile {
            Profile::Scalar => Ok(Intertwiner::with_scalar_profile(
                alpha,
                beta,
                gate.clone(),
                &scalar_profile(&h0.potential, gate),
            )),
            Profile::Matrix(ordering) => {
                Intertwiner::with_matrix_profile(alpha, beta, gate.clone(), &h0.potential, ordering)
            }
        }
    };
    let n_coeffs = h0.potential.degree().max(h1.potential.degree()) + degree + 2;
    let flatten = |r: &Residual| -> Vec<Complex64> {
        let mut out = Vec::new();
        for p in [&r.first_order, &r.zeroth_order] {
            for k in 0..n_coeffs {
                out.extend_from_slice(p.coeff(k).entries());
            }
        }
        out
    };

    let zero = vec![ZERO; n_unknowns];
    let c = flatten(&intertwine_residual(h0, h1, &make(&zero)?)?);
    let rows = c.len();
    let mut a = DMatrix::<Complex64>::zeros(rows, n_unknowns);
    for j in 0..n_unknowns {
        let mut e = zero.clone();
        e[j] = ONE;
        let col = flatten(&intertwine_residual(h0, h1, &make(&e)?)?);
        for i in 0..rows {
            a[(i, j)] = col[i] - c[i];
        }
    }
    let rhs = DVector::from_iterator(rows, c.iter().map(|z| -z));
    let svd = a.svd(true, true);
    let x = svd
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::InvalidInput(format!("least-squares solve failed: {e}")))?;
    // Snap round-off so exact solutions print cleanly, but keep whichever of
    // the raw or snapped solution has the smaller residual.
    let raw: Vec<Complex64> = x.iter().copied().collect();
    let snapped: Vec<Complex64> = raw.iter().map(|z| snap(*z)).collect();

    let mut best: Option<(Intertwiner, Residual)> = None;
    for cand in [snapped, raw] {
        let l = make(&cand)?;
        let r = intertwine_residual(h0, h1, &l)?;
        if best.as_ref().is_none_or(|(_, b)| r.max_abs() < b.max_abs()) {
            best = Some((l, r));
        }
    }
    let (intertwiner, residual) = best.expect("at least one candidate");
    let max_residual = residual.max_abs();
    Ok(AlphaBetaSolution {
        alpha: intertwiner.alpha.clone(),
        beta: intertwiner.beta.clone(),
        max_residual,
        first_order_residual: residual.first_order.max_coeff_abs(),
        zeroth_order_residual: residual.zeroth_order.max_coeff_abs(),
        solution_exists: max_residual <= tol,
        intertwiner,
    })
}

fn snap(z: Complex64) -> Complex64 {
    let f = |x: f64| {
        let r = (x * 1e9).round() / 1e9;
        if (x - r).abs() < 1e-11 {
            if r == 0.0 {
                0.0
            } else {
                r
            }
        } else {
            x
        }
    };
    Complex64::new(f(z.re), f(z.im))
}
