//! The generalized Pauli-Dirac hierarchy θ ∈ {σ, γ, π, ρ, …}.
//!
//! Level `n` acts on n qubits (dimension 2^n). Level 1 is the Pauli set
//! {σ0, σ1, σ2, σ3}; level 2 is the Dirac representation of the γ matrices;
//! higher levels are obtained by the doubling `θ^μ_{n+1} = σ0 ⊗ θ^μ_n`,
//! which preserves the anticommutation relations of level 2.
//!
//! Note that level 1 cannot satisfy `{θ^μ, θ^ν} = 2η^{μν}` — no 2×2
//! representation of the (+,−,−,−) Clifford algebra exists — so
//! [`CliffordLevel::clifford_residual`] is only small for n ≥ 2.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourvec::MinkowskiMetric;
use crate::matrix::{pauli, GateMatrix, I};

pub const MAX_LEVEL: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordLevel {
    n: u32,
    /// Contravariant θ^0..θ^3.
    matrices: [GateMatrix; 4],
}

impl CliffordLevel {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// θ^μ
    pub fn theta(&self, mu: usize) -> &GateMatrix {
        &self.matrices[mu]
    }

    pub fn matrices(&self) -> &[GateMatrix; 4] {
        &self.matrices
    }

    /// θ_μ = g_{μμ} θ^μ. At level 1 the Pauli set is returned unchanged.
    pub fn lowered(&self, mu: usize) -> GateMatrix {
        if self.n == 1 {
            self.matrices[mu].clone()
        } else {
            self.matrices[mu].scale(MinkowskiMetric::g(mu, mu).into())
        }
    }

    /// Kinetic matrix of the one-dimensional Dirac Hamiltonian at this level:
    /// σ_z for one qubit, θ_3 (covariant) above.
    pub fn kinetic(&self) -> GateMatrix {
        self.lowered(3)
    }

    /// max over μ ≤ ν of max-norm({θ^μ, θ^ν} − 2η^{μν} I).
    pub fn clifford_residual(&self) -> f64 {
        let id = GateMatrix::identity(self.dim());
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in mu..4 {
                let target = id.scale((2.0 * MinkowskiMetric::g(mu, nu)).into());
                let ac = self.matrices[mu].anticommutator(&self.matrices[nu]);
                worst = worst.max(ac.max_abs_diff(&target));
            }
        }
        worst
    }
}

/// Builds level `n` (1 ≤ n ≤ 8).
pub fn clifford_level(n: u32) -> Result<CliffordLevel> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "Clifford level must be at least 1".into(),
        ));
    }
    if n > MAX_LEVEL {
        return Err(Error::Resource(format!(
            "Clifford level {n} exceeds the maximum of {MAX_LEVEL}"
        )));
    }
    if n == 1 {
        return Ok(CliffordLevel {
            n,
            matrices: std::array::from_fn(pauli),
        });
    }
    let mut matrices = dirac_gammas();
    let id2 = GateMatrix::identity(2);
    for _ in 2..n {
        matrices = matrices.map(|m| id2.kron(&m));
    }
    Ok(CliffordLevel { n, matrices })
}

/// γ^0 = σ3 ⊗ σ0, γ^k = iσ2 ⊗ σk, i.e. γ^k = [[0, σk], [−σk, 0]].
fn dirac_gammas() -> [GateMatrix; 4] {
    let g0 = pauli(3).kron(&pauli(0));
    let off = pauli(2).scale(I);
    [
        g0,
        off.kron(&pauli(1)),
        off.kron(&pauli(2)),
        off.kron(&pauli(3)),
    ]
}

/// γ^5 = i γ^0 γ^1 γ^2 γ^3 at level 2.
pub fn gamma5() -> GateMatrix {
    let [g0, g1, g2, g3] = dirac_gammas();
    (&(&(&g0 * &g1) * &g2) * &g3).scale(I)
}

/// The 16-element trace-orthogonal basis of 4×4 matrices:
/// I, γ^μ, γ^μγ^ν (μ<ν), γ^5γ^μ, γ^5.
pub fn gamma_basis() -> Vec<(String, GateMatrix)> {
    let g = dirac_gammas();
    let g5 = gamma5();
    let mut out = vec![("I".to_string(), GateMatrix::identity(4))];
    for (mu, m) in g.iter().enumerate() {
        out.push((format!("g{mu}"), m.clone()));
    }
    for mu in 0..4 {
        for nu in mu + 1..4 {
            out.push((format!("g{mu}g{nu}"), &g[mu] * &g[nu]));
        }
    }
    for (mu, m) in g.iter().enumerate() {
        out.push((format!("g5g{mu}"), &g5 * m));
    }
    out.push(("g5".to_string(), g5));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaDecomposition {
    pub labels: Vec<String>,
    pub coefficients: Vec<Complex64>,
}

impl GammaDecomposition {
    pub fn reconstruct(&self) -> GateMatrix {
        gamma_basis()
            .iter()
            .zip(&self.coefficients)
            .fold(GateMatrix::zeros(4), |acc, ((_, b), c)| &acc + &b.scale(*c))
    }

    pub fn coefficient(&self, label: &str) -> Option<Complex64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|k| self.coefficients[k])
    }
}

/// Projects a 4×4 matrix onto the γ basis with c_k = tr(B_k† M) / tr(B_k† B_k).
pub fn gamma_basis_decompose(m: &GateMatrix) -> Result<GammaDecomposition> {
    if m.dim() != 4 {
        return Err(Error::dim(
            "gamma_basis_decompose",
            format!("expected 4x4, got {}x{}", m.dim(), m.dim()),
        ));
    }
    let (labels, coefficients) = gamma_basis()
        .into_iter()
        .map(|(label, b)| {
            let bd = b.adjoint();
            let c = (&bd * m).trace() / (&bd * &b).trace();
            (label, c)
        })
        .unzip();
    Ok(GammaDecomposition {
        labels,
        coefficients,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergySign {
    Positive,
    Negative,
    Mixed,
}

/// Rest-frame energy sign of a two-qubit spinor: support on |00⟩,|01⟩ is
/// positive, on |10⟩,|11⟩ negative (the ±1 eigenspaces of γ^0).
///
/// Components below `1e-12` relative to the spinor norm count as zero.
pub fn classify_energy(spinor: &[Complex64; 4]) -> Result<EnergySign> {
    let norm = spinor.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidInput(
            "cannot classify the zero spinor".into(),
        ));
    }
    let tol = 1e-12 * norm;
    let upper = spinor[..2].iter().any(|z| z.norm() > tol);
    let lower = spinor[2..].iter().any(|z| z.norm() > tol);
    Ok(match (upper, lower) {
        (true, false) => EnergySign::Positive,
        (false, true) => EnergySign::Negative,
        _ => EnergySign::Mixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{ONE, ZERO};

    #[test]
    fn level_one_is_pauli() {
        let l = clifford_level(1).unwrap();
        for k in 0..4 {
            assert_eq!(l.theta(k), &pauli(k));
        }
        assert_eq!(l.kinetic(), pauli(3));
    }

    #[test]
    fn level_two_is_dirac_representation() {
        let l = clifford_level(2).unwrap();
        let g0 = GateMatrix::from_real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, -1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
        ]);
        assert_eq!(l.theta(0), &g0);
        for k in 1..4 {
            let s = pauli(k);
            let g = l.theta(k);
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(g[(r, c)], ZERO);
                    assert_eq!(g[(r + 2, c + 2)], ZERO);
                    assert_eq!(g[(r, c + 2)], s[(r, c)]);
                    assert_eq!(g[(r + 2, c)], -s[(r, c)]);
                }
            }
        }
        assert!(l.clifford_residual() <= 1e-12);
    }

    #[test]
    fn higher_levels_anticommute() {
        for n in 2..=5 {
            let l = clifford_level(n).unwrap();
            assert_eq!(l.dim(), 1 << n);
            assert!(l.clifford_residual() <= 1e-12, "level {n}");
        }
    }

    #[test]
    fn level_bounds() {
        assert!(matches!(clifford_level(9), Err(Error::Resource(_))));
        assert!(clifford_level(0).is_err());
        assert_eq!(clifford_level(8).unwrap().dim(), 256);
    }

    #[test]
    fn gamma5_squares_to_identity_and_anticommutes() {
        let g5 = gamma5();
        assert!((&g5 * &g5).max_abs_diff(&GateMatrix::identity(4)) < 1e-15);
        let l = clifford_level(2).unwrap();
        for mu in 0..4 {
            assert!(g5.anticommutator(l.theta(mu)).max_abs() < 1e-15);
        }
    }

    #[test]
    fn gamma_basis_trace_orthogonal() {
        let basis = gamma_basis();
        assert_eq!(basis.len(), 16);
        for (i, (_, a)) in basis.iter().enumerate() {
            for (j, (_, b)) in basis.iter().enumerate() {
                let t = (&a.adjoint() * b).trace();
                let expect = if i == j { 4.0 } else { 0.0 };
                assert!((t - Complex64::new(expect, 0.0)).norm() < 1e-14, "{i},{j}");
            }
        }
    }

    #[test]
    fn decompose_basis_elements() {
        let d = gamma_basis_decompose(&GateMatrix::identity(4)).unwrap();
        assert_eq!(d.coefficient("I"), Some(ONE));
        assert!(d.coefficients[1..].iter().all(|c| c.norm() < 1e-15));

        let l = clifford_level(2).unwrap();
        let d = gamma_basis_decompose(l.theta(1)).unwrap();
        for (label, c) in d.labels.iter().zip(&d.coefficients) {
            let expect = if label == "g1" { ONE } else { ZERO };
            assert!((c - expect).norm() < 1e-15, "{label}");
        }
        assert!(gamma_basis_decompose(&GateMatrix::identity(2)).is_err());
    }

    #[test]
    fn classify_examples() {
        let s = |a: f64, b: f64, c: f64, d: f64| [a, b, c, d].map(|x| Complex64::new(x, 0.0));
        assert_eq!(
            classify_energy(&s(1.0, 0.0, 0.0, 0.0)).unwrap(),
            EnergySign::Positive
        );
        assert_eq!(
            classify_energy(&s(0.0, 0.0, 0.0, 1.0)).unwrap(),
            EnergySign::Negative
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(
            classify_energy(&s(h, 0.0, h, 0.0)).unwrap(),
            EnergySign::Mixed
        );
        assert!(classify_energy(&[ZERO; 4]).is_err());
    }

    #[test]
    fn gamma0_eigenvectors_classify_by_eigenvalue() {
        let g0 = clifford_level(2).unwrap().theta(0).clone();
        for k in 0..4 {
            let mut v = [ZERO; 4];
            v[k] = ONE;
            let gv = g0.apply(&v);
            let eig = gv[k].re;
            let sign = classify_energy(&v).unwrap();
            if eig > 0.0 {
                assert_eq!(sign, EnergySign::Positive);
            } else {
                assert_eq!(sign, EnergySign::Negative);
            }
        }
    }
}
