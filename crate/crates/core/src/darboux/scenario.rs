//! Potential-tuning scenarios: a gate U, an initial potential V0 and a final
//! potential V1 are checked against `ΔV = −i θ_3 ∧ U`, an intertwiner is
//! solved for, and an h0 eigenfunction is transported to h1.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::cliffgen::clifford_level;
use crate::error::{Error, Result};
use crate::fourvec::PauliVector;
use crate::matrix::{pauli, GateMatrix, ONE};
use crate::poly::{MatrixPolynomial, ScalarPoly};

use super::intertwine::{delta_v, solve_alpha_beta, DiracHamiltonian, Profile};
use super::transport::{
    default_initial, eigen_residual, integrate_eigenfunction, transform_state, UniformGrid,
};

/// Residual below which an intertwiner is considered to exist.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Relative interior residual required of the transported state.
pub const STATE_TOL: f64 = 1e-5;
/// RK4 steps per grid interval.
pub const SUBSTEPS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    U0,
    U1,
    U2,
    U3,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::U0, TableId::U1, TableId::U2, TableId::U3];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `(V0, V1)` per power of t.
    pub fn potentials(self) -> (Vec<PauliVector>, Vec<PauliVector>) {
        let c = Complex64::new;
        let pv = |a: [Complex64; 4]| PauliVector::new(a[0], a[1], a[2], a[3]);
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        match self {
            // V0 = 3it σ0, V1 = 3it σ0 − iσ3
            TableId::U0 => (
                vec![PauliVector::ZERO, pv([c(0.0, 3.0), z, z, z])],
                vec![pv([z, z, z, -i]), pv([c(0.0, 3.0), z, z, z])],
            ),
            // V0 = t(σ2 − iσ3), V1 = (t+1)σ2 − itσ3
            TableId::U1 => (
                vec![PauliVector::ZERO, pv([z, z, one, -i])],
                vec![pv([z, z, one, z]), pv([z, z, one, -i])],
            ),
            // V0 = −t(σ1 + iσ3), V1 = −(t+1)σ1 − itσ3
            TableId::U2 => (
                vec![PauliVector::ZERO, pv([z, -one, z, -i])],
                vec![pv([z, -one, z, z]), pv([z, -one, z, -i])],
            ),
            // V0 = −it(σ0 + σ3), V1 = −i(t+1)σ0 − itσ3
            TableId::U3 => (
                vec![PauliVector::ZERO, pv([-i, z, z, -i])],
                vec![pv([-i, z, z, z]), pv([-i, z, z, -i])],
            ),
        }
    }

    pub fn gate(self) -> GateMatrix {
        pauli(self.index())
    }

    pub fn spec(self) -> ScenarioSpec {
        let (v0, v1) = self.potentials();
        ScenarioSpec {
            label: self.to_string(),
            level: 1,
            v0: MatrixPolynomial::from_pauli(&v0),
            v1: MatrixPolynomial::from_pauli(&v1),
            gate: self.gate(),
            profile: Profile::Scalar,
            energy: ONE,
            grid: UniformGrid::default(),
            delta_tol: 0.0,
            residual_tol: RESIDUAL_TOL,
            state_tol: STATE_TOL,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}", self.index())
    }
}

impl FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u0" | "0" => Ok(TableId::U0),
            "u1" | "1" => Ok(TableId::U1),
            "u2" | "2" => Ok(TableId::U2),
            "u3" | "3" => Ok(TableId::U3),
            _ => Err(Error::InvalidInput(format!(
                "unknown table '{s}' (expected u0..u3)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioSpec {
    pub label: String,
    pub level: u32,
    pub v0: MatrixPolynomial,
    pub v1: MatrixPolynomial,
    pub gate: GateMatrix,
    pub profile: Profile,
    pub energy: Complex64,
    pub grid: UniformGrid,
    /// 0 demands exact equality of V1 − V0 and ΔV.
    pub delta_tol: f64,
    pub residual_tol: f64,
    pub state_tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub label: String,
    pub delta_v_match: bool,
    pub delta_v: GateMatrix,
    pub alpha: ScalarPoly,
    pub beta: ScalarPoly,
    pub max_residual: f64,
    pub first_order_residual: f64,
    pub zeroth_order_residual: f64,
    pub solution_exists: bool,
    pub state_residual: f64,
    pub state_residual_coarse: f64,
    pub convergence_order: f64,
    pub passed: bool,
}

pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioReport> {
    let level = clifford_level(spec.level)?;
    let h0 = DiracHamiltonian::new(&level, spec.v0.clone())?;
    let h1 = DiracHamiltonian::new(&level, spec.v1.clone())?;
    let expected = delta_v(&spec.gate, &level)?;
    let observed = &spec.v1 - &spec.v0;
    let mismatch = (&observed - &MatrixPolynomial::constant(expected.clone())).max_coeff_abs();
    let delta_v_match = if spec.delta_tol == 0.0 {
        mismatch == 0.0
    } else {
        mismatch <= spec.delta_tol
    };

    let sol = solve_alpha_beta(&h0, &h1, &spec.gate, spec.profile, spec.residual_tol)?;

    let state_residual_at = |grid: UniformGrid| -> Result<f64> {
        let psi =
            integrate_eigenfunction(&h0, spec.energy, &default_initial(h0.dim()), grid, SUBSTEPS)?;
        let phi = transform_state(&psi, &sol.intertwiner)?;
        eigen_residual(&h1, spec.energy, &phi)
    };
    let fine = spec.grid;
    let coarse = UniformGrid::new(
        fine.start,
        fine.end,
        fine.points.div_ceil(2).max(super::transport::MIN_POINTS),
    )?;
    let state_residual = state_residual_at(fine)?;
    let state_residual_coarse = state_residual_at(coarse)?;
    let ratio = fine.step().max(f64::MIN_POSITIVE) / coarse.step();
    let convergence_order = (state_residual / state_residual_coarse).ln() / ratio.ln();

    let passed = delta_v_match && sol.solution_exists && state_residual <= spec.state_tol;
    Ok(ScenarioReport {
        label: spec.label.clone(),
        delta_v_match,
        delta_v: expected,
        alpha: sol.alpha,
        beta: sol.beta,
        max_residual: sol.max_residual,
        first_order_residual: sol.first_order_residual,
        zeroth_order_residual: sol.zeroth_order_residual,
        solution_exists: sol.solution_exists,
        state_residual,
        state_residual_coarse,
        convergence_order,
        passed,
    })
}

pub fn run_table_scenario(which: TableId) -> ScenarioReport {
    run_scenario(&which.spec()).expect("table scenarios are well-formed")
}

/// All four tables, one thread each; results in table order.
pub fn run_all_tables() -> Vec<ScenarioReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = TableId::ALL
            .iter()
            .map(|&t| s.spawn(move || run_table_scenario(t)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    })
}

/// `V0 = v0 + v1 σ1 − ½σ2`, `V1 = v0 + v1 σ1 + ½σ2`, `U = σ1`: a constant
/// potential pair intertwined exactly by `B = ½σ1`.
pub fn solvable_demo(v0: f64, v1: f64) -> ScenarioSpec {
    ScenarioSpec {
        label: "demo".into(),
        level: 1,
        v0: MatrixPolynomial::from_pauli(&[PauliVector::real(v0, v1, -0.5, 0.0)]),
        v1: MatrixPolynomial::from_pauli(&[PauliVector::real(v0, v1, 0.5, 0.0)]),
        gate: pauli(1),
        profile: Profile::Scalar,
        energy: ONE,
        grid: UniformGrid::default(),
        delta_tol: 0.0,
        residual_tol: RESIDUAL_TOL,
        state_tol: STATE_TOL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_delta_v_exact() {
        for r in run_all_tables() {
            assert!(r.delta_v_match, "{}", r.label);
        }
    }

    #[test]
    fn demo_family_passes() {
        let r = run_scenario(&solvable_demo(-2.0, 0.2)).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.state_residual < 1e-6);
        assert!(r.convergence_order > 3.5, "{r:?}");
    }

    #[test]
    fn table_names() {
        assert_eq!("u2".parse::<TableId>().unwrap(), TableId::U2);
        assert!("u4".parse::<TableId>().is_err());
        assert_eq!(TableId::U3.to_string(), "U3");
    }
}
