//! Gates built from control and cyclic operators.
//!
//! Every gate here is assembled through [`CouplingExpr`] from σco± and σcy±
//! and only compared against textbook matrices in tests.
//!
//! Two-qubit basis order is |00⟩, |01⟩, |10⟩, |11⟩ with the leftmost qubit
//! as the outermost tensor factor.

mod expr;
mod ops;
mod parse;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourvec::PauliVector;
use crate::matrix::{GateMatrix, I, ONE, UNITARY_TOL};

pub use expr::{CompiledGate, CouplingExpr};
pub use ops::ControlCyclicOps;
pub use parse::parse_expr;

/// Upper bound on N for the Controlled^N-NOT and NOT-Cyclic^N families.
pub const MAX_CHAIN: u32 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedGate {
    Identity,
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    Phase,
    PiOver4,
    CNOT,
    SWAP,
    FullSWAP,
    CC,
    CCC,
    Toffoli,
}

impl NamedGate {
    pub const ALL: [NamedGate; 13] = [
        Self::Identity,
        Self::PauliX,
        Self::PauliY,
        Self::PauliZ,
        Self::Hadamard,
        Self::Phase,
        Self::PiOver4,
        Self::CNOT,
        Self::SWAP,
        Self::FullSWAP,
        Self::CC,
        Self::CCC,
        Self::Toffoli,
    ];

    pub fn from_name(name: &str) -> Result<Self> {
        let key: String = name
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match key.as_str() {
            "identity" | "id" | "u0" => Self::Identity,
            "paulix" | "x" | "not" | "u1" => Self::PauliX,
            "pauliy" | "y" | "u2" => Self::PauliY,
            "pauliz" | "z" | "u3" => Self::PauliZ,
            "hadamard" | "h" => Self::Hadamard,
            "phase" | "s" => Self::Phase,
            "piover4" | "pi/4" | "t" => Self::PiOver4,
            "cnot" | "cx" | "controllednot" => Self::CNOT,
            "swap" => Self::SWAP,
            "fullswap" => Self::FullSWAP,
            "cc" => Self::CC,
            "ccc" => Self::CCC,
            "toffoli" | "ccnot" => Self::Toffoli,
            _ => {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("unknown gate name '{name}'"),
                })
            }
        })
    }

    /// The coupling expression that defines this gate.
    pub fn expr(self) -> CouplingExpr {
        use CouplingExpr as E;
        let ops = ControlCyclicOps::new();
        let cop = || E::leaf(ops.co_plus.clone());
        let com = || E::leaf(ops.co_minus.clone());
        let cyp = || E::leaf(ops.cy_plus.clone());
        let cym = || E::leaf(ops.cy_minus.clone());
        let x = || E::sum(cyp(), cym());
        match self {
            Self::Identity => E::sum(cop(), com()),
            Self::PauliX => x(),
            Self::PauliY => E::sum(E::scale(-I, cyp()), E::scale(I, cym())),
            Self::PauliZ => E::sum(cop(), E::scale(-ONE, com())),
            Self::Hadamard => E::scale(
                FRAC_1_SQRT_2.into(),
                E::sum(E::sum(cop(), E::scale(-ONE, com())), E::sum(cyp(), cym())),
            ),
            Self::Phase => E::sum(cop(), E::scale(I, com())),
            Self::PiOver4 => E::sum(
                cop(),
                E::scale(Complex64::from_polar(1.0, FRAC_PI_4), com()),
            ),
            Self::CNOT => E::co(E::Identity, x()),
            Self::SWAP => E::sum(E::co(cop(), com()), E::cy(cym(), cyp())),
            Self::FullSWAP => E::sum(E::cy(cyp(), cym()), E::cy(cym(), cyp())),
            Self::CC => E::cy_flipped(E::Identity, x()),
            Self::CCC => E::cy(E::Identity, x()),
            Self::Toffoli => controlled_n_not_expr(2),
        }
    }
}

impl FromStr for NamedGate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_name(s)
    }
}

impl fmt::Display for NamedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn named_gate(gate: NamedGate) -> GateMatrix {
    gate.expr()
        .to_matrix()
        .expect("named gate expressions are dimension-consistent")
}

pub fn compile(expr: &CouplingExpr) -> Result<CompiledGate> {
    expr.compile()
}

fn require_unitary_2x2(u: &GateMatrix, what: &str) -> Result<()> {
    if u.dim() != 2 {
        return Err(Error::dim(
            what,
            format!("expected 2x2, got {}x{}", u.dim(), u.dim()),
        ));
    }
    let err = u.unitarity_error();
    if err > UNITARY_TOL {
        return Err(Error::InvalidInput(format!(
            "{what}: input is not unitary (max |U†U − I| = {err:.3e})"
        )));
    }
    Ok(())
}

/// `σco+ ⊗ σ0 + σco− ⊗ U` = diag(I₂, U).
pub fn controlled_u(u: &GateMatrix) -> Result<GateMatrix> {
    require_unitary_2x2(u, "controlled_u")?;
    CouplingExpr::co(CouplingExpr::Identity, CouplingExpr::leaf(u.clone())).to_matrix()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicOrientation {
    /// `σ0 ⊗ σcy+ + U ⊗ σcy−` (CCC for U = σ1)
    PlusMinus,
    /// `σ0 ⊗ σcy− + U ⊗ σcy+` (CC for U = σ1)
    MinusPlus,
}

pub fn u_cyclic(u: &GateMatrix, orientation: CyclicOrientation) -> Result<GateMatrix> {
    require_unitary_2x2(u, "u_cyclic")?;
    let (a, b) = (CouplingExpr::Identity, CouplingExpr::leaf(u.clone()));
    match orientation {
        CyclicOrientation::PlusMinus => CouplingExpr::cy(a, b),
        CyclicOrientation::MinusPlus => CouplingExpr::cy_flipped(a, b),
    }
    .to_matrix()
}

fn check_chain(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "chain length must be at least 1".into(),
        ));
    }
    if n > MAX_CHAIN {
        return Err(Error::Resource(format!(
            "chain length {n} exceeds the maximum of {MAX_CHAIN}"
        )));
    }
    Ok(())
}

/// `U0 ⊕co (U0 ⊕co ( … ⊕co U1))`, N couplings, right-nested.
fn controlled_n_not_expr(n: u32) -> CouplingExpr {
    (0..n).fold(NamedGate::PauliX.expr(), |inner, _| {
        CouplingExpr::co(CouplingExpr::Identity, inner)
    })
}

/// `((U1 ⊕cy U0) ⊕cy U0) …`, N couplings, left-nested.
fn not_cyclic_n_expr(n: u32) -> CouplingExpr {
    (0..n).fold(NamedGate::PauliX.expr(), |acc, _| {
        CouplingExpr::cy(acc, CouplingExpr::Identity)
    })
}

/// Controlled^N-NOT on N+1 qubits: flips the last qubit when all N leading
/// qubits are 1.
pub fn controlled_n_not(n: u32) -> Result<GateMatrix> {
    check_chain(n)?;
    controlled_n_not_expr(n).to_matrix()
}

/// NOT-Cyclic^N on N+1 qubits: the cyclic shift |k⟩ → |k+1 mod 2^{N+1}⟩.
pub fn not_cyclic_n(n: u32) -> Result<GateMatrix> {
    check_chain(n)?;
    not_cyclic_n_expr(n).to_matrix()
}

/// a_i = tr(σ_i U) / 2.
pub fn pauli_decompose(u: &GateMatrix) -> Result<PauliVector> {
    PauliVector::from_matrix(u)
}
