use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{GateMatrix, UNITARY_TOL};

use super::ops::ControlCyclicOps;

/// An expression over tensor products and the control/cyclic couplings.
///
/// `Identity` has no fixed dimension: inside a coupling or sum it takes the
/// dimension of the other operand, elsewhere it is the 2×2 identity. This is
/// what lets a chain like `U0 ⊕co (U0 ⊕co U1)` couple a one-qubit identity
/// with a two-qubit operand.
#[derive(Debug, Clone, PartialEq)]
pub enum CouplingExpr {
    Leaf(GateMatrix),
    Identity,
    /// `left ⊗ right`
    Tensor(Box<CouplingExpr>, Box<CouplingExpr>),
    /// `σco+ ⊗ A + σco− ⊗ B`
    CoupleCo(Box<CouplingExpr>, Box<CouplingExpr>),
    /// `A ⊗ σcy+ + B ⊗ σcy−`
    CoupleCy(Box<CouplingExpr>, Box<CouplingExpr>),
    /// `A ⊗ σcy− + B ⊗ σcy+`
    CoupleCyFlipped(Box<CouplingExpr>, Box<CouplingExpr>),
    Sum(Box<CouplingExpr>, Box<CouplingExpr>),
    Scale(Complex64, Box<CouplingExpr>),
}

impl CouplingExpr {
    pub fn leaf(m: GateMatrix) -> Self {
        Self::Leaf(m)
    }

    pub fn tensor(a: Self, b: Self) -> Self {
        Self::Tensor(Box::new(a), Box::new(b))
    }

    pub fn co(a: Self, b: Self) -> Self {
        Self::CoupleCo(Box::new(a), Box::new(b))
    }

    pub fn cy(a: Self, b: Self) -> Self {
        Self::CoupleCy(Box::new(a), Box::new(b))
    }

    pub fn cy_flipped(a: Self, b: Self) -> Self {
        Self::CoupleCyFlipped(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Self, b: Self) -> Self {
        Self::Sum(Box::new(a), Box::new(b))
    }

    pub fn scale(s: Complex64, a: Self) -> Self {
        Self::Scale(s, Box::new(a))
    }

    /// True if the dimension is decided by context.
    fn floating(&self) -> bool {
        match self {
            Self::Identity => true,
            Self::Scale(_, e) => e.floating(),
            Self::Sum(a, b) => a.floating() && b.floating(),
            _ => false,
        }
    }

    pub fn compile(&self) -> Result<CompiledGate> {
        self.compile_with_tol(UNITARY_TOL)
    }

    pub fn compile_with_tol(&self, tol: f64) -> Result<CompiledGate> {
        let matrix = self.to_matrix()?;
        let unitarity_error = matrix.unitarity_error();
        Ok(CompiledGate {
            unitary: unitarity_error <= tol,
            unitarity_error,
            tolerance: tol,
            matrix,
        })
    }

    /// Dense matrix without the unitarity report.
    pub fn to_matrix(&self) -> Result<GateMatrix> {
        let ops = ControlCyclicOps::new();
        self.build(&ops, "root", None)
    }

    fn build(&self, ops: &ControlCyclicOps, path: &str, hint: Option<usize>) -> Result<GateMatrix> {
        match self {
            Self::Leaf(m) => Ok(m.clone()),
            Self::Identity => Ok(GateMatrix::identity(hint.unwrap_or(2))),
            Self::Scale(s, e) => Ok(e.build(ops, &format!("{path}.scale"), hint)?.scale(*s)),
            Self::Tensor(a, b) => {
                let a = a.build(ops, &format!("{path}.kron[0]"), None)?;
                let b = b.build(ops, &format!("{path}.kron[1]"), None)?;
                Ok(a.kron(&b))
            }
            Self::Sum(a, b) => {
                let (a, b) = build_pair(ops, a, b, &format!("{path}.add"), hint)?;
                Ok(&a + &b)
            }
            Self::CoupleCo(a, b) => {
                let p = format!("{path}.co");
                let inner = hint.map(|h| h / 2);
                let (a, b) = build_pair(ops, a, b, &p, inner)?;
                Ok(&ops.co_plus.kron(&a) + &ops.co_minus.kron(&b))
            }
            Self::CoupleCy(a, b) => {
                let p = format!("{path}.cy");
                let inner = hint.map(|h| h / 2);
                let (a, b) = build_pair(ops, a, b, &p, inner)?;
                Ok(&a.kron(&ops.cy_plus) + &b.kron(&ops.cy_minus))
            }
            Self::CoupleCyFlipped(a, b) => {
                let p = format!("{path}.cyf");
                let inner = hint.map(|h| h / 2);
                let (a, b) = build_pair(ops, a, b, &p, inner)?;
                Ok(&a.kron(&ops.cy_minus) + &b.kron(&ops.cy_plus))
            }
        }
    }
}

fn build_pair(
    ops: &ControlCyclicOps,
    a: &CouplingExpr,
    b: &CouplingExpr,
    path: &str,
    hint: Option<usize>,
) -> Result<(GateMatrix, GateMatrix)> {
    let pa = format!("{path}[0]");
    let pb = format!("{path}[1]");
    let (ma, mb) = match (a.floating(), b.floating()) {
        (true, false) => {
            let mb = b.build(ops, &pb, hint)?;
            (a.build(ops, &pa, Some(mb.dim()))?, mb)
        }
        (false, true) => {
            let ma = a.build(ops, &pa, hint)?;
            let d = ma.dim();
            (ma, b.build(ops, &pb, Some(d))?)
        }
        _ => (a.build(ops, &pa, hint)?, b.build(ops, &pb, hint)?),
    };
    if ma.dim() != mb.dim() {
        return Err(Error::dim(
            path,
            format!(
                "operands are {}x{} and {}x{}",
                ma.dim(),
                ma.dim(),
                mb.dim(),
                mb.dim()
            ),
        ));
    }
    Ok((ma, mb))
}

impl fmt::Display for CouplingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(m) => write!(f, "<{}x{}>", m.dim(), m.dim()),
            Self::Identity => write!(f, "I"),
            Self::Tensor(a, b) => write!(f, "kron({a}, {b})"),
            Self::CoupleCo(a, b) => write!(f, "co({a}, {b})"),
            Self::CoupleCy(a, b) => write!(f, "cy({a}, {b})"),
            Self::CoupleCyFlipped(a, b) => write!(f, "cyf({a}, {b})"),
            Self::Sum(a, b) => write!(f, "add({a}, {b})"),
            Self::Scale(s, e) => write!(f, "scale({}, {}, {e})", s.re, s.im),
        }
    }
}

/// A compiled gate together with its unitarity check.
#[derive(Debug, Clone, Serialize)]
pub struct CompiledGate {
    #[serde(skip)]
    pub matrix: GateMatrix,
    pub unitary: bool,
    pub unitarity_error: f64,
    pub tolerance: f64,
}
