use crate::matrix::{pauli, GateMatrix, I};

/// σco± = (σ0 ± σ3)/2 (projectors) and σcy± = (σ1 ± iσ2)/2 (raising/lowering).
#[derive(Debug, Clone, PartialEq)]
pub struct ControlCyclicOps {
    pub co_plus: GateMatrix,
    pub co_minus: GateMatrix,
    pub cy_plus: GateMatrix,
    pub cy_minus: GateMatrix,
}

impl ControlCyclicOps {
    pub fn new() -> Self {
        let half = 0.5.into();
        let iy = pauli(2).scale(I);
        Self {
            co_plus: (&pauli(0) + &pauli(3)).scale(half),
            co_minus: (&pauli(0) - &pauli(3)).scale(half),
            cy_plus: (&pauli(1) + &iy).scale(half),
            cy_minus: (&pauli(1) - &iy).scale(half),
        }
    }
}

impl Default for ControlCyclicOps {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_operators_are_idempotent() {
        let ops = ControlCyclicOps::new();
        assert_eq!(&ops.co_plus * &ops.co_plus, ops.co_plus);
        assert_eq!(&ops.co_minus * &ops.co_minus, ops.co_minus);
        assert_eq!(&ops.co_plus + &ops.co_minus, GateMatrix::identity(2));
    }

    #[test]
    fn cyclic_operators_anticommute_to_identity() {
        let ops = ControlCyclicOps::new();
        assert_eq!(
            ops.cy_plus.anticommutator(&ops.cy_minus),
            GateMatrix::identity(2)
        );
        assert_eq!(
            ops.cy_plus,
            GateMatrix::from_real(&[&[0.0, 1.0], &[0.0, 0.0]])
        );
        assert_eq!(
            ops.cy_minus,
            GateMatrix::from_real(&[&[0.0, 0.0], &[1.0, 0.0]])
        );
        // nilpotent
        assert_eq!(&ops.cy_plus * &ops.cy_plus, GateMatrix::zeros(2));
    }
}
