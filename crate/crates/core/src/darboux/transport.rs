//! Sampled spinors on a uniform grid: eigenfunctions of `h0` by RK4 and
//! their images under `L` by fourth-order finite differences.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{GateMatrix, I, ONE, ZERO};

use super::intertwine::{DiracHamiltonian, Intertwiner};

/// Five-point stencils need at least this many samples.
pub const MIN_POINTS: usize = 9;
/// Points dropped on each side when measuring a residual.
pub const EDGE_SKIP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl UniformGrid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) || end <= start {
            return Err(Error::InvalidInput(format!(
                "grid interval [{start}, {end}] is empty or not finite"
            )));
        }
        if points < MIN_POINTS {
            return Err(Error::InvalidInput(format!(
                "grid needs at least {MIN_POINTS} points, got {points}"
            )));
        }
        Ok(Self { start, end, points })
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.points - 1) as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step()
    }
}

impl Default for UniformGrid {
    fn default() -> Self {
        Self {
            start: -5.0,
            end: 5.0,
            points: 2000,
        }
    }
}

/// A `dim`-component spinor sampled on a grid, stored point-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: UniformGrid,
    pub dim: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_fn(
        grid: UniformGrid,
        dim: usize,
        f: impl Fn(f64) -> Vec<Complex64>,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.points * dim);
        for i in 0..grid.points {
            let v = f(grid.t(i));
            if v.len() != dim {
                return Err(Error::dim(
                    "GridFunction::from_fn",
                    format!("sample has {} components, expected {dim}", v.len()),
                ));
            }
            values.extend(v);
        }
        Ok(Self { grid, dim, values })
    }

    pub fn at(&self, i: usize) -> &[Complex64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn max_norm(&self) -> f64 {
        (0..self.grid.points)
            .map(|i| norm(self.at(i)))
            .fold(0.0, f64::max)
    }

    /// dψ/dt with the 4th-order five-point stencil, one-sided at the ends.
    pub fn derivative(&self) -> Self {
        let n = self.grid.points;
        let h12 = 12.0 * self.grid.step();
        let mut out = vec![ZERO; self.values.len()];
        for c in 0..self.dim {
            let f = |i: usize| self.values[i * self.dim + c];
            for i in 0..n {
                let d = match i {
                    0 => -25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4),
                    1 => -3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4),
                    i if i == n - 2 => {
                        3.0 * f(n - 1) + 10.0 * f(n - 2) - 18.0 * f(n - 3) + 6.0 * f(n - 4)
                            - f(n - 5)
                    }
                    i if i == n - 1 => {
                        25.0 * f(n - 1) - 48.0 * f(n - 2) + 36.0 * f(n - 3) - 16.0 * f(n - 4)
                            + 3.0 * f(n - 5)
                    }
                    i => f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2),
                };
                out[i * self.dim + c] = d / h12;
            }
        }
        Self {
            grid: self.grid,
            dim: self.dim,
            values: out,
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Integrates `h ψ = ε ψ`, i.e. `ψ' = −i K⁻¹ (ε − V(t)) ψ`, with classical RK4
/// using `substeps` steps per grid interval.
pub fn integrate_eigenfunction(
    h: &DiracHamiltonian,
    energy: Complex64,
    initial: &[Complex64],
    grid: UniformGrid,
    substeps: usize,
) -> Result<GridFunction> {
    let dim = h.dim();
    if initial.len() != dim {
        return Err(Error::dim(
            "integrate_eigenfunction",
            format!(
                "initial spinor has {} components, expected {dim}",
                initial.len()
            ),
        ));
    }
    let k2 = &h.kinetic * &h.kinetic;
    let sign = k2[(0, 0)];
    if k2.max_abs_diff(&GateMatrix::identity(dim).scale(sign)) > 1e-12 {
        return Err(Error::InvalidInput(
            "kinetic matrix must square to ±1".into(),
        ));
    }
    // −i K⁻¹ with K⁻¹ = K / sign
    let pre = h.kinetic.scale(-I / sign);
    let rhs = |t: f64, psi: &[Complex64]| -> Vec<Complex64> {
        let m = &GateMatrix::identity(dim).scale(energy) - &h.potential.eval(t);
        pre.apply(&m.apply(psi))
    };
    let axpy = |a: &[Complex64], s: f64, b: &[Complex64]| -> Vec<Complex64> {
        a.iter().zip(b).map(|(x, y)| x + y * s).collect()
    };

    let substeps = substeps.max(1);
    let dt = grid.step() / substeps as f64;
    let mut values = Vec::with_capacity(grid.points * dim);
    let mut psi = initial.to_vec();
    values.extend_from_slice(&psi);
    for i in 1..grid.points {
        let mut t = grid.t(i - 1);
        for _ in 0..substeps {
            let k1 = rhs(t, &psi);
            let k2 = rhs(t + dt / 2.0, &axpy(&psi, dt / 2.0, &k1));
            let k3 = rhs(t + dt / 2.0, &axpy(&psi, dt / 2.0, &k2));
            let k4 = rhs(t + dt, &axpy(&psi, dt, &k3));
            for j in 0..dim {
                psi[j] += (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (dt / 6.0);
            }
            t += dt;
        }
        values.extend_from_slice(&psi);
    }
    Ok(GridFunction { grid, dim, values })
}

/// `(Lψ)(t) = ψ'(t) + B(t) ψ(t)` on the grid of `psi`.
pub fn transform_state(psi: &GridFunction, l: &Intertwiner) -> Result<GridFunction> {
    if psi.dim != l.dim() {
        return Err(Error::dim(
            "transform_state",
            format!("state has {} components, L acts on {}", psi.dim, l.dim()),
        ));
    }
    if psi.grid.points < MIN_POINTS {
        return Err(Error::InvalidInput(format!(
            "grid needs at least {MIN_POINTS} points, got {}",
            psi.grid.points
        )));
    }
    let b = l.b();
    let mut out = psi.derivative();
    for i in 0..psi.grid.points {
        let bpsi = b.eval(psi.grid.t(i)).apply(psi.at(i));
        for (o, x) in out.values[i * psi.dim..(i + 1) * psi.dim]
            .iter_mut()
            .zip(bpsi)
        {
            *o += x;
        }
    }
    Ok(out)
}

/// `max_interior |(h − ε) φ| / max |φ|`, skipping [`EDGE_SKIP`] points per side.
pub fn eigen_residual(h: &DiracHamiltonian, energy: Complex64, phi: &GridFunction) -> Result<f64> {
    if phi.dim != h.dim() {
        return Err(Error::dim(
            "eigen_residual",
            format!("state has {} components, h acts on {}", phi.dim, h.dim()),
        ));
    }
    let scale = phi.max_norm();
    if scale == 0.0 {
        return Err(Error::InvalidInput("state vanishes identically".into()));
    }
    let d = phi.derivative();
    let ik = h.kinetic.scale(I);
    let n = phi.grid.points;
    let mut worst: f64 = 0.0;
    for i in EDGE_SKIP..n.saturating_sub(EDGE_SKIP) {
        let v = h.potential.eval(phi.grid.t(i));
        let a = ik.apply(d.at(i));
        let b = v.apply(phi.at(i));
        let r: Vec<Complex64> = (0..phi.dim)
            .map(|j| a[j] + b[j] - energy * phi.at(i)[j])
            .collect();
        worst = worst.max(norm(&r));
    }
    Ok(worst / scale)
}

/// Normalized all-ones spinor, the default initial condition.
pub fn default_initial(dim: usize) -> Vec<Complex64> {
    vec![ONE / (dim as f64).sqrt(); dim]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffgen::clifford_level;
    use crate::fourvec::PauliVector;
    use crate::poly::MatrixPolynomial;

    #[test]
    fn stencils_exact_on_quartics() {
        let grid = UniformGrid::new(-1.0, 2.0, 11).unwrap();
        let f = GridFunction::from_fn(grid, 1, |t| {
            vec![Complex64::new(t.powi(4) - t, 2.0 * t * t)]
        })
        .unwrap();
        let d = f.derivative();
        for i in 0..grid.points {
            let t = grid.t(i);
            let want = Complex64::new(4.0 * t.powi(3) - 1.0, 4.0 * t);
            assert!((d.at(i)[0] - want).norm() < 1e-10, "i={i}");
        }
    }

    #[test]
    fn small_grid_rejected() {
        assert!(UniformGrid::new(0.0, 1.0, 8).is_err());
        assert!(UniformGrid::new(1.0, 0.0, 100).is_err());
        let g = UniformGrid {
            start: 0.0,
            end: 1.0,
            points: 5,
        };
        let psi = GridFunction::from_fn(g, 2, |_| vec![ONE, ZERO]).unwrap();
        assert!(transform_state(&psi, &Intertwiner::trivial(2)).is_err());
    }

    #[test]
    fn rk4_matches_closed_form_plane_wave() {
        // Constant V: ψ(t) = cos(ωt) ψ0 + sin(ωt)/ω M ψ0 with M² = −ω².
        let level = clifford_level(1).unwrap();
        let v = PauliVector::real(0.3, 0.2, -0.5, 0.0);
        let h = DiracHamiltonian::new(&level, MatrixPolynomial::from_pauli(&[v])).unwrap();
        let e = Complex64::new(1.0, 0.0);
        let m = h.kinetic.scale(-I) * (&GateMatrix::identity(2).scale(e) - &v.to_matrix());
        let w2 = -(&m * &m)[(0, 0)].re;
        assert!(w2 > 0.0);
        let w = w2.sqrt();
        let grid = UniformGrid::new(-5.0, 5.0, 401).unwrap();
        let psi0 = default_initial(2);
        let psi = integrate_eigenfunction(&h, e, &psi0, grid, 4).unwrap();
        let mpsi0 = m.apply(&psi0);
        for i in (0..grid.points).step_by(37) {
            let s = grid.t(i) - grid.start;
            for j in 0..2 {
                let want = psi0[j] * (w * s).cos() + mpsi0[j] * ((w * s).sin() / w);
                assert!((psi.at(i)[j] - want).norm() < 1e-9);
            }
        }
        assert!(eigen_residual(&h, e, &psi).unwrap() < 1e-7);
    }
}
