//! Landau levels of a massless Dirac fermion in a perpendicular field B.
//!
//! Units are ħ = c = e = 1. With `l_B = 1/√B`, `ω_c = √2 v_F / l_B` and
//! `ξ = (y − k/B)/l_B`, the Landau-gauge Hamiltonian
//! `v_F(iσ_y ∂_y − (k − B y)σ_x)` becomes `ω_c [[0, O], [O†, 0]]` with the
//! oscillator operators `O = (∂_ξ + ξ)/√2`, `O† = (−∂_ξ + ξ)/√2`. Its spectrum
//! is `±ω_c √N` with eigenvectors `(ψ_{N−1}, ±ψ_N)/√2` and the zero mode
//! `(0, ψ_0)`.
//!
//! [`verify_spectrum_fd`] checks this against a staggered-grid
//! discretization that never uses the oscillator algebra.

use serde::Serialize;

use crate::error::{Error, Result};

/// Fermi velocity of graphene in m/s, for converting model units.
pub const GRAPHENE_FERMI_VELOCITY: f64 = 1.0e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauConfig {
    pub vf: f64,
    pub b: f64,
    pub k: f64,
    pub nmax: usize,
    /// nodes of the finite-difference grid
    pub points: usize,
    /// half-width of the grid in ξ; `None` picks the resolving default
    pub extent: Option<f64>,
}

impl Default for LandauConfig {
    fn default() -> Self {
        Self {
            vf: 1.0,
            b: 1.0,
            k: 0.0,
            nmax: 5,
            points: 4000,
            extent: None,
        }
    }
}

impl LandauConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "field strength must be positive, got {}",
                self.b
            )));
        }
        if !(self.vf > 0.0 && self.vf.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "Fermi velocity must be positive, got {}",
                self.vf
            )));
        }
        if !self.k.is_finite() {
            return Err(Error::InvalidInput("wavenumber must be finite".into()));
        }
        if self.nmax < 1 {
            return Err(Error::InvalidInput("nmax must be at least 1".into()));
        }
        if self.points < 9 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 9 points, got {}",
                self.points
            )));
        }
        if let Some(e) = self.extent {
            if !(e > 0.0 && e.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "extent must be positive, got {e}"
                )));
            }
        }
        Ok(())
    }

    pub fn magnetic_length(&self) -> f64 {
        (1.0 / self.b).sqrt()
    }

    pub fn cyclotron(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.vf / self.magnetic_length()
    }

    /// Smallest half-width that holds the first `nmax` oscillator states.
    pub fn resolving_extent(&self) -> f64 {
        2.0 * (2.0 * self.nmax as f64).sqrt() + 4.0
    }

    pub fn half_width(&self) -> f64 {
        self.extent.unwrap_or_else(|| self.resolving_extent())
    }

    /// Guiding-center-relative grid `ξ_j`, j = 0..points.
    pub fn xi_grid(&self) -> Vec<f64> {
        let l = self.half_width();
        let h = 2.0 * l / (self.points - 1) as f64;
        (0..self.points).map(|j| -l + j as f64 * h).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauLevel {
    pub n: usize,
    pub eps_plus: f64,
    pub eps_minus: f64,
}

pub fn landau_spectrum(cfg: &LandauConfig) -> Result<Vec<LandauLevel>> {
    cfg.validate()?;
    let w = cfg.cyclotron();
    Ok((0..=cfg.nmax)
        .map(|n| {
            let e = w * (n as f64).sqrt();
            LandauLevel {
                n,
                eps_plus: e,
                eps_minus: if n == 0 { 0.0 } else { -e },
            }
        })
        .collect())
}

/// Normalized oscillator functions ψ_0..=ψ_nmax at ξ.
///
/// Runs the recurrence `ψ_{n+1} = √(2/(n+1)) ξ ψ_n − √(n/(n+1)) ψ_{n−1}` from
/// an unscaled seed, carrying the Gaussian factor as a separate log scale so
/// neither the polynomial nor the envelope over/underflows.
pub fn hermite_functions(nmax: usize, xi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let mut log_scale = -0.5 * xi * xi - 0.25 * std::f64::consts::PI.ln();
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    let mut raw = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        raw.push((cur, log_scale));
        let next =
            (2.0 / (n + 1) as f64).sqrt() * xi * cur - (n as f64 / (n + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > 1e100 {
            prev /= m;
            cur /= m;
            log_scale += m.ln();
        }
    }
    for (v, s) in raw {
        out.push(if v == 0.0 {
            0.0
        } else {
            v.signum() * (v.abs().ln() + s).exp()
        });
    }
    out
}

pub fn hermite_function(n: usize, xi: f64) -> f64 {
    hermite_functions(n, xi)[n]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

/// Two-component spinor sampled on the ξ-grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandauSpinor {
    pub xi: Vec<f64>,
    pub up: Vec<f64>,
    pub down: Vec<f64>,
}

impl LandauSpinor {
    pub fn step(&self) -> f64 {
        self.xi[1] - self.xi[0]
    }

    pub fn inner(&self, other: &Self) -> f64 {
        let s: f64 = self
            .up
            .iter()
            .zip(&other.up)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            + self
                .down
                .iter()
                .zip(&other.down)
                .map(|(a, b)| a * b)
                .sum::<f64>();
        s * self.step()
    }
}

/// `φ_{N,±} = (ψ_{N−1}, ±ψ_N)/√2` for N ≥ 1, `φ_0 = (0, ψ_0)`, normalized on the grid.
pub fn landau_eigenvector(n: i64, branch: Branch, cfg: &LandauConfig) -> Result<LandauSpinor> {
    cfg.validate()?;
    if n < 0 {
        return Err(Error::InvalidInput(format!(
            "Landau index must be non-negative, got {n}"
        )));
    }
    let n = n as usize;
    let xi = cfg.xi_grid();
    let sign = match branch {
        Branch::Plus => 1.0,
        Branch::Minus => -1.0,
    };
    let (mut up, mut down) = (Vec::with_capacity(xi.len()), Vec::with_capacity(xi.len()));
    for &x in &xi {
        let psi = hermite_functions(n, x);
        if n == 0 {
            up.push(0.0);
            down.push(psi[0]);
        } else {
            up.push(psi[n - 1]);
            down.push(sign * psi[n]);
        }
    }
    let mut s = LandauSpinor { xi, up, down };
    let norm = s.inner(&s).sqrt();
    s.up.iter_mut()
        .chain(s.down.iter_mut())
        .for_each(|v| *v /= norm);
    Ok(s)
}

/// Fourth-order derivative of real samples, one-sided five-point at the ends.
fn derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    (0..n)
        .map(|i| {
            let d = match i {
                0 => -25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4],
                1 => -3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4],
                i if i == n - 2 => {
                    3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]
                }
                i if i == n - 1 => {
                    25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
                        + 3.0 * f[n - 5]
                }
                i => f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2],
            };
            d / (12.0 * h)
        })
        .collect()
}

fn lower(f: &[f64], xi: &[f64], h: f64) -> Vec<f64> {
    let d = derivative(f, h);
    xi.iter()
        .zip(f)
        .zip(d)
        .map(|((x, v), dv)| (dv + x * v) / std::f64::consts::SQRT_2)
        .collect()
}

fn raise(f: &[f64], xi: &[f64], h: f64) -> Vec<f64> {
    let d = derivative(f, h);
    xi.iter()
        .zip(f)
        .zip(d)
        .map(|((x, v), dv)| (-dv + x * v) / std::f64::consts::SQRT_2)
        .collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderCheck {
    pub n: usize,
    /// max |O ψ_N − √N ψ_{N−1}|
    pub lowering_error: f64,
    /// max |O† ψ_N − √(N+1) ψ_{N+1}|
    pub raising_error: f64,
    /// max |[[0,O],[O†,0]] φ_{N,+} − √N φ_{N,+}|
    pub ladder_form_error: f64,
}

/// Oscillator identities on the FD grid of `cfg`, for N = 0..=nmax.
pub fn ladder_checks(cfg: &LandauConfig) -> Result<Vec<LadderCheck>> {
    cfg.validate()?;
    let xi = cfg.xi_grid();
    let h = xi[1] - xi[0];
    let table: Vec<Vec<f64>> = xi
        .iter()
        .map(|&x| hermite_functions(cfg.nmax + 1, x))
        .collect();
    let psi = |n: usize| -> Vec<f64> { table.iter().map(|row| row[n]).collect() };
    let mut out = Vec::with_capacity(cfg.nmax + 1);
    for n in 0..=cfg.nmax {
        let pn = psi(n);
        let lowered = lower(&pn, &xi, h);
        let want_lower: Vec<f64> = if n == 0 {
            vec![0.0; xi.len()]
        } else {
            psi(n - 1).iter().map(|v| v * (n as f64).sqrt()).collect()
        };
        let raised = raise(&pn, &xi, h);
        let want_raise: Vec<f64> = psi(n + 1)
            .iter()
            .map(|v| v * ((n + 1) as f64).sqrt())
            .collect();

        let phi = landau_eigenvector(n as i64, Branch::Plus, cfg)?;
        let e1 = (n as f64).sqrt();
        let up = lower(&phi.down, &xi, h);
        let down = raise(&phi.up, &xi, h);
        let form = max_diff(&up, &phi.up.iter().map(|v| e1 * v).collect::<Vec<_>>()).max(max_diff(
            &down,
            &phi.down.iter().map(|v| e1 * v).collect::<Vec<_>>(),
        ));

        out.push(LadderCheck {
            n,
            lowering_error: max_diff(&lowered, &want_lower),
            raising_error: max_diff(&raised, &want_raise),
            ladder_form_error: form,
        });
    }
    Ok(out)
}

/// Off-diagonal of the staggered-grid Hamiltonian, ordered
/// `d_0, u_0, d_1, u_1, …, d_{M−1}`.
///
/// The lower component sits on the M nodes `ξ_j`, the upper on the M−1
/// midpoints `ξ_{j+½}`. Centered differences and midpoint averaging of ξ
/// make the matrix symmetric with zero diagonal, so eigenvalues come in ±
/// pairs and the odd size forces one exact zero mode on the lower component.
pub fn staggered_offdiagonal(cfg: &LandauConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let xi = cfg.xi_grid();
    let h = xi[1] - xi[0];
    let s = cfg.cyclotron() / std::f64::consts::SQRT_2;
    let mut e = Vec::with_capacity(2 * (xi.len() - 1));
    for j in 0..xi.len() - 1 {
        let mid = 0.5 * (xi[j] + xi[j + 1]);
        // row u_j of (∂ + ξ) d: (d_{j+1} − d_j)/h + mid (d_j + d_{j+1})/2
        e.push(s * (-1.0 / h + 0.5 * mid));
        e.push(s * (1.0 / h + 0.5 * mid));
    }
    Ok(e)
}

/// Number of eigenvalues below `x` of the zero-diagonal symmetric tridiagonal with off-diagonal `e`.
fn sturm_count(e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = -x;
    if q < 0.0 {
        count += 1;
    }
    for &ei in e {
        let prev = if q == 0.0 {
            f64::EPSILON * (ei.abs() + 1.0)
        } else {
            q
        };
        q = -x - ei * ei / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th smallest eigenvalue (0-based) by bisection.
fn tridiagonal_eigenvalue(e: &[f64], k: usize) -> f64 {
    let bound = (0..=e.len())
        .map(|i| {
            let l = if i > 0 { e[i - 1].abs() } else { 0.0 };
            let r = e.get(i).map_or(0.0, |v| v.abs());
            l + r
        })
        .fold(0.0, f64::max);
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if sturm_count(e, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelCheck {
    pub n: usize,
    pub analytic: f64,
    pub fd_plus: f64,
    pub fd_minus: f64,
    /// max of the relative errors of the two branches
    pub fd_error: f64,
    /// |ε₊ + ε₋| / ω_c
    pub asymmetry: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdReport {
    pub config: LandauConfig,
    pub cyclotron: f64,
    pub step: f64,
    pub zero_mode: f64,
    pub levels: Vec<LevelCheck>,
    pub ladder: Vec<LadderCheck>,
    pub under_resolved: bool,
    pub warnings: Vec<String>,
}

impl FdReport {
    pub fn max_error(&self) -> f64 {
        self.levels.iter().map(|l| l.fd_error).fold(0.0, f64::max)
    }
}

/// Spectrum of the staggered discretization near zero against `±ω_c √N`,
/// plus the oscillator identities on the same grid.
pub fn verify_spectrum_fd(cfg: &LandauConfig) -> Result<FdReport> {
    cfg.validate()?;
    let e = staggered_offdiagonal(cfg)?;
    let m = cfg.points;
    let w = cfg.cyclotron();
    let step = 2.0 * cfg.half_width() / (m - 1) as f64;

    let mut warnings = Vec::new();
    if cfg.half_width() < cfg.resolving_extent() {
        warnings.push(format!(
            "extent {} is below {:.6} needed for N = {}",
            cfg.half_width(),
            cfg.resolving_extent(),
            cfg.nmax
        ));
    }
    // oscillation wavelength of ψ_N near the center is about 2π/√(2N+1)
    let wavelength = 2.0 * std::f64::consts::PI / (2.0 * cfg.nmax as f64 + 1.0).sqrt();
    if step > wavelength / 20.0 {
        warnings.push(format!(
            "grid step {step:.3e} is coarse for N = {}",
            cfg.nmax
        ));
    }
    if cfg.nmax >= m - 1 {
        return Err(Error::InvalidInput(format!(
            "nmax = {} needs more than {m} grid points",
            cfg.nmax
        )));
    }

    let zero_mode = tridiagonal_eigenvalue(&e, m - 1);
    let levels = (1..=cfg.nmax)
        .map(|n| {
            let analytic = w * (n as f64).sqrt();
            let fd_plus = tridiagonal_eigenvalue(&e, m - 1 + n);
            let fd_minus = tridiagonal_eigenvalue(&e, m - 1 - n);
            LevelCheck {
                n,
                analytic,
                fd_plus,
                fd_minus,
                fd_error: ((fd_plus - analytic).abs().max((fd_minus + analytic).abs())) / analytic,
                asymmetry: (fd_plus + fd_minus).abs() / w,
            }
        })
        .collect();

    Ok(FdReport {
        config: *cfg,
        cyclotron: w,
        step,
        zero_mode,
        levels,
        ladder: ladder_checks(cfg)?,
        under_resolved: !warnings.is_empty(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_values() {
        let s = landau_spectrum(&LandauConfig::default()).unwrap();
        assert_eq!(s[0].eps_plus, 0.0);
        assert_eq!(s[0].eps_minus, 0.0);
        assert!((s[1].eps_plus - 2f64.sqrt()).abs() < 1e-15);
        assert!((s[1].eps_minus + 2f64.sqrt()).abs() < 1e-15);
        assert!((s[4].eps_plus / s[1].eps_plus - 2.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_configs() {
        let bad = LandauConfig {
            b: 0.0,
            ..Default::default()
        };
        assert!(landau_spectrum(&bad).is_err());
        let bad = LandauConfig {
            nmax: 0,
            ..Default::default()
        };
        assert!(landau_spectrum(&bad).is_err());
        assert!(landau_eigenvector(-1, Branch::Plus, &LandauConfig::default()).is_err());
    }

    #[test]
    fn hermite_low_orders() {
        let c = std::f64::consts::PI.powf(-0.25);
        for &x in &[-2.0f64, -0.3, 0.0, 1.7] {
            let g = (-0.5 * x * x).exp();
            let p = hermite_functions(3, x);
            assert!((p[0] - c * g).abs() < 1e-15);
            assert!((p[1] - c * 2f64.sqrt() * x * g).abs() < 1e-15);
            assert!((p[2] - c * (2.0 * x * x - 1.0) / 2f64.sqrt() * g).abs() < 1e-14);
        }
    }

    #[test]
    fn hermite_large_order_stays_finite() {
        for &x in &[0.0, 3.0, 9.5, 12.0, 40.0] {
            let p = hermite_functions(60, x);
            assert!(p.iter().all(|v| v.is_finite()));
        }
        // ψ_50 is O(1e-1) near its outer turning point
        assert!(hermite_function(50, 9.0).abs() > 1e-3);
    }

    #[test]
    fn sturm_bisection_on_small_matrix() {
        // [[0,1,0],[1,0,1],[0,1,0]] has eigenvalues −√2, 0, √2
        let e = [1.0, 1.0];
        assert!((tridiagonal_eigenvalue(&e, 0) + 2f64.sqrt()).abs() < 1e-14);
        assert!(tridiagonal_eigenvalue(&e, 1).abs() < 1e-14);
        assert!((tridiagonal_eigenvalue(&e, 2) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn eigenvectors_orthonormal() {
        let cfg = LandauConfig {
            points: 1500,
            ..Default::default()
        };
        let p = landau_eigenvector(1, Branch::Plus, &cfg).unwrap();
        let m = landau_eigenvector(1, Branch::Minus, &cfg).unwrap();
        assert!((p.inner(&p) - 1.0).abs() < 1e-12);
        assert!(p.inner(&m).abs() < 1e-8);
        let z = landau_eigenvector(0, Branch::Plus, &cfg).unwrap();
        assert!(z.up.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn fd_levels_close() {
        let cfg = LandauConfig {
            points: 1000,
            nmax: 3,
            ..Default::default()
        };
        let r = verify_spectrum_fd(&cfg).unwrap();
        assert!(r.zero_mode.abs() < 1e-10);
        assert!(r.max_error() < 1e-2, "{r:?}");
        assert!(!r.under_resolved);
    }

    #[test]
    fn narrow_grid_flagged() {
        let cfg = LandauConfig {
            extent: Some(3.0),
            ..Default::default()
        };
        assert!(verify_spectrum_fd(&cfg).unwrap().under_resolved);
    }
}
