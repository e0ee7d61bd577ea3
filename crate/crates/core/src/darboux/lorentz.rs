//! Lorentz force `ṗ^α = q v_β F^{αβ}` and the normalized perturbation it induces.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourvec::{levi_civita, MinkowskiMetric, PauliVector};

pub type FieldTensor = [[f64; 4]; 4];

/// Four-potential A^μ(x) sampled at `at` by central differences of width `step`.
#[derive(Clone)]
pub struct PotentialSampler {
    pub potential: Arc<dyn Fn([f64; 4]) -> [f64; 4] + Send + Sync>,
    pub at: [f64; 4],
    pub step: f64,
}

impl fmt::Debug for PotentialSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialSampler")
            .field("at", &self.at)
            .field("step", &self.step)
            .finish_non_exhaustive()
    }
}

impl PotentialSampler {
    /// Gauge `A^0 = −E·x`, `A⃗ = ½ B × x` of constant fields.
    pub fn uniform(e: [f64; 3], b: [f64; 3], at: [f64; 4]) -> Self {
        Self {
            potential: Arc::new(move |x: [f64; 4]| {
                let r = [x[1], x[2], x[3]];
                let bxr = cross(b, r);
                [-dot(e, r), 0.5 * bxr[0], 0.5 * bxr[1], 0.5 * bxr[2]]
            }),
            at,
            step: 1e-3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FieldConfig {
    pub q: f64,
    /// contravariant four-velocity v^μ
    pub v: [f64; 4],
    pub e: Option<[f64; 3]>,
    pub b: Option<[f64; 3]>,
    pub potential: Option<PotentialSampler>,
}

impl FieldConfig {
    pub fn from_fields(q: f64, v: [f64; 4], e: [f64; 3], b: [f64; 3]) -> Self {
        Self {
            q,
            v,
            e: Some(e),
            b: Some(b),
            potential: None,
        }
    }

    pub fn from_potential(q: f64, v: [f64; 4], sampler: PotentialSampler) -> Self {
        Self {
            q,
            v,
            e: None,
            b: None,
            potential: Some(sampler),
        }
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `F^{0i} = −E^i`, `F^{ij} = −ε^{ijk} B^k`.
pub fn field_tensor(e: [f64; 3], b: [f64; 3]) -> FieldTensor {
    let mut f = [[0.0; 4]; 4];
    for i in 0..3 {
        f[0][i + 1] = -e[i];
        f[i + 1][0] = e[i];
        for j in 0..3 {
            f[i + 1][j + 1] = -(0..3)
                .map(|k| levi_civita(i + 1, j + 1, k + 1) * b[k])
                .sum::<f64>();
        }
    }
    f
}

/// `F^{αβ} = ∂^α A^β − ∂^β A^α` with fourth-order central differences.
pub fn field_tensor_from_potential(s: &PotentialSampler) -> Result<FieldTensor> {
    if !(s.step > 0.0 && s.step.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "sampler step must be positive, got {}",
            s.step
        )));
    }
    let h = s.step;
    let at = |mu: usize, d: f64| {
        let mut x = s.at;
        x[mu] += d;
        (s.potential)(x)
    };
    // d[mu][nu] = ∂_mu A^nu
    let d: [[f64; 4]; 4] = std::array::from_fn(|mu| {
        let (p1, m1, p2, m2) = (at(mu, h), at(mu, -h), at(mu, 2.0 * h), at(mu, -2.0 * h));
        std::array::from_fn(|nu| (8.0 * (p1[nu] - m1[nu]) - (p2[nu] - m2[nu])) / (12.0 * h))
    });
    let mut f = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            f[a][b] = MinkowskiMetric::g(a, a) * d[a][b] - MinkowskiMetric::g(b, b) * d[b][a];
        }
    }
    Ok(f)
}

/// `ṗ^α = q v_β F^{αβ}` with `v_β = g_{ββ} v^β`.
pub fn contract(q: f64, v: [f64; 4], f: &FieldTensor) -> [f64; 4] {
    let mut p = [0.0; 4];
    for (a, pa) in p.iter_mut().enumerate() {
        *pa = q
            * (0..4)
                .map(|b| MinkowskiMetric::g(b, b) * v[b] * f[a][b])
                .sum::<f64>();
    }
    p
}

/// Force from the field tensor; the sampler takes precedence when both are given.
pub fn lorentz_force(cfg: &FieldConfig) -> Result<PauliVector> {
    let f = match (&cfg.potential, cfg.e, cfg.b) {
        (Some(s), _, _) => field_tensor_from_potential(s)?,
        (None, None, None) => {
            return Err(Error::InvalidInput(
                "field config needs E/B or a four-potential sampler".into(),
            ))
        }
        (None, e, b) => field_tensor(e.unwrap_or_default(), b.unwrap_or_default()),
    };
    let p = contract(cfg.q, cfg.v, &f);
    Ok(PauliVector::real(p[0], p[1], p[2], p[3]))
}

/// `(q v⃗·E, q(v^0 E + v⃗ × B))` without forming the tensor.
pub fn lorentz_force_direct(q: f64, v: [f64; 4], e: [f64; 3], b: [f64; 3]) -> PauliVector {
    let vs = [v[1], v[2], v[3]];
    let vxb = cross(vs, b);
    PauliVector::real(
        q * dot(vs, e),
        q * (v[0] * e[0] + vxb[0]),
        q * (v[0] * e[1] + vxb[1]),
        q * (v[0] * e[2] + vxb[2]),
    )
}

/// `f / |f|` with the Euclidean norm of the four coefficients.
pub fn perturbation_from_force(f: &PauliVector) -> Result<PauliVector> {
    let n = f.coefficient_norm();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::InvalidInput(
            "force vanishes; perturbation undefined".into(),
        ));
    }
    Ok(f.scale(Complex64::new(1.0 / n, 0.0)))
}
