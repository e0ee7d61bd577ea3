use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use diracgate::cliffgen::{clifford_level, gamma_basis_decompose};
use diracgate::darboux::lorentz::PotentialSampler;
use diracgate::darboux::scenario::{
    run_scenario, ScenarioReport, ScenarioSpec, TableId, RESIDUAL_TOL, STATE_TOL,
};
use diracgate::darboux::{
    lorentz_force, lorentz_force_direct, perturbation_from_force, FieldConfig, Ordering, Profile,
    UniformGrid,
};
use diracgate::gates::{controlled_n_not, not_cyclic_n, parse_expr, pauli_decompose, NamedGate};
use diracgate::io::{
    fmt_float, matrix_from_value, matrix_to_csv, matrix_to_pretty, parse_json, potential_from_value,
};
use diracgate::landau::{landau_spectrum, verify_spectrum_fd, FdReport, LandauConfig};
use diracgate::matrix::UNITARY_TOL;
use diracgate::{Error, GateMatrix, PauliVector, Result};

use super::{
    invalid, BuildGateArgs, DecomposeArgs, Format, LandauArgs, LorentzArgs, ProfileArg, Resolved,
    ThetaArgs, VerifyArgs,
};

/// Inline JSON, or the contents of a file.
fn json_arg(s: &str) -> Result<serde_json::Value> {
    let t = s.trim_start();
    if t.starts_with('[')
        || t.starts_with('{')
        || t.starts_with(|c: char| c.is_ascii_digit() || c == '-')
    {
        parse_json(s)
    } else {
        let text =
            std::fs::read_to_string(Path::new(s)).map_err(|e| Error::Io(format!("{s}: {e}")))?;
        parse_json(&text)
    }
}

struct Built {
    label: String,
    expression: Option<String>,
    matrix: GateMatrix,
}

fn chain_kind(name: &str) -> Option<&'static str> {
    let key: String = name
        .chars()
        .filter(|c| !matches!(c, '-' | '_' | ' ' | '^'))
        .collect::<String>()
        .to_ascii_lowercase();
    match key.as_str() {
        "controllednnot" | "cnnot" => Some("controlled-n-not"),
        "notcyclicn" | "notcyclic" => Some("not-cyclic-n"),
        _ => None,
    }
}

fn build(gate: &str, n: Option<u32>) -> Result<Built> {
    if let Some(kind) = chain_kind(gate) {
        let n = n.ok_or_else(|| invalid(format!("{kind} needs --n")))?;
        let matrix = if kind == "controlled-n-not" {
            controlled_n_not(n)?
        } else {
            not_cyclic_n(n)?
        };
        return Ok(Built {
            label: format!("{kind}({n})"),
            expression: None,
            matrix,
        });
    }
    let (label, expr) = match NamedGate::from_name(gate) {
        Ok(g) => (g.to_string(), g.expr()),
        Err(_) => (gate.trim().to_string(), parse_expr(gate)?),
    };
    let matrix = expr.to_matrix()?;
    if let Some(n) = n {
        if matrix.qubits() != Some(n) {
            return Err(Error::Dimension {
                path: label,
                message: format!(
                    "compiles to {}x{}, not {n} qubits",
                    matrix.dim(),
                    matrix.dim()
                ),
            });
        }
    }
    Ok(Built {
        label,
        expression: Some(expr.to_string()),
        matrix,
    })
}

fn gate_or_matrix(s: &str) -> Result<GateMatrix> {
    if s.trim_start().starts_with('[') {
        matrix_from_value(&parse_json(s)?)
    } else {
        Ok(build(s, None)?.matrix)
    }
}

#[derive(Serialize)]
struct GateReport<'a> {
    gate: &'a str,
    expression: Option<&'a str>,
    qubits: Option<u32>,
    dim: usize,
    unitary: bool,
    unitarity_error: f64,
    tolerance: f64,
    permutation: Option<Vec<usize>>,
    matrix: &'a GateMatrix,
}

pub fn build_gate(a: &BuildGateArgs, r: &Resolved) -> Result<bool> {
    let tol = r.pick(a.unitary_tol, "unitary-tol", UNITARY_TOL)?;
    let b = build(&a.gate, a.n)?;
    let err = b.matrix.unitarity_error();
    let report = GateReport {
        gate: &b.label,
        expression: b.expression.as_deref(),
        qubits: b.matrix.qubits(),
        dim: b.matrix.dim(),
        unitary: err <= tol,
        unitarity_error: err,
        tolerance: tol,
        permutation: b.matrix.permutation(),
        matrix: &b.matrix,
    };
    match r.sink.format {
        Format::Csv => r.sink.write(&matrix_to_csv(&b.matrix))?,
        Format::Pretty => r.sink.write(&format!(
            "{}  ({}x{}, unitary: {}, max|U†U − I| = {})\n{}",
            b.label,
            report.dim,
            report.dim,
            report.unitary,
            fmt_float(err),
            matrix_to_pretty(&b.matrix)
        ))?,
        Format::Json => r.sink.report(&report)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct Labeled {
    label: String,
    value: Complex64,
}

#[derive(Serialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
enum Decomposition {
    Pauli {
        coefficients: PauliVector,
        norm_sq_sum: f64,
        unitary: bool,
        reconstruction_error: f64,
    },
    Gamma {
        coefficients: Vec<Labeled>,
        reconstruction_error: f64,
    },
}

pub fn decompose(a: &DecomposeArgs, r: &Resolved) -> Result<bool> {
    let tol = r.pick(a.unitary_tol, "unitary-tol", UNITARY_TOL)?;
    let m = match (&a.source.unitary, &a.source.gate) {
        (Some(u), _) => matrix_from_value(&json_arg(u)?)?,
        (None, Some(g)) => build(g, None)?.matrix,
        (None, None) => return Err(invalid("give --unitary or --gate")),
    };
    let out = match m.dim() {
        2 => {
            let v = pauli_decompose(&m)?;
            Decomposition::Pauli {
                norm_sq_sum: v.c.iter().map(|z| z.norm_sqr()).sum(),
                unitary: m.unitarity_error() <= tol,
                reconstruction_error: v.to_matrix().max_abs_diff(&m),
                coefficients: v,
            }
        }
        4 => {
            let d = gamma_basis_decompose(&m)?;
            Decomposition::Gamma {
                reconstruction_error: d.reconstruct().max_abs_diff(&m),
                coefficients: d
                    .labels
                    .iter()
                    .zip(&d.coefficients)
                    .map(|(l, c)| Labeled {
                        label: l.clone(),
                        value: *c,
                    })
                    .collect(),
            }
        }
        d => {
            return Err(Error::Dimension {
                path: "decompose".into(),
                message: format!("expected a 2x2 (Pauli) or 4x4 (γ) matrix, got {d}x{d}"),
            })
        }
    };
    r.sink.report(&out)?;
    Ok(true)
}

fn custom_spec(a: &VerifyArgs) -> Result<ScenarioSpec> {
    let (v0, v1, u) = match (&a.v0, &a.v1, &a.u) {
        (Some(v0), Some(v1), Some(u)) => (v0, v1, u),
        _ => return Err(invalid("custom scenarios need --v0, --v1 and --u")),
    };
    let v0 = potential_from_value(&json_arg(v0)?)?;
    let v1 = potential_from_value(&json_arg(v1)?)?;
    let gate = gate_or_matrix(u)?;
    let level = gate
        .qubits()
        .filter(|n| *n >= 1)
        .ok_or_else(|| Error::Dimension {
            path: "--u".into(),
            message: format!("gate dimension {} is not 2^n with n ≥ 1", gate.dim()),
        })?;
    let profile = match a.profile {
        ProfileArg::Scalar => Profile::Scalar,
        ProfileArg::Left => Profile::Matrix(Ordering::Left),
        ProfileArg::Right => Profile::Matrix(Ordering::Right),
    };
    Ok(ScenarioSpec {
        label: "custom".into(),
        level,
        v0,
        v1,
        gate,
        profile,
        energy: Complex64::new(a.energy, 0.0),
        grid: UniformGrid::default(),
        delta_tol: a.delta_tol,
        residual_tol: RESIDUAL_TOL,
        state_tol: STATE_TOL,
    })
}

pub fn verify(a: &VerifyArgs, r: &Resolved) -> Result<bool> {
    let mut specs: Vec<ScenarioSpec> = if a.all {
        TableId::ALL.iter().map(|t| t.spec()).collect()
    } else if let Some(t) = &a.table {
        vec![t.parse::<TableId>()?.spec()]
    } else if a.v0.is_some() {
        vec![custom_spec(a)?]
    } else {
        return Err(invalid("give --table, --all, or --v0/--v1/--u"));
    };
    let d = UniformGrid::default();
    let grid = UniformGrid::new(
        r.pick(a.t_min, "t-min", d.start)?,
        r.pick(a.t_max, "t-max", d.end)?,
        r.pick(a.points, "points", d.points)?,
    )?;
    let residual_tol = r.pick(a.residual_tol, "residual-tol", RESIDUAL_TOL)?;
    let state_tol = r.pick(a.state_tol, "state-tol", STATE_TOL)?;
    if !(residual_tol > 0.0 && state_tol > 0.0) {
        return Err(invalid("tolerances must be positive"));
    }
    for s in &mut specs {
        s.grid = grid;
        s.residual_tol = residual_tol;
        s.state_tol = state_tol;
        if s.label == "custom" {
            s.energy = Complex64::new(a.energy, 0.0);
        }
    }

    let reports: Vec<ScenarioReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|s| scope.spawn(move || run_scenario(s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let passed = reports.iter().all(|rep| rep.passed);
    if reports.len() == 1 {
        r.sink.report(&reports[0])?;
    } else {
        r.sink.report(&reports)?;
    }
    Ok(passed != a.expect_fail)
}

fn parse_vec<const N: usize>(s: &str, what: &str) -> Result<[f64; N]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            position: 0,
            message: format!("{what}: expected comma-separated numbers, got '{s}'"),
        })?;
    parts.try_into().map_err(|p: Vec<f64>| Error::Dimension {
        path: what.into(),
        message: format!("expected {N} components, got {}", p.len()),
    })
}

#[derive(Serialize)]
struct LorentzReport {
    q: f64,
    v: [f64; 4],
    e: [f64; 3],
    b: [f64; 3],
    force: PauliVector,
    direct: PauliVector,
    potential_path: Option<PauliVector>,
    max_path_difference: f64,
    perturbation: Option<PauliVector>,
}

pub fn lorentz(a: &LorentzArgs, r: &Resolved) -> Result<bool> {
    if a.e.is_none() && a.b.is_none() {
        return Err(invalid("give at least one of --e and --b"));
    }
    let e =
        a.e.as_deref()
            .map(|s| parse_vec::<3>(s, "--e"))
            .transpose()?
            .unwrap_or_default();
    let b =
        a.b.as_deref()
            .map(|s| parse_vec::<3>(s, "--b"))
            .transpose()?
            .unwrap_or_default();
    let v = match a.v.split(',').count() {
        3 => {
            let s = parse_vec::<3>(&a.v, "--v")?;
            [1.0, s[0], s[1], s[2]]
        }
        _ => parse_vec::<4>(&a.v, "--v")?,
    };
    let force = lorentz_force(&FieldConfig::from_fields(a.q, v, e, b))?;
    let direct = lorentz_force_direct(a.q, v, e, b);
    let potential_path = if a.via_potential {
        let s = PotentialSampler::uniform(e, b, [0.0; 4]);
        Some(lorentz_force(&FieldConfig::from_potential(a.q, v, s))?)
    } else {
        None
    };
    let mut diff = force.max_abs_diff(&direct);
    if let Some(p) = &potential_path {
        diff = diff.max(p.max_abs_diff(&direct));
    }
    let perturbation = perturbation_from_force(&force).ok();
    if perturbation.is_none() {
        eprintln!("warning: force vanishes; no perturbation");
    }
    r.sink.report(&LorentzReport {
        q: a.q,
        v,
        e,
        b,
        force,
        direct,
        potential_path,
        max_path_difference: diff,
        perturbation,
    })?;
    Ok(true)
}

#[derive(Serialize)]
struct SpectrumRow {
    n: usize,
    eps_plus: f64,
    eps_minus: f64,
    fd_error: Option<f64>,
}

#[derive(Serialize)]
struct SpectrumReport {
    config: LandauConfig,
    magnetic_length: f64,
    cyclotron: f64,
    levels: Vec<SpectrumRow>,
    fd: Option<FdReport>,
}

pub fn landau(a: &LandauArgs, r: &Resolved) -> Result<bool> {
    let d = LandauConfig::default();
    let cfg = LandauConfig {
        vf: a.vf,
        b: a.b,
        k: a.k,
        nmax: a.nmax,
        points: r.pick(a.points, "points", d.points)?,
        extent: a.extent,
    };
    let tol = r.pick(a.spectrum_tol, "spectrum-tol", 0.01)?;
    let levels = landau_spectrum(&cfg)?;
    let fd = if a.verify {
        Some(verify_spectrum_fd(&cfg)?)
    } else {
        None
    };
    if let Some(f) = &fd {
        for w in &f.warnings {
            eprintln!("warning: {w}");
        }
    }
    let rows: Vec<SpectrumRow> = levels
        .iter()
        .map(|l| SpectrumRow {
            n: l.n,
            eps_plus: l.eps_plus,
            eps_minus: l.eps_minus,
            fd_error: fd.as_ref().map(|f| {
                if l.n == 0 {
                    f.zero_mode.abs() / f.cyclotron
                } else {
                    f.levels[l.n - 1].fd_error
                }
            }),
        })
        .collect();
    let passed = fd.as_ref().is_none_or(|f| f.max_error() <= tol);

    match r.sink.format {
        Format::Csv | Format::Pretty => {
            let sep = if r.sink.format == Format::Csv {
                ","
            } else {
                "\t"
            };
            let mut s = ["N", "eps_plus", "eps_minus", "fd_error"].join(sep);
            s.push('\n');
            for row in &rows {
                let cells = [
                    row.n.to_string(),
                    fmt_float(row.eps_plus),
                    fmt_float(row.eps_minus),
                    row.fd_error.map(fmt_float).unwrap_or_default(),
                ];
                s.push_str(&cells.join(sep));
                s.push('\n');
            }
            r.sink.write(&s)?;
        }
        Format::Json => r.sink.report(&SpectrumReport {
            config: cfg,
            magnetic_length: cfg.magnetic_length(),
            cyclotron: cfg.cyclotron(),
            levels: rows,
            fd,
        })?,
    }
    Ok(passed)
}

#[derive(Serialize)]
struct ThetaReport<'a> {
    n: u32,
    dim: usize,
    clifford_residual: f64,
    clifford_ok: bool,
    matrices: &'a [GateMatrix; 4],
}

pub fn theta(a: &ThetaArgs, r: &Resolved) -> Result<bool> {
    let level = clifford_level(a.n)?;
    let residual = level.clifford_residual();
    let report = ThetaReport {
        n: level.n(),
        dim: level.dim(),
        clifford_residual: residual,
        clifford_ok: residual <= 1e-12,
        matrices: level.matrices(),
    };
    match r.sink.format {
        Format::Pretty => {
            let mut s = format!(
                "level {} ({}x{}), max |{{θμ,θν}} − 2ημν I| = {}\n",
                report.n,
                report.dim,
                report.dim,
                fmt_float(residual)
            );
            for (mu, m) in level.matrices().iter().enumerate() {
                s.push_str(&format!("θ^{mu}:\n{}\n", matrix_to_pretty(m)));
            }
            r.sink.write(&s)?;
        }
        Format::Csv => {
            let mut s = String::from("mu,row,col,re,im\n");
            for (mu, m) in level.matrices().iter().enumerate() {
                for line in matrix_to_csv(m).lines().skip(1) {
                    s.push_str(&format!("{mu},{line}\n"));
                }
            }
            r.sink.write(&s)?;
        }
        Format::Json => r.sink.report(&report)?,
    }
    Ok(true)
}
