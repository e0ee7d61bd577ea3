//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 invalid input or I/O, 2 parse error (including usage
//! errors), 3 dimension or resource error, 4 verification failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use diracgate::{Error, Result};

pub use config::ConfigFile;
pub use output::{Format, Sink};

pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "diracgate",
    version,
    about = "Pauli four-vectors, control/cyclic gates, Darboux intertwining and Landau levels"
)]
pub struct Cli {
    /// Output format [default: json, csv for landau-spectrum]
    #[arg(long, global = true, value_enum, env = "DIRACGATE_FORMAT")]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// key = value file overriding defaults (flags still win)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a named gate or coupling expression and check unitarity
    BuildGate(BuildGateArgs),
    /// Decompose a 2x2 unitary over the Pauli basis or a 4x4 matrix over the γ basis
    Decompose(DecomposeArgs),
    /// Check ΔV, solve the intertwiner and transport a state
    VerifyIntertwine(VerifyArgs),
    /// Lorentz force four-vector and its normalized perturbation
    Lorentz(LorentzArgs),
    /// Analytic Landau levels, optionally checked by finite differences
    LandauSpectrum(LandauArgs),
    /// Emit the θ matrices of a hierarchy level
    Theta(ThetaArgs),
}

#[derive(Debug, Args)]
pub struct BuildGateArgs {
    /// Gate name (CC, SWAP, hadamard, …) or coupling expression such as "co(I, X)"
    pub gate: String,
    /// Chain length for controlled-n-not / not-cyclic-n, or expected qubit count otherwise
    #[arg(long)]
    pub n: Option<u32>,
    /// Unitarity tolerance
    #[arg(long)]
    pub unitary_tol: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
pub struct DecomposeSource {
    /// JSON file (or inline JSON) with rows of numbers or [re, im] pairs
    #[arg(long)]
    pub unitary: Option<String>,
    /// Named gate or coupling expression
    #[arg(long)]
    pub gate: Option<String>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub source: DecomposeSource,
    #[arg(long)]
    pub unitary_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Scalar,
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Built-in scenario u0..u3
    #[arg(long, conflicts_with_all = ["v0", "v1", "u", "all"])]
    pub table: Option<String>,
    /// Run all four built-in scenarios (in parallel)
    #[arg(long)]
    pub all: bool,
    /// Initial potential: coefficient list for t^0, t^1, … (inline JSON or file)
    #[arg(long, requires_all = ["v1", "u"])]
    pub v0: Option<String>,
    /// Final potential, same format as --v0
    #[arg(long, requires_all = ["v0", "u"])]
    pub v1: Option<String>,
    /// Gate: name, coupling expression, or matrix JSON
    #[arg(long, requires_all = ["v0", "v1"])]
    pub u: Option<String>,
    /// How V0 enters B: scalar profile along U, or (V0 − β)U / U(V0 − β)
    #[arg(long, value_enum, default_value = "scalar")]
    pub profile: ProfileArg,
    /// Energy of the transported eigenstate
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub energy: f64,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    /// Tolerance on |V1 − V0 − ΔV| for custom potentials (tables compare exactly)
    #[arg(long, default_value_t = 1e-12)]
    pub delta_tol: f64,
    #[arg(long)]
    pub residual_tol: Option<f64>,
    #[arg(long)]
    pub state_tol: Option<f64>,
    /// Negative control: exit 0 iff verification fails
    #[arg(long)]
    pub expect_fail: bool,
}

#[derive(Debug, Args)]
pub struct LorentzArgs {
    /// Electric field "x,y,z"
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    /// Magnetic field "x,y,z"
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Four-velocity "v0,v1,v2,v3", or a 3-velocity "v1,v2,v3" with v0 = 1
    #[arg(long, allow_hyphen_values = true, default_value = "1,0,0,0")]
    pub v: String,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub q: f64,
    /// Also evaluate F from the constant-field four-potential by central differences
    #[arg(long)]
    pub via_potential: bool,
}

#[derive(Debug, Args)]
pub struct LandauArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub vf: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub k: f64,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    /// Add finite-difference eigenvalues and errors
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub points: Option<usize>,
    /// Grid half-width in ξ units
    #[arg(long)]
    pub extent: Option<f64>,
    /// Relative error allowed per level under --verify
    #[arg(long)]
    pub spectrum_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Hierarchy level (qubit count), 1..=8
    #[arg(long, default_value_t = 2)]
    pub n: u32,
}

/// Values resolved from flags, then config file, then defaults.
pub struct Resolved {
    pub config: ConfigFile,
    pub sink: Sink,
}

impl Resolved {
    pub fn pick<T: std::str::FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.config.get(key)?.unwrap_or(default)),
        }
    }
}

fn resolve(cli: &Cli) -> Result<Resolved> {
    let config = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let default_format = match cli.command {
        Command::LandauSpectrum(_) => Format::Csv,
        _ => Format::Json,
    };
    let format = match cli.format {
        Some(f) => f,
        None => config.get::<Format>("format")?.unwrap_or(default_format),
    };
    let path = cli
        .output
        .clone()
        .or_else(|| config.get_str("output").map(PathBuf::from));
    Ok(Resolved {
        config,
        sink: Sink { format, path },
    })
}

fn exit_code(r: Result<bool>) -> i32 {
    match r {
        Ok(true) => 0,
        Ok(false) => EXIT_VERIFICATION,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let resolved = match resolve(&cli) {
        Ok(r) => r,
        Err(e) => return exit_code(Err(e)),
    };
    let result = match &cli.command {
        Command::BuildGate(a) => commands::build_gate(a, &resolved),
        Command::Decompose(a) => commands::decompose(a, &resolved),
        Command::VerifyIntertwine(a) => commands::verify(a, &resolved),
        Command::Lorentz(a) => commands::lorentz(a, &resolved),
        Command::LandauSpectrum(a) => commands::landau(a, &resolved),
        Command::Theta(a) => commands::theta(a, &resolved),
    };
    exit_code(result)
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
