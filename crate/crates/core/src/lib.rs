//! Complex four-vector algebra over the Pauli basis, control/cyclic gate
//! couplings, Darboux intertwining on the one-dimensional Dirac equation,
//! and Landau levels of massless Dirac fermions.
//!
//! Modules:
//! - [`fourvec`]: Pauli-basis four-vectors, Lorentz product, wedge.
//! - [`cliffgen`]: θ-matrix hierarchy, γ-basis decomposition.
//! - [`gates`]: gates assembled from σco± / σcy± couplings.
//! - [`darboux`]: intertwining residuals, table scenarios, Lorentz force.
//! - [`landau`]: analytic Landau spectrum and finite-difference check.

pub mod cliffgen;
pub mod darboux;
pub mod error;
pub mod fourvec;
pub mod gates;
pub mod io;
pub mod landau;
pub mod matrix;
pub mod poly;

pub use error::{Error, Result};
pub use fourvec::PauliVector;
pub use matrix::GateMatrix;
