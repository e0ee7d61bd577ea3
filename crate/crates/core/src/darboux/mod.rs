//! Darboux intertwining `L h0 = h1 L` for `h = iK d/dt + V(t)`, `L = d/dt + B`.

pub mod intertwine;
pub mod lorentz;
pub mod scenario;
pub mod transport;

pub use intertwine::{
    delta_v, intertwine_residual, scalar_profile, solve_alpha_beta, AlphaBetaSolution,
    DiracHamiltonian, Intertwiner, Ordering, Profile, Residual,
};
pub use lorentz::{
    lorentz_force, lorentz_force_direct, perturbation_from_force, FieldConfig, PotentialSampler,
};
pub use scenario::{
    run_all_tables, run_scenario, run_table_scenario, solvable_demo, ScenarioReport, ScenarioSpec,
    TableId,
};
pub use transport::{
    eigen_residual, integrate_eigenfunction, transform_state, GridFunction, UniformGrid,
};
