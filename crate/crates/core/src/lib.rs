// SPDX-License-Identifier: Apache-2.0

//! Gaussian entanglement of two independent bosonic modes damped by a thermal
//! bath, computed at the level of the 4×4 covariance matrix.
//!
//! - [`covariance`]: block form, symplectic eigenvalues, physicality.
//! - [`states`]: squeezed thermal and thermal initial states.
//! - [`dynamics`]: drift, Gibbs state, closed-form propagation, RK4 oracle.
//! - [`entanglement`]: logarithmic negativity and PPT separability.
//! - [`survival`]: time at which entanglement dies.
//! - [`sweep`]: parameter grids and CSV output; [`cli`] wraps it.

pub mod check;
pub mod cli;
pub mod covariance;
pub mod dynamics;
pub mod entanglement;
mod error;
pub mod states;
pub mod survival;
pub mod sweep;

pub use covariance::{
    block_decompose, is_physical, pt_min_symplectic, symplectic_eigenvalues, BlockForm, CovarianceMatrix,
    SplitCovariance, SymplecticSpectrum,
};
pub use dynamics::{
    diffusion_matrix, drift_matrix, gibbs_covariance, integrate_oracle, propagate, propagator, BathParams,
    DriftConvention, Trajectory,
};
pub use entanglement::{is_separable, log_negativity, negativity_trace, InitialState, NegativityTrace};
pub use error::{Error, Result};
pub use states::{entanglement_threshold, squeezed_thermal, thermal, SqueezedThermalSpec};
pub use survival::{
    survival_time_frequency, survival_time_numeric, survival_time_symmetric, ScanOptions, SurvivalResult,
};
pub use sweep::{run_sweep, write_csv, SweepConfig, SweepGrid};
