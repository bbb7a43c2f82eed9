// SPDX-License-Identifier: Apache-2.0

//! Logarithmic negativity and the PPT separability test.
//!
//! `E_N = max(0, −log₂(2ν̃₋))`, where `ν̃₋` is the smallest symplectic
//! eigenvalue of the partial transpose. With this normalization the vacuum
//! has `E_N = 0` and `E_N` vanishes exactly where the state becomes
//! PPT-separable.
//!
//! The invariant expression `(det A + det B) − 2 det C − 2 sqrt(...)` equals
//! `2ν̃₋²`; taking `−log₂` of it directly gives the vacuum the value 1 and does
//! not vanish at the separability boundary. That value is still available as
//! [`log_negativity_paper_literal`] for comparison.

use serde::Serialize;

use crate::covariance::{pt_min_symplectic, require_physical, CovarianceMatrix, SplitCovariance};
use crate::dynamics::{BathParams, DriftConvention, Trajectory};
use crate::error::{Error, Result};
use crate::states::SqueezedThermalSpec;

/// `ν̃₋ ≥ 1/2 − SEPARABLE_TOL` counts as separable.
pub const SEPARABLE_TOL: f64 = 1e-12;

pub fn log_negativity(sigma: &CovarianceMatrix) -> Result<f64> {
    Ok(log_negativity_raw(sigma)?.max(0.0))
}

/// `−log₂(2ν̃₋)` without clamping; negative for separable states.
pub fn log_negativity_raw(sigma: &CovarianceMatrix) -> Result<f64> {
    require_physical(sigma)?;
    Ok(-(2.0 * pt_min_symplectic(sigma)?).log2())
}

/// `−log₂` of the bracket `Δ̃ − 2 sqrt(Δ̃²/4 − det σ) = 2ν̃₋²`, unclamped.
pub fn log_negativity_paper_literal(sigma: &CovarianceMatrix) -> Result<f64> {
    require_physical(sigma)?;
    let nu = pt_min_symplectic(sigma)?;
    Ok(-(2.0 * nu * nu).log2())
}

pub fn is_separable(sigma: &CovarianceMatrix) -> Result<bool> {
    require_physical(sigma)?;
    Ok(pt_min_symplectic(sigma)? >= 0.5 - SEPARABLE_TOL)
}

/// `E_N` from the gap `2ν̃₋ − 1`, accurate when the gap is tiny.
pub fn log_negativity_from_gap(gap: f64) -> f64 {
    (-gap.ln_1p() / std::f64::consts::LN_2).max(0.0)
}

pub fn log_negativity_split(state: &SplitCovariance) -> Result<f64> {
    Ok(log_negativity_from_gap(state.pt_gap()?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialState {
    SqueezedThermal(SqueezedThermalSpec),
    Raw { covariance: CovarianceMatrix },
}

impl InitialState {
    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        match self {
            InitialState::SqueezedThermal(spec) => crate::states::squeezed_thermal(spec),
            InitialState::Raw { covariance } => Ok(*covariance),
        }
    }
}

impl From<SqueezedThermalSpec> for InitialState {
    fn from(spec: SqueezedThermalSpec) -> Self {
        InitialState::SqueezedThermal(spec)
    }
}

impl From<CovarianceMatrix> for InitialState {
    fn from(covariance: CovarianceMatrix) -> Self {
        InitialState::Raw { covariance }
    }
}

/// `E_N` sampled along one trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativityTrace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub params: BathParams,
    pub convention: DriftConvention,
    pub initial: InitialState,
}

impl NegativityTrace {
    /// Paper-literal values at the same times.
    pub fn paper_literal_values(&self) -> Result<Vec<f64>> {
        let sigma0 = self.initial.covariance()?;
        self.times
            .iter()
            .map(|&t| {
                let s = crate::dynamics::propagate(&sigma0, &self.params, self.convention, t)?;
                log_negativity_paper_literal(&s)
            })
            .collect()
    }
}

fn check_grid(times: &[f64]) -> Result<()> {
    for (i, &t) in times.iter().enumerate() {
        let ok = t.is_finite() && if i == 0 { t >= 0.0 } else { t > times[i - 1] };
        if !ok {
            return Err(Error::InvalidTimeGrid { index: i });
        }
    }
    Ok(())
}

pub fn negativity_trace(
    initial: impl Into<InitialState>,
    p: &BathParams,
    conv: DriftConvention,
    t_grid: &[f64],
) -> Result<NegativityTrace> {
    check_grid(t_grid)?;
    let initial = initial.into();
    let traj = Trajectory::new(&initial.covariance()?, p, conv)?;
    let values = t_grid
        .iter()
        .map(|&t| Ok(log_negativity_from_gap(traj.pt_gap(t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(NegativityTrace {
        times: t_grid.to_vec(),
        values,
        params: *p,
        convention: conv,
        initial,
    })
}

/// `0, dt, 2dt, …` up to and including `t_max` (the last step may be shorter).
pub fn uniform_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    crate::error::check_param("t_max", t_max, t_max >= 0.0, "must be >= 0")?;
    crate::error::check_param("dt", dt, dt > 0.0, "must be > 0")?;
    let n = (t_max / dt).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|k| k as f64 * dt).collect();
    let last = *grid.last().unwrap();
    if t_max - last > 1e-9 * dt {
        grid.push(t_max);
    }
    Ok(grid)
}
