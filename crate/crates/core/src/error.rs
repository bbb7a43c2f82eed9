// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

/// Errors produced by the covariance, dynamics and sweep layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("covariance matrix is not physical (smallest symplectic eigenvalue {nu_minus:.6e} < 1/2)")]
    NonPhysical { nu_minus: f64 },

    #[error("covariance matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("negative discriminant {value:.3e} in symplectic spectrum (corrupted or non-physical matrix)")]
    NegativeDiscriminant { value: f64 },

    #[error("time grid must be non-negative and strictly increasing (violated at index {index})")]
    InvalidTimeGrid { index: usize },

    #[error("survival-time formula undefined: radicand {radicand:.6e} is negative")]
    FormulaDomain { radicand: f64 },

    #[error("no separability crossing found up to t_max = {t_max}; increase t_max")]
    NoCrossing { t_max: f64 },

    #[error("invalid sweep configuration: {0}")]
    Config(String),

    #[error("non-finite value {value} at grid point ({axis1}, {axis2})")]
    NonFinite { axis1: f64, axis2: f64, value: f64 },

    #[error("malformed grid CSV: {0}")]
    Csv(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_param(
    name: &'static str,
    value: f64,
    ok: bool,
    reason: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason,
        })
    }
}
