// SPDX-License-Identifier: Apache-2.0

//! Squeezed thermal and thermal initial states.

use serde::{Deserialize, Serialize};

use crate::covariance::CovarianceMatrix;
use crate::error::{check_param, Result};

/// Two-mode squeezed thermal state: mean photon numbers `n1`, `n2` and
/// squeezing parameter `r ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedThermalSpec {
    pub n1: f64,
    pub n2: f64,
    pub r: f64,
}

impl SqueezedThermalSpec {
    pub fn new(n1: f64, n2: f64, r: f64) -> Result<Self> {
        let spec = Self { n1, n2, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn symmetric(n: f64, r: f64) -> Result<Self> {
        Self::new(n, n, r)
    }

    pub fn validate(&self) -> Result<()> {
        check_param("n1", self.n1, self.n1 >= 0.0, "mean photon number must be >= 0")?;
        check_param("n2", self.n2, self.n2 >= 0.0, "mean photon number must be >= 0")?;
        check_param("r", self.r, self.r >= 0.0, "squeezing parameter must be >= 0")
    }

    /// Entries `(a, b, c_corr)` of the standard form.
    pub fn entries(&self) -> (f64, f64, f64) {
        let (n1, n2, r) = (self.n1, self.n2, self.r);
        let ch2 = r.cosh().powi(2);
        let sh2 = r.sinh().powi(2);
        let half_cosh = 0.5 * (2.0 * r).cosh();
        let a = n1 * ch2 + n2 * sh2 + half_cosh;
        let b = n1 * sh2 + n2 * ch2 + half_cosh;
        let c = 0.5 * (n1 + n2 + 1.0) * (2.0 * r).sinh();
        (a, b, c)
    }

    pub fn covariance(&self) -> CovarianceMatrix {
        let (a, b, c) = self.entries();
        CovarianceMatrix::from_rows([
            [a, 0.0, c, 0.0],
            [0.0, a, 0.0, -c],
            [c, 0.0, b, 0.0],
            [0.0, -c, 0.0, b],
        ])
    }

    /// Squeezing above which the state is entangled.
    pub fn threshold(&self) -> f64 {
        threshold_unchecked(self.n1, self.n2)
    }
}

pub fn squeezed_thermal(spec: &SqueezedThermalSpec) -> Result<CovarianceMatrix> {
    spec.validate()?;
    Ok(spec.covariance())
}

fn threshold_unchecked(n1: f64, n2: f64) -> f64 {
    let cosh_sq = (n1 + 1.0) * (n2 + 1.0) / (n1 + n2 + 1.0);
    // cosh² r_s ≥ 1 always; guard the rounding at n1·n2 = 0.
    cosh_sq.sqrt().max(1.0).acosh()
}

/// `r_s` with `cosh² r_s = (n1 + 1)(n2 + 1) / (n1 + n2 + 1)`.
pub fn entanglement_threshold(n1: f64, n2: f64) -> Result<f64> {
    check_param("n1", n1, n1 >= 0.0, "mean photon number must be >= 0")?;
    check_param("n2", n2, n2 >= 0.0, "mean photon number must be >= 0")?;
    Ok(threshold_unchecked(n1, n2))
}

/// Product of two thermal states, `diag(n1 + 1/2, n1 + 1/2, n2 + 1/2, n2 + 1/2)`.
pub fn thermal(n1: f64, n2: f64) -> Result<CovarianceMatrix> {
    check_param("n1", n1, n1 >= 0.0, "mean photon number must be >= 0")?;
    check_param("n2", n2, n2 >= 0.0, "mean photon number must be >= 0")?;
    let (a, b) = (n1 + 0.5, n2 + 0.5);
    Ok(CovarianceMatrix::new(nalgebra::Matrix4::from_diagonal(
        &[a, a, b, b].into(),
    )))
}
