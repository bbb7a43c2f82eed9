// SPDX-License-Identifier: Apache-2.0

//! Built-in cross-checks: closed-form propagation against Runge-Kutta, the
//! survival-time formulas against bisection on the propagated trajectory.

use crate::covariance::pt_min_symplectic;
use crate::dynamics::{integrate_oracle, propagate, BathParams, DriftConvention};
use crate::error::Result;
use crate::states::{entanglement_threshold, SqueezedThermalSpec};
use crate::survival::{survival_time_frequency, survival_time_numeric, survival_time_symmetric, ScanOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.deviation.is_finite() && self.deviation < self.tolerance
    }
}

fn rk4_vs_closed_form() -> Result<f64> {
    let states = [
        SqueezedThermalSpec::new(0.0, 0.0, 1.0)?,
        SqueezedThermalSpec::new(1.0, 0.5, 0.7)?,
    ];
    let params = [BathParams::unit(2.0)?, BathParams::new(0.5, 1.2, 0.8, 1.3, 1.5, 1.2)?];
    let mut worst: f64 = 0.0;
    for spec in &states {
        let s0 = spec.covariance();
        for p in &params {
            for conv in DriftConvention::ALL {
                for t in [0.1, 0.5, 1.0, 2.0] {
                    let exact = propagate(&s0, p, conv, t)?;
                    let rk = integrate_oracle(&s0, p, conv, t, 1e-3)?;
                    worst = worst.max(exact.max_abs_diff(&rk));
                }
            }
        }
    }
    Ok(worst)
}

fn symmetric_vs_bisection() -> Result<f64> {
    let opts = ScanOptions { t_max: 10.0, scan_dt: 1e-3, tol: 1e-10 };
    let mut worst: f64 = 0.0;
    for (n, r, c) in [(0.0, 1.0, 2.0), (1.0, 1.0, 2.0), (0.5, 1.5, 4.0), (2.0, 2.0, 1.5)] {
        let closed = survival_time_symmetric(n, r, c)?.death_time();
        let s0 = SqueezedThermalSpec::symmetric(n, r)?.covariance();
        let numeric = survival_time_numeric(&s0, &BathParams::unit(c)?, DriftConvention::OmegaSquared, opts)?
            .death_time();
        worst = worst.max(match (closed, numeric) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        });
    }
    Ok(worst)
}

fn frequency_form_at_unit_frequency() -> Result<f64> {
    let rs = entanglement_threshold(1.0, 1.0)?;
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        let r = rs + (3.0 - rs) * k as f64 / 10.0;
        let a = survival_time_frequency(r, 1.0)?.death_time();
        let b = survival_time_symmetric(1.0, r, 2.0)?.death_time();
        worst = worst.max(match (a, b) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        });
    }
    Ok(worst)
}

fn threshold_boundary() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (n1, n2) in [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (2.0, 0.5)] {
        let rs = entanglement_threshold(n1, n2)?;
        let s = SqueezedThermalSpec::new(n1, n2, rs)?.covariance();
        worst = worst.max((pt_min_symplectic(&s)? - 0.5).abs());
    }
    Ok(worst)
}

pub fn run_checks() -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        CheckOutcome {
            name: "closed-form propagation vs RK4 (dt = 1e-3)",
            deviation: rk4_vs_closed_form()?,
            tolerance: 1e-8,
        },
        CheckOutcome {
            name: "symmetric survival time vs bisection",
            deviation: symmetric_vs_bisection()?,
            tolerance: 1e-8,
        },
        CheckOutcome {
            name: "frequency formula at omega = 1 vs symmetric formula",
            deviation: frequency_form_at_unit_frequency()?,
            tolerance: 1e-12,
        },
        CheckOutcome {
            name: "partial-transpose eigenvalue at the entanglement threshold",
            deviation: threshold_boundary()?,
            tolerance: 1e-9,
        },
    ])
}
