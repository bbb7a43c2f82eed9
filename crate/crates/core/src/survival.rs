// SPDX-License-Identifier: Apache-2.0

//! Survival time of entanglement.
//!
//! For the symmetric squeezed thermal state with `λ = m = ω = 1` the smallest
//! partially transposed symplectic eigenvalue relaxes as
//!
//! ```text
//! ν̃₋(t) = e^(−2t) (a − c_corr − c_th/2) + c_th/2,    a − c_corr = (n + 1/2) e^(−2r)
//! ```
//!
//! and the first time with `2ν̃₋ = 1` is
//! `t_s = ½ ln[(c_th e^(2r) − 1 − 2n) / (e^(2r)(c_th − 1))]`.
//! [`survival_time_numeric`] finds the same crossing for arbitrary initial
//! states and parameters by scanning and bisecting `g(t) = 2ν̃₋(t) − 1`.

use serde::{Deserialize, Serialize};

use crate::covariance::CovarianceMatrix;
use crate::dynamics::{BathParams, DriftConvention, Trajectory};
use crate::error::{check_param, Error, Result};
use crate::states::entanglement_threshold;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurvivalResult {
    /// Entangled on `[0, t_s)`, separable at `t_s`.
    FiniteDeath { t_s: f64 },
    NeverEntangled,
    /// Zero-temperature bath: separable only as `t → ∞`.
    EntangledForAllFiniteTimes,
    /// Initial state sits on the separability boundary.
    ImmediateBoundary,
}

impl SurvivalResult {
    pub fn death_time(&self) -> Option<f64> {
        match self {
            SurvivalResult::FiniteDeath { t_s } => Some(*t_s),
            _ => None,
        }
    }
}

fn finite_or_boundary(t_s: f64) -> SurvivalResult {
    if t_s > 0.0 {
        SurvivalResult::FiniteDeath { t_s }
    } else {
        SurvivalResult::ImmediateBoundary
    }
}

/// Closed form for `n1 = n2 = n`, `λ = m = ω = 1`.
pub fn survival_time_symmetric(n: f64, r: f64, c_th: f64) -> Result<SurvivalResult> {
    check_param("r", r, r >= 0.0, "squeezing parameter must be >= 0")?;
    check_param("c_th", c_th, c_th >= 1.0, "coth(omega/2kT) must be >= 1")?;
    let rs = entanglement_threshold(n, n)?;
    if r <= rs {
        return Ok(SurvivalResult::NeverEntangled);
    }
    if c_th == 1.0 {
        return Ok(SurvivalResult::EntangledForAllFiniteTimes);
    }
    let e2r = (2.0 * r).exp();
    let ratio = (c_th * e2r - 1.0 - 2.0 * n) / (e2r * (c_th - 1.0));
    Ok(finite_or_boundary(0.5 * ratio.ln()))
}

/// Closed form for `n1 = n2 = 1`, `c_th = 2`, `λ = m = 1` and common frequency
/// `omega`. Reduces to [`survival_time_symmetric`] at `omega = 1`.
pub fn survival_time_frequency(r: f64, omega: f64) -> Result<SurvivalResult> {
    check_param("r", r, r >= 0.0, "squeezing parameter must be >= 0")?;
    check_param("omega", omega, omega > 0.0, "frequency must be > 0")?;
    if r <= entanglement_threshold(1.0, 1.0)? {
        return Ok(SurvivalResult::NeverEntangled);
    }
    let e2r = (2.0 * r).exp();
    let w2 = omega * omega;
    let radicand = 9.0 * (w2 * w2 - w2 + 1.0) - 2.0 * e2r * omega * (3.0 * w2 - 2.0 * e2r * omega + 3.0);
    if radicand < 0.0 {
        return Err(Error::FormulaDomain { radicand });
    }
    let em2r = 1.0 / e2r;
    let arg = (4.0 * omega - 3.0 * em2r * (w2 + 1.0) + em2r * radicand.sqrt()) / (3.0 * omega);
    if arg <= 0.0 {
        return Err(Error::FormulaDomain { radicand: arg });
    }
    Ok(finite_or_boundary(0.5 * arg.ln()))
}

/// Scan and bisection settings for [`survival_time_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub t_max: f64,
    pub scan_dt: f64,
    pub tol: f64,
}

impl ScanOptions {
    /// `t_max = 50/λ`, `scan_dt = 10⁻³/λ`, `tol = 10⁻¹⁰`.
    pub fn for_params(p: &BathParams) -> Self {
        Self {
            t_max: 50.0 / p.lambda(),
            scan_dt: 1e-3 / p.lambda(),
            tol: 1e-10,
        }
    }

    fn validate(&self) -> Result<()> {
        check_param("t_max", self.t_max, self.t_max > 0.0, "must be > 0")?;
        check_param("scan_dt", self.scan_dt, self.scan_dt > 0.0, "must be > 0")?;
        check_param("tol", self.tol, self.tol > 0.0, "must be > 0")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalReport {
    pub result: SurvivalResult,
    /// Re-entanglement times after the first death, if the gap dips again.
    pub revivals: Vec<f64>,
}

/// Bisect `g` on `[lo, hi]` where the sign of `g(lo) < 0` differs from the
/// sign of `g(hi) ≥ 0` (or the reverse when `rising` is false).
fn bisect(traj: &Trajectory, mut lo: f64, mut hi: f64, tol: f64, rising: bool) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let after = if rising {
            traj.pt_gap(mid)? >= 0.0
        } else {
            traj.pt_gap(mid)? < 0.0
        };
        if after {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// First time-point at which the propagated state becomes separable, plus any
/// later re-entanglement events up to `t_max`.
pub fn survival_scan(
    sigma0: &CovarianceMatrix,
    p: &BathParams,
    conv: DriftConvention,
    opts: ScanOptions,
) -> Result<SurvivalReport> {
    opts.validate()?;
    let traj = Trajectory::new(sigma0, p, conv)?;
    let g0 = traj.pt_gap(0.0)?;
    if g0.abs() <= opts.tol {
        return Ok(SurvivalReport {
            result: SurvivalResult::ImmediateBoundary,
            revivals: Vec::new(),
        });
    }
    if g0 > 0.0 {
        return Ok(SurvivalReport {
            result: SurvivalResult::NeverEntangled,
            revivals: Vec::new(),
        });
    }

    let steps = (opts.t_max / opts.scan_dt).ceil() as u64;
    let time = |k: u64| (k as f64 * opts.scan_dt).min(opts.t_max);
    let mut death = None;
    let mut revivals = Vec::new();
    let mut entangled = true;
    let mut prev_t = 0.0;
    for k in 1..=steps {
        let t = time(k);
        let g = traj.pt_gap(t)?;
        if entangled && g >= 0.0 {
            let t_cross = bisect(&traj, prev_t, t, opts.tol, true)?;
            death.get_or_insert(t_cross);
            entangled = false;
        } else if !entangled && g < 0.0 {
            revivals.push(bisect(&traj, prev_t, t, opts.tol, false)?);
            entangled = true;
        }
        prev_t = t;
    }

    let result = match death {
        Some(t_s) => finite_or_boundary(t_s),
        None if p.is_zero_temperature() => SurvivalResult::EntangledForAllFiniteTimes,
        None => return Err(Error::NoCrossing { t_max: opts.t_max }),
    };
    Ok(SurvivalReport { result, revivals })
}

pub fn survival_time_numeric(
    sigma0: &CovarianceMatrix,
    p: &BathParams,
    conv: DriftConvention,
    opts: ScanOptions,
) -> Result<SurvivalResult> {
    Ok(survival_scan(sigma0, p, conv, opts)?.result)
}
