// SPDX-License-Identifier: Apache-2.0

//! Covariance dynamics of two independent damped modes in a thermal bath.
//!
//! The covariance obeys `dσ/dt = Yσ + σYᵀ + D` with block-diagonal drift `Y`.
//! Its solution is
//!
//! ```text
//! σ(t) = M(t) (σ(0) − σ(∞)) M(t)ᵀ + σ(∞),    M(t) = exp(Y t)
//! ```
//!
//! where `σ(∞)` is the Gibbs covariance and `D = −(Y σ(∞) + σ(∞) Yᵀ)`.
//! `M(t)` is evaluated per mode in closed form; [`integrate_oracle`] integrates
//! the differential equation directly and serves as an independent check.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::covariance::{require_physical, CovarianceMatrix, SplitCovariance};
use crate::error::{check_param, Error, Result};

/// Bath and oscillator parameters. Temperature enters through
/// `c_th = coth(ω / 2kT)` with ħ = k = 1; `c_th = 1` is zero temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathParams {
    lambda: f64,
    m: f64,
    omega1: f64,
    omega2: f64,
    c_th1: f64,
    c_th2: f64,
}

impl BathParams {
    pub fn new(lambda: f64, m: f64, omega1: f64, omega2: f64, c_th1: f64, c_th2: f64) -> Result<Self> {
        check_param("lambda", lambda, lambda > 0.0, "dissipation constant must be > 0")?;
        check_param("m", m, m > 0.0, "mass must be > 0")?;
        check_param("omega1", omega1, omega1 > 0.0, "frequency must be > 0")?;
        check_param("omega2", omega2, omega2 > 0.0, "frequency must be > 0")?;
        check_param("c_th1", c_th1, c_th1 >= 1.0, "coth(omega/2kT) must be >= 1")?;
        check_param("c_th2", c_th2, c_th2 >= 1.0, "coth(omega/2kT) must be >= 1")?;
        Ok(Self { lambda, m, omega1, omega2, c_th1, c_th2 })
    }

    /// Equal frequencies and temperatures for both modes.
    pub fn symmetric(lambda: f64, m: f64, omega: f64, c_th: f64) -> Result<Self> {
        Self::new(lambda, m, omega, omega, c_th, c_th)
    }

    /// `λ = m = ω = 1`.
    pub fn unit(c_th: f64) -> Result<Self> {
        Self::symmetric(1.0, 1.0, 1.0, c_th)
    }

    /// Both `c_th` derived from a single bath temperature.
    pub fn from_temperature(lambda: f64, m: f64, omega1: f64, omega2: f64, temperature: f64) -> Result<Self> {
        check_param("temperature", temperature, temperature >= 0.0, "temperature must be >= 0")?;
        Self::new(
            lambda,
            m,
            omega1,
            omega2,
            coth_from_temperature(omega1, temperature),
            coth_from_temperature(omega2, temperature),
        )
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn omega1(&self) -> f64 {
        self.omega1
    }
    pub fn omega2(&self) -> f64 {
        self.omega2
    }
    pub fn c_th1(&self) -> f64 {
        self.c_th1
    }
    pub fn c_th2(&self) -> f64 {
        self.c_th2
    }

    fn mode(&self, i: usize) -> (f64, f64) {
        if i == 0 {
            (self.omega1, self.c_th1)
        } else {
            (self.omega2, self.c_th2)
        }
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.c_th1 == 1.0 && self.c_th2 == 1.0
    }

    /// Whether `c_th1` and `c_th2` correspond to one common temperature.
    pub fn temperature_consistent(&self) -> bool {
        let (t1, t2) = (
            temperature_from_coth(self.omega1, self.c_th1),
            temperature_from_coth(self.omega2, self.c_th2),
        );
        if t1 == t2 {
            return true;
        }
        (t1 - t2).abs() <= 1e-9 * t1.abs().max(t2.abs())
    }
}

/// `coth(ω / 2T)`, with `T = 0` giving exactly 1.
pub fn coth_from_temperature(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 1.0;
    }
    let x = omega / (2.0 * temperature);
    1.0 / x.tanh()
}

/// Inverse of [`coth_from_temperature`].
pub fn temperature_from_coth(omega: f64, c_th: f64) -> f64 {
    if c_th <= 1.0 {
        return 0.0;
    }
    omega / (2.0 * (1.0 / c_th).atanh())
}

/// Lower-left entry of each drift block.
///
/// `OmegaSquared` uses `−mω²`, the value implied by the harmonic Hamiltonian.
/// `PaperLiteral` uses `−mω`. The two agree at `m = ω = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum DriftConvention {
    #[default]
    #[serde(rename = "omega2")]
    OmegaSquared,
    #[serde(rename = "literal")]
    PaperLiteral,
}

impl DriftConvention {
    pub const ALL: [DriftConvention; 2] = [DriftConvention::OmegaSquared, DriftConvention::PaperLiteral];

    fn spring(self, m: f64, omega: f64) -> f64 {
        match self {
            DriftConvention::OmegaSquared => m * omega * omega,
            DriftConvention::PaperLiteral => m * omega,
        }
    }
}

impl fmt::Display for DriftConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DriftConvention::OmegaSquared => "omega2",
            DriftConvention::PaperLiteral => "literal",
        })
    }
}

impl FromStr for DriftConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "omega2" => Ok(DriftConvention::OmegaSquared),
            "literal" => Ok(DriftConvention::PaperLiteral),
            other => Err(format!("unknown drift convention `{other}` (expected omega2 or literal)")),
        }
    }
}

fn block_diag(b1: Matrix2<f64>, b2: Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&b1);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b2);
    m
}

fn drift_block(p: &BathParams, conv: DriftConvention, i: usize) -> Matrix2<f64> {
    let (omega, _) = p.mode(i);
    Matrix2::new(-p.lambda, 1.0 / p.m, -conv.spring(p.m, omega), -p.lambda)
}

pub fn drift_matrix(p: &BathParams, conv: DriftConvention) -> Matrix4<f64> {
    block_diag(drift_block(p, conv, 0), drift_block(p, conv, 1))
}

fn gibbs_diagonal(p: &BathParams) -> [f64; 4] {
    let (w1, c1) = p.mode(0);
    let (w2, c2) = p.mode(1);
    [
        c1 / (2.0 * p.m * w1),
        p.m * w1 * c1 / 2.0,
        c2 / (2.0 * p.m * w2),
        p.m * w2 * c2 / 2.0,
    ]
}

/// Asymptotic Gibbs covariance `σ(∞)`.
pub fn gibbs_covariance(p: &BathParams) -> CovarianceMatrix {
    CovarianceMatrix::new(Matrix4::from_diagonal(&gibbs_diagonal(p).into()))
}

fn propagator_block(p: &BathParams, conv: DriftConvention, i: usize, t: f64) -> Matrix2<f64> {
    let (omega, _) = p.mode(i);
    // Undamped block [[0, 1/m], [−k, 0]] rotates at Ω = sqrt(k/m).
    let freq = (conv.spring(p.m, omega) / p.m).sqrt();
    let (sin, cos) = (freq * t).sin_cos();
    let decay = (-p.lambda * t).exp();
    let mf = p.m * freq;
    Matrix2::new(cos, sin / mf, -mf * sin, cos) * decay
}

/// `M(t) = exp(Y t)`.
pub fn propagator(p: &BathParams, conv: DriftConvention, t: f64) -> Matrix4<f64> {
    block_diag(propagator_block(p, conv, 0, t), propagator_block(p, conv, 1, t))
}

fn check_time(t: f64) -> Result<()> {
    check_param("t", t, t >= 0.0, "time must be >= 0")
}

/// `σ(t) = M(t)(σ(0) − σ(∞))M(t)ᵀ + σ(∞)`.
pub fn propagate(
    sigma0: &CovarianceMatrix,
    p: &BathParams,
    conv: DriftConvention,
    t: f64,
) -> Result<CovarianceMatrix> {
    check_time(t)?;
    require_physical(sigma0)?;
    Ok(propagate_unchecked(sigma0, p, conv, t))
}

fn propagate_unchecked(sigma0: &CovarianceMatrix, p: &BathParams, conv: DriftConvention, t: f64) -> CovarianceMatrix {
    if t == 0.0 {
        return *sigma0;
    }
    let gibbs = gibbs_covariance(p);
    let m = propagator(p, conv, t);
    CovarianceMatrix::new(m * (sigma0.matrix() - gibbs.matrix()) * m.transpose() + gibbs.matrix())
}

/// Trajectory of one initial state, kept in the local frame where the Gibbs
/// covariance is `diag(c_th1/2, c_th1/2, c_th2/2, c_th2/2)`.
///
/// The frame change `q → sqrt(mω) q`, `p → p / sqrt(mω)` is a local symplectic
/// map, so all symplectic invariants are unchanged. The deviation from the
/// Gibbs state decays as `e^(−2λt)` without being rounded against it.
#[derive(Debug, Clone, Copy)]
pub struct Trajectory {
    params: BathParams,
    convention: DriftConvention,
    reference: [f64; 2],
    deviation0: Matrix4<f64>,
    frame: [Matrix2<f64>; 2],
}

impl Trajectory {
    pub fn new(sigma0: &CovarianceMatrix, p: &BathParams, conv: DriftConvention) -> Result<Self> {
        require_physical(sigma0)?;
        let scale = |i: usize| (p.m * p.mode(i).0).sqrt();
        let s = Matrix4::from_diagonal(&[scale(0), 1.0 / scale(0), scale(1), 1.0 / scale(1)].into());
        let reference = [p.c_th1 / 2.0, p.c_th2 / 2.0];
        let lambda = Matrix4::from_diagonal(&[reference[0], reference[0], reference[1], reference[1]].into());
        let deviation0 = s * sigma0.matrix() * s.transpose() - lambda;
        let frame = [0, 1].map(|i| Matrix2::new(scale(i), 0.0, 0.0, 1.0 / scale(i)));
        Ok(Self {
            params: *p,
            convention: conv,
            reference,
            deviation0,
            frame,
        })
    }

    pub fn params(&self) -> &BathParams {
        &self.params
    }

    pub fn convention(&self) -> DriftConvention {
        self.convention
    }

    /// State at time `t` in the normalized frame.
    pub fn at(&self, t: f64) -> Result<SplitCovariance> {
        check_time(t)?;
        let blocks = [0, 1].map(|i| {
            let f = self.frame[i];
            let f_inv = Matrix2::new(1.0 / f[(0, 0)], 0.0, 0.0, 1.0 / f[(1, 1)]);
            f * propagator_block(&self.params, self.convention, i, t) * f_inv
        });
        let m = block_diag(blocks[0], blocks[1]);
        Ok(SplitCovariance::new(self.reference, m * self.deviation0 * m.transpose()))
    }

    /// `2ν̃₋(t) − 1`; negative while the modes are entangled.
    pub fn pt_gap(&self, t: f64) -> Result<f64> {
        self.at(t)?.pt_gap()
    }
}

/// `D = −(Y σ(∞) + σ(∞) Yᵀ)`.
pub fn diffusion_matrix(p: &BathParams, conv: DriftConvention) -> Matrix4<f64> {
    let y = drift_matrix(p, conv);
    let g = gibbs_covariance(p);
    let d = -(y * g.matrix() + g.matrix() * y.transpose());
    (d + d.transpose()) * 0.5
}

/// Complete positivity of the generator: `D + (i/2)(YΩ + ΩYᵀ) ≥ 0`, which per
/// mode reads `D_qq ≥ 0` and `D_qq D_pp ≥ D_qp² + λ²`.
///
/// Always true for [`DriftConvention::OmegaSquared`]. For `PaperLiteral` with
/// `mω ≠ ω²m` it can fail, and trajectories may then leave the physical set.
pub fn generator_is_completely_positive(p: &BathParams, conv: DriftConvention) -> bool {
    let d = diffusion_matrix(p, conv);
    (0..2).all(|i| {
        let (qq, qp, pp) = (d[(2 * i, 2 * i)], d[(2 * i, 2 * i + 1)], d[(2 * i + 1, 2 * i + 1)]);
        let lhs = qq * pp;
        let rhs = qp * qp + p.lambda * p.lambda;
        qq >= 0.0 && lhs >= rhs - 1e-12 * rhs.max(1.0)
    })
}

/// Classical fourth-order Runge-Kutta integration of `dσ/dt = Yσ + σYᵀ + D`
/// with fixed step. When `t` is not a multiple of `dt` the step is shrunk
/// uniformly to `t / ceil(t / dt)`.
pub fn integrate_oracle(
    sigma0: &CovarianceMatrix,
    p: &BathParams,
    conv: DriftConvention,
    t: f64,
    dt: f64,
) -> Result<CovarianceMatrix> {
    check_time(t)?;
    check_param("dt", dt, dt > 0.0, "step must be > 0")?;
    if t == 0.0 {
        return Ok(*sigma0);
    }
    let y = drift_matrix(p, conv);
    let yt = y.transpose();
    let d = diffusion_matrix(p, conv);
    let rhs = |s: &Matrix4<f64>| y * s + s * yt + d;

    let steps = (t / dt).ceil().max(1.0);
    if steps > 1e9 {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "too many integration steps",
        });
    }
    let n = steps as u64;
    let h = t / steps;
    let mut s = *sigma0.matrix();
    for _ in 0..n {
        let k1 = rhs(&s);
        let k2 = rhs(&(s + k1 * (h / 2.0)));
        let k3 = rhs(&(s + k2 * (h / 2.0)));
        let k4 = rhs(&(s + k3 * h));
        s += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    Ok(CovarianceMatrix::new(s))
}
