// SPDX-License-Identifier: Apache-2.0

//! Two-mode covariance matrices and their symplectic invariants.
//!
//! Variables are ordered `(q_x, p_x, q_y, p_y)` with ħ = 1, so the vacuum
//! covariance is `I/2` and a state is physical when it is positive definite
//! and both symplectic eigenvalues are at least `1/2`.
//!
//! With the blocks `A`, `B`, `C` of `[[A, C], [Cᵀ, B]]` the symplectic
//! eigenvalues satisfy
//!
//! ```text
//! ν±² = (Δ ± sqrt(Δ² − 4 det σ)) / 2,    Δ = det A + det B + 2 det C
//! ```
//!
//! and the partial transpose (momentum flip of mode 2) replaces `det C` by
//! `−det C`.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute floor for discriminants treated as zero.
pub const DISCRIMINANT_TOL: f64 = 1e-12;

/// Tolerance used by the physicality precondition of the dynamics.
pub const PHYSICAL_TOL: f64 = 1e-9;

/// A symmetric 4×4 second-moment matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 4]; 4]", into = "[[f64; 4]; 4]")]
pub struct CovarianceMatrix(Matrix4<f64>);

impl CovarianceMatrix {
    /// Wraps `m`, symmetrizing it as `(m + mᵀ)/2`.
    pub fn new(m: Matrix4<f64>) -> Self {
        Self((m + m.transpose()) * 0.5)
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn vacuum() -> Self {
        Self(Matrix4::identity() * 0.5)
    }

    pub fn from_blocks(blocks: &BlockForm) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&blocks.a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&blocks.b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&blocks.c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&blocks.c.transpose());
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    /// `S σ Sᵀ`.
    pub fn congruence(&self, s: &Matrix4<f64>) -> Self {
        Self::new(s * self.0 * s.transpose())
    }

    /// Exchanges the roles of the two modes.
    pub fn swap_modes(&self) -> Self {
        let p = Matrix4::from_fn(|i, j| if j == (i + 2) % 4 { 1.0 } else { 0.0 });
        self.congruence(&p)
    }

    /// Partial transpose with respect to mode 2 (`p_y → −p_y`).
    pub fn partial_transpose(&self) -> Self {
        self.congruence(&Matrix4::from_diagonal(&[1.0, 1.0, 1.0, -1.0].into()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0).amax()
    }
}

impl TryFrom<[[f64; 4]; 4]> for CovarianceMatrix {
    type Error = String;

    fn try_from(rows: [[f64; 4]; 4]) -> std::result::Result<Self, String> {
        let m = Self::from_rows(rows);
        if m.is_finite() {
            Ok(m)
        } else {
            Err("covariance entries must be finite".into())
        }
    }
}

impl From<CovarianceMatrix> for [[f64; 4]; 4] {
    fn from(c: CovarianceMatrix) -> Self {
        std::array::from_fn(|i| std::array::from_fn(|j| c.0[(i, j)]))
    }
}

/// `σ = [[A, C], [Cᵀ, B]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockForm {
    pub a: Matrix2<f64>,
    pub b: Matrix2<f64>,
    pub c: Matrix2<f64>,
}

impl BlockForm {
    /// `Δ = det A + det B + 2 det C`.
    pub fn seralian(&self) -> f64 {
        self.a.determinant() + self.b.determinant() + 2.0 * self.c.determinant()
    }

    /// `Δ̃ = det A + det B − 2 det C`, the same invariant of the partial transpose.
    pub fn seralian_pt(&self) -> f64 {
        self.a.determinant() + self.b.determinant() - 2.0 * self.c.determinant()
    }
}

pub fn block_decompose(sigma: &CovarianceMatrix) -> BlockForm {
    let m = sigma.matrix();
    BlockForm {
        a: m.fixed_view::<2, 2>(0, 0).into_owned(),
        b: m.fixed_view::<2, 2>(2, 2).into_owned(),
        c: m.fixed_view::<2, 2>(0, 2).into_owned(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymplecticSpectrum {
    pub nu_minus: f64,
    pub nu_plus: f64,
}

/// Roots `lo ≤ hi` of `z² − sum·z + product = 0` in the cancellation-free
/// form. Both roots must be real; discriminants slightly below zero are
/// clamped.
fn real_roots(sum: f64, product: f64) -> Result<(f64, f64)> {
    let half = 0.5 * sum;
    let mut disc = half * half - product;
    let floor = DISCRIMINANT_TOL * half.abs().max(1.0).powi(2);
    if disc < 0.0 {
        if disc < -floor {
            return Err(Error::NegativeDiscriminant { value: disc });
        }
        disc = 0.0;
    }
    let root = disc.sqrt();
    if half >= 0.0 {
        let hi = half + root;
        let lo = if hi != 0.0 { product / hi } else { 0.0 };
        Ok((lo, hi))
    } else {
        let lo = half - root;
        let hi = if lo != 0.0 { product / lo } else { 0.0 };
        Ok((lo, hi))
    }
}

fn spectrum_from_invariants(delta: f64, det: f64) -> Result<SymplecticSpectrum> {
    let scale = delta.abs().max(1.0).powi(2);
    if det < -DISCRIMINANT_TOL * scale {
        return Err(Error::NegativeDiscriminant { value: det });
    }
    let (lo, hi) = real_roots(delta, det.max(0.0))?;
    Ok(SymplecticSpectrum {
        nu_minus: lo.max(0.0).sqrt(),
        nu_plus: hi.max(0.0).sqrt(),
    })
}

/// Symplectic spectrum from the singular values of `Lᵀ Ω L`, where `σ = L Lᵀ`.
///
/// `i Lᵀ Ω L` is Hermitian and similar to `i Ω σ`, so its singular values are
/// `ν₋, ν₋, ν₊, ν₊` and carry absolute error of order `ε‖σ‖` even when the two
/// eigenvalues coincide (pure and symmetric product states).
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let chol = sigma
        .matrix()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    let k = l.transpose() * symplectic_form() * l;
    let mut sv: Vec<f64> = k.singular_values().iter().copied().collect();
    sv.sort_by(f64::total_cmp);
    Ok(SymplecticSpectrum {
        nu_minus: 0.5 * (sv[0] + sv[1]),
        nu_plus: 0.5 * (sv[2] + sv[3]),
    })
}

/// Same spectrum from the invariants `Δ` and `det σ`. Near-degenerate spectra
/// lose about half the significant digits here.
pub fn symplectic_eigenvalues_invariant(sigma: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let blocks = block_decompose(sigma);
    spectrum_from_invariants(blocks.seralian(), sigma.det())
}

/// `Ω = ω ⊕ ω` with `ω = [[0, 1], [−1, 0]]`.
pub fn symplectic_form() -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for i in [0, 2] {
        m[(i, i + 1)] = 1.0;
        m[(i + 1, i)] = -1.0;
    }
    m
}

/// Smallest symplectic eigenvalue of the partially transposed state.
pub fn pt_min_symplectic(sigma: &CovarianceMatrix) -> Result<f64> {
    let blocks = block_decompose(sigma);
    Ok(spectrum_from_invariants(blocks.seralian_pt(), sigma.det())?.nu_minus)
}

/// Positive definite with `ν₋ ≥ 1/2 − tol`.
pub fn is_physical(sigma: &CovarianceMatrix, tol: f64) -> bool {
    if !sigma.is_finite() {
        return false;
    }
    match symplectic_eigenvalues(sigma) {
        Ok(spec) => spec.nu_minus >= 0.5 - tol,
        Err(_) => false,
    }
}

pub(crate) fn require_physical(sigma: &CovarianceMatrix) -> Result<()> {
    if is_physical(sigma, PHYSICAL_TOL) {
        Ok(())
    } else {
        let nu_minus = symplectic_eigenvalues(sigma)
            .map(|s| s.nu_minus)
            .unwrap_or(f64::NAN);
        Err(Error::NonPhysical { nu_minus })
    }
}

/// A covariance matrix written as `Λ + X` with `Λ = diag(α, α, β, β)`.
///
/// Near the vacuum (`α = β = 1/2`) the entries of `Λ + X` stop resolving `X`
/// once it falls below machine precision relative to `1/2`. Keeping the
/// deviation separate lets the distances `ν − 1/2` be evaluated with relative
/// accuracy in `X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCovariance {
    pub reference: [f64; 2],
    pub deviation: Matrix4<f64>,
}

/// Quantities `s = ν₋² + ν₊² − 1/2` and `p = (ν₋² − 1/4)(ν₊² − 1/4)` of `Λ + X`,
/// expanded in powers of `X` so that the constant and linear terms cancel
/// analytically at the vacuum.
fn shifted_invariants(alpha: f64, beta: f64, x: &Matrix4<f64>) -> (f64, f64) {
    let ka = (alpha - 0.5) * (alpha + 0.5);
    let kb = (beta - 0.5) * (beta + 0.5);
    let ab_quarter = (alpha - 0.5) * beta + 0.5 * (beta - 0.5);

    let tr_p = x[(0, 0)] + x[(1, 1)];
    let tr_r = x[(2, 2)] + x[(3, 3)];
    let det_p = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
    let det_r = x[(2, 2)] * x[(3, 3)] - x[(2, 3)] * x[(3, 2)];
    let (q00, q01, q10, q11) = (x[(0, 2)], x[(0, 3)], x[(1, 2)], x[(1, 3)]);
    let det_q = q00 * q11 - q01 * q10;

    let minor3 = |idx: [usize; 3]| {
        Matrix3Minor::from_fn(|i, j| x[(idx[i], idx[j])]).determinant()
    };

    let constant = ka * kb;
    let linear = alpha * kb * tr_p + beta * ka * tr_r;
    // αβ(tr P tr R − Σq²) − det Q / 2 with Σq² = (q00 + q11)² + (q01 − q10)² − 2 det Q,
    // so the det Q coefficient is 2(αβ − 1/4) and vanishes at the vacuum.
    let quadratic = kb * det_p
        + ka * det_r
        + alpha * beta * (tr_p * tr_r - (q00 + q11).powi(2) - (q01 - q10).powi(2))
        + 2.0 * ab_quarter * det_q;
    let cubic = beta * (minor3([0, 1, 2]) + minor3([0, 1, 3]))
        + alpha * (minor3([0, 2, 3]) + minor3([1, 2, 3]));
    let quartic = x.determinant();

    let s = ka + kb + alpha * tr_p + beta * tr_r + det_p + det_r + 2.0 * det_q;
    let p = constant + linear + quadratic + cubic + quartic;
    (s, p)
}

type Matrix3Minor = nalgebra::Matrix3<f64>;

impl SplitCovariance {
    pub fn new(reference: [f64; 2], deviation: Matrix4<f64>) -> Self {
        Self {
            reference,
            deviation: (deviation + deviation.transpose()) * 0.5,
        }
    }

    pub fn to_covariance(&self) -> CovarianceMatrix {
        let [a, b] = self.reference;
        CovarianceMatrix::new(Matrix4::from_diagonal(&[a, a, b, b].into()) + self.deviation)
    }

    fn nu_squared_shift(&self, x: &Matrix4<f64>) -> Result<f64> {
        let (s, p) = shifted_invariants(self.reference[0], self.reference[1], x);
        Ok(real_roots(s, p)?.0)
    }

    /// `2ν₋ − 1` of the state.
    pub fn symplectic_gap(&self) -> Result<f64> {
        gap_from_shift(self.nu_squared_shift(&self.deviation)?)
    }

    /// `2ν̃₋ − 1` of the partial transpose: negative iff entangled.
    pub fn pt_gap(&self) -> Result<f64> {
        let flip = Matrix4::from_diagonal(&[1.0, 1.0, 1.0, -1.0].into());
        let x = flip * self.deviation * flip;
        gap_from_shift(self.nu_squared_shift(&x)?)
    }

    pub fn pt_min_symplectic(&self) -> Result<f64> {
        Ok(0.5 * (1.0 + self.pt_gap()?))
    }
}

/// `2ν − 1` from `u = ν² − 1/4`.
fn gap_from_shift(u: f64) -> Result<f64> {
    let nu_sq = 0.25 + u;
    if nu_sq < -DISCRIMINANT_TOL {
        return Err(Error::NegativeDiscriminant { value: nu_sq });
    }
    let nu = nu_sq.max(0.0).sqrt();
    Ok(4.0 * u / (2.0 * nu + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn standard_form(a: f64, b: f64, c: f64) -> CovarianceMatrix {
        CovarianceMatrix::from_rows([
            [a, 0.0, c, 0.0],
            [0.0, a, 0.0, -c],
            [c, 0.0, b, 0.0],
            [0.0, -c, 0.0, b],
        ])
    }

    #[test]
    fn vacuum_blocks() {
        let f = block_decompose(&CovarianceMatrix::vacuum());
        assert_eq!(f.a, Matrix2::identity() * 0.5);
        assert_eq!(f.b, Matrix2::identity() * 0.5);
        assert_eq!(f.c, Matrix2::zeros());
    }

    #[test]
    fn blocks_follow_index_ranges() {
        let rows: [[f64; 4]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| (1 + i.min(j) * 4 + i.max(j)) as f64));
        let s = CovarianceMatrix::from_rows(rows);
        let f = block_decompose(&s);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(f.a[(i, j)], rows[i][j]);
                assert_eq!(f.b[(i, j)], rows[i + 2][j + 2]);
                assert_eq!(f.c[(i, j)], rows[i][j + 2]);
            }
        }
        assert_eq!(CovarianceMatrix::from_blocks(&f), s);
    }

    #[test]
    fn standard_form_blocks() {
        let f = block_decompose(&standard_form(2.0, 3.0, 1.5));
        assert_eq!(f.a, Matrix2::identity() * 2.0);
        assert_eq!(f.b, Matrix2::identity() * 3.0);
        assert_eq!(f.c, Matrix2::new(1.5, 0.0, 0.0, -1.5));
    }

    #[test]
    fn ingest_symmetrizes() {
        let mut m = Matrix4::identity();
        m[(0, 1)] = 1.0;
        let s = CovarianceMatrix::new(m);
        assert_eq!(s.entry(0, 1), 0.5);
        assert_eq!(s.entry(1, 0), 0.5);
    }

    #[test]
    fn vacuum_spectrum() {
        let s = symplectic_eigenvalues(&CovarianceMatrix::vacuum()).unwrap();
        assert_abs_diff_eq!(s.nu_minus, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.nu_plus, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(pt_min_symplectic(&CovarianceMatrix::vacuum()).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn identity_spectrum_is_one() {
        let s = symplectic_eigenvalues(&CovarianceMatrix::new(Matrix4::identity())).unwrap();
        assert_abs_diff_eq!(s.nu_minus, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.nu_plus, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn symmetric_standard_form_collapses_to_a_minus_c() {
        // n = 0 and n = 1 squeezed states at r = 1.
        for n in [0.0, 1.0] {
            let h = n + 0.5;
            let (a, c) = (h * 2f64.cosh(), h * 2f64.sinh());
            let s = standard_form(a, a, c);
            assert_abs_diff_eq!(pt_min_symplectic(&s).unwrap(), h * (-2f64).exp(), epsilon = 1e-12);
        }
        let s = standard_form(0.5 * 2f64.cosh(), 0.5 * 2f64.cosh(), 0.5 * 2f64.sinh());
        assert_abs_diff_eq!(pt_min_symplectic(&s).unwrap(), 0.067_667_641_618_306_35, epsilon = 1e-12);
    }

    #[test]
    fn pure_squeezed_state_sits_at_vacuum_noise() {
        for r in [0.5f64, 1.0, 3.0] {
            let (a, c) = (0.5 * (2.0 * r).cosh(), 0.5 * (2.0 * r).sinh());
            let s = symplectic_eigenvalues(&standard_form(a, a, c)).unwrap();
            assert_abs_diff_eq!(s.nu_minus, 0.5, epsilon = 1e-11);
            assert_abs_diff_eq!(s.nu_plus, 0.5, epsilon = 1e-11);
        }
        // The invariant route only resolves this degenerate case to ~1e-8.
        let (a, c) = (0.5 * 2f64.cosh(), 0.5 * 2f64.sinh());
        let s = symplectic_eigenvalues_invariant(&standard_form(a, a, c)).unwrap();
        assert_abs_diff_eq!(s.nu_minus, 0.5, epsilon = 1e-7);
    }

    #[test]
    fn below_vacuum_is_unphysical() {
        assert!(is_physical(&CovarianceMatrix::vacuum(), 0.0));
        assert!(!is_physical(&CovarianceMatrix::new(Matrix4::identity() * 0.25), 1e-9));
        assert!(!is_physical(&CovarianceMatrix::new(Matrix4::identity() * -0.5), 1e-9));
    }

    #[test]
    fn corrupted_matrix_is_rejected() {
        // det σ < 0: indefinite matrix.
        let s = CovarianceMatrix::new(Matrix4::from_diagonal(&[1.0, -1.0, 1.0, 1.0].into()));
        assert!(matches!(
            symplectic_eigenvalues_invariant(&s),
            Err(Error::NegativeDiscriminant { .. })
        ));
        assert!(matches!(symplectic_eigenvalues(&s), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn partial_transpose_flips_det_c() {
        let s = standard_form(2.0, 3.0, 1.5);
        let f = block_decompose(&s);
        let g = block_decompose(&s.partial_transpose());
        assert_abs_diff_eq!(f.seralian_pt(), g.seralian(), epsilon = 1e-14);
    }

    #[test]
    fn split_matches_direct_route() {
        let s = standard_form(1.7, 2.1, 1.2);
        let split = SplitCovariance::new(
            [1.0, 0.75],
            s.matrix() - Matrix4::from_diagonal(&[1.0, 1.0, 0.75, 0.75].into()),
        );
        assert_abs_diff_eq!(
            split.pt_min_symplectic().unwrap(),
            pt_min_symplectic(&s).unwrap(),
            epsilon = 1e-12
        );
        let nu = symplectic_eigenvalues(&s).unwrap().nu_minus;
        assert_abs_diff_eq!(split.symplectic_gap().unwrap(), 2.0 * nu - 1.0, epsilon = 1e-12);
        assert_eq!(split.to_covariance(), s);
    }

    #[test]
    fn split_resolves_deviations_below_machine_precision() {
        // Two-mode squeezed vacuum deviation δ·(a−1/2, c) with a − c < 1/2.
        let (a, c) = (0.5 * 2f64.cosh(), 0.5 * 2f64.sinh());
        let delta = 1e-40;
        let x = standard_form(a - 0.5, a - 0.5, c).matrix() * delta;
        let split = SplitCovariance::new([0.5, 0.5], x);
        // Exact: 2ν̃₋ − 1 = 2δ(a − c − 1/2).
        let expected = 2.0 * delta * (a - c - 0.5);
        let got = split.pt_gap().unwrap();
        assert!(((got - expected) / expected).abs() < 1e-10, "{got} vs {expected}");
        // Ordinary spectrum stays at the vacuum to first order: 2ν₋ − 1 ≥ 0.
        assert!(split.symplectic_gap().unwrap() >= -1e-50);
    }
}
