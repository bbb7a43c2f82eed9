// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twomode::dynamics::generator_is_completely_positive;
use twomode::{BathParams, CovarianceMatrix, DriftConvention};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Taylor series with scaling and squaring.
pub fn expm(a: &Matrix4<f64>) -> Matrix4<f64> {
    let norm = a.abs().row_sum().max();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let b = a * scale;
    let mut sum = Matrix4::identity();
    let mut term = Matrix4::identity();
    for k in 1..=20 {
        term = term * b / k as f64;
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

pub fn omega() -> Matrix4<f64> {
    let mut w = Matrix4::zeros();
    w[(0, 1)] = 1.0;
    w[(1, 0)] = -1.0;
    w[(2, 3)] = 1.0;
    w[(3, 2)] = -1.0;
    w
}

/// Symplectic eigenvalues from the spectrum of `−K²`, `K = σ^½ Ω σ^½`.
pub fn brute_symplectic(sigma: &Matrix4<f64>) -> (f64, f64) {
    let eig = SymmetricEigen::new(*sigma);
    let root = eig.eigenvectors
        * Matrix4::from_diagonal(&eig.eigenvalues.map(|v| v.max(0.0).sqrt()))
        * eig.eigenvectors.transpose();
    let k = root * omega() * root;
    let k2 = -(k * k);
    let sym = (k2 + k2.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().map(|v| v.max(0.0).sqrt()).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ((ev[0] + ev[1]) / 2.0, (ev[2] + ev[3]) / 2.0)
}

pub fn pt_flip() -> Matrix4<f64> {
    Matrix4::from_diagonal(&[1.0, 1.0, 1.0, -1.0].into())
}

/// Minimum symplectic eigenvalue of the partial transpose, brute force.
pub fn brute_pt_min(sigma: &Matrix4<f64>) -> f64 {
    let f = pt_flip();
    brute_symplectic(&(f * sigma * f)).0
}

fn block_diag(a: Matrix2<f64>, b: Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
    m
}

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, s, -s, c)
}

fn squeezer(s: f64) -> Matrix2<f64> {
    Matrix2::new(s.exp(), 0.0, 0.0, (-s).exp())
}

/// Random single-mode symplectic: rotation, squeeze, rotation.
pub fn random_local_mode<R: Rng>(rng: &mut R, max_squeeze: f64) -> Matrix2<f64> {
    rotation(rng.gen_range(0.0..std::f64::consts::TAU))
        * squeezer(rng.gen_range(-max_squeeze..=max_squeeze))
        * rotation(rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_local<R: Rng>(rng: &mut R, max_squeeze: f64) -> Matrix4<f64> {
    block_diag(random_local_mode(rng, max_squeeze), random_local_mode(rng, max_squeeze))
}

pub fn beam_splitter(theta: f64) -> Matrix4<f64> {
    let (s, c) = theta.sin_cos();
    let i = Matrix2::identity();
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&(i * c));
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(i * s));
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(i * -s));
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&(i * c));
    m
}

pub fn two_mode_squeezer(r: f64) -> Matrix4<f64> {
    let z = Matrix2::new(1.0, 0.0, 0.0, -1.0);
    let mut m = Matrix4::zeros();
    let i = Matrix2::identity();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&(i * r.cosh()));
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&(i * r.cosh()));
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(z * r.sinh()));
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(z * r.sinh()));
    m
}

/// Williamson construction `S diag(ν₁,ν₁,ν₂,ν₂) Sᵀ` with a random symplectic `S`.
/// Returns the state and its exact symplectic eigenvalues (unsorted).
pub fn williamson_state(nu: (f64, f64), s: &Matrix4<f64>) -> CovarianceMatrix {
    let d = Matrix4::from_diagonal(&[nu.0, nu.0, nu.1, nu.1].into());
    CovarianceMatrix::new(s * d * s.transpose())
}

pub fn random_symplectic<R: Rng>(rng: &mut R) -> Matrix4<f64> {
    random_local(rng, 0.6)
        * beam_splitter(rng.gen_range(0.0..std::f64::consts::PI))
        * two_mode_squeezer(rng.gen_range(0.0..1.0))
        * random_local(rng, 0.6)
}

pub fn random_state<R: Rng>(rng: &mut R) -> CovarianceMatrix {
    let nu = (rng.gen_range(0.5..2.5), rng.gen_range(0.5..2.5));
    williamson_state(nu, &random_symplectic(rng))
}

/// Random bath parameters; for `PaperLiteral` only completely positive
/// generators are returned.
pub fn random_params<R: Rng>(rng: &mut R, conv: DriftConvention) -> BathParams {
    loop {
        let c1 = if rng.gen_bool(0.2) { 1.0 } else { rng.gen_range(1.0..4.0) };
        let c2 = if rng.gen_bool(0.2) { 1.0 } else { rng.gen_range(1.0..4.0) };
        let p = BathParams::new(
            rng.gen_range(0.2..1.5),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            c1,
            c2,
        )
        .unwrap();
        if generator_is_completely_positive(&p, conv) {
            return p;
        }
    }
}

pub fn max_abs(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}
