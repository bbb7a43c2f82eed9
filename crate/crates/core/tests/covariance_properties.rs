// SPDX-License-Identifier: Apache-2.0

mod common;

use approx::assert_abs_diff_eq;
use nalgebra::Matrix4;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twomode::covariance::symplectic_eigenvalues_invariant;
use twomode::entanglement::log_negativity;
use twomode::{
    entanglement_threshold, is_physical, is_separable, pt_min_symplectic, squeezed_thermal, symplectic_eigenvalues,
    CovarianceMatrix, SqueezedThermalSpec,
};

fn state_from_seed(seed: u64) -> CovarianceMatrix {
    common::random_state(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_of_eigenvalues_is_root_det(seed in any::<u64>()) {
        let s = state_from_seed(seed);
        let sp = symplectic_eigenvalues(&s).unwrap();
        prop_assert!((sp.nu_minus * sp.nu_plus - s.det().sqrt()).abs() < 1e-10 * s.det().sqrt().max(1.0));
    }

    #[test]
    fn eigenvalues_match_williamson_construction(
        seed in any::<u64>(), nu1 in 0.5f64..3.0, nu2 in 0.5f64..3.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::williamson_state((nu1, nu2), &common::random_symplectic(&mut rng));
        let sp = symplectic_eigenvalues(&s).unwrap();
        let scale = common::max_abs(s.matrix()).max(1.0);
        prop_assert!((sp.nu_minus - nu1.min(nu2)).abs() < 1e-10 * scale);
        prop_assert!((sp.nu_plus - nu1.max(nu2)).abs() < 1e-10 * scale);
    }

    #[test]
    fn eigenvalues_match_brute_force(seed in any::<u64>()) {
        let s = state_from_seed(seed);
        let sp = symplectic_eigenvalues(&s).unwrap();
        let (lo, hi) = common::brute_symplectic(s.matrix());
        let scale = common::max_abs(s.matrix()).max(1.0);
        prop_assert!((sp.nu_minus - lo).abs() < 1e-9 * scale);
        prop_assert!((sp.nu_plus - hi).abs() < 1e-9 * scale);
    }

    #[test]
    fn invariant_route_agrees_away_from_degeneracy(seed in any::<u64>()) {
        let s = state_from_seed(seed);
        let a = symplectic_eigenvalues(&s).unwrap();
        let b = symplectic_eigenvalues_invariant(&s).unwrap();
        if a.nu_plus - a.nu_minus > 1e-3 {
            prop_assert!((a.nu_minus - b.nu_minus).abs() < 1e-8 * a.nu_plus.max(1.0));
        }
    }

    #[test]
    fn pt_eigenvalue_matches_brute_force(seed in any::<u64>()) {
        let s = state_from_seed(seed);
        let nu = pt_min_symplectic(&s).unwrap();
        let scale = common::max_abs(s.matrix()).max(1.0);
        prop_assert!((nu - common::brute_pt_min(s.matrix())).abs() < 1e-8 * scale);
    }

    #[test]
    fn pt_eigenvalue_is_mode_swap_invariant(seed in any::<u64>()) {
        let s = state_from_seed(seed);
        let a = pt_min_symplectic(&s).unwrap();
        let b = pt_min_symplectic(&s.swap_modes()).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * a.max(1.0));
    }

    #[test]
    fn uncorrelated_pt_equals_ordinary(
        seed in any::<u64>(), nu1 in 0.5f64..3.0, nu2 in 0.5f64..3.0,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let local = common::random_local(&mut rng, 0.8);
        let s = common::williamson_state((nu1, nu2), &local);
        let nu = symplectic_eigenvalues(&s).unwrap().nu_minus;
        prop_assert!((pt_min_symplectic(&s).unwrap() - nu).abs() < 1e-9);
        prop_assert!(is_separable(&s).unwrap());
    }

    #[test]
    fn log_negativity_is_local_symplectic_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_state(&mut rng);
        let local = common::random_local(&mut rng, 0.8);
        let t = s.congruence(&local);
        prop_assert!((log_negativity(&s).unwrap() - log_negativity(&t).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn random_williamson_states_are_physical(seed in any::<u64>()) {
        prop_assert!(is_physical(&state_from_seed(seed), 1e-9));
    }

    #[test]
    fn squeezed_symmetric_pt_closed_form(n in 0.0f64..5.0, r in 0.0f64..3.0) {
        let s = SqueezedThermalSpec::symmetric(n, r).unwrap().covariance();
        let expected = (n + 0.5) * (-2.0 * r).exp();
        prop_assert!((pt_min_symplectic(&s).unwrap() - expected).abs() < 1e-12 * (n + 1.0));
    }

    #[test]
    fn entangled_iff_above_threshold(n1 in 0.0f64..3.0, n2 in 0.0f64..3.0, r in 0.0f64..3.0) {
        let rs = entanglement_threshold(n1, n2).unwrap();
        prop_assume!((r - rs).abs() > 1e-6);
        let s = squeezed_thermal(&SqueezedThermalSpec::new(n1, n2, r).unwrap()).unwrap();
        prop_assert_eq!(is_separable(&s).unwrap(), r < rs);
    }

    #[test]
    fn squeezed_vacuum_is_pure(r in 0.0f64..3.0) {
        let s = SqueezedThermalSpec::symmetric(0.0, r).unwrap().covariance();
        prop_assert!((s.det() - 1.0 / 16.0).abs() < 1e-12 * (4.0 * r).exp());
        let sp = symplectic_eigenvalues(&s).unwrap();
        prop_assert!((sp.nu_minus - 0.5).abs() < 1e-11 && (sp.nu_plus - 0.5).abs() < 1e-11);
    }
}

#[test]
fn scaled_vacuum_below_bound_is_rejected() {
    let s = CovarianceMatrix::new(Matrix4::identity() * 0.4);
    assert!(!is_physical(&s, 1e-9));
    assert_abs_diff_eq!(symplectic_eigenvalues(&s).unwrap().nu_minus, 0.4, epsilon = 1e-14);
}

#[test]
fn brute_force_oracle_sanity() {
    let (lo, hi) = common::brute_symplectic(&(Matrix4::identity() * 0.5));
    assert_abs_diff_eq!(lo, 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(hi, 0.5, epsilon = 1e-14);
}
