//! Cross-module invariants exercised on randomized and exhaustive inputs.

mod support;

use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use fermitangle::comb::{binomial, rank_subset, unrank_subset};
use fermitangle::criteria::{classify, fermionic_concurrence, purity_bounds, Classification};
use fermitangle::decomp::{
    coeff_matrix, concurrence_2f, concurrence_2qubit, schmidt_decompose, slater_decompose,
    slater_rank,
};
use fermitangle::fock::{
    antisymmetrize, compound_matrix, freeze, overlap, two_site_partition, single_particle_transform,
    ProductState,
};
use fermitangle::rdm::{purity, reduce, reduce_bipartite, spectral};
use fermitangle::sample::{
    random_fermion_state, random_product_state, random_slater_rank1, random_unitary, rng_from_seed,
};
use support::{brute_force_rdm, random_cross_site_state};

#[test]
fn rank_unrank_identity_exhaustive() {
    for d in 1..=14usize {
        for k in 1..=d {
            for rank in 0..binomial(d, k) {
                let subset = unrank_subset(rank, d, k).unwrap();
                assert_eq!(rank_subset(&subset, d).unwrap(), rank, "d={d} k={k}");
            }
        }
    }
}

proptest! {
    #[test]
    fn unrank_is_sorted_and_in_range(d in 1usize..=12, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let k = 1 + (seed as usize) % d;
        let rank = rng.random_range(0..binomial(d, k));
        let subset = unrank_subset(rank, d, k).unwrap();
        prop_assert_eq!(subset.len(), k);
        prop_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(subset.iter().all(|&m| m < d));
    }
}

#[test]
fn antisymmetrize_alternates_under_factor_permutations() {
    let mut rng = rng_from_seed(101);
    for &(d, n) in &[(4usize, 2usize), (5, 3), (6, 3)] {
        let p = random_product_state(d, n, &mut rng);
        let base = antisymmetrize(&p).unwrap();
        for (perm, sign) in support::permutations_with_sign(n) {
            let factors: Vec<Vec<Complex64>> = perm
                .iter()
                .map(|&k| p.factors()[k].iter().copied().collect())
                .collect();
            let permuted = antisymmetrize(&ProductState::new(factors).unwrap()).unwrap();
            for i in 0..base.dim() {
                let expected = base.amplitudes()[i] * sign;
                assert_abs_diff_eq!(
                    (permuted.amplitudes()[i] - expected).norm(),
                    0.0,
                    epsilon = 1e-10
                );
            }
        }
    }
}

#[test]
fn transform_preserves_overlap_magnitudes() {
    let mut rng = rng_from_seed(202);
    for &(d, n) in &[(4usize, 2usize), (6, 2), (6, 3), (8, 4)] {
        let a = random_fermion_state(d, n, &mut rng);
        let b = random_fermion_state(d, n, &mut rng);
        let u = random_unitary(d, &mut rng);
        let ua = single_particle_transform(&a, &u).unwrap();
        let ub = single_particle_transform(&b, &u).unwrap();
        assert_abs_diff_eq!(
            overlap(&ua, &ub).unwrap().norm(),
            overlap(&a, &b).unwrap().norm(),
            epsilon = 1e-10
        );
    }
}

#[test]
fn reduce_outputs_are_valid_density_matrices() {
    let mut rng = rng_from_seed(303);
    for &(d, n) in &[(4usize, 2usize), (6, 3), (7, 3), (8, 4)] {
        let state = random_fermion_state(d, n, &mut rng);
        for m in 1..n {
            let rho = reduce(&state, m).unwrap();
            rho.validate(1e-10).unwrap();
            let spectrum = spectral(&rho).unwrap();
            let total: f64 = spectrum.eigenvalues.iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        }
    }
}

#[test]
fn purity_complementarity() {
    let mut rng = rng_from_seed(404);
    for &(d, n) in &[(5usize, 3usize), (6, 4), (8, 4)] {
        let state = random_fermion_state(d, n, &mut rng);
        for m in 1..n {
            let p_m = purity(&reduce(&state, m).unwrap());
            let p_c = purity(&reduce(&state, n - m).unwrap());
            assert_abs_diff_eq!(p_m, p_c, epsilon = 1e-9);
        }
    }
}

#[test]
fn slater_determinant_purity_law() {
    let mut rng = rng_from_seed(505);
    for &(d, n) in &[(4usize, 2usize), (5, 3), (6, 3), (7, 4), (10, 5)] {
        let state = antisymmetrize(&random_product_state(d, n, &mut rng)).unwrap();
        for m in 1..n {
            let p = purity(&reduce(&state, m).unwrap());
            assert_abs_diff_eq!(p, 1.0 / binomial(n, m) as f64, epsilon = 1e-9);
        }
    }
}

#[test]
fn reduce_is_basis_covariant() {
    let mut rng = rng_from_seed(606);
    for &(d, n, m) in &[(4usize, 2usize, 1usize), (5, 3, 1), (6, 3, 2)] {
        let state = random_fermion_state(d, n, &mut rng);
        let u = random_unitary(d, &mut rng);
        let rotated = single_particle_transform(&state, &u).unwrap();
        let rho_rotated = reduce(&rotated, m).unwrap();
        let compound = compound_matrix(&u, m);
        let conjugated = &compound * reduce(&state, m).unwrap().matrix() * compound.adjoint();
        assert_abs_diff_eq!(
            (rho_rotated.matrix() - conjugated).camax(),
            0.0,
            epsilon = 1e-9
        );
    }
}

#[test]
fn reduce_matches_brute_force_labeled_trace() {
    let mut rng = rng_from_seed(707);
    for &(d, n) in &[(3usize, 2usize), (4, 2), (5, 3), (6, 3)] {
        for _ in 0..4 {
            let state = random_fermion_state(d, n, &mut rng);
            for m in 1..n {
                let fast = reduce(&state, m).unwrap();
                let oracle = brute_force_rdm(&state, m);
                assert_abs_diff_eq!(
                    (fast.matrix() - &oracle).camax(),
                    0.0,
                    epsilon = 1e-10
                );
            }
        }
    }
}

#[test]
fn slater_rank_is_basis_invariant() {
    let mut rng = rng_from_seed(808);
    for d in [4usize, 6, 8] {
        let random = random_fermion_state(d, 2, &mut rng);
        let u = random_unitary(d, &mut rng);
        let rotated = single_particle_transform(&random, &u).unwrap();
        assert_eq!(
            slater_rank(&random, 1e-8).unwrap(),
            slater_rank(&rotated, 1e-8).unwrap()
        );

        let rank1 = random_slater_rank1(d, 2, &mut rng).unwrap();
        let rotated = single_particle_transform(&rank1, &u).unwrap();
        assert_eq!(slater_rank(&rotated, 1e-8).unwrap(), 1);
    }

    // the reference determinant keeps rank 1 under any basis change
    let reference = fermitangle::fock::reference_state("slater-AB").unwrap();
    for _ in 0..5 {
        let u = random_unitary(4, &mut rng);
        let rotated = single_particle_transform(&reference, &u).unwrap();
        assert_eq!(slater_rank(&rotated, 1e-8).unwrap(), 1);
    }
}

#[test]
fn concurrence_2f_is_basis_invariant() {
    let mut rng = rng_from_seed(909);
    for _ in 0..20 {
        let state = random_fermion_state(4, 2, &mut rng);
        let u = random_unitary(4, &mut rng);
        let rotated = single_particle_transform(&state, &u).unwrap();
        assert_abs_diff_eq!(
            concurrence_2f(&state).unwrap(),
            concurrence_2f(&rotated).unwrap(),
            epsilon = 1e-9
        );
    }
}

#[test]
fn concurrence_agrees_with_frozen_counterpart() {
    let mut rng = rng_from_seed(1010);
    for _ in 0..50 {
        let state = random_cross_site_state(&mut rng);
        let frozen = freeze(&state, &two_site_partition()).unwrap();
        assert_abs_diff_eq!(
            concurrence_2f(&state).unwrap(),
            concurrence_2qubit(&frozen).unwrap(),
            epsilon = 1e-9
        );
    }
}

#[test]
fn purity_links_to_concurrence_for_two_fermions() {
    let mut rng = rng_from_seed(1111);
    for _ in 0..50 {
        let state = random_fermion_state(4, 2, &mut rng);
        let c = concurrence_2f(&state).unwrap();
        let p = purity(&reduce(&state, 1).unwrap());
        assert_abs_diff_eq!(p, 0.5 - c * c / 4.0, epsilon = 1e-9);
    }
}

#[test]
fn schmidt_coefficients_give_reduced_purity() {
    let mut rng = rng_from_seed(1212);
    for &(rows, cols) in &[(2usize, 2usize), (3, 2), (4, 5)] {
        let a = {
            use rand::Rng;
            use rand_distr::StandardNormal;
            let mut m = DMatrix::from_fn(rows, cols, |_, _| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            m /= Complex64::from(m.norm());
            m
        };
        let state = fermitangle::fock::DistinguishableState::new(a).unwrap();
        let schmidt = schmidt_decompose(&state).unwrap();
        let quartic: f64 = schmidt.coefficients.iter().map(|c| c.powi(4)).sum();
        for side in [1u8, 2] {
            let p = purity(&reduce_bipartite(&state, side).unwrap());
            assert_abs_diff_eq!(p, quartic, epsilon = 1e-9);
        }
        let total: f64 = schmidt.coefficients.iter().map(|c| c * c).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
    }
}

#[test]
fn purity_respects_criterion_bounds() {
    let mut rng = rng_from_seed(1313);
    for &(d, n) in &[(4usize, 2usize), (6, 3), (8, 4)] {
        for _ in 0..20 {
            let state = random_fermion_state(d, n, &mut rng);
            for m in 1..n {
                let bounds = purity_bounds(n, m, d).unwrap();
                let p = purity(&reduce(&state, m).unwrap());
                assert!(p >= bounds.lower - 1e-9, "p = {p} below {}", bounds.lower);
                assert!(p <= bounds.upper + 1e-9, "p = {p} above {}", bounds.upper);
            }
        }
    }
}

#[test]
fn antisymmetrized_products_classify_as_non_entangled() {
    let mut rng = rng_from_seed(1414);
    for &(d, n) in &[(4usize, 2usize), (6, 3), (8, 4)] {
        let state = antisymmetrize(&random_product_state(d, n, &mut rng)).unwrap();
        for m in 1..n {
            let verdict = classify(&state, m, 1e-8).unwrap();
            assert_eq!(verdict.classification, Classification::NonEntangled);
            assert_abs_diff_eq!(
                fermionic_concurrence(&state, m).unwrap(),
                0.0,
                epsilon = 1e-4 // sqrt amplifies the 1e-9 purity tolerance
            );
        }
    }
}

#[test]
fn classification_is_basis_invariant() {
    let mut rng = rng_from_seed(1515);
    for _ in 0..10 {
        let state = random_fermion_state(6, 3, &mut rng);
        let u = random_unitary(6, &mut rng);
        let rotated = single_particle_transform(&state, &u).unwrap();
        for m in 1..3 {
            let a = classify(&state, m, 1e-8).unwrap();
            let b = classify(&rotated, m, 1e-8).unwrap();
            assert_eq!(a.classification, b.classification);
            assert_abs_diff_eq!(a.purity, b.purity, epsilon = 1e-9);
        }
    }
}

#[test]
fn fermionic_concurrence_is_complementary() {
    let mut rng = rng_from_seed(1616);
    for &(d, n) in &[(6usize, 3usize), (6, 4), (8, 4)] {
        let state = random_fermion_state(d, n, &mut rng);
        for m in 1..n {
            assert_abs_diff_eq!(
                fermionic_concurrence(&state, m).unwrap(),
                fermionic_concurrence(&state, n - m).unwrap(),
                epsilon = 1e-9
            );
        }
    }
}

#[test]
fn slater_rank_one_iff_non_entangled() {
    let mut rng = rng_from_seed(1717);
    for _ in 0..20 {
        let state = random_fermion_state(4, 2, &mut rng);
        let rank = slater_rank(&state, 1e-8).unwrap();
        let verdict = classify(&state, 1, 1e-8).unwrap();
        assert_eq!(
            rank == 1,
            verdict.classification == Classification::NonEntangled
        );
    }
    for _ in 0..20 {
        let state = random_slater_rank1(4, 2, &mut rng).unwrap();
        assert_eq!(slater_rank(&state, 1e-8).unwrap(), 1);
        assert_eq!(
            classify(&state, 1, 1e-8).unwrap().classification,
            Classification::NonEntangled
        );
    }
}

#[test]
fn slater_decomposition_reconstructs_and_orders() {
    let mut rng = rng_from_seed(1818);
    for d in [4usize, 5, 6, 8] {
        for _ in 0..10 {
            let state = random_fermion_state(d, 2, &mut rng);
            let w = coeff_matrix(&state).unwrap();
            let dec = slater_decompose(&w).unwrap();
            assert_eq!(dec.pair_coeffs.len(), d / 2);
            let rec = dec.reconstruct();
            assert_abs_diff_eq!((rec - w.matrix()).camax(), 0.0, epsilon = 1e-8);
            let sum: f64 = dec.pair_coeffs.iter().map(|z| 2.0 * z.norm_sqr()).sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-9);
            for pair in dec.pair_coeffs.windows(2) {
                assert!(pair[0].norm() >= pair[1].norm() - 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn freeze_matches_coefficient_readout(seed in any::<u64>()) {
        // On cross-site states, freezing reads the Slater amplitudes directly
        // into the party matrix; Schmidt symmetry then equates both reduced
        // entropies.
        let mut rng = rng_from_seed(seed);
        let state = random_cross_site_state(&mut rng);
        let frozen = freeze(&state, &two_site_partition()).unwrap();
        let s1 = purity(&reduce_bipartite(&frozen, 1).unwrap());
        let s2 = purity(&reduce_bipartite(&frozen, 2).unwrap());
        prop_assert!((s1 - s2).abs() < 1e-10);
    }
}
