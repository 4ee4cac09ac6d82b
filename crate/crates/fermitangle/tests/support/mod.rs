//! Test-side oracles, independent of the library implementation paths they
//! check.
//!
//! The reduced-density-matrix oracle works in the full d^N labeled tensor
//! space: it expands the Slater amplitudes with explicit antisymmetric signs,
//! traces out labeled particle slots one index at a time, and only at the end
//! projects back onto the antisymmetric M-particle basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use fermitangle::comb::{binomial, subsets, unrank_subset};
use fermitangle::fock::FermionState;

/// All permutations of {0, .., n-1} with their signs, by Heap's algorithm.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, f64)> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    fn heap(k: usize, items: &mut Vec<usize>, sign: &mut f64, out: &mut Vec<(Vec<usize>, f64)>) {
        if k == 1 {
            out.push((items.clone(), *sign));
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, items, sign, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
            *sign = -*sign;
        }
        heap(k - 1, items, sign, out);
    }
    let mut sign = 1.0;
    heap(n, &mut items, &mut sign, &mut out);
    out
}

/// First-quantized tensor of an antisymmetric k-particle basis state:
/// (1/sqrt(k!)) Σ_σ sgn(σ) e_{modes[σ(0)]} ⊗ .. ⊗ e_{modes[σ(k-1)]}.
fn labeled_tensor(modes: &[usize], d: usize) -> Vec<Complex64> {
    let k = modes.len();
    let mut tensor = vec![Complex64::ZERO; d.pow(k as u32)];
    let norm = (1..=k).product::<usize>() as f64;
    let norm = Complex64::from(1.0 / norm.sqrt());
    for (perm, sign) in permutations_with_sign(k) {
        let mut idx = 0;
        for slot in 0..k {
            idx = idx * d + modes[perm[slot]];
        }
        tensor[idx] += norm * sign;
    }
    tensor
}

/// Brute-force M-fermion reduced density matrix over the Slater basis:
/// labeled partial trace over the last N−M slots of the d^N expansion,
/// restricted to the antisymmetric M-particle subspace.
pub fn brute_force_rdm(state: &FermionState, m: usize) -> DMatrix<Complex64> {
    let (d, n) = (state.d(), state.n());
    assert!(m >= 1 && m < n);

    let mut full = vec![Complex64::ZERO; d.pow(n as u32)];
    for rank in 0..state.dim() {
        let amp = state.amplitudes()[rank];
        if amp == Complex64::ZERO {
            continue;
        }
        let modes = unrank_subset(rank, d, n).unwrap();
        for (idx, value) in labeled_tensor(&modes, d).into_iter().enumerate() {
            full[idx] += amp * value;
        }
    }

    // labeled partial trace over the trailing N−M slots
    let dim_kept = d.pow(m as u32);
    let dim_traced = d.pow((n - m) as u32);
    let mut labeled = DMatrix::<Complex64>::zeros(dim_kept, dim_kept);
    for i in 0..dim_kept {
        for j in 0..dim_kept {
            let mut sum = Complex64::ZERO;
            for k in 0..dim_traced {
                sum += full[i * dim_traced + k] * full[j * dim_traced + k].conj();
            }
            labeled[(i, j)] = sum;
        }
    }

    // restrict to the antisymmetric M-particle basis
    let dim_rdm = binomial(d, m);
    let basis: Vec<Vec<Complex64>> = subsets(d, m).map(|b| labeled_tensor(&b, d)).collect();
    let mut rho = DMatrix::<Complex64>::zeros(dim_rdm, dim_rdm);
    for (r, bra) in basis.iter().enumerate() {
        for (c, ket) in basis.iter().enumerate() {
            let mut sum = Complex64::ZERO;
            for i in 0..dim_kept {
                for j in 0..dim_kept {
                    sum += bra[i].conj() * labeled[(i, j)] * ket[j];
                }
            }
            rho[(r, c)] = sum;
        }
    }
    rho
}

#[allow(dead_code)]
/// Random d = 4 two-fermion state supported only on cross-site mode pairs
/// under the (A0, A1, B0, B1) layout, i.e. admissible for the freeze map.
pub fn random_cross_site_state(rng: &mut fermitangle::sample::SeededRng) -> FermionState {
    use fermitangle::comb::rank_subset;
    use rand::Rng;
    use rand_distr::StandardNormal;
    loop {
        let mut amplitudes = vec![Complex64::ZERO; 6];
        for modes in [[0usize, 2], [0, 3], [1, 2], [1, 3]] {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            amplitudes[rank_subset(&modes, 4).unwrap()] = Complex64::new(re, im);
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        return FermionState::from_amplitudes(4, 2, amplitudes).unwrap();
    }
}
