//! Seeded random states and unitaries, shared by the `examples` CLI command
//! and the randomized test sweeps.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::comb::binomial;
use crate::error::Result;
use crate::fock::{antisymmetrize, FermionState, ProductState};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-ish random pure state over the C(d, N) Slater basis.
pub fn random_fermion_state(d: usize, n: usize, rng: &mut impl Rng) -> FermionState {
    let dim = binomial(d, n);
    loop {
        let amplitudes: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        return FermionState::from_amplitudes(d, n, amplitudes).expect("normalized by hand");
    }
}

/// N independent Gaussian factors in C^d (linearly independent almost surely).
pub fn random_product_state(d: usize, n: usize, rng: &mut impl Rng) -> ProductState {
    loop {
        let factors: Vec<Vec<Complex64>> = (0..n)
            .map(|_| (0..d).map(|_| gaussian_complex(rng)).collect())
            .collect();
        if let Ok(p) = ProductState::new(factors) {
            return p;
        }
    }
}

/// Antisymmetrized random product: a Slater-rank-1 state.
pub fn random_slater_rank1(d: usize, n: usize, rng: &mut impl Rng) -> Result<FermionState> {
    loop {
        match antisymmetrize(&random_product_state(d, n, rng)) {
            Ok(state) => return Ok(state),
            Err(crate::error::Error::LinearlyDependentFactors(_)) => continue,
            Err(other) => return Err(other),
        }
    }
}

/// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phases absorbed.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let qr = g.qr();
    let r = qr.r();
    let phases = DVector::from_iterator(
        d,
        (0..d).map(|i| {
            let z = r[(i, i)];
            if z.norm() < 1e-14 {
                Complex64::ONE
            } else {
                z / z.norm()
            }
        }),
    );
    qr.q() * DMatrix::from_diagonal(&phases)
}
