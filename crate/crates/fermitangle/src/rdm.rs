//! Reduced density matrices of fermionic subsystems, their spectra, purity
//! and linear entropy.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::comb::{binomial, merge_sign, merge_sorted, rank_subset, subsets};
use crate::error::{Error, Result};
use crate::fock::{DistinguishableState, FermionState};

/// Which orthonormal basis the matrix rows/columns refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisTag {
    /// M-fermion Slater basis over d modes, lexicographic order.
    Slater { d: usize, particles: usize },
    /// One labeled party (1 or 2) of a bipartite split.
    Party { side: u8, dim: usize },
}

/// Hermitian, positive-semidefinite, trace-one matrix with basis metadata.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
    basis: BasisTag,
}

impl DensityMatrix {
    pub fn new(matrix: DMatrix<Complex64>, basis: BasisTag) -> Self {
        Self { matrix, basis }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn basis(&self) -> &BasisTag {
        &self.basis
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Max deviation from Hermiticity, trace one and diagonal positivity;
    /// used by tests and internal assertions rather than hot paths.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let dim = self.dim();
        if self.matrix.ncols() != dim {
            return Err(Error::DimensionMismatch("density matrix not square".into()));
        }
        let herm_dev = (&self.matrix - self.matrix.adjoint()).camax();
        if herm_dev > tol {
            return Err(Error::BadArgs(format!(
                "matrix not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let trace_dev = (self.trace() - 1.0).abs();
        if trace_dev > tol {
            return Err(Error::BadArgs(format!(
                "trace deviates from 1 by {trace_dev:.3e}"
            )));
        }
        Ok(())
    }
}

/// Density-matrix eigenvalues, descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

/// The M-fermion reduced density matrix of a pure N-fermion state, trace one.
///
/// Entry (β, β') collects Σ_γ sign(β,γ)·sign(β',γ)·c[β∪γ]·conj(c[β'∪γ]) over
/// all (N−M)-mode configurations γ disjoint from both, with the merge parity
/// as the fermionic sign; the 1/C(N,M) prefactor normalizes the trace. This
/// equals the labeled first-quantized partial trace over any N−M slots.
pub fn reduce(state: &FermionState, m: usize) -> Result<DensityMatrix> {
    let (d, n) = (state.d(), state.n());
    if m == 0 || m >= n {
        return Err(Error::BadM {
            m,
            n,
            max: n.saturating_sub(1),
        });
    }
    let dim = binomial(d, m);
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    let kept: Vec<Vec<usize>> = subsets(d, m).collect();
    for traced in subsets(d, n - m) {
        // Signed amplitudes c[β∪γ]·sign(β,γ) for every β disjoint from γ.
        let mut entries: Vec<(usize, Complex64)> = Vec::new();
        for (beta_rank, beta) in kept.iter().enumerate() {
            if beta.iter().any(|b| traced.contains(b)) {
                continue;
            }
            let full = merge_sorted(beta, &traced);
            let amp = state.amplitudes()[rank_subset(&full, d)?];
            if amp != Complex64::ZERO {
                entries.push((beta_rank, amp * merge_sign(beta, &traced)));
            }
        }
        for &(r, a) in &entries {
            for &(c, b) in &entries {
                rho[(r, c)] += a * b.conj();
            }
        }
    }
    rho /= Complex64::from(binomial(n, m) as f64);
    Ok(DensityMatrix::new(
        rho,
        BasisTag::Slater { d, particles: m },
    ))
}

/// Reduced state of one party of a bipartite pure state:
/// ρ₁ = A A† and ρ₂ = (A† A)ᵀ for the amplitude matrix A.
pub fn reduce_bipartite(state: &DistinguishableState, side: u8) -> Result<DensityMatrix> {
    let a = state.amplitudes();
    let (matrix, dim) = match side {
        1 => (a * a.adjoint(), a.nrows()),
        2 => ((a.adjoint() * a).transpose(), a.ncols()),
        other => {
            return Err(Error::BadArgs(format!(
                "bipartite side must be 1 or 2, got {other}"
            )))
        }
    };
    Ok(DensityMatrix::new(matrix, BasisTag::Party { side, dim }))
}

/// Tr ρ², real by Hermiticity.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// S_L = 1 − Tr ρ².
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    1.0 - purity(rho)
}

const EIGEN_TOL: f64 = 1e-10;
const RECONSTRUCTION_TOL: f64 = 1e-9;

/// Eigenvalues of a density matrix, descending, clipped to [0, 1] after
/// validating that the raw spectrum reconstructs ρ and stays within
/// [−1e-10, 1+1e-10].
pub fn spectral(rho: &DensityMatrix) -> Result<Spectrum> {
    let eig = nalgebra::SymmetricEigen::try_new(rho.matrix().clone(), EIGEN_TOL, 0)
        .ok_or(Error::NonConvergence)?;
    let recomposed = &eig.eigenvectors
        * DMatrix::from_diagonal(&DVector::from_iterator(
            eig.eigenvalues.len(),
            eig.eigenvalues.iter().map(|&l| Complex64::from(l)),
        ))
        * eig.eigenvectors.adjoint();
    if (recomposed - rho.matrix()).camax() > RECONSTRUCTION_TOL {
        return Err(Error::NonConvergence);
    }
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if eigenvalues
        .iter()
        .any(|&l| !(-EIGEN_TOL..=1.0 + EIGEN_TOL).contains(&l))
    {
        return Err(Error::NonConvergence);
    }
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("real eigenvalues"));
    for l in &mut eigenvalues {
        *l = l.clamp(0.0, 1.0);
    }
    Ok(Spectrum { eigenvalues })
}
