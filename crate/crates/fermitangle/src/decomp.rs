//! Canonical decompositions: the antisymmetric pairing form (Slater
//! decomposition) of two-fermion states, the Schmidt decomposition of
//! bipartite states, and the concurrence measures built on them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::comb::subsets;
use crate::error::{Error, Result};
use crate::fock::{DistinguishableState, FermionState};

/// Antisymmetric coefficient matrix w of a two-fermion state,
/// ψ = Σ_ij w_ij |i>|j>, with Σ|w_ij|² = 1.
#[derive(Debug, Clone)]
pub struct CoeffMatrix {
    w: DMatrix<Complex64>,
}

impl CoeffMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.nrows()
    }
}

/// Canonical pairing form of an antisymmetric matrix:
/// w = U · blockdiag(z_i · `[[0,1],[−1,0]]`) · Uᵀ with U unitary and the pair
/// coefficients sorted by descending modulus.
#[derive(Debug, Clone)]
pub struct SlaterDecomposition {
    pub unitary: DMatrix<Complex64>,
    pub pair_coeffs: Vec<Complex64>,
}

impl SlaterDecomposition {
    /// Rebuild U Z Uᵀ from the stored factors.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let d = self.unitary.nrows();
        let mut z = DMatrix::<Complex64>::zeros(d, d);
        for (k, &c) in self.pair_coeffs.iter().enumerate() {
            z[(2 * k, 2 * k + 1)] = c;
            z[(2 * k + 1, 2 * k)] = -c;
        }
        &self.unitary * z * self.unitary.transpose()
    }
}

/// Singular-value form of a bipartite amplitude matrix:
/// A = Σ_k c_k · left_k · right_kᵀ with nonnegative coefficients descending.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    pub left: Vec<DVector<Complex64>>,
    pub right: Vec<DVector<Complex64>>,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self, rows: usize, cols: usize) -> DMatrix<Complex64> {
        let mut a = DMatrix::<Complex64>::zeros(rows, cols);
        for ((c, l), r) in self
            .coefficients
            .iter()
            .zip(self.left.iter())
            .zip(self.right.iter())
        {
            for i in 0..rows {
                for j in 0..cols {
                    a[(i, j)] += Complex64::from(*c) * l[i] * r[j];
                }
            }
        }
        a
    }
}

/// Expand a two-fermion state into its antisymmetric coefficient matrix:
/// w_ij = amplitude({i,j})/√2 for i < j.
pub fn coeff_matrix(state: &FermionState) -> Result<CoeffMatrix> {
    if state.n() != 2 {
        return Err(Error::UnsupportedN {
            expected: 2,
            got: state.n(),
        });
    }
    let d = state.d();
    let mut w = DMatrix::<Complex64>::zeros(d, d);
    for (rank, modes) in subsets(d, 2).enumerate() {
        let value = state.amplitudes()[rank] * std::f64::consts::FRAC_1_SQRT_2;
        w[(modes[0], modes[1])] = value;
        w[(modes[1], modes[0])] = -value;
    }
    Ok(CoeffMatrix { w })
}

/// Eigenvalues of w w† closer than this (relative to the largest) are treated
/// as one degenerate cluster when pairing.
const CLUSTER_TOL: f64 = 1e-9;
/// Eigenvalues of w w† at or below this are null directions. Tr w w† = 1, so
/// exact zeros land within a few d·ε of zero while genuine pair weights sit
/// far above; whatever weight gets parked here still has to survive the final
/// reconstruction check.
const PARK_EIG_TOL: f64 = 1e-14;
const RECONSTRUCTION_TOL: f64 = 1e-8;

/// Canonical pairing form of an antisymmetric coefficient matrix.
///
/// Diagonalizes the Hermitian matrix w w†, whose positive eigenvalues come in
/// degenerate pairs |z_i|². Within each degenerate cluster the partner of an
/// eigenvector v is w·conj(v)/|z| — the direction that maximizes the pairing
/// magnitude — and extracted pairs are deflated until the cluster is
/// exhausted. Null directions fill the remaining columns, and a final
/// reconstruction check guards the output.
pub fn slater_decompose(coeffs: &CoeffMatrix) -> Result<SlaterDecomposition> {
    let w = &coeffs.w;
    let d = coeffs.dim();
    let m = w * w.adjoint();
    let eig = nalgebra::SymmetricEigen::try_new(m, 1e-13, 0).ok_or(Error::NonConvergence)?;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("real eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let scale = eigenvalues.first().copied().unwrap_or(0.0).max(1.0);

    let mut columns: Vec<DVector<Complex64>> = Vec::with_capacity(d);
    let mut pair_coeffs: Vec<Complex64> = Vec::new();
    let mut null_columns: Vec<DVector<Complex64>> = Vec::new();

    let mut i = 0;
    while i < d {
        let mut j = i;
        while j < d && (eigenvalues[i] - eigenvalues[j]).abs() <= CLUSTER_TOL * scale {
            j += 1;
        }
        let mut basis: Vec<DVector<Complex64>> = (i..j)
            .map(|k| eig.eigenvectors.column(order[k]).into_owned())
            .collect();
        if eigenvalues[i] <= PARK_EIG_TOL {
            null_columns.append(&mut basis);
            i = j;
            continue;
        }
        while !basis.is_empty() {
            if basis.len() == 1 {
                // An unpaired direction is only legitimate when it carries
                // next to no weight; otherwise the pairing form cannot hold.
                if eigenvalues[i] <= 10.0 * PARK_EIG_TOL {
                    null_columns.push(basis.pop().expect("len checked"));
                    break;
                }
                return Err(Error::DegeneracyResolutionFailure(eigenvalues[i].sqrt()));
            }
            let v = basis[0].clone();
            let partner_raw = w * v.map(|z| z.conj());
            let z = partner_raw.norm();
            if z * z <= PARK_EIG_TOL {
                return Err(Error::DegeneracyResolutionFailure(z));
            }
            let partner = partner_raw / Complex64::from(z);
            columns.push(partner.clone());
            columns.push(v.clone());
            pair_coeffs.push(Complex64::from(z));
            // Deflate the extracted pair and re-orthonormalize the rest.
            let mut remaining: Vec<DVector<Complex64>> = Vec::new();
            for b in basis.iter().skip(1) {
                let mut b = b.clone();
                b -= &partner * partner.dotc(&b);
                b -= &v * v.dotc(&b);
                for o in &remaining {
                    let coeff = o.dotc(&b);
                    b -= o * coeff;
                }
                let norm = b.norm();
                if norm > 1e-8 {
                    remaining.push(b / Complex64::from(norm));
                }
            }
            basis = remaining;
        }
        i = j;
    }
    columns.append(&mut null_columns);
    if columns.len() != d {
        // Deflation dropped or kept the wrong number of directions; the
        // column set no longer spans the space.
        return Err(Error::DegeneracyResolutionFailure(
            (d as f64 - columns.len() as f64).abs(),
        ));
    }
    while pair_coeffs.len() < d / 2 {
        pair_coeffs.push(Complex64::ZERO);
    }

    let unitary = DMatrix::from_columns(&columns);
    let decomposition = SlaterDecomposition {
        unitary,
        pair_coeffs,
    };
    let residual = (decomposition.reconstruct() - w).camax();
    if residual > RECONSTRUCTION_TOL {
        return Err(Error::DegeneracyResolutionFailure(residual));
    }
    Ok(decomposition)
}

/// Number of pair coefficients with |z| above `tol`; 1 means the state is a
/// single Slater determinant in some single-particle basis.
pub fn slater_rank(state: &FermionState, tol: f64) -> Result<usize> {
    let decomposition = slater_decompose(&coeff_matrix(state)?)?;
    Ok(decomposition
        .pair_coeffs
        .iter()
        .filter(|z| z.norm() > tol)
        .count())
}

/// Concurrence of a two-fermion state in four modes:
/// C = 4·|w_01 w_23 − w_02 w_13 + w_03 w_12|, i.e. 4·|Pf(w)|.
pub fn concurrence_2f(state: &FermionState) -> Result<f64> {
    if state.n() != 2 || state.d() != 4 {
        return Err(Error::UnsupportedDims {
            expected: "N = 2, d = 4".into(),
            got: format!("N = {}, d = {}", state.n(), state.d()),
        });
    }
    let w = coeff_matrix(state)?;
    let w = w.matrix();
    let pfaffian = w[(0, 1)] * w[(2, 3)] - w[(0, 2)] * w[(1, 3)] + w[(0, 3)] * w[(1, 2)];
    Ok(4.0 * pfaffian.norm())
}

/// Schmidt decomposition of a bipartite amplitude matrix via its SVD.
pub fn schmidt_decompose(state: &DistinguishableState) -> Result<SchmidtDecomposition> {
    let a = state.amplitudes();
    let svd = nalgebra::SVD::try_new(a.clone(), true, true, 1e-13, 0).ok_or(Error::NonConvergence)?;
    let u = svd.u.as_ref().ok_or(Error::NonConvergence)?;
    let v_t = svd.v_t.as_ref().ok_or(Error::NonConvergence)?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| {
        svd.singular_values[y]
            .partial_cmp(&svd.singular_values[x])
            .expect("real singular values")
    });
    let mut coefficients = Vec::with_capacity(order.len());
    let mut left = Vec::with_capacity(order.len());
    let mut right = Vec::with_capacity(order.len());
    for &k in &order {
        coefficients.push(svd.singular_values[k]);
        left.push(u.column(k).into_owned());
        right.push(v_t.row(k).transpose());
    }
    Ok(SchmidtDecomposition {
        coefficients,
        left,
        right,
    })
}

/// Pure-state concurrence of a two-qubit amplitude matrix: C = 2·|det A|.
pub fn concurrence_2qubit(state: &DistinguishableState) -> Result<f64> {
    if state.dims() != (2, 2) {
        return Err(Error::UnsupportedDims {
            expected: "(2, 2)".into(),
            got: format!("{:?}", state.dims()),
        });
    }
    Ok(2.0 * state.amplitudes().clone().determinant().norm())
}
