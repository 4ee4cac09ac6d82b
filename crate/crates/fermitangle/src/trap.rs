//! Two hard-core particles in a one-dimensional harmonic trap, in the
//! infinite-repulsion limit where the ground state fermionizes.
//!
//! Everything is expressed in the dimensionless coordinate u = sqrt(mω/ħ)·x.
//! The one-body reduced kernels are assembled on a uniform grid with
//! trapezoid quadrature, in two coordinate conventions: labeled particles
//! (1, 2) and ordered positions (left, right).

use std::io::Write;
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Uniform quadrature grid on [−L, L] with trapezoid weights.
#[derive(Debug, Clone)]
pub struct TrapGrid {
    extent: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl TrapGrid {
    pub fn new(extent: f64, points: usize) -> Result<Self> {
        if points < 3 || extent <= 0.0 {
            return Err(Error::BadArgs(format!(
                "need n >= 3 grid points and extent > 0, got n = {points}, L = {extent}"
            )));
        }
        let h = 2.0 * extent / (points - 1) as f64;
        let nodes: Vec<f64> = (0..points).map(|k| -extent + h * k as f64).collect();
        let mut weights = vec![h; points];
        weights[0] = h / 2.0;
        weights[points - 1] = h / 2.0;
        Ok(Self {
            extent,
            nodes,
            weights,
        })
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Harmonic-oscillator eigenfunction φ_k(u), orthonormal on the real line,
/// evaluated through the stable three-term recurrence
/// φ_k = u·sqrt(2/k)·φ_{k−1} − sqrt((k−1)/k)·φ_{k−2}.
pub fn hermite_mode(k: usize, u: f64) -> f64 {
    let phi0 = std::f64::consts::PI.powf(-0.25) * (-u * u / 2.0).exp();
    if k == 0 {
        return phi0;
    }
    let mut prev = phi0;
    let mut curr = std::f64::consts::SQRT_2 * u * phi0;
    for j in 2..=k {
        let next = u * (2.0 / j as f64).sqrt() * curr - ((j - 1) as f64 / j as f64).sqrt() * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Hard-core ground state in labeled coordinates:
/// ψ(u1, u2) = |φ0(u1)φ1(u2) − φ1(u1)φ0(u2)| / sqrt(2).
pub fn psi_gs(u1: f64, u2: f64) -> f64 {
    psi_ordered(u1, u2).abs()
}

/// The same state in ordered (left/right) coordinates, where it is a single
/// Slater determinant, extended antisymmetrically to the full plane.
pub fn psi_ordered(ul: f64, ur: f64) -> f64 {
    std::f64::consts::FRAC_1_SQRT_2
        * (hermite_mode(0, ul) * hermite_mode(1, ur) - hermite_mode(1, ul) * hermite_mode(0, ur))
}

/// Which two-particle wave function a kernel integrates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// Labeled particle 1 of ψ(u1, u2).
    Labeled,
    /// The left particle of the ordered Slater form.
    Ordered,
}

/// Discretized one-body reduced kernel K(u, u') on a quadrature grid,
/// symmetric with unit quadrature trace.
#[derive(Debug, Clone)]
pub struct Kernel {
    grid: TrapGrid,
    values: DMatrix<f64>,
}

/// Raw quadrature traces farther than this from 1 indicate a grid that does
/// not resolve the state.
const TRACE_TOL: f64 = 1e-3;

impl Kernel {
    pub fn grid(&self) -> &TrapGrid {
        &self.grid
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    /// Quadrature trace Σ_k K(u_k, u_k) w_k.
    pub fn trace(&self) -> f64 {
        self.grid
            .nodes()
            .iter()
            .enumerate()
            .map(|(k, _)| self.values[(k, k)] * self.grid.weights()[k])
            .sum()
    }

    /// Diagonal density profile K(u, u).
    pub fn density(&self) -> Vec<(f64, f64)> {
        self.grid
            .nodes()
            .iter()
            .enumerate()
            .map(|(k, &u)| (u, self.values[(k, k)]))
            .collect()
    }

    /// Eigenvalues of the weight-symmetrized discretization
    /// B = D^{1/2} K D^{1/2}, descending; they approximate the occupation
    /// spectrum of the continuous kernel.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let n = self.grid.len();
        let sqrt_w: Vec<f64> = self.grid.weights().iter().map(|w| w.sqrt()).collect();
        let b = DMatrix::from_fn(n, n, |i, j| self.values[(i, j)] * sqrt_w[i] * sqrt_w[j]);
        let eig = nalgebra::SymmetricEigen::try_new(b, 1e-13, 0).ok_or(Error::NonConvergence)?;
        let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("real eigenvalues"));
        Ok(eigenvalues)
    }
}

/// Assemble the one-body kernel K(u, u') = ∫ ψ(u, v) ψ(u', v) dv by
/// quadrature, rescale to unit trace and symmetrize. Errors with
/// [`Error::GridTooCoarse`] when the raw trace deviates from 1 by more
/// than 1e-3.
pub fn one_body_kernel(kind: KernelKind, grid: &TrapGrid) -> Result<Kernel> {
    let n = grid.len();
    let psi = DMatrix::from_fn(n, n, |k, m| {
        let (u, v) = (grid.nodes()[k], grid.nodes()[m]);
        match kind {
            KernelKind::Labeled => psi_gs(u, v),
            KernelKind::Ordered => psi_ordered(u, v),
        }
    });
    let weighted = &psi * DMatrix::from_diagonal(&DVector::from_column_slice(grid.weights()));
    let mut values = weighted * psi.transpose();

    let raw_trace: f64 = (0..n).map(|k| values[(k, k)] * grid.weights()[k]).sum();
    let deviation = (raw_trace - 1.0).abs();
    if deviation > TRACE_TOL {
        return Err(Error::GridTooCoarse(deviation));
    }
    values /= raw_trace;
    values = (&values + values.transpose()) / 2.0;
    Ok(Kernel {
        grid: grid.clone(),
        values,
    })
}

/// Tr ρ² of a discretized kernel: Σ_{k,l} K(u_k, u_l)² w_k w_l.
pub fn kernel_purity(kernel: &Kernel) -> f64 {
    let w = kernel.grid().weights();
    let values = kernel.values();
    let mut sum = 0.0;
    for k in 0..w.len() {
        for l in 0..w.len() {
            sum += values[(k, l)] * values[(k, l)] * w[k] * w[l];
        }
    }
    sum
}

/// Linear entropies of both kernels plus a convergence estimate from an
/// n/2-point grid of the same extent.
#[derive(Debug, Clone, Copy)]
pub struct TrapReport {
    pub s_l_labeled: f64,
    pub s_l_ordered: f64,
    pub purity_labeled: f64,
    pub purity_ordered: f64,
    pub grid_points: usize,
    pub extent: f64,
    pub coarse_grid_points: usize,
    pub convergence_estimate: f64,
}

pub fn trap_report(grid: &TrapGrid) -> Result<TrapReport> {
    let entropies = |g: &TrapGrid| -> Result<(f64, f64)> {
        let labeled = kernel_purity(&one_body_kernel(KernelKind::Labeled, g)?);
        let ordered = kernel_purity(&one_body_kernel(KernelKind::Ordered, g)?);
        Ok((labeled, ordered))
    };
    let (purity_labeled, purity_ordered) = entropies(grid)?;
    let coarse_points = (grid.len() / 2).max(3);
    let coarse = TrapGrid::new(grid.extent(), coarse_points)?;
    let (coarse_labeled, coarse_ordered) = entropies(&coarse)?;
    let convergence_estimate = (purity_labeled - coarse_labeled)
        .abs()
        .max((purity_ordered - coarse_ordered).abs());
    Ok(TrapReport {
        s_l_labeled: 1.0 - purity_labeled,
        s_l_ordered: 1.0 - purity_ordered,
        purity_labeled,
        purity_ordered,
        grid_points: grid.len(),
        extent: grid.extent(),
        coarse_grid_points: coarse_points,
        convergence_estimate,
    })
}

/// Write a kernel as CSV rows `u,u_prime,value`.
pub fn write_kernel_csv(kernel: &Kernel, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "u,u_prime,value")?;
    let nodes = kernel.grid().nodes();
    for (k, &u) in nodes.iter().enumerate() {
        for (l, &v) in nodes.iter().enumerate() {
            writeln!(out, "{u},{v},{}", kernel.values()[(k, l)])?;
        }
    }
    Ok(())
}

/// Write a density profile as CSV rows `u,density`.
pub fn write_density_csv(kernel: &Kernel, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "u,density")?;
    for (u, rho) in kernel.density() {
        writeln!(out, "{u},{rho}")?;
    }
    Ok(())
}
