//! Purity-based entanglement classification of pure fermionic states and the
//! normalized concurrence-type measure built on it.

use crate::comb::binomial;
use crate::error::{Error, Result};
use crate::fock::{DistinguishableState, FermionState};
use crate::rdm::{linear_entropy, purity, reduce, reduce_bipartite};

pub const DEFAULT_TOL: f64 = 1e-8;

/// Range the purity of an M-fermion reduction can occupy: the upper bound
/// C(N,M)⁻¹ is attained exactly by single Slater determinants, the lower
/// bound 1/d_M by maximally mixed reductions, d_M = C(d, min{M, N−M}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityBounds {
    pub lower: f64,
    pub upper: f64,
    pub d_m: usize,
}

/// Outcome of the purity criterion for one bipartition size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    NonEntangled,
    Entangled,
}

#[derive(Debug, Clone, Copy)]
pub struct Verdict {
    pub classification: Classification,
    pub purity: f64,
    pub bounds: PurityBounds,
    /// Distance below the Slater-determinant ceiling, upper − purity.
    pub margin: f64,
}

/// Purity bounds for an M-of-N bipartition in d modes.
pub fn purity_bounds(n: usize, m: usize, d: usize) -> Result<PurityBounds> {
    if n < 2 || n > d || m == 0 || m >= n {
        return Err(Error::BadArgs(format!(
            "need 1 <= M <= N-1 and 2 <= N <= d, got N = {n}, M = {m}, d = {d}"
        )));
    }
    let d_m = binomial(d, m.min(n - m));
    Ok(PurityBounds {
        lower: 1.0 / d_m as f64,
        upper: 1.0 / binomial(n, m) as f64,
        d_m,
    })
}

/// Classify a pure state by comparing the purity of its M-fermion reduction
/// against the Slater-determinant ceiling, within `tol`.
pub fn classify(state: &FermionState, m: usize, tol: f64) -> Result<Verdict> {
    let bounds = purity_bounds(state.n(), m, state.d()).map_err(|e| match e {
        Error::BadArgs(_) => Error::BadM {
            m,
            n: state.n(),
            max: state.n().saturating_sub(1),
        },
        other => other,
    })?;
    let purity = purity(&reduce(state, m)?);
    let classification = if purity >= bounds.upper - tol {
        Classification::NonEntangled
    } else {
        Classification::Entangled
    };
    Ok(Verdict {
        classification,
        purity,
        bounds,
        margin: bounds.upper - purity,
    })
}

/// Normalized purity-deficit concurrence,
/// C_f = sqrt(max(0, upper − purity) / (upper − lower)) ∈ [0, 1];
/// zero in the degenerate case upper = lower (N = d), where the antisymmetric
/// space holds a single configuration.
pub fn fermionic_concurrence(state: &FermionState, m: usize) -> Result<f64> {
    let bounds = purity_bounds(state.n(), m, state.d())?;
    if (bounds.upper - bounds.lower).abs() < f64::EPSILON {
        return Ok(0.0);
    }
    let purity = purity(&reduce(state, m)?);
    Ok(((bounds.upper - purity).max(0.0) / (bounds.upper - bounds.lower)).sqrt())
}

/// Outcome of the linear-entropy correlation criterion for two labeled
/// parties in a joint pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Correlation {
    Uncorrelated,
    Correlated,
}

#[derive(Debug, Clone, Copy)]
pub struct CorrelationReport {
    pub verdict: Correlation,
    pub linear_entropy_1: f64,
    pub linear_entropy_2: f64,
}

/// The parties are correlated iff the reduced linear entropy is positive
/// (beyond `tol`); both sides are reported and agree by Schmidt symmetry.
pub fn correlation_criterion(
    state: &DistinguishableState,
    tol: f64,
) -> Result<CorrelationReport> {
    let s1 = linear_entropy(&reduce_bipartite(state, 1)?);
    let s2 = linear_entropy(&reduce_bipartite(state, 2)?);
    let verdict = if s1 > tol {
        Correlation::Correlated
    } else {
        Correlation::Uncorrelated
    };
    Ok(CorrelationReport {
        verdict,
        linear_entropy_1: s1,
        linear_entropy_2: s2,
    })
}
