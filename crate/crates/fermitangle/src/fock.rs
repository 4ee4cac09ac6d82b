//! Pure states of N indistinguishable fermions.
//!
//! States live in the antisymmetric subspace of (C^d)^{⊗N} and are stored as
//! complex amplitude vectors over the lexicographically ordered basis of
//! Slater determinants (strictly increasing mode tuples, see [`crate::comb`]).
//! The sign convention is fixed by expanding each Slater determinant as the
//! determinant of factor components in increasing mode order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::comb::{binomial, rank_subset, subsets, unrank_subset};
use crate::error::{Error, Result};

/// Index of a single-particle mode, in `[0, d)`.
pub type ModeIndex = usize;

/// Occupied-mode tuple of one Slater determinant: strictly increasing, no repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlaterBasisState {
    modes: Vec<ModeIndex>,
}

impl SlaterBasisState {
    pub fn new(modes: Vec<ModeIndex>, d: usize) -> Result<Self> {
        if !modes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NotStrictlyIncreasing(modes));
        }
        if let Some(&mode) = modes.iter().find(|&&m| m >= d) {
            return Err(Error::ModeOutOfRange { mode, d });
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[ModeIndex] {
        &self.modes
    }
}

/// Pure state of N fermions in d modes, as amplitudes over the lexicographic
/// Slater-determinant basis. Unit norm is maintained by every constructor.
#[derive(Debug, Clone)]
pub struct FermionState {
    d: usize,
    n: usize,
    amplitudes: DVector<Complex64>,
}

/// Construction accepts `|norm - 1| <= 1e-6` and renormalizes; tighter
/// deviations than that are indistinguishable from roundoff in practice,
/// larger ones are treated as caller bugs.
const NORM_ACCEPT: f64 = 1e-6;

impl FermionState {
    /// Build a state from a dense amplitude vector of length C(d, N).
    /// Renormalizes when the norm is within 1e-6 of unity, rejects otherwise.
    pub fn from_amplitudes(d: usize, n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > d {
            return Err(Error::BadArgs(format!(
                "need 1 <= N <= d, got N = {n}, d = {d}"
            )));
        }
        let dim = binomial(d, n);
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected C({d},{n}) = {dim} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        let mut amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_ACCEPT {
            return Err(Error::NotNormalized(norm));
        }
        amplitudes /= Complex64::from(norm);
        Ok(Self { d, n, amplitudes })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Basis dimension C(d, N).
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Amplitude on the given occupied-mode tuple.
    pub fn amplitude(&self, modes: &[ModeIndex]) -> Result<Complex64> {
        Ok(self.amplitudes[rank_subset(modes, self.d)?])
    }

    /// Occupied-mode tuple of the basis state at `rank`.
    pub fn basis_state(&self, rank: usize) -> Result<SlaterBasisState> {
        SlaterBasisState::new(unrank_subset(rank, self.d, self.n)?, self.d)
    }
}

/// Unnormalized product (Hartree) state of N distinguishable slots; the input
/// of [`antisymmetrize`]. Factors are stored unit-norm.
#[derive(Debug, Clone)]
pub struct ProductState {
    factors: Vec<DVector<Complex64>>,
}

impl ProductState {
    /// Factors must share a common length d >= 1 and be non-null; each is
    /// normalized on construction.
    pub fn new(factors: Vec<Vec<Complex64>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::BadArgs("product state needs at least one factor".into()));
        }
        let d = factors[0].len();
        let mut stored = Vec::with_capacity(factors.len());
        for f in factors {
            if f.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "factor length {} != {d}",
                    f.len()
                )));
            }
            let mut v = DVector::from_vec(f);
            let norm = v.norm();
            if norm < 1e-12 {
                return Err(Error::BadArgs("zero factor in product state".into()));
            }
            v /= Complex64::from(norm);
            stored.push(v);
        }
        if stored.len() > d {
            return Err(Error::BadArgs(format!(
                "cannot place {} fermions in {d} modes",
                stored.len()
            )));
        }
        Ok(Self { factors: stored })
    }

    pub fn d(&self) -> usize {
        self.factors[0].len()
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[DVector<Complex64>] {
        &self.factors
    }
}

/// Bipartite pure state of two labeled parties, stored as the amplitude
/// matrix A with `A[i, j] = <i|<j| psi>` (party 1 row, party 2 column).
#[derive(Debug, Clone)]
pub struct DistinguishableState {
    amplitudes: DMatrix<Complex64>,
}

impl DistinguishableState {
    /// Accepts `|‖A‖_F - 1| <= 1e-6` and renormalizes.
    pub fn new(amplitudes: DMatrix<Complex64>) -> Result<Self> {
        if amplitudes.nrows() == 0 || amplitudes.ncols() == 0 {
            return Err(Error::BadArgs("empty amplitude matrix".into()));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_ACCEPT {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            amplitudes: amplitudes / Complex64::from(norm),
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.amplitudes.nrows(), self.amplitudes.ncols())
    }

    pub fn amplitudes(&self) -> &DMatrix<Complex64> {
        &self.amplitudes
    }
}

/// Threshold below which the antisymmetric projection of a product state is
/// declared Pauli-forbidden rather than roundoff.
const PROJECTION_CUTOFF: f64 = 1e-10;

/// Normalized projection of a product state onto the antisymmetric subspace.
///
/// The amplitude on the basis tuple α is proportional to the determinant of
/// the N×N matrix of factor components on α's modes (rows in increasing mode
/// order, one column per factor).
pub fn antisymmetrize(p: &ProductState) -> Result<FermionState> {
    let (d, n) = (p.d(), p.n());
    let dim = binomial(d, n);
    let mut amplitudes = Vec::with_capacity(dim);
    let mut sub = DMatrix::<Complex64>::zeros(n, n);
    for modes in subsets(d, n) {
        for (row, &m) in modes.iter().enumerate() {
            for (col, f) in p.factors().iter().enumerate() {
                sub[(row, col)] = f[m];
            }
        }
        amplitudes.push(sub.clone().determinant());
    }
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < PROJECTION_CUTOFF {
        return Err(Error::LinearlyDependentFactors(norm));
    }
    let amplitudes = DVector::from_vec(amplitudes) / Complex64::from(norm);
    Ok(FermionState { d, n, amplitudes })
}

/// Hermitian inner product <a|b> of two states over the same (d, N) basis.
pub fn overlap(a: &FermionState, b: &FermionState) -> Result<Complex64> {
    if (a.d, a.n) != (b.d, b.n) {
        return Err(Error::DimensionMismatch(format!(
            "(d, N) = ({}, {}) vs ({}, {})",
            a.d, a.n, b.d, b.n
        )));
    }
    Ok(a.amplitudes.dotc(&b.amplitudes))
}

const UNITARY_TOL: f64 = 1e-10;

/// k-th compound (minor) matrix of U: entry (α, β) is det of the submatrix of
/// U with rows α and columns β, both subsets in lexicographic order.
pub fn compound_matrix(u: &DMatrix<Complex64>, k: usize) -> DMatrix<Complex64> {
    let d = u.nrows();
    let dim = binomial(d, k);
    let index: Vec<Vec<usize>> = subsets(d, k).collect();
    let mut out = DMatrix::zeros(dim, dim);
    let mut sub = DMatrix::<Complex64>::zeros(k, k);
    for (r, rows) in index.iter().enumerate() {
        for (c, cols) in index.iter().enumerate() {
            for (i, &ri) in rows.iter().enumerate() {
                for (j, &cj) in cols.iter().enumerate() {
                    sub[(i, j)] = u[(ri, cj)];
                }
            }
            out[(r, c)] = sub.clone().determinant();
        }
    }
    out
}

/// Apply a single-particle basis change U to every fermion: amplitudes
/// transform by the N-th compound matrix of U. Output is renormalized.
pub fn single_particle_transform(
    state: &FermionState,
    u: &DMatrix<Complex64>,
) -> Result<FermionState> {
    if u.nrows() != state.d || u.ncols() != state.d {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {}x{}, state has d = {}",
            u.nrows(),
            u.ncols(),
            state.d
        )));
    }
    let gram = u.adjoint() * u;
    let dev = (gram - DMatrix::<Complex64>::identity(state.d, state.d)).camax();
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let mut amplitudes = compound_matrix(u, state.n) * &state.amplitudes;
    let norm = amplitudes.norm();
    amplitudes /= Complex64::from(norm);
    Ok(FermionState {
        d: state.d,
        n: state.n,
        amplitudes,
    })
}

/// Spatial site label for the freeze map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Left,
    Right,
}

/// Assignment of every mode to a (site, internal-level) pair.
pub type SitePartition = [(Site, usize)];

/// Convert a two-fermion state with one particle per site into the state of
/// two distinguishable parties, using location as the party label (left = 1).
///
/// Each cross-site Slater amplitude is read as the amplitude of
/// (internal_left, internal_right); the sign flips when the right-site mode
/// precedes the left-site mode in the basis ordering. The result is
/// renormalized.
pub fn freeze(state: &FermionState, partition: &SitePartition) -> Result<DistinguishableState> {
    if state.n != 2 {
        return Err(Error::UnsupportedN {
            expected: 2,
            got: state.n,
        });
    }
    if partition.len() != state.d {
        return Err(Error::BadArgs(format!(
            "site partition covers {} modes, state has d = {}",
            partition.len(),
            state.d
        )));
    }
    let d_int = state.d / 2;
    for site in [Site::Left, Site::Right] {
        let mut internals: Vec<usize> = partition
            .iter()
            .filter(|(s, _)| *s == site)
            .map(|&(_, i)| i)
            .collect();
        internals.sort_unstable();
        if internals != (0..d_int).collect::<Vec<_>>() {
            return Err(Error::BadArgs(format!(
                "{site:?} internals must be a permutation of 0..{d_int}, got {internals:?}"
            )));
        }
    }
    let mut matrix = DMatrix::<Complex64>::zeros(d_int, d_int);
    for (rank, modes) in subsets(state.d, 2).enumerate() {
        let amp = state.amplitudes[rank];
        let (s0, i0) = partition[modes[0]];
        let (s1, i1) = partition[modes[1]];
        if s0 == s1 {
            if amp.norm() > PROJECTION_CUTOFF {
                return Err(Error::DoubleOccupancy {
                    modes,
                    amp: amp.norm(),
                });
            }
            continue;
        }
        // Party 1 is the left-site particle; a right-before-left mode pair
        // picks up the exchange sign of the Slater determinant.
        match s0 {
            Site::Left => matrix[(i0, i1)] += amp,
            Site::Right => matrix[(i1, i0)] -= amp,
        }
    }
    let norm = matrix.norm();
    if norm < PROJECTION_CUTOFF {
        return Err(Error::BadArgs("state has no cross-site support".into()));
    }
    Ok(DistinguishableState {
        amplitudes: matrix / Complex64::from(norm),
    })
}

/// Two-site, two-fermion reference states with mode order (A0, A1, B0, B1).
///
/// `slater-AB` occupies {A0, B1} as a single Slater determinant;
/// `non-slater-AB` is the balanced superposition of {A0, B1} and {A1, B0}.
pub fn reference_state(name: &str) -> Result<FermionState> {
    let d = 4;
    let n = 2;
    let mut amplitudes = vec![Complex64::ZERO; binomial(d, n)];
    match name {
        "slater-AB" => {
            amplitudes[rank_subset(&[0, 3], d)?] = Complex64::ONE;
        }
        "non-slater-AB" => {
            let w = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
            amplitudes[rank_subset(&[0, 3], d)?] = w;
            amplitudes[rank_subset(&[1, 2], d)?] = w;
        }
        other => return Err(Error::UnknownName(other.into())),
    }
    Ok(FermionState {
        d,
        n,
        amplitudes: DVector::from_vec(amplitudes),
    })
}

/// The canonical (A0, A1, B0, B1) site layout used by the reference states.
pub fn two_site_partition() -> Vec<(Site, usize)> {
    vec![
        (Site::Left, 0),
        (Site::Left, 1),
        (Site::Right, 0),
        (Site::Right, 1),
    ]
}

/// Canonical even-d layout: first half of the modes on the left site, second
/// half on the right, internal level = position within the half.
pub fn canonical_partition(d: usize) -> Result<Vec<(Site, usize)>> {
    if d == 0 || d % 2 != 0 {
        return Err(Error::BadArgs(format!(
            "canonical site layout needs an even mode count, got d = {d}"
        )));
    }
    let half = d / 2;
    Ok((0..d)
        .map(|m| {
            if m < half {
                (Site::Left, m)
            } else {
                (Site::Right, m - half)
            }
        })
        .collect())
}

/// Parse a per-mode site spec such as `L0,L1,R0,R1`.
pub fn parse_site_spec(spec: &str, d: usize) -> Result<Vec<(Site, usize)>> {
    let entries: Vec<&str> = spec.split(',').map(str::trim).collect();
    if entries.len() != d {
        return Err(Error::BadArgs(format!(
            "site spec lists {} modes, state has d = {d}",
            entries.len()
        )));
    }
    entries
        .iter()
        .map(|entry| {
            let mut chars = entry.chars();
            let site = match chars.next() {
                Some('L') | Some('l') => Site::Left,
                Some('R') | Some('r') => Site::Right,
                _ => {
                    return Err(Error::BadArgs(format!(
                        "bad site entry `{entry}` (expected L<k> or R<k>)"
                    )))
                }
            };
            let internal: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::BadArgs(format!("bad site entry `{entry}`")))?;
            Ok((site, internal))
        })
        .collect()
}

/// Render a partition back into the `L0,L1,R0,R1` spec form.
pub fn partition_label(partition: &SitePartition) -> String {
    partition
        .iter()
        .map(|(site, internal)| {
            let tag = match site {
                Site::Left => 'L',
                Site::Right => 'R',
            };
            format!("{tag}{internal}")
        })
        .collect::<Vec<_>>()
        .join(",")
}
