//! Pure states of N indistinguishable fermions: Slater-basis state
//! representation, M-fermion reduced density matrices, purity-based
//! entanglement criteria and concurrences, and the fermionized two-particle
//! harmonic-trap example.
//!
//! All operations are pure functions of immutable inputs and are safe to
//! share across threads.

pub mod comb;
pub mod criteria;
pub mod decomp;
pub mod error;
pub mod fock;
pub mod io;
pub mod rdm;
pub mod sample;
pub mod trap;

pub use error::{Error, Result};
pub use fock::{
    antisymmetrize, canonical_partition, freeze, overlap, parse_site_spec, reference_state,
    single_particle_transform, two_site_partition, DistinguishableState, FermionState,
    ProductState, Site,
};
pub use rdm::{linear_entropy, purity, reduce, reduce_bipartite, spectral, DensityMatrix, Spectrum};
pub use decomp::{
    coeff_matrix, concurrence_2f, concurrence_2qubit, schmidt_decompose, slater_decompose,
    slater_rank, CoeffMatrix, SchmidtDecomposition, SlaterDecomposition,
};
pub use criteria::{
    classify, correlation_criterion, fermionic_concurrence, purity_bounds, Classification,
    Correlation, CorrelationReport, PurityBounds, Verdict,
};
pub use trap::{
    hermite_mode, kernel_purity, one_body_kernel, psi_gs, psi_ordered, trap_report, Kernel,
    KernelKind, TrapGrid, TrapReport,
};
