//! Python bindings: the main state types and analysis operations, plus the
//! trap computation, exposed as the `fermitangle_py` extension module.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fermitangle::criteria::Classification;
use fermitangle::error::Error;
use fermitangle::fock;
use fermitangle::{criteria, decomp, io, rdm, trap};

fn value_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_to_rows(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn rows_to_matrix(rows: &[Vec<Complex64>]) -> PyResult<DMatrix<Complex64>> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err("expected a rectangular matrix"));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

/// Pure state of N identical fermions over d modes.
#[pyclass(name = "FermionState", frozen)]
struct PyFermionState {
    inner: fock::FermionState,
}

#[pymethods]
impl PyFermionState {
    /// Build from a dense amplitude vector over the lexicographic basis.
    #[new]
    fn new(d: usize, n: usize, amplitudes: Vec<Complex64>) -> PyResult<Self> {
        Ok(Self {
            inner: fock::FermionState::from_amplitudes(d, n, amplitudes).map_err(value_err)?,
        })
    }

    /// One of the built-in reference states: `slater-AB` or `non-slater-AB`.
    #[staticmethod]
    fn reference_state(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: fock::reference_state(name).map_err(value_err)?,
        })
    }

    /// Load a JSON state file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let (inner, _) = io::load_state(std::path::Path::new(path)).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Normalized antisymmetric projection of a list of single-particle
    /// factor vectors (one per fermion, each of length d).
    #[staticmethod]
    fn antisymmetrize(factors: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let product = fock::ProductState::new(factors).map_err(value_err)?;
        Ok(Self {
            inner: fock::antisymmetrize(&product).map_err(value_err)?,
        })
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Dense amplitude vector, lexicographic basis order.
    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().iter().copied().collect()
    }

    /// Occupied-mode tuples of the basis, in amplitude order.
    fn basis(&self) -> PyResult<Vec<Vec<usize>>> {
        (0..self.inner.dim())
            .map(|rank| {
                self.inner
                    .basis_state(rank)
                    .map(|b| b.modes().to_vec())
                    .map_err(value_err)
            })
            .collect()
    }

    fn overlap(&self, other: &PyFermionState) -> PyResult<Complex64> {
        fock::overlap(&self.inner, &other.inner).map_err(value_err)
    }

    /// Apply a d x d single-particle unitary (list of rows).
    fn transform(&self, unitary: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let u = rows_to_matrix(&unitary)?;
        Ok(Self {
            inner: fock::single_particle_transform(&self.inner, &u).map_err(value_err)?,
        })
    }

    /// M-fermion reduced density matrix as a list of rows.
    fn reduced_matrix(&self, m: usize) -> PyResult<Vec<Vec<Complex64>>> {
        let rho = rdm::reduce(&self.inner, m).map_err(value_err)?;
        Ok(matrix_to_rows(rho.matrix()))
    }

    fn purity(&self, m: usize) -> PyResult<f64> {
        Ok(rdm::purity(&rdm::reduce(&self.inner, m).map_err(value_err)?))
    }

    fn linear_entropy(&self, m: usize) -> PyResult<f64> {
        Ok(rdm::linear_entropy(
            &rdm::reduce(&self.inner, m).map_err(value_err)?,
        ))
    }

    /// Eigenvalues of the M-fermion reduction, descending.
    fn reduced_spectrum(&self, m: usize) -> PyResult<Vec<f64>> {
        let rho = rdm::reduce(&self.inner, m).map_err(value_err)?;
        Ok(rdm::spectral(&rho).map_err(value_err)?.eigenvalues)
    }

    /// Purity-criterion verdict for the M-fermion bipartition.
    #[pyo3(signature = (m, tol=1e-8))]
    fn classify<'py>(&self, py: Python<'py>, m: usize, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let verdict = criteria::classify(&self.inner, m, tol).map_err(value_err)?;
        let out = PyDict::new(py);
        out.set_item(
            "verdict",
            match verdict.classification {
                Classification::NonEntangled => "non_entangled",
                Classification::Entangled => "entangled",
            },
        )?;
        out.set_item("purity", verdict.purity)?;
        out.set_item("lower_bound", verdict.bounds.lower)?;
        out.set_item("upper_bound", verdict.bounds.upper)?;
        out.set_item("margin", verdict.margin)?;
        Ok(out)
    }

    #[pyo3(signature = (m=1))]
    fn fermionic_concurrence(&self, m: usize) -> PyResult<f64> {
        criteria::fermionic_concurrence(&self.inner, m).map_err(value_err)
    }

    /// Number of Slater determinants needed in the optimal basis (N = 2).
    #[pyo3(signature = (tol=1e-8))]
    fn slater_rank(&self, tol: f64) -> PyResult<usize> {
        decomp::slater_rank(&self.inner, tol).map_err(value_err)
    }

    /// Moduli of the Slater-decomposition pair coefficients, descending (N = 2).
    fn pair_coefficients(&self) -> PyResult<Vec<f64>> {
        let w = decomp::coeff_matrix(&self.inner).map_err(value_err)?;
        let dec = decomp::slater_decompose(&w).map_err(value_err)?;
        Ok(dec.pair_coeffs.iter().map(|z| z.norm()).collect())
    }

    /// Pfaffian concurrence for N = 2, d = 4.
    fn concurrence_2f(&self) -> PyResult<f64> {
        decomp::concurrence_2f(&self.inner).map_err(value_err)
    }

    /// Freeze the spatial degree of freedom into party labels.
    ///
    /// `sites` assigns every mode as `L<k>` or `R<k>`; when omitted, the
    /// first half of the modes is the left site.
    #[pyo3(signature = (sites=None))]
    fn freeze(&self, sites: Option<&str>) -> PyResult<PyFrozenPair> {
        let partition = match sites {
            Some(spec) => fock::parse_site_spec(spec, self.inner.d()).map_err(value_err)?,
            None => fock::canonical_partition(self.inner.d()).map_err(value_err)?,
        };
        let frozen = fock::freeze(&self.inner, &partition).map_err(value_err)?;
        Ok(PyFrozenPair { inner: frozen })
    }

    /// Write the state to a JSON state file.
    fn save(&self, path: &str) -> PyResult<()> {
        io::save_state(&self.inner, None, std::path::Path::new(path)).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "FermionState(d={}, n={}, dim={})",
            self.inner.d(),
            self.inner.n(),
            self.inner.dim()
        )
    }
}

/// Distinguishable bipartite counterpart produced by the freeze map.
#[pyclass(name = "FrozenPair", frozen)]
struct PyFrozenPair {
    inner: fock::DistinguishableState,
}

#[pymethods]
impl PyFrozenPair {
    #[getter]
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    /// Amplitude matrix, party 1 rows and party 2 columns.
    fn amplitude_matrix(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(self.inner.amplitudes())
    }

    fn schmidt_coefficients(&self) -> PyResult<Vec<f64>> {
        Ok(decomp::schmidt_decompose(&self.inner)
            .map_err(value_err)?
            .coefficients)
    }

    fn concurrence_2qubit(&self) -> PyResult<f64> {
        decomp::concurrence_2qubit(&self.inner).map_err(value_err)
    }

    /// Reduced linear entropies of both parties (equal by Schmidt symmetry).
    fn linear_entropies(&self) -> PyResult<(f64, f64)> {
        let report = criteria::correlation_criterion(&self.inner, 1e-8).map_err(value_err)?;
        Ok((report.linear_entropy_1, report.linear_entropy_2))
    }

    fn __repr__(&self) -> String {
        let (d1, d2) = self.inner.dims();
        format!("FrozenPair(dims=({d1}, {d2}))")
    }
}

/// Purity bounds (lower, upper) for an M-of-N bipartition in d modes.
#[pyfunction]
fn purity_bounds(n: usize, m: usize, d: usize) -> PyResult<(f64, f64)> {
    let bounds = criteria::purity_bounds(n, m, d).map_err(value_err)?;
    Ok((bounds.lower, bounds.upper))
}

/// Harmonic-oscillator eigenfunction value.
#[pyfunction]
fn hermite_mode(k: usize, u: f64) -> f64 {
    trap::hermite_mode(k, u)
}

/// Fermionized-trap entropies on an n-point grid over [-extent, extent].
#[pyfunction]
#[pyo3(signature = (grid_points=600, extent=6.0))]
fn trap_report(py: Python<'_>, grid_points: usize, extent: f64) -> PyResult<Bound<'_, PyDict>> {
    let grid = trap::TrapGrid::new(extent, grid_points).map_err(value_err)?;
    let report = trap::trap_report(&grid).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("grid_points", report.grid_points)?;
    out.set_item("extent", report.extent)?;
    out.set_item("coarse_grid_points", report.coarse_grid_points)?;
    out.set_item("s_l_labeled", report.s_l_labeled)?;
    out.set_item("s_l_ordered", report.s_l_ordered)?;
    out.set_item("purity_labeled", report.purity_labeled)?;
    out.set_item("purity_ordered", report.purity_ordered)?;
    out.set_item("convergence_estimate", report.convergence_estimate)?;
    Ok(out)
}

#[pymodule]
fn fermitangle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyFermionState>()?;
    m.add_class::<PyFrozenPair>()?;
    m.add_function(wrap_pyfunction!(purity_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(hermite_mode, m)?)?;
    m.add_function(wrap_pyfunction!(trap_report, m)?)?;
    Ok(())
}
