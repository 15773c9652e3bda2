//! Python bindings: groups, representations, sampling, measurement assembly,
//! the recovery-governing constants and the sparse solvers.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use orbitsense::analysis;
use orbitsense::error::Error;
use orbitsense::group::{FiniteGroup, GroupKind};
use orbitsense::linalg::{CMatrix, CVector};
use orbitsense::recovery;
use orbitsense::rep;
use orbitsense::sensing;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Config(_) | Error::InvalidArgument(_) | Error::InvalidGroup(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn rows_to_matrix(rows: Vec<Vec<Complex64>>) -> PyResult<CMatrix> {
    if rows.is_empty() {
        return Err(PyValueError::new_err("empty matrix"));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    Ok(CMatrix::from_fn(rows.len(), ncols, |r, c| rows[r][c]))
}

fn vec_to_cvector(v: Vec<Complex64>) -> CVector {
    CVector::from_column_slice(&v)
}

#[pyclass(name = "FiniteGroup", skip_from_py_object)]
#[derive(Clone)]
struct PyFiniteGroup {
    inner: FiniteGroup,
}

#[pymethods]
impl PyFiniteGroup {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.inner.identity()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        if a >= self.inner.order() || b >= self.inner.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.mul(a, b))
    }

    fn inv(&self, a: usize) -> PyResult<usize> {
        if a >= self.inner.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.inv(a))
    }

    fn label(&self, a: usize) -> PyResult<String> {
        if a >= self.inner.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.label(a).to_string())
    }

    fn __repr__(&self) -> String {
        format!("FiniteGroup({})", self.inner)
    }
}

#[pyclass(name = "Representation", skip_from_py_object)]
#[derive(Clone)]
struct PyRepresentation {
    inner: rep::Representation,
}

#[pymethods]
impl PyRepresentation {
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group().order()
    }

    fn matrix(&self, g: usize) -> PyResult<Vec<Vec<Complex64>>> {
        if g >= self.inner.group().order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(matrix_to_rows(self.inner.matrix(g)))
    }

    /// (degree, multiplicity) pairs of the block-diagonal structure, if any.
    fn blocks(&self) -> Option<Vec<(usize, usize)>> {
        self.inner
            .block()
            .map(|b| b.blocks().iter().map(|s| (s.degree, s.multiplicity)).collect())
    }

    fn d_max(&self) -> usize {
        self.inner.block().map(|b| b.d_max()).unwrap_or(1)
    }

    fn __repr__(&self) -> String {
        format!("Representation({})", self.inner.name())
    }
}

#[pyclass(name = "MeasurementEnsemble")]
struct PyMeasurementEnsemble {
    inner: sensing::MeasurementEnsemble,
}

#[pymethods]
impl PyMeasurementEnsemble {
    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    fn phi(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(self.inner.phi())
    }

    fn omega(&self) -> Vec<usize> {
        self.inner.omega().indices().to_vec()
    }

    fn xi(&self) -> Vec<Complex64> {
        self.inner.xi().values().iter().cloned().collect()
    }
}

#[pyclass(name = "RecoveryResult")]
struct PyRecoveryResult {
    #[pyo3(get)]
    estimate: Vec<Complex64>,
    #[pyo3(get)]
    residual_norm: f64,
    #[pyo3(get)]
    iterations: usize,
    #[pyo3(get)]
    converged: bool,
    #[pyo3(get)]
    solver: String,
}

impl From<recovery::RecoveryResult> for PyRecoveryResult {
    fn from(r: recovery::RecoveryResult) -> Self {
        PyRecoveryResult {
            estimate: r.estimate.iter().cloned().collect(),
            residual_norm: r.residual_norm,
            iterations: r.iterations,
            converged: r.converged,
            solver: r.solver.to_string(),
        }
    }
}

#[pyfunction]
fn build_group(kind: &str, param: u64) -> PyResult<PyFiniteGroup> {
    let kind = GroupKind::parse(kind).map_err(to_py_err)?;
    Ok(PyFiniteGroup {
        inner: FiniteGroup::build(kind, param).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn left_regular(group: &PyFiniteGroup) -> PyRepresentation {
    PyRepresentation {
        inner: rep::Representation::left_regular(&group.inner),
    }
}

#[pyfunction]
fn trivial_rep(group: &PyFiniteGroup, degree: usize) -> PyResult<PyRepresentation> {
    Ok(PyRepresentation {
        inner: rep::Representation::trivial(&group.inner, degree).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn affine_rep(p: u64) -> PyResult<PyRepresentation> {
    Ok(PyRepresentation {
        inner: rep::Representation::affine(p).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn diagonal_characters(group: &PyFiniteGroup) -> PyResult<PyRepresentation> {
    Ok(PyRepresentation {
        inner: rep::diagonal_characters(&group.inner).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn irreducible_reps(group: &PyFiniteGroup) -> PyResult<Vec<PyRepresentation>> {
    Ok(rep::irreducible_catalog(&group.inner)
        .map_err(to_py_err)?
        .into_iter()
        .map(|inner| PyRepresentation { inner })
        .collect())
}

/// Block-diagonal assembly from catalog indices: blocks = [(irrep, mult), ...]
#[pyfunction]
fn block_diagonal(group: &PyFiniteGroup, blocks: Vec<(usize, usize)>) -> PyResult<PyRepresentation> {
    let catalog = rep::irreducible_catalog(&group.inner).map_err(to_py_err)?;
    let constituents: Vec<(rep::Representation, usize)> = blocks
        .into_iter()
        .map(|(i, m)| {
            catalog
                .get(i)
                .cloned()
                .map(|r| (r, m))
                .ok_or_else(|| PyValueError::new_err(format!("irrep index {i} out of range")))
        })
        .collect::<PyResult<_>>()?;
    Ok(PyRepresentation {
        inner: rep::block_diagonal(&constituents).map_err(to_py_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (n, scheme, seed, rep=None))]
fn sample_generating_vector(
    n: usize,
    scheme: &str,
    seed: u64,
    rep: Option<&PyRepresentation>,
) -> PyResult<Vec<Complex64>> {
    let scheme = sensing::Scheme::parse(scheme).map_err(to_py_err)?;
    let block = rep.and_then(|r| r.inner.block().cloned());
    let xi = sensing::sample_generating_vector(n, scheme, seed, block.as_ref())
        .map_err(to_py_err)?;
    Ok(xi.values().iter().cloned().collect())
}

#[pyfunction]
#[pyo3(signature = (group, m, mode, seed=None, subgroup=None))]
fn sample_omega(
    group: &PyFiniteGroup,
    m: usize,
    mode: &str,
    seed: Option<u64>,
    subgroup: Option<Vec<usize>>,
) -> PyResult<Vec<usize>> {
    let mode = sensing::OmegaMode::parse(mode).map_err(to_py_err)?;
    let partition = subgroup
        .map(|h| group.inner.coset_partition(&h))
        .transpose()
        .map_err(to_py_err)?;
    let omega = sensing::sample_omega(&group.inner, m, mode, seed, partition.as_ref())
        .map_err(to_py_err)?;
    Ok(omega.indices().to_vec())
}

/// Assemble Phi = (1/sqrt(m)) R_Omega (pi(g) xi)* B; basis is "identity" or
/// "dft". Duplicate sampling indices are kept as duplicate rows.
#[pyfunction]
#[pyo3(signature = (rep, xi, omega, basis="identity"))]
fn build_measurement(
    rep: &PyRepresentation,
    xi: Vec<Complex64>,
    omega: Vec<usize>,
    basis: &str,
) -> PyResult<PyMeasurementEnsemble> {
    let xi = sensing::GeneratingVector::explicit(vec_to_cvector(xi));
    let mut sorted = omega.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let omega_set = if sorted.len() == omega.len() {
        sensing::SamplingSet::explicit(omega).map_err(to_py_err)?
    } else {
        sensing::SamplingSet::explicit_multiset(omega)
    };
    let basis = match basis {
        "identity" => sensing::BasisSpec::Identity,
        "dft" => sensing::BasisSpec::Dft,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown basis '{other}' (identity|dft)"
            )))
        }
    };
    Ok(PyMeasurementEnsemble {
        inner: sensing::build_measurement(&rep.inner, &xi, &omega_set, &basis)
            .map_err(to_py_err)?,
    })
}

#[pyfunction]
fn orbit_column_constant(
    rep: &PyRepresentation,
    omega: Vec<usize>,
) -> PyResult<(f64, usize, Vec<f64>)> {
    let report = analysis::orbit_column_constant(&rep.inner, &omega).map_err(to_py_err)?;
    Ok((report.value, report.argmax_coordinate, report.per_coordinate))
}

#[pyfunction]
fn rip_constant(phi: Vec<Vec<Complex64>>, s: usize) -> PyResult<(f64, Vec<usize>, u64)> {
    let phi = rows_to_matrix(phi)?;
    let report = analysis::rip_constant(&phi, s).map_err(to_py_err)?;
    Ok((report.delta, report.witness_support, report.supports_checked))
}

#[pyfunction]
fn basis_pursuit(phi: Vec<Vec<Complex64>>, y: Vec<Complex64>) -> PyResult<PyRecoveryResult> {
    let phi = rows_to_matrix(phi)?;
    let y = vec_to_cvector(y);
    recovery::basis_pursuit(&phi, &y, &recovery::BasisPursuitOptions::default())
        .map(Into::into)
        .map_err(to_py_err)
}

#[pyfunction]
fn omp(phi: Vec<Vec<Complex64>>, y: Vec<Complex64>, s: usize) -> PyResult<PyRecoveryResult> {
    let phi = rows_to_matrix(phi)?;
    let y = vec_to_cvector(y);
    recovery::omp(&phi, &y, s).map(Into::into).map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (phi, y, s, max_iter=50000))]
fn iht(
    phi: Vec<Vec<Complex64>>,
    y: Vec<Complex64>,
    s: usize,
    max_iter: usize,
) -> PyResult<PyRecoveryResult> {
    let phi = rows_to_matrix(phi)?;
    let y = vec_to_cvector(y);
    recovery::iht(&phi, &y, s, None, max_iter)
        .map(Into::into)
        .map_err(to_py_err)
}

#[pyfunction]
fn l0_oracle(phi: Vec<Vec<Complex64>>, y: Vec<Complex64>, s: usize) -> PyResult<PyRecoveryResult> {
    let phi = rows_to_matrix(phi)?;
    let y = vec_to_cvector(y);
    recovery::l0_oracle(&phi, &y, s)
        .map(Into::into)
        .map_err(to_py_err)
}

/// max over coordinates j and group elements h of |<pi(h) xi, B e_j>|,
/// with B given as dense rows ("identity" shortcut: pass []).
#[pyfunction]
fn bos_constant(
    rep: &PyRepresentation,
    xi: Vec<Complex64>,
    basis: Vec<Vec<Complex64>>,
) -> PyResult<f64> {
    let n = rep.inner.degree();
    let b = if basis.is_empty() {
        CMatrix::identity(n, n)
    } else {
        rows_to_matrix(basis)?
    };
    let xi = sensing::GeneratingVector::explicit(vec_to_cvector(xi));
    analysis::bos_constant(&rep.inner, &xi, &b).map_err(to_py_err)
}

/// Max-norm distance of the normalized orbit Gram matrix from the identity.
#[pyfunction]
fn column_orthonormality_defect(
    rep: &PyRepresentation,
    xi: Vec<Complex64>,
    basis: Vec<Vec<Complex64>>,
) -> PyResult<f64> {
    let n = rep.inner.degree();
    let b = if basis.is_empty() {
        CMatrix::identity(n, n)
    } else {
        rows_to_matrix(basis)?
    };
    let xi = sensing::GeneratingVector::explicit(vec_to_cvector(xi));
    analysis::column_orthonormality_defect(&rep.inner, &xi, &b).map_err(to_py_err)
}

/// Number of distinct first coordinates among affine sampling points.
#[pyfunction]
fn affine_omega1(group: &PyFiniteGroup, omega: Vec<usize>) -> PyResult<usize> {
    analysis::affine_omega1(&group.inner, &omega).map_err(to_py_err)
}

#[pyfunction]
fn delta_train(n: usize, s: usize) -> PyResult<Vec<Complex64>> {
    Ok(orbitsense::fourier::delta_train(n, s)
        .map_err(to_py_err)?
        .iter()
        .cloned()
        .collect())
}

#[pyfunction]
fn count_admissible_sets(group: &PyFiniteGroup, subgroup: Vec<usize>) -> PyResult<u128> {
    let partition = group.inner.coset_partition(&subgroup).map_err(to_py_err)?;
    orbitsense::group::count_admissible_sets(&partition).map_err(to_py_err)
}

#[pyfunction]
fn thm1_measurement_bound(
    s: usize,
    n: usize,
    c_const: f64,
    delta: f64,
    eta: f64,
    c: f64,
) -> PyResult<u64> {
    analysis::thm1_measurement_bound(s, n, c_const, delta, eta, c).map_err(to_py_err)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn cor36_measurement_bound(
    s: usize,
    n: usize,
    group_order: usize,
    d_max: usize,
    delta: f64,
    eta: f64,
    c: f64,
) -> PyResult<u64> {
    analysis::cor36_measurement_bound(s, n, group_order, d_max, delta, eta, c).map_err(to_py_err)
}

#[pymodule]
fn orbitsense_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFiniteGroup>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyMeasurementEnsemble>()?;
    m.add_class::<PyRecoveryResult>()?;
    m.add_function(wrap_pyfunction!(build_group, m)?)?;
    m.add_function(wrap_pyfunction!(left_regular, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_rep, m)?)?;
    m.add_function(wrap_pyfunction!(affine_rep, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_characters, m)?)?;
    m.add_function(wrap_pyfunction!(irreducible_reps, m)?)?;
    m.add_function(wrap_pyfunction!(block_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(sample_generating_vector, m)?)?;
    m.add_function(wrap_pyfunction!(sample_omega, m)?)?;
    m.add_function(wrap_pyfunction!(build_measurement, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_column_constant, m)?)?;
    m.add_function(wrap_pyfunction!(rip_constant, m)?)?;
    m.add_function(wrap_pyfunction!(basis_pursuit, m)?)?;
    m.add_function(wrap_pyfunction!(omp, m)?)?;
    m.add_function(wrap_pyfunction!(iht, m)?)?;
    m.add_function(wrap_pyfunction!(l0_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(bos_constant, m)?)?;
    m.add_function(wrap_pyfunction!(column_orthonormality_defect, m)?)?;
    m.add_function(wrap_pyfunction!(affine_omega1, m)?)?;
    m.add_function(wrap_pyfunction!(delta_train, m)?)?;
    m.add_function(wrap_pyfunction!(count_admissible_sets, m)?)?;
    m.add_function(wrap_pyfunction!(thm1_measurement_bound, m)?)?;
    m.add_function(wrap_pyfunction!(cor36_measurement_bound, m)?)?;
    Ok(())
}
