//! Python bindings for `h2delta_core`.

use h2delta_core as core;
use h2delta_core::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(h2delta, SolverError, PyException, "Eigensolver or extrapolation failure.");
create_exception!(h2delta, NoBindingError, PyException, "The molecule is not bound at this field.");

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Domain(_) | Error::InvalidGrid(_) | Error::Io(_) => PyValueError::new_err(err.to_string()),
        Error::NoBinding { .. } => NoBindingError::new_err(err.to_string()),
        _ => SolverError::new_err(err.to_string()),
    }
}

fn params_from(z: f64, epsilon: Option<f64>, l: Option<f64>, b: Option<f64>) -> PyResult<core::ModelParams> {
    match (epsilon, l, b) {
        (Some(e), None, None) => core::ModelParams::from_epsilon(z, e),
        (None, Some(l), None) => core::ModelParams::from_l(z, l),
        (None, None, Some(b)) => core::ModelParams::from_field(z, b),
        _ => return Err(PyValueError::new_err("give exactly one of epsilon, L, B")),
    }
    .map_err(to_py)
}

/// Model parameters: nuclear charge and field, given as exactly one of
/// `epsilon`, `L` or `B` (atomic units).
#[pyclass(name = "ModelParams", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModelParams {
    inner: core::ModelParams,
}

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (z, *, epsilon=None, L=None, B=None))]
    #[allow(non_snake_case)]
    fn new(z: f64, epsilon: Option<f64>, L: Option<f64>, B: Option<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: params_from(z, epsilon, L, B)?,
        })
    }

    #[getter]
    fn z(&self) -> f64 {
        self.inner.z
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon
    }

    #[getter(L)]
    fn field_l(&self) -> f64 {
        self.inner.field_l()
    }

    #[getter(B)]
    fn field_b(&self) -> PyResult<f64> {
        self.inner.field_b().map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("ModelParams(z={}, epsilon={})", self.inner.z, self.inner.epsilon)
    }
}

/// Two-electron ground state on one mesh.
#[pyclass(name = "GroundState", frozen)]
struct PyGroundState {
    inner: core::GroundStateResult,
}

#[pymethods]
impl PyGroundState {
    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.inner.residual
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    #[getter]
    fn h(&self) -> f64 {
        self.inner.grid.h()
    }

    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.inner.nodes.clone()
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.inner.weights.clone()
    }

    /// Eigenfunction as a list of rows, `psi[i][j] = psi(z_i, z_j)`.
    fn wavefunction(&self) -> Vec<Vec<f64>> {
        let n = self.inner.points_per_axis();
        self.inner.vector.chunks(n).map(|r| r.to_vec()).collect()
    }

    /// Feynman-Hellman derivative of the energy with respect to `a`.
    fn e_prime(&self) -> PyResult<f64> {
        core::fh_derivative(&self.inner).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "GroundState(energy={}, residual={:e}, points={})",
            self.inner.energy,
            self.inner.residual,
            self.inner.points_per_axis()
        )
    }
}

#[pyclass(name = "EquilibriumReport", frozen, get_all)]
struct PyEquilibriumReport {
    z: f64,
    epsilon: f64,
    a_eq: f64,
    e_eq: f64,
    a_bracket: (f64, f64),
    e_prime_at_eq: f64,
    error_estimate: f64,
    r_angstrom: f64,
    e_hartree: f64,
    e_ev: f64,
    b_tesla: f64,
}

impl From<core::EquilibriumReport> for PyEquilibriumReport {
    fn from(r: core::EquilibriumReport) -> Self {
        Self {
            z: r.z,
            epsilon: r.epsilon,
            a_eq: r.a_eq,
            e_eq: r.e_eq,
            a_bracket: r.a_bracket,
            e_prime_at_eq: r.e_prime_at_eq,
            error_estimate: r.error_estimate,
            r_angstrom: r.physical.r_angstrom,
            e_hartree: r.physical.e_hartree,
            e_ev: r.physical.e_ev,
            b_tesla: r.physical.b_tesla,
        }
    }
}

#[pymethods]
impl PyEquilibriumReport {
    fn __repr__(&self) -> String {
        format!(
            "EquilibriumReport(a_eq={}, e_eq={}, r_angstrom={:e})",
            self.a_eq, self.e_eq, self.r_angstrom
        )
    }
}

#[pyfunction]
fn lambert_w0(x: f64) -> PyResult<f64> {
    core::lambert_w0(x).map_err(to_py)
}

/// Decay exponent of the one-electron ground state.
#[pyfunction]
fn alpha0(a: f64) -> PyResult<f64> {
    core::alpha0(a).map_err(to_py)
}

#[pyfunction]
fn alpha0_inverse(target: f64) -> PyResult<f64> {
    core::alpha0_inverse(target).map_err(to_py)
}

#[pyfunction]
fn f_exchange(a: f64) -> PyResult<f64> {
    core::f_exchange(a).map_err(to_py)
}

/// Variational upper bound on the electronic energy.
#[pyfunction]
fn e_ub(a: f64, z: f64) -> PyResult<f64> {
    core::e_ub(a, z).map_err(to_py)
}

#[pyfunction]
fn j_func(a: f64, z: f64) -> PyResult<f64> {
    core::j_func(a, z).map_err(to_py)
}

#[pyfunction]
fn g_func(a: f64, z: f64) -> PyResult<f64> {
    core::g_func(a, z).map_err(to_py)
}

/// `(location, value)` of the maximum of `j(., z)`.
#[pyfunction]
fn max_j(z: f64) -> PyResult<(f64, f64)> {
    core::bounds::max_j(z).map(|r| (r.location, r.value)).map_err(to_py)
}

/// `(a, E)` of the upper-bound equilibrium.
#[pyfunction]
fn equilibrium_ub(params: &PyModelParams) -> PyResult<(f64, f64)> {
    core::equilibrium_ub(&params.inner)
        .map(|r| (r.location, r.value))
        .map_err(to_py)
}

#[pyfunction]
fn a_plus(params: &PyModelParams) -> PyResult<f64> {
    core::a_plus(&params.inner).map_err(to_py)
}

#[pyfunction]
fn field_to_l(b: f64) -> PyResult<f64> {
    core::field_to_l(b).map_err(to_py)
}

#[pyfunction]
fn l_to_field(l: f64) -> PyResult<f64> {
    core::l_to_field(l).map_err(to_py)
}

/// Two-electron ground state on the mesh with core spacing `h`.
#[pyfunction]
#[pyo3(signature = (a, z, h=core::groundstate::DEFAULT_H, box_half_width=core::groundstate::DEFAULT_BOX))]
fn ground_state(py: Python<'_>, a: f64, z: f64, h: f64, box_half_width: f64) -> PyResult<PyGroundState> {
    let grid = core::GridSpec::new(a, h, box_half_width).map_err(to_py)?;
    let inner = py
        .detach(|| core::ground_state(a, z, &grid))
        .map_err(to_py)?;
    Ok(PyGroundState { inner })
}

/// Extrapolated electronic energy `e(a)`; returns `(value, error_estimate)`.
#[pyfunction]
#[pyo3(signature = (a, z, accuracy=5e-3))]
fn e_electronic(py: Python<'_>, a: f64, z: f64, accuracy: f64) -> PyResult<(f64, f64)> {
    py.detach(|| core::e_electronic(a, z, accuracy))
        .map(|e| (e.value, e.error_estimate))
        .map_err(to_py)
}

#[pyfunction]
fn e_prime_fh(py: Python<'_>, a: f64, z: f64) -> PyResult<f64> {
    py.detach(|| core::e_prime_fh_extrapolated(a, z)).map_err(to_py)
}

#[pyfunction]
fn e_prime_zero_limit(py: Python<'_>, z: f64) -> PyResult<f64> {
    py.detach(|| core::e_prime_zero_limit(z)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (params, accuracy=5e-3))]
fn find_equilibrium(py: Python<'_>, params: &PyModelParams, accuracy: f64) -> PyResult<PyEquilibriumReport> {
    let p = params.inner;
    py.detach(|| core::find_equilibrium(&p, accuracy))
        .map(Into::into)
        .map_err(to_py)
}

/// `(R in Angstrom, E in eV, B in Tesla)` for a scaled `(a, E)`.
#[pyfunction]
fn convert_units(a: f64, energy: f64, params: &PyModelParams) -> PyResult<(f64, f64, f64)> {
    core::convert_units(a, energy, &params.inner)
        .map(|p| (p.r_angstrom, p.e_ev, p.b_tesla))
        .map_err(to_py)
}

#[pymodule]
fn h2delta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyGroundState>()?;
    m.add_class::<PyEquilibriumReport>()?;
    m.add("SolverError", m.py().get_type::<SolverError>())?;
    m.add("NoBindingError", m.py().get_type::<NoBindingError>())?;
    m.add_function(wrap_pyfunction!(lambert_w0, m)?)?;
    m.add_function(wrap_pyfunction!(alpha0, m)?)?;
    m.add_function(wrap_pyfunction!(alpha0_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(f_exchange, m)?)?;
    m.add_function(wrap_pyfunction!(e_ub, m)?)?;
    m.add_function(wrap_pyfunction!(j_func, m)?)?;
    m.add_function(wrap_pyfunction!(g_func, m)?)?;
    m.add_function(wrap_pyfunction!(max_j, m)?)?;
    m.add_function(wrap_pyfunction!(equilibrium_ub, m)?)?;
    m.add_function(wrap_pyfunction!(a_plus, m)?)?;
    m.add_function(wrap_pyfunction!(field_to_l, m)?)?;
    m.add_function(wrap_pyfunction!(l_to_field, m)?)?;
    m.add_function(wrap_pyfunction!(ground_state, m)?)?;
    m.add_function(wrap_pyfunction!(e_electronic, m)?)?;
    m.add_function(wrap_pyfunction!(e_prime_fh, m)?)?;
    m.add_function(wrap_pyfunction!(e_prime_zero_limit, m)?)?;
    m.add_function(wrap_pyfunction!(find_equilibrium, m)?)?;
    m.add_function(wrap_pyfunction!(convert_units, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specifications_agree() {
        let from_l = params_from(1.0, None, Some(10.0), None).unwrap();
        let b = from_l.field_b().unwrap();
        let from_b = params_from(1.0, None, None, Some(b)).unwrap();
        assert!((from_b.epsilon - 0.1).abs() < 1e-12);
        assert_eq!(params_from(2.0, Some(0.4), None, None).unwrap().epsilon, 0.4);
    }
}
