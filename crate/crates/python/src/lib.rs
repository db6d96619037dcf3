//! Python bindings: states, closed-form measures and the numerical cross-checks.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wernerlike_core as core;
use wernerlike_core::{DiscordDirection, Error, Mat4};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Inconsistent { .. } | Error::RootNotFound { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rows(m: &Mat4) -> Vec<Vec<Complex64>> {
    m.rows().iter().map(|r| r.to_vec()).collect()
}

/// Normalized two-qubit pure state with amplitudes on |00>, |01>, |10>, |11>.
#[pyclass(name = "PureState", frozen, skip_from_py_object, module = "wernerlike")]
#[derive(Clone)]
struct PyPureState(core::PureState);

#[pymethods]
impl PyPureState {
    #[new]
    #[pyo3(signature = (amplitudes, normalize = false))]
    fn new(amplitudes: [Complex64; 4], normalize: bool) -> PyResult<Self> {
        core::PureState::from_amplitudes(amplitudes, normalize)
            .map(PyPureState)
            .map_err(to_py)
    }

    /// Example state by id, e.g. "psi1", "bell:psi+", "psi6(0,1,0,0)".
    #[staticmethod]
    fn named(id: &str) -> PyResult<Self> {
        core::named_state(id).map(PyPureState).map_err(to_py)
    }

    /// Haar-random state from a seed.
    #[staticmethod]
    #[pyo3(signature = (seed = 0))]
    fn random(seed: u64) -> Self {
        let cfg = core::OptimizerConfig {
            seed,
            ..Default::default()
        };
        PyPureState(core::oracle::random_pure_state(&mut cfg.rng()))
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes().to_vec()
    }

    fn concurrence(&self) -> f64 {
        core::pure_concurrence(&self.0).value()
    }

    fn __repr__(&self) -> String {
        let a = self.0.amplitudes();
        format!("PureState([{}, {}, {}, {}])", a[0], a[1], a[2], a[3])
    }
}

/// Optimizer settings for the numerical minimizations.
#[pyclass(
    name = "OptimizerConfig",
    frozen,
    skip_from_py_object,
    module = "wernerlike"
)]
#[derive(Clone)]
struct PyOptimizerConfig(core::OptimizerConfig);

#[pymethods]
impl PyOptimizerConfig {
    #[new]
    #[pyo3(signature = (grid_n = 64, refine_iters = 2000, tol = 1e-10, restarts = 16, seed = 0))]
    fn new(
        grid_n: usize,
        refine_iters: usize,
        tol: f64,
        restarts: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let cfg = core::OptimizerConfig {
            grid_n,
            refine_iters,
            tol,
            restarts,
            seed,
        };
        cfg.validate().map_err(to_py)?;
        Ok(PyOptimizerConfig(cfg))
    }

    #[getter]
    fn grid_n(&self) -> usize {
        self.0.grid_n
    }

    #[getter]
    fn refine_iters(&self) -> usize {
        self.0.refine_iters
    }

    #[getter]
    fn tol(&self) -> f64 {
        self.0.tol
    }

    #[getter]
    fn restarts(&self) -> usize {
        self.0.restarts
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.0.seed
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

fn config(cfg: Option<&PyOptimizerConfig>) -> core::OptimizerConfig {
    cfg.map(|c| c.0.clone()).unwrap_or_default()
}

/// Werner-like density matrix (1-p)/4 * 1 + p |psi><psi| as nested lists.
#[pyfunction]
fn gwl(state: &PyPureState, p: f64) -> PyResult<Vec<Vec<Complex64>>> {
    core::gwl(&state.0, p)
        .map(|r| rows(r.matrix()))
        .map_err(to_py)
}

/// Werner state with singlet weight parameter p in [-1, 1/3].
#[pyfunction]
fn werner(p: f64) -> PyResult<Vec<Vec<Complex64>>> {
    core::werner(p).map(|r| rows(r.matrix())).map_err(to_py)
}

#[pyfunction]
fn gwl_entropy(p: f64) -> PyResult<f64> {
    core::gwl_entropy(p).map_err(to_py)
}

#[pyfunction]
fn gwl_concurrence(state: &PyPureState, p: f64) -> PyResult<f64> {
    core::gwl_concurrence(&state.0, p)
        .map(|c| c.value())
        .map_err(to_py)
}

/// Concurrence of the density matrix from its spin-flipped spectrum.
#[pyfunction]
fn wootters_concurrence(state: &PyPureState, p: f64) -> PyResult<f64> {
    let rho = core::gwl(&state.0, p).map_err(to_py)?;
    Ok(core::wootters_concurrence(&rho).value())
}

#[pyfunction]
fn eof(state: &PyPureState, p: f64) -> PyResult<f64> {
    let c = core::gwl_concurrence(&state.0, p).map_err(to_py)?;
    Ok(core::eof_from_concurrence(c))
}

#[pyfunction]
fn discord_analytic(state: &PyPureState, p: f64) -> PyResult<f64> {
    core::discord_analytic(&state.0, p).map_err(to_py)
}

/// Discord by minimizing over projective measurements on `measure` ("A" or "B").
#[pyfunction]
#[pyo3(signature = (state, p, measure = "A", config = None))]
fn discord_numeric(
    py: Python<'_>,
    state: &PyPureState,
    p: f64,
    measure: &str,
    config: Option<&PyOptimizerConfig>,
) -> PyResult<f64> {
    let direction = match measure {
        "A" | "a" => DiscordDirection::MeasureA,
        "B" | "b" => DiscordDirection::MeasureB,
        other => {
            return Err(PyValueError::new_err(format!(
                "measure must be 'A' or 'B', got '{other}'"
            )))
        }
    };
    let rho = core::gwl(&state.0, p).map_err(to_py)?;
    let cfg = self::config(config);
    py.detach(|| core::discord_numeric(&rho, direction, &cfg))
        .map_err(to_py)
}

#[pyfunction]
fn p_critical(state: &PyPureState) -> f64 {
    core::p_critical(&state.0)
}

/// Mixing parameter where the entanglement of formation overtakes the discord.
#[pyfunction]
#[pyo3(signature = (state, config = None))]
fn intersection_point(state: &PyPureState, config: Option<&PyOptimizerConfig>) -> PyResult<f64> {
    core::intersection_point(&state.0, &self::config(config)).map_err(to_py)
}

/// Smallest p with a CHSH violation, or None.
#[pyfunction]
#[pyo3(signature = (state, config = None))]
fn bell_threshold(
    py: Python<'_>,
    state: &PyPureState,
    config: Option<&PyOptimizerConfig>,
) -> PyResult<Option<f64>> {
    let cfg = self::config(config);
    py.detach(|| core::bell_threshold(&state.0, &cfg))
        .map_err(to_py)
}

/// All closed-form quantities at one p as a dict; `oracle` adds the numerical discord.
#[pyfunction]
#[pyo3(signature = (state, p, oracle = None))]
fn report<'py>(
    py: Python<'py>,
    state: &PyPureState,
    p: f64,
    oracle: Option<&PyOptimizerConfig>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = oracle.map(|c| c.0.clone());
    let r = py
        .detach(|| core::CorrelationReport::evaluate(&state.0, p, cfg.as_ref()))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("p", r.p)?;
    d.set_item("entropy_total", r.entropy_total)?;
    d.set_item("entropy_marginal", r.entropy_marginal)?;
    d.set_item("concurrence_pure", r.concurrence_pure)?;
    d.set_item("concurrence_gwl", r.concurrence_gwl)?;
    d.set_item("eof", r.eof)?;
    d.set_item("discord_analytic", r.discord_analytic)?;
    if let Some(v) = r.discord_numeric {
        d.set_item("discord_numeric", v)?;
    }
    d.set_item("p_critical", r.p_critical)?;
    Ok(d)
}

#[pymodule]
fn wernerlike(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyOptimizerConfig>()?;
    m.add_function(wrap_pyfunction!(gwl, m)?)?;
    m.add_function(wrap_pyfunction!(werner, m)?)?;
    m.add_function(wrap_pyfunction!(gwl_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(gwl_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(wootters_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(eof, m)?)?;
    m.add_function(wrap_pyfunction!(discord_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(discord_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(p_critical, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_point, m)?)?;
    m.add_function(wrap_pyfunction!(bell_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    Ok(())
}
