//! Python bindings: `import rbacs`.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rbacs_core::bundled::BundledInstance;
use rbacs_core::{
    AcsConfig, AlgorithmConfig, DistanceMatrix, Execution, GlobalDecayScope, GroupParams, NodeCoord, PheromoneInit,
    RbacsConfig, RunOutcome, SummaryStats,
};

fn to_py(e: rbacs_core::Error) -> PyErr {
    match e {
        rbacs_core::Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_scope(s: &str) -> PyResult<GlobalDecayScope> {
    s.parse().map_err(|e: String| PyValueError::new_err(e))
}

/// A symmetric TSP instance with integer distances.
#[pyclass(name = "TspInstance", module = "rbacs", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyInstance {
    inner: rbacs_core::TspInstance,
}

#[pymethods]
impl PyInstance {
    /// Reads a TSPLIB EUC_2D file.
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyIOError::new_err(format!("{path}: {e}")))?;
        Self::from_text(&text)
    }

    /// Parses TSPLIB EUC_2D text.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let (_, inner) = rbacs_core::TspInstance::from_tsplib(text).map_err(to_py)?;
        Ok(PyInstance { inner })
    }

    /// One of the bundled benchmark instances: eil51, eil76, kroA100.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        let b = BundledInstance::by_name(name)
            .ok_or_else(|| PyValueError::new_err(format!("no bundled instance named {name:?}")))?;
        Ok(PyInstance {
            inner: b.instance().map_err(to_py)?,
        })
    }

    /// Builds an instance from planar points, rounding distances to the
    /// nearest integer.
    #[staticmethod]
    fn from_coords(name: &str, points: Vec<(f64, f64)>) -> PyResult<Self> {
        let coords: Vec<NodeCoord> = points
            .into_iter()
            .enumerate()
            .map(|(i, (x, y))| NodeCoord { id: i + 1, x, y })
            .collect();
        let inner = rbacs_core::TspInstance::from_coords(name, &coords).map_err(to_py)?;
        Ok(PyInstance { inner })
    }

    /// Builds an instance from a symmetric matrix with a zero diagonal.
    #[staticmethod]
    fn from_matrix(name: &str, rows: Vec<Vec<u64>>) -> PyResult<Self> {
        let dist = DistanceMatrix::from_rows(&rows).map_err(to_py)?;
        let inner = rbacs_core::TspInstance::new(name, dist).map_err(to_py)?;
        Ok(PyInstance { inner })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn distance(&self, r: usize, s: usize) -> PyResult<u64> {
        let n = self.inner.n();
        if r >= n || s >= n {
            return Err(to_py(rbacs_core::Error::OutOfBounds { index: r.max(s), n }));
        }
        Ok(self.inner.distance(r, s))
    }

    /// Initial pheromone level `1 / (n * nearest_neighbor_length)`.
    fn tau0(&self) -> f64 {
        self.inner.tau0()
    }

    fn tour_length(&self, order: Vec<usize>) -> PyResult<u64> {
        rbacs_core::tour_length(&order, &self.inner).map_err(to_py)
    }

    #[pyo3(signature = (start = 0))]
    fn nearest_neighbor(&self, start: usize) -> PyResult<PyTour> {
        rbacs_core::nearest_neighbor_tour(&self.inner, start)
            .map(PyTour::from)
            .map_err(to_py)
    }

    /// Exact optimum by enumeration; at most 11 cities.
    fn brute_force(&self) -> PyResult<PyTour> {
        rbacs_core::brute_force_optimum(&self.inner)
            .map(PyTour::from)
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("TspInstance(name={:?}, n={})", self.inner.name(), self.inner.n())
    }
}

/// A closed tour: city order (0-based) and its length.
#[pyclass(name = "Tour", module = "rbacs", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTour {
    inner: rbacs_core::Tour,
}

impl From<rbacs_core::Tour> for PyTour {
    fn from(inner: rbacs_core::Tour) -> Self {
        PyTour { inner }
    }
}

#[pymethods]
impl PyTour {
    #[getter]
    fn order(&self) -> Vec<usize> {
        self.inner.order().to_vec()
    }

    #[getter]
    fn length(&self) -> u64 {
        self.inner.length()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Tour(length={}, cities={})", self.inner.length(), self.inner.len())
    }
}

/// Outcome of one solver run.
#[pyclass(name = "RunResult", module = "rbacs", frozen)]
pub struct PyRunResult {
    inner: RunOutcome,
}

#[pymethods]
impl PyRunResult {
    #[getter]
    fn best(&self) -> PyTour {
        self.inner.best.clone().into()
    }

    #[getter]
    fn length(&self) -> u64 {
        self.inner.best.length()
    }

    #[getter]
    fn iterations_run(&self) -> usize {
        self.inner.iterations_run
    }

    #[getter]
    fn stopped_early(&self) -> bool {
        self.inner.stopped_early
    }

    /// Rows of `(iteration, black_best, red_best, global_best)`; `red_best`
    /// is None for ACS.
    #[getter]
    fn trace(&self) -> Vec<(usize, u64, Option<u64>, u64)> {
        self.inner
            .trace
            .rows()
            .iter()
            .map(|r| (r.iteration, r.black_best, r.red_best, r.global_best))
            .collect()
    }

    fn trace_csv(&self) -> String {
        let mut buf = Vec::new();
        rbacs_core::emit_trace_csv(&self.inner.trace, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii csv")
    }

    fn __repr__(&self) -> String {
        format!(
            "RunResult(length={}, iterations_run={})",
            self.inner.best.length(),
            self.inner.iterations_run
        )
    }
}

/// Summary statistics of a batch of trials.
#[pyclass(name = "Summary", module = "rbacs", frozen)]
pub struct PySummary {
    algorithm: String,
    stats: SummaryStats,
    lengths: Vec<u64>,
}

#[pymethods]
impl PySummary {
    #[getter]
    fn mean(&self) -> f64 {
        self.stats.mean
    }

    #[getter]
    fn min(&self) -> u64 {
        self.stats.min
    }

    #[getter]
    fn max(&self) -> u64 {
        self.stats.max
    }

    #[getter]
    fn stddev(&self) -> f64 {
        self.stats.stddev
    }

    #[getter]
    fn trials(&self) -> usize {
        self.stats.trials
    }

    /// Best length of every trial, in trial order.
    #[getter]
    fn lengths(&self) -> Vec<u64> {
        self.lengths.clone()
    }

    fn excess_percent(&self, optimum: u64) -> f64 {
        self.stats.excess_percent(optimum)
    }

    fn table(&self, optimum: u64) -> String {
        rbacs_core::compare_table(&[(self.algorithm.clone(), self.stats)], optimum)
    }

    fn as_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        d.set_item("algorithm", &self.algorithm)?;
        d.set_item("mean", self.stats.mean)?;
        d.set_item("min", self.stats.min)?;
        d.set_item("max", self.stats.max)?;
        d.set_item("stddev", self.stats.stddev)?;
        d.set_item("trials", self.stats.trials)?;
        d.set_item("lengths", self.lengths.clone())?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Summary(algorithm={:?}, trials={}, mean={:.3})",
            self.algorithm, self.stats.trials, self.stats.mean
        )
    }
}

fn group(q0: f64, beta: f64, rho: f64, alpha: f64, ants: usize) -> GroupParams {
    GroupParams {
        q0,
        beta,
        rho,
        alpha,
        ants,
    }
}

#[allow(clippy::too_many_arguments)]
fn acs_config(
    budget: usize,
    q0: f64,
    beta: f64,
    rho: f64,
    alpha: f64,
    ants: usize,
    c_init: Option<f64>,
    stagnation: usize,
    decay_scope: &str,
) -> PyResult<AcsConfig> {
    let config = AcsConfig {
        params: group(q0, beta, rho, alpha, ants),
        init: c_init.map_or(PheromoneInit::Uniform, |c| PheromoneInit::InverseCost { c }),
        budget,
        stagnation_limit: stagnation,
        decay_scope: parse_scope(decay_scope)?,
    };
    config.validate().map_err(to_py)?;
    Ok(config)
}

#[allow(clippy::too_many_arguments)]
fn rbacs_config(
    budget: usize,
    q0: f64,
    beta: f64,
    ants: usize,
    rho_black: f64,
    alpha_black: f64,
    rho_red: f64,
    alpha_red: f64,
    c_init: f64,
    stagnation: usize,
    decay_scope: &str,
    concurrent: bool,
) -> PyResult<RbacsConfig> {
    let config = RbacsConfig {
        black: group(q0, beta, rho_black, alpha_black, ants),
        red: group(q0, beta, rho_red, alpha_red, ants),
        c_init,
        budget,
        stagnation_limit: stagnation,
        decay_scope: parse_scope(decay_scope)?,
        execution: if concurrent { Execution::Concurrent } else { Execution::Serial },
    };
    config.validate().map_err(to_py)?;
    Ok(config)
}

fn run(py: Python<'_>, inst: &PyInstance, config: AlgorithmConfig, seed: u64) -> PyResult<PyRunResult> {
    let inst = &inst.inner;
    let inner = py.detach(|| config.run(inst, seed)).map_err(to_py)?;
    Ok(PyRunResult { inner })
}

/// Runs Ant Colony System. Passing `c_init` switches the pheromone
/// initialization from uniform `tau0` to `c_init / distance`.
#[pyfunction]
#[pyo3(signature = (instance, seed = 1, budget = 2000, q0 = 0.9, beta = 2.0, rho = 0.1, alpha = 0.1, ants = 20, c_init = None, stagnation = 0, decay_scope = "best-tour-only"))]
#[allow(clippy::too_many_arguments)]
fn solve_acs(
    py: Python<'_>,
    instance: &PyInstance,
    seed: u64,
    budget: usize,
    q0: f64,
    beta: f64,
    rho: f64,
    alpha: f64,
    ants: usize,
    c_init: Option<f64>,
    stagnation: usize,
    decay_scope: &str,
) -> PyResult<PyRunResult> {
    let config = acs_config(budget, q0, beta, rho, alpha, ants, c_init, stagnation, decay_scope)?;
    run(py, instance, AlgorithmConfig::Acs(config), seed)
}

/// Runs Red-Black ACS: two ant groups on separate pheromone fields.
#[pyfunction]
#[pyo3(signature = (instance, seed = 1, budget = 2000, q0 = 0.9, beta = 2.0, ants = 20, rho_black = 0.1, alpha_black = 0.1, rho_red = 0.2, alpha_red = 0.15, c_init = 100.0, stagnation = 0, decay_scope = "best-tour-only", concurrent = true))]
#[allow(clippy::too_many_arguments)]
fn solve_rbacs(
    py: Python<'_>,
    instance: &PyInstance,
    seed: u64,
    budget: usize,
    q0: f64,
    beta: f64,
    ants: usize,
    rho_black: f64,
    alpha_black: f64,
    rho_red: f64,
    alpha_red: f64,
    c_init: f64,
    stagnation: usize,
    decay_scope: &str,
    concurrent: bool,
) -> PyResult<PyRunResult> {
    let config = rbacs_config(
        budget,
        q0,
        beta,
        ants,
        rho_black,
        alpha_black,
        rho_red,
        alpha_red,
        c_init,
        stagnation,
        decay_scope,
        concurrent,
    )?;
    run(py, instance, AlgorithmConfig::Rbacs(config), seed)
}

/// Runs `trials` seeded trials with default parameters and the given budget.
#[pyfunction]
#[pyo3(name = "bench", signature = (instance, algorithm = "rbacs", trials = 30, seed = 1, budget = 2000))]
fn run_bench(
    py: Python<'_>,
    instance: &PyInstance,
    algorithm: &str,
    trials: usize,
    seed: u64,
    budget: usize,
) -> PyResult<PySummary> {
    let algo: rbacs_core::Algorithm = algorithm.parse().map_err(|e: String| PyValueError::new_err(e))?;
    let config = match AlgorithmConfig::default_for(algo) {
        AlgorithmConfig::Acs(c) => AlgorithmConfig::Acs(AcsConfig { budget, ..c }),
        AlgorithmConfig::Rbacs(c) => AlgorithmConfig::Rbacs(RbacsConfig { budget, ..c }),
    };
    let inst = &instance.inner;
    let results = py
        .detach(|| rbacs_core::run_trials(inst, &config, trials, seed))
        .map_err(to_py)?;
    Ok(PySummary {
        algorithm: algo.to_string(),
        stats: rbacs_core::summarize(&results).map_err(to_py)?,
        lengths: results.iter().map(|r| r.best_length).collect(),
    })
}

/// Raises ValueError unless `order` visits each of `n` cities exactly once.
#[pyfunction]
fn validate_tour(order: Vec<usize>, n: usize) -> PyResult<()> {
    rbacs_core::validate_tour(&order, n).map_err(|d| PyValueError::new_err(d.to_string()))
}

/// Published optimum of a bundled instance.
#[pyfunction]
fn known_optimum(name: &str) -> Option<u64> {
    BundledInstance::by_name(name).map(|b| b.optimum)
}

#[pymodule]
fn rbacs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyTour>()?;
    m.add_class::<PyRunResult>()?;
    m.add_class::<PySummary>()?;
    m.add_function(wrap_pyfunction!(solve_acs, m)?)?;
    m.add_function(wrap_pyfunction!(solve_rbacs, m)?)?;
    m.add_function(wrap_pyfunction!(run_bench, m)?)?;
    m.add_function(wrap_pyfunction!(validate_tour, m)?)?;
    m.add_function(wrap_pyfunction!(known_optimum, m)?)?;
    Ok(())
}
