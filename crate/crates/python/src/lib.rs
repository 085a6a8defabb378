//! Python bindings for the order-of-magnitude influence diagram toolkit.

use num_bigint::BigUint;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use oomid::bench::{self, GeneratorParams, UtilityClass};
use oomid::convert::{self, ConversionConfig};
use oomid::exact;
use oomid::oom_solver;
use oomid::{DiagramError, LoadOptions, OomError, Order, Sign};

fn diagram_err(e: DiagramError) -> PyErr {
    match e {
        DiagramError::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn oom_err(e: OomError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn options(non_forgetting: bool) -> LoadOptions {
    LoadOptions { non_forgetting }
}

/// An order-of-magnitude value such as `(+,2)` or `(+-,inf)`.
#[pyclass(frozen, eq, hash, from_py_object, name = "OomValue")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyOomValue(oomid::OomValue);

#[pymethods]
impl PyOomValue {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyOomValue).map_err(oom_err)
    }

    /// `"+"`, `"-"` or `"+-"`.
    #[getter]
    fn sign(&self) -> &'static str {
        match self.0.sign() {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::PlusMinus => "+-",
        }
    }

    /// The order, or `None` for zero.
    #[getter]
    fn order(&self) -> Option<i64> {
        match self.0.order() {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    fn dominates(&self, other: &PyOomValue) -> bool {
        self.0.dominates(&other.0)
    }

    fn __add__(&self, other: &PyOomValue) -> PyOomValue {
        PyOomValue(self.0 + other.0)
    }

    fn __mul__(&self, other: &PyOomValue) -> PyOomValue {
        PyOomValue(self.0 * other.0)
    }

    fn __neg__(&self) -> PyOomValue {
        PyOomValue(-self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("OomValue('{}')", self.0)
    }
}

/// A canonical order-of-magnitude set such as `{(+-,3),(-,5)}`.
#[pyclass(frozen, eq, hash, from_py_object, name = "OomSet")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyOomSet(oomid::OomSet);

#[pymethods]
impl PyOomSet {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyOomSet).map_err(oom_err)
    }

    #[staticmethod]
    fn canonicalize(values: Vec<PyOomValue>) -> PyResult<PyOomSet> {
        let raw: Vec<oomid::OomValue> = values.into_iter().map(|v| v.0).collect();
        oomid::OomSet::canonicalize(&raw).map(PyOomSet).map_err(oom_err)
    }

    fn elements(&self) -> Vec<PyOomValue> {
        self.0.elements().into_iter().map(PyOomValue).collect()
    }

    fn scale(&self, q: &PyOomValue) -> PyResult<PyOomSet> {
        self.0.scale(q.0).map(PyOomSet).map_err(oom_err)
    }

    fn sum(&self, other: &PyOomSet) -> PyOomSet {
        PyOomSet(self.0.sum(&other.0))
    }

    fn max(&self, other: &PyOomSet) -> PyOomSet {
        PyOomSet(self.0.max(&other.0))
    }

    fn equiv(&self, other: &PyOomSet) -> bool {
        self.0.equiv(&other.0)
    }

    fn dominates(&self, other: &PyOomSet) -> bool {
        self.0.dominates(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("OomSet('{}')", self.0)
    }
}

/// Influence diagram with numeric probabilities and utilities.
#[pyclass(frozen, name = "InfluenceDiagram")]
struct PyDiagram(oomid::InfluenceDiagram);

#[pymethods]
impl PyDiagram {
    #[staticmethod]
    #[pyo3(signature = (text, non_forgetting = true))]
    fn from_json(text: &str, non_forgetting: bool) -> PyResult<Self> {
        oomid::InfluenceDiagram::from_json(text, options(non_forgetting))
            .map(PyDiagram)
            .map_err(diagram_err)
    }

    #[staticmethod]
    #[pyo3(signature = (path, non_forgetting = true))]
    fn load(path: &str, non_forgetting: bool) -> PyResult<Self> {
        oomid::InfluenceDiagram::load(path, options(non_forgetting))
            .map(PyDiagram)
            .map_err(diagram_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    /// Every violation found, empty when the diagram is valid.
    fn validate(&self) -> Vec<String> {
        self.0.validate()
    }

    /// `(meu, policy)` with the policy as one line per decision cell.
    fn solve_exact(&self) -> PyResult<(f64, String)> {
        let s = exact::solve_exact(&self.0).map_err(diagram_err)?;
        Ok((s.meu, s.policy.render(&self.0)))
    }

    fn brute_force_meu(&self) -> PyResult<f64> {
        exact::brute_force_meu(&self.0).map(|b| b.meu).map_err(diagram_err)
    }

    /// Expected utility of a policy given by action labels, one list per
    /// decision in information-set row-major order.
    fn evaluate_policy(&self, labels: Vec<Vec<String>>) -> PyResult<f64> {
        let rows: Vec<Vec<&str>> = labels.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
        let policy = oomid::Policy::from_labels(&self.0, &rows).map_err(diagram_err)?;
        exact::evaluate_policy(&self.0, &policy).map_err(diagram_err)
    }

    fn convert(&self, epsilon: f64) -> PyResult<PyOomDiagram> {
        let cfg = ConversionConfig::new(epsilon).map_err(diagram_err)?;
        convert::convert(&self.0, &cfg).map(PyOomDiagram).map_err(diagram_err)
    }
}

/// Influence diagram with order-of-magnitude tables.
#[pyclass(frozen, name = "OomInfluenceDiagram")]
struct PyOomDiagram(oomid::OomInfluenceDiagram);

#[pymethods]
impl PyOomDiagram {
    #[staticmethod]
    #[pyo3(signature = (text, non_forgetting = true))]
    fn from_json(text: &str, non_forgetting: bool) -> PyResult<Self> {
        oomid::OomInfluenceDiagram::from_json(text, options(non_forgetting))
            .map(PyOomDiagram)
            .map_err(diagram_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn validate(&self) -> Vec<String> {
        self.0.validate()
    }

    /// `(meu, policy_count, policies)` from variable elimination.
    fn solve(&self) -> PyResult<(PyOomSet, BigUint, String)> {
        let s = oom_solver::elim_oom_id(&self.0).map_err(diagram_err)?;
        Ok((PyOomSet(s.meu), s.policies.count(), s.policies.render(&self.0)))
    }

    /// Same result by enumerating every policy.
    fn brute_force(&self) -> PyResult<(PyOomSet, BigUint, String)> {
        let b = oom_solver::brute_force_oom(&self.0).map_err(diagram_err)?;
        Ok((PyOomSet(b.meu), b.policies.count(), b.policies.render(&self.0)))
    }
}

#[pyfunction]
fn spohn_prob(p: f64, epsilon: f64) -> PyResult<PyOomValue> {
    let cfg = ConversionConfig::new(epsilon).map_err(diagram_err)?;
    convert::spohn_prob(p, &cfg).map(PyOomValue).map_err(diagram_err)
}

#[pyfunction]
fn spohn_util(u: f64, epsilon: f64) -> PyResult<PyOomSet> {
    let cfg = ConversionConfig::new(epsilon).map_err(diagram_err)?;
    convert::spohn_util(u, &cfg).map(PyOomSet).map_err(diagram_err)
}

fn class(name: &str) -> PyResult<UtilityClass> {
    name.parse().map_err(|e: String| PyValueError::new_err(e))
}

/// Random diagram with `n` variables, five of them decisions.
#[pyfunction]
#[pyo3(signature = (n, utility_class = "P", seed = 0))]
fn generate(n: usize, utility_class: &str, seed: u64) -> PyResult<PyDiagram> {
    let params = GeneratorParams::standard(n, class(utility_class)?, seed);
    bench::generate(&params).map(PyDiagram).map_err(diagram_err)
}

/// Policy-quality experiment; returns the results as CSV text.
#[pyfunction]
#[pyo3(signature = (n, epsilons, utility_class = "P", instances = 30, samples = 100, seed = 0))]
fn run_experiment(
    py: Python<'_>,
    n: usize,
    epsilons: Vec<f64>,
    utility_class: &str,
    instances: usize,
    samples: usize,
    seed: u64,
) -> PyResult<String> {
    let params = GeneratorParams::standard(n, class(utility_class)?, seed);
    let results = py
        .detach(|| bench::run_experiment(&params, &epsilons, samples, instances, seed))
        .map_err(diagram_err)?;
    Ok(bench::results_csv(&results))
}

#[pymodule]
#[pyo3(name = "oomid")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOomValue>()?;
    m.add_class::<PyOomSet>()?;
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyOomDiagram>()?;
    m.add_function(wrap_pyfunction!(spohn_prob, m)?)?;
    m.add_function(wrap_pyfunction!(spohn_util, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
