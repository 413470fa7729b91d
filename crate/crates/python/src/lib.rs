//! Python bindings: embeddings, generators, class sums, verification and
//! cycle enumeration.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use spatial_linking::aggregate::{self, CycleClass, Statistic};
use spatial_linking::geometry::{validate_embedding, Direction, PLEmbedding};
use spatial_linking::graph::{self, Cycle};
use spatial_linking::{generators, report, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn cycle_tuple(c: &Cycle) -> Vec<usize> {
    c.vertices().iter().map(|v| v.get()).collect()
}

/// A piecewise-linear spatial embedding of `K_n` with exact rational
/// coordinates.
#[pyclass(name = "Embedding", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyEmbedding {
    inner: PLEmbedding,
}

#[pymethods]
impl PyEmbedding {
    /// Vertices on the moment curve `(t, t², t³)`, `t = 1..n` unless given.
    #[staticmethod]
    #[pyo3(signature = (n, params=None))]
    fn moment(n: usize, params: Option<Vec<i64>>) -> PyResult<Self> {
        let t = params.unwrap_or_else(|| (1..=n as i64).collect());
        Ok(PyEmbedding { inner: generators::moment_curve(n, &t).map_err(err)? })
    }

    /// Seeded random integer vertices in `[-bound, bound]³`.
    #[staticmethod]
    #[pyo3(signature = (n, seed, bound=100))]
    fn random(n: usize, seed: u64, bound: i64) -> PyResult<Self> {
        Ok(PyEmbedding { inner: generators::random_embedding(n, seed, bound).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyEmbedding { inner: PLEmbedding::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn is_rectilinear(&self) -> bool {
        self.inner.is_rectilinear()
    }

    /// Violations found by the embedding check; empty when valid.
    fn validate(&self) -> Vec<String> {
        validate_embedding(&self.inner).violations.iter().map(|v| v.to_string()).collect()
    }

    fn __repr__(&self) -> String {
        format!("Embedding(n={}, rectilinear={})", self.inner.n(), self.inner.is_rectilinear())
    }
}

/// One row of a verification run.
#[pyclass(name = "Report", frozen, get_all)]
pub struct PyReport {
    claim_id: String,
    n: usize,
    p: Option<usize>,
    q: Option<usize>,
    statistic: String,
    status: String,
    lhs: String,
    rhs: String,
    witness: String,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!("Report({} n={} {} lhs={} rhs={})", self.claim_id, self.n, self.status, self.lhs, self.rhs)
    }
}

impl From<aggregate::VerificationReport> for PyReport {
    fn from(r: aggregate::VerificationReport) -> Self {
        PyReport {
            claim_id: r.claim_id,
            n: r.n,
            p: r.p,
            q: r.q,
            statistic: r.statistic,
            status: r.status.to_string(),
            lhs: r.lhs,
            rhs: r.rhs,
            witness: r.witness,
        }
    }
}

/// An embedding together with one generic projection; computed values are
/// cached per cycle class.
#[pyclass(name = "Analyzer", frozen)]
pub struct PyAnalyzer {
    inner: aggregate::Analyzer,
}

fn class_of(p: usize, q: Option<usize>) -> CycleClass {
    match q {
        Some(q) => CycleClass::pair(p, q),
        None => CycleClass::knot(p),
    }
}

#[pymethods]
impl PyAnalyzer {
    /// `direction` is `"dx,dy,dz"` with integer or `a/b` components.
    #[new]
    #[pyo3(signature = (embedding, direction=None))]
    fn new(py: Python<'_>, embedding: &PyEmbedding, direction: Option<&str>) -> PyResult<Self> {
        let e = embedding.inner.clone();
        let d: Option<Direction> = direction.map(str::parse).transpose().map_err(err)?;
        let inner = py
            .detach(|| match d {
                Some(d) => aggregate::Analyzer::with_direction(e, &d),
                None => aggregate::Analyzer::new(e),
            })
            .map_err(err)?;
        Ok(PyAnalyzer { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn direction(&self) -> String {
        self.inner.scene().direction().to_string()
    }

    fn crossing_count(&self) -> usize {
        self.inner.scene().crossings().len()
    }

    /// `statistic` is one of `lk`, `lk2`, `maxlk` (pair classes, give `q`)
    /// or `a2` (cycle classes, omit `q`).
    #[pyo3(signature = (statistic, p, q=None))]
    fn class_sum(&self, py: Python<'_>, statistic: &str, p: usize, q: Option<usize>) -> PyResult<i128> {
        let stat: Statistic = statistic.parse().map_err(err)?;
        py.detach(|| self.inner.class_sum(class_of(p, q), stat)).map(|s| s.value).map_err(err)
    }

    /// `[(first_cycle, second_cycle, lk), ...]` over `Γ_{p,q}`.
    fn linking_numbers(&self, py: Python<'_>, p: usize, q: usize) -> PyResult<Vec<(Vec<usize>, Vec<usize>, i64)>> {
        let values = py.detach(|| self.inner.linking_numbers(p, q)).map_err(err)?;
        Ok(values.iter().map(|(pair, lk)| (cycle_tuple(&pair.first), cycle_tuple(&pair.second), *lk)).collect())
    }

    /// `[(cycle, a2), ...]` over `Γ_p`.
    fn a2_values(&self, py: Python<'_>, p: usize) -> PyResult<Vec<(Vec<usize>, i64)>> {
        let values = py.detach(|| self.inner.a2_values(p)).map_err(err)?;
        Ok(values.iter().map(|(c, v)| (cycle_tuple(c), *v)).collect())
    }

    fn verify(&self, py: Python<'_>) -> PyResult<Vec<PyReport>> {
        let reports = py.detach(|| aggregate::verify_all(&self.inner)).map_err(err)?;
        Ok(reports.into_iter().map(PyReport::from).collect())
    }

    /// Verification rows as CSV text, in the command-line column order.
    fn verify_csv(&self, py: Python<'_>) -> PyResult<String> {
        let reports = py.detach(|| aggregate::verify_all(&self.inner)).map_err(err)?;
        report::render_reports(&reports, report::Format::Csv, true).map_err(err)
    }
}

/// Every `p`-cycle of `K_n` as a canonical vertex tuple.
#[pyfunction]
fn enumerate_cycles(n: usize, p: usize) -> PyResult<Vec<Vec<usize>>> {
    Ok(graph::enumerate_cycles(n, p).map_err(err)?.iter().map(cycle_tuple).collect())
}

/// Every unordered pair of disjoint `p`- and `q`-cycles of `K_n`.
#[pyfunction]
fn enumerate_disjoint_pairs(n: usize, p: usize, q: usize) -> PyResult<Vec<(Vec<usize>, Vec<usize>)>> {
    let pairs = graph::enumerate_disjoint_pairs(n, p, q).map_err(err)?;
    Ok(pairs.iter().map(|x| (cycle_tuple(&x.first), cycle_tuple(&x.second))).collect())
}

/// Adds every class and function to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEmbedding>()?;
    m.add_class::<PyAnalyzer>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(enumerate_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_disjoint_pairs, m)?)?;
    Ok(())
}

#[pymodule]
fn spatial_linking_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
