//! Python bindings. Graphs are exposed as an immutable `Graph` class; every
//! other operation is a module-level function.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use regtough::certify::{self as cert, CrossCheck, Theorem};
use regtough::constructions::{self, ExtremalSpec, Family};
use regtough::graph6;
use regtough::spectral;
use regtough::thresholds::{self, ThresholdParams, ThresholdValue};
use regtough::toughness::{self, SearchBudget, ToughnessError};
use regtough::VertexSet;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn toughness_error(e: ToughnessError) -> PyErr {
    match e {
        ToughnessError::BudgetExceeded { .. } | ToughnessError::TooLarge { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn budget(max_subsets: Option<u64>) -> SearchBudget {
    max_subsets.map_or_else(SearchBudget::from_env, SearchBudget::new)
}

fn theorem(k: u32) -> PyResult<Theorem> {
    match k {
        3 => Ok(Theorem::SecondEigenvalue),
        4 => Ok(Theorem::HigherEigenvalue),
        _ => Err(value_error(format!("theorem must be 3 or 4, got {k}"))),
    }
}

fn params(d: u32, b: u32) -> PyResult<ThresholdParams> {
    ThresholdParams::new(d, b).map_err(value_error)
}

fn members(s: &VertexSet) -> Vec<usize> {
    s.members().to_vec()
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "regtough", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(regtough::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        regtough::Graph::from_edges(n, edges).map(PyGraph).map_err(value_error)
    }

    #[staticmethod]
    fn from_graph6(s: &str) -> PyResult<Self> {
        graph6::parse_graph6(s.trim_end().as_bytes()).map(PyGraph).map_err(value_error)
    }

    fn to_graph6(&self) -> PyResult<String> {
        graph6::to_graph6_string(&self.0).map_err(value_error)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.0.has_edge(u, v)
    }

    fn degrees(&self) -> Vec<usize> {
        self.0.degrees()
    }

    /// The common degree, or `None` when the graph is not regular.
    fn is_regular(&self) -> Option<usize> {
        self.0.is_regular()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn is_complete(&self) -> bool {
        self.0.is_complete()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        self.0.components().blocks().iter().map(members).collect()
    }

    fn complement(&self) -> Self {
        PyGraph(self.0.complement())
    }

    fn join(&self, other: &PyGraph) -> Self {
        PyGraph(self.0.join(&other.0))
    }

    fn disjoint_union(&self, other: &PyGraph) -> Self {
        PyGraph(self.0.disjoint_union(&other.0))
    }

    fn delete_vertices(&self, s: Vec<usize>) -> PyResult<Self> {
        self.0.delete_vertices(&VertexSet::new(s)).map(PyGraph).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        match graph6::to_graph6_string(&self.0) {
            Ok(s) => format!("Graph.from_graph6({s:?})"),
            Err(_) => format!("<Graph n={}>", self.0.order()),
        }
    }
}

#[pyfunction]
fn parse_graph6(s: &str) -> PyResult<PyGraph> {
    PyGraph::from_graph6(s)
}

/// Adjacency eigenvalues, largest first.
#[pyfunction]
fn eigenvalues(g: &PyGraph) -> PyResult<Vec<f64>> {
    spectral::eigenvalues(&g.0).map(|s| s.values).map_err(value_error)
}

/// `λ_k`, 1-based.
#[pyfunction]
fn lambda_k(g: &PyGraph, k: usize) -> PyResult<f64> {
    spectral::lambda_k(&g.0, k).map_err(value_error)
}

/// Exact toughness as `(numerator, denominator, witness)`.
#[pyfunction]
#[pyo3(signature = (g, budget = None))]
fn toughness_exact(py: Python<'_>, g: &PyGraph, budget: Option<u64>) -> PyResult<(usize, usize, Vec<usize>)> {
    let graph = g.0.clone();
    let r = py
        .detach(move || toughness::toughness_exact(&graph, self::budget(budget)))
        .map_err(toughness_error)?;
    Ok((*r.tau.numer(), *r.tau.denom(), members(&r.witness)))
}

/// `(tough, witness)`; the witness is `None` when the graph is `1/b`-tough.
#[pyfunction]
#[pyo3(signature = (g, b, budget = None))]
fn is_one_over_b_tough(
    py: Python<'_>,
    g: &PyGraph,
    b: usize,
    budget: Option<u64>,
) -> PyResult<(bool, Option<Vec<usize>>)> {
    let graph = g.0.clone();
    let dec = py
        .detach(move || toughness::is_one_over_b_tough(&graph, b, self::budget(budget)))
        .map_err(toughness_error)?;
    Ok((dec.tough, dec.witness.as_ref().map(members)))
}

#[pyfunction]
fn alpha_d(d: u32) -> f64 {
    thresholds::alpha_d(d)
}

fn threshold_tuple(t: ThresholdValue) -> (f64, &'static str, bool) {
    (t.value, t.branch.name(), t.vacuous)
}

/// `(value, branch, vacuous)`.
#[pyfunction]
fn phi(d: u32, b: u32) -> PyResult<(f64, &'static str, bool)> {
    Ok(threshold_tuple(thresholds::phi(params(d, b)?)))
}

/// `(value, branch, vacuous)`.
#[pyfunction]
fn psi(d: u32, b: u32) -> PyResult<(f64, &'static str, bool)> {
    Ok(threshold_tuple(thresholds::psi(params(d, b)?)))
}

/// Builds `H`, `G1star` … `G4star`; returns `(graph, hubs)`.
#[pyfunction]
fn construct(family: &str, d: u32, b: u32) -> PyResult<(PyGraph, Vec<usize>)> {
    let family: Family = family.parse().map_err(PyValueError::new_err)?;
    let e = constructions::build(ExtremalSpec::new(family, d, b)).map_err(value_error)?;
    Ok((PyGraph(e.graph), members(&e.hubs)))
}

/// Certificate report as a dict; `theorem` is 3 (λ₂ vs φ) or 4 (λ_{b+1} vs ψ).
#[pyfunction]
#[pyo3(signature = (g, b, theorem = 3, cross_check = false, budget = None))]
fn certify<'py>(
    py: Python<'py>,
    g: &PyGraph,
    b: u32,
    theorem: u32,
    cross_check: bool,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let th = self::theorem(theorem)?;
    let mut r = cert::certify(&g.0, b, th);
    if cross_check && r.verdict == cert::Verdict::Certified {
        r.cross_check = Some(cert::cross_check(&g.0, b, self::budget(budget)));
    }
    let out = PyDict::new(py);
    out.set_item("theorem", r.theorem.name())?;
    out.set_item("n", r.n)?;
    out.set_item("d", r.d)?;
    out.set_item("b", r.b)?;
    out.set_item("eigenvalue", r.eigenvalue_used)?;
    out.set_item("threshold", r.threshold.map(|t| t.value))?;
    out.set_item("branch", r.threshold.map(|t| t.branch.name()))?;
    out.set_item("verdict", r.verdict.to_string())?;
    out.set_item("margin", r.margin)?;
    out.set_item("reason", r.reason)?;
    let check = match r.cross_check {
        None => None,
        Some(CrossCheck::Confirmed { tau }) => Some(("confirmed".to_owned(), tau, None)),
        Some(CrossCheck::Refuted { witness, .. }) => Some(("refuted".to_owned(), None, Some(members(&witness)))),
        Some(CrossCheck::Skipped { reason }) => Some((format!("skipped: {reason}"), None, None)),
    };
    out.set_item("cross_check", check)?;
    Ok(out)
}

/// Seeded random simple `d`-regular graph from the pairing model.
#[pyfunction]
#[pyo3(signature = (n, d, seed, connected = false))]
fn random_regular(n: usize, d: usize, seed: u64, connected: bool) -> PyResult<PyGraph> {
    let g = if connected {
        cert::random_connected_regular(n, d, seed)
    } else {
        cert::random_regular(n, d, seed)
    };
    g.map(PyGraph).map_err(value_error)
}

/// Certifies and cross-checks every graph; returns the summary counts and
/// raises `RuntimeError` on a contradiction.
#[pyfunction]
#[pyo3(signature = (graphs, b, theorem = 3, budget = None))]
fn verify_on_corpus<'py>(
    py: Python<'py>,
    graphs: Vec<PyRef<'py, PyGraph>>,
    b: u32,
    theorem: u32,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let th = self::theorem(theorem)?;
    let gs: Vec<regtough::Graph> = graphs.iter().map(|g| g.0.clone()).collect();
    let s = py
        .detach(move || cert::verify_on_corpus(&gs, b, th, self::budget(budget)))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let out = PyDict::new(py);
    out.set_item("total", s.total)?;
    out.set_item("certified_confirmed", s.certified_confirmed)?;
    out.set_item("inconclusive", s.inconclusive)?;
    out.set_item("not_applicable", s.not_applicable)?;
    Ok(out)
}

#[pymodule(name = "regtough")]
fn regtough_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("SPECTRAL_TOL", spectral::SPECTRAL_TOL)?;
    m.add_function(wrap_pyfunction!(parse_graph6, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_k, m)?)?;
    m.add_function(wrap_pyfunction!(toughness_exact, m)?)?;
    m.add_function(wrap_pyfunction!(is_one_over_b_tough, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_d, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(random_regular, m)?)?;
    m.add_function(wrap_pyfunction!(verify_on_corpus, m)?)?;
    Ok(())
}
