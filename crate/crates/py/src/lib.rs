//! Python bindings: graphs, problem instances, the solvers, the exact
//! oracle, baselines, indicators and synthetic instances.

use moncp_core::baselines::{nsga2_cdp_solve, run_baseline, BaselineMethod};
use moncp_core::metrics::{self, Bounds, Front};
use moncp_core::oracle::{enumerate_pareto_threads, DEFAULT_LIMIT};
use moncp_core::synth::{self, GraphKind, SyntheticSpec};
use moncp_core::{
    solve as core_solve, ControlModel, DecisionVector, Graph, LabelVector, ProblemInstance,
    RunResult, SolverConfig,
};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(moncp, MoncpError, PyException);

fn err(e: moncp_core::Error) -> PyErr {
    MoncpError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = moncp_core::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

#[pyclass(name = "Graph", module = "moncp", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph on `num_nodes` nodes from index pairs. Node names default to
    /// their indices.
    #[new]
    #[pyo3(signature = (num_nodes, edges, directed = false, names = None))]
    fn new(
        num_nodes: usize,
        edges: Vec<(usize, usize)>,
        directed: bool,
        names: Option<Vec<String>>,
    ) -> PyResult<Self> {
        let inner = match names {
            Some(names) if names.len() != num_nodes => {
                return Err(err(moncp_core::Error::DimensionMismatch {
                    expected: num_nodes,
                    actual: names.len(),
                }))
            }
            Some(names) => Graph::with_names(names, directed, edges),
            None => Graph::from_edges(num_nodes, directed, edges),
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    /// Parses a whitespace-separated `source target` edge list.
    #[staticmethod]
    #[pyo3(signature = (text, directed = false))]
    fn from_edge_list(text: &str, directed: bool) -> PyResult<Self> {
        moncp_core::parse_edge_list(text, directed)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn num_nodes(&self) -> usize {
        self.inner.num_nodes()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index_of(name)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(num_nodes={}, num_edges={}, directed={})",
            self.inner.num_nodes(),
            self.inner.num_edges(),
            if self.inner.is_directed() {
                "True"
            } else {
                "False"
            }
        )
    }
}

#[pyclass(name = "Problem", module = "moncp", frozen)]
struct PyProblem {
    inner: ProblemInstance,
}

fn vector(p: &ProblemInstance, x: Vec<bool>) -> PyResult<DecisionVector> {
    if x.len() != p.dimension() {
        return Err(err(moncp_core::Error::DimensionMismatch {
            expected: p.dimension(),
            actual: x.len(),
        }));
    }
    Ok(DecisionVector::from_bits(x))
}

#[pymethods]
impl PyProblem {
    /// `model` is one of "mds", "dfvs", "ncua"; `targets` lists the indices
    /// of prior target nodes.
    #[new]
    #[pyo3(signature = (graph, model, targets = Vec::new()))]
    fn new(graph: &PyGraph, model: &str, targets: Vec<usize>) -> PyResult<Self> {
        let n = graph.inner.num_nodes();
        let mut bits = vec![false; n];
        for t in targets {
            if t >= n {
                return Err(err(moncp_core::Error::IndexOutOfRange { index: t, len: n }));
            }
            bits[t] = true;
        }
        let model: ControlModel = parse(model)?;
        ProblemInstance::new(graph.inner.clone(), model, LabelVector::from_bits(bits))
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn model(&self) -> String {
        self.inner.model().to_string()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph().clone(),
        }
    }

    #[getter]
    fn targets(&self) -> Vec<usize> {
        self.inner.labels().targets()
    }

    /// Returns a dict with `f1`, `f2`, `cv` and `feasible`.
    fn evaluate<'py>(&self, py: Python<'py>, x: Vec<bool>) -> PyResult<Bound<'py, PyDict>> {
        let e = self.inner.evaluate(&vector(&self.inner, x)?).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("f1", e.f1)?;
        d.set_item("f2", e.f2_raw)?;
        d.set_item("cv", e.cv)?;
        d.set_item("feasible", e.feasible)?;
        Ok(d)
    }

    fn is_feasible(&self, x: Vec<bool>) -> PyResult<bool> {
        let x = vector(&self.inner, x)?;
        moncp_core::control::is_feasible(self.inner.model(), self.inner.graph(), &x).map_err(err)
    }
}

#[pyclass(name = "RunResult", module = "moncp", frozen)]
struct PyRunResult {
    inner: RunResult,
}

#[pymethods]
impl PyRunResult {
    #[getter]
    fn algorithm(&self) -> String {
        self.inner.algorithm.clone()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    /// Front points `(f1, f2)`, ascending in `f1`.
    #[getter]
    fn pf(&self) -> Vec<(usize, usize)> {
        self.inner.front.pf.clone()
    }

    /// Selected node indices of one representative per front point.
    #[getter]
    fn ps(&self) -> Vec<Vec<usize>> {
        self.inner.front.ps.iter().map(|x| x.selected()).collect()
    }

    /// Further vectors attaining each front point.
    #[getter]
    fn alternates(&self) -> Vec<Vec<Vec<usize>>> {
        self.inner
            .front
            .alternates
            .iter()
            .map(|alts| alts.iter().map(|x| x.selected()).collect())
            .collect()
    }

    #[getter]
    fn evaluations(&self) -> usize {
        self.inner.evaluations
    }

    #[getter]
    fn generations(&self) -> usize {
        self.inner.generations
    }

    #[getter]
    fn feasible_found(&self) -> bool {
        !self.inner.is_empty_feasible()
    }

    /// Smallest violation in the final population when nothing was feasible.
    #[getter]
    fn min_cv(&self) -> Option<f64> {
        self.inner.infeasible.as_ref().map(|i| i.min_cv)
    }

    #[getter]
    fn wall_seconds(&self) -> f64 {
        self.inner.wall_time.as_secs_f64()
    }

    fn __repr__(&self) -> String {
        format!(
            "RunResult(algorithm={:?}, seed={}, pf={:?})",
            self.inner.algorithm, self.inner.seed, self.inner.front.pf
        )
    }
}

/// Runs the multi-population solver, or the constrained-dominance NSGA-II
/// baseline with `algorithm="nsga2-cdp"`.
#[pyfunction]
#[pyo3(signature = (
    problem, *, algorithm = "lscv-mcea", seed = 0, budget = 100_000, pop_size = 300,
    aux_size = 90, disable_subpop1 = false, disable_subpop2 = false,
    disable_rankings = false, use_cdp_main = false, eps0 = None, threads = 1,
    record_trace = false
))]
#[allow(clippy::too_many_arguments)]
fn solve(
    py: Python<'_>,
    problem: &PyProblem,
    algorithm: &str,
    seed: u64,
    budget: usize,
    pop_size: usize,
    aux_size: usize,
    disable_subpop1: bool,
    disable_subpop2: bool,
    disable_rankings: bool,
    use_cdp_main: bool,
    eps0: Option<f64>,
    threads: usize,
    record_trace: bool,
) -> PyResult<PyRunResult> {
    let cfg = SolverConfig {
        seed,
        max_evaluations: budget,
        pop_size,
        aux_size,
        disable_subpop1,
        disable_subpop2,
        disable_rankings,
        use_cdp_main,
        eps0,
        threads,
        record_trace,
        ..SolverConfig::default()
    };
    type Solver = fn(&ProblemInstance, &SolverConfig) -> moncp_core::Result<RunResult>;
    let run: Solver = match algorithm {
        "lscv-mcea" => core_solve,
        "nsga2-cdp" => nsga2_cdp_solve,
        other => {
            return Err(err(moncp_core::Error::Usage(format!(
                "unknown algorithm '{other}'"
            ))))
        }
    };
    let inner = py.detach(|| run(&problem.inner, &cfg)).map_err(err)?;
    Ok(PyRunResult { inner })
}

type OracleOutput = (Vec<(usize, usize)>, Vec<Vec<Vec<usize>>>);

/// Exact front by enumeration: `(pf, ps)` where `ps[k]` lists every
/// selection attaining `pf[k]`.
#[pyfunction]
#[pyo3(signature = (problem, limit = DEFAULT_LIMIT, threads = 1))]
fn oracle(
    py: Python<'_>,
    problem: &PyProblem,
    limit: usize,
    threads: usize,
) -> PyResult<OracleOutput> {
    let front = py
        .detach(|| enumerate_pareto_threads(&problem.inner, limit, threads))
        .map_err(err)?;
    let ps = front
        .ps
        .iter()
        .map(|set| set.iter().map(|x| x.selected()).collect())
        .collect();
    Ok((front.pf, ps))
}

/// Heuristic driver set; the method defaults to the greedy rule matching
/// the problem's model. Returns a dict with `method`, `drivers`, `f1`,
/// `f2` and `feasible`.
#[pyfunction]
#[pyo3(signature = (problem, method = None))]
fn baseline<'py>(
    py: Python<'py>,
    problem: &PyProblem,
    method: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let method = match method {
        Some(m) => parse(m)?,
        None => BaselineMethod::for_model(problem.inner.model()),
    };
    let r = run_baseline(&problem.inner, method).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("method", r.method)?;
    d.set_item("drivers", r.drivers)?;
    d.set_item("f1", r.f1)?;
    d.set_item("f2", r.f2_raw)?;
    d.set_item("feasible", r.feasible)?;
    Ok(d)
}

fn fronts(points: Vec<Vec<(f64, f64)>>) -> Vec<Front> {
    points.into_iter().map(|p| Front::new(p, "")).collect()
}

fn bounds_of(all: &[&Front]) -> PyResult<Bounds> {
    Bounds::from_fronts(all).ok_or_else(|| {
        err(moncp_core::Error::Metric(
            "no points to derive normalization bounds from".into(),
        ))
    })
}

/// Hypervolume of `(f1, f2)` points (f2 maximized) after normalizing over
/// `front` plus every front in `context`.
#[pyfunction]
#[pyo3(signature = (front, context = Vec::new()))]
fn hypervolume(front: Vec<(f64, f64)>, context: Vec<Vec<(f64, f64)>>) -> PyResult<f64> {
    let front = Front::new(front, "");
    let context = fronts(context);
    let all: Vec<&Front> = std::iter::once(&front).chain(&context).collect();
    if front.is_empty() {
        return Ok(0.0);
    }
    metrics::hypervolume(&front, &bounds_of(&all)?).map_err(err)
}

/// Hypervolume of already normalized minimization points.
#[pyfunction]
fn hypervolume_normalized(points: Vec<(f64, f64)>) -> f64 {
    let pts: Vec<[f64; 2]> = points.into_iter().map(|(a, b)| [a, b]).collect();
    metrics::hypervolume_normalized(&pts)
}

/// Inverted generational distance to `reference`; normalized over both
/// fronts unless `raw` is set.
#[pyfunction]
#[pyo3(signature = (front, reference, raw = false))]
fn igd(front: Vec<(f64, f64)>, reference: Vec<(f64, f64)>, raw: bool) -> PyResult<f64> {
    let front = Front::new(front, "");
    let reference = Front::new(reference, "");
    if raw {
        return metrics::igd_raw(&front, &reference).map_err(err);
    }
    let bounds = bounds_of(&[&front, &reference])?;
    metrics::igd(&front, &reference, &bounds).map_err(err)
}

#[pyfunction]
fn auc(scores: Vec<f64>, labels: Vec<bool>) -> PyResult<f64> {
    metrics::auc(&scores, &labels).map_err(err)
}

/// Two-sided rank-sum p-value for two samples.
#[pyfunction]
fn rank_sum(a: Vec<f64>, b: Vec<f64>) -> PyResult<f64> {
    metrics::rank_sum_compare(&a, &b).map_err(err)
}

/// Random graph with prior targets: `kind="er"` needs `p`, `kind="ba"`
/// needs `m`. Returns `(graph, targets)`.
#[pyfunction]
#[pyo3(signature = (nodes, kind = "er", *, p = None, m = None, directed = false, label_frac = 0.2, seed = 0))]
fn synthetic(
    nodes: usize,
    kind: &str,
    p: Option<f64>,
    m: Option<usize>,
    directed: bool,
    label_frac: f64,
    seed: u64,
) -> PyResult<(PyGraph, Vec<usize>)> {
    let usage = |msg: &str| err(moncp_core::Error::Usage(msg.into()));
    let kind = match kind {
        "er" => GraphKind::Er {
            p: p.ok_or_else(|| usage("kind 'er' needs p"))?,
        },
        "ba" => GraphKind::Ba {
            m: m.ok_or_else(|| usage("kind 'ba' needs m"))?,
        },
        other => return Err(usage(&format!("unknown graph kind '{other}'"))),
    };
    let inst = synth::generate(&SyntheticSpec {
        nodes,
        kind,
        directed,
        label_frac,
        seed,
    })
    .map_err(err)?;
    Ok((PyGraph { inner: inst.graph }, inst.labels.targets()))
}

#[pymodule]
fn moncp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MoncpError", m.py().get_type::<MoncpError>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyProblem>()?;
    m.add_class::<PyRunResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(baseline, m)?)?;
    m.add_function(wrap_pyfunction!(hypervolume, m)?)?;
    m.add_function(wrap_pyfunction!(hypervolume_normalized, m)?)?;
    m.add_function(wrap_pyfunction!(igd, m)?)?;
    m.add_function(wrap_pyfunction!(auc, m)?)?;
    m.add_function(wrap_pyfunction!(rank_sum, m)?)?;
    m.add_function(wrap_pyfunction!(synthetic, m)?)?;
    Ok(())
}
