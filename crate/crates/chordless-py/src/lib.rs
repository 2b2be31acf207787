//! Python bindings: a thin Graph wrapper plus the main entry points
//! (recognition, strong coloring, verification, the exact oracle, audits).

use std::collections::{BTreeMap, HashMap};

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use chordless::audit::{run_audit as audit_run, AuditConfig};
use chordless::graph::{generate, load_edge_list, tightness, GeneratorSpec, Graph};
use chordless::strong_coloring::{
    exact_chi_s, strong_color_chordless, verify_strong, ColorPair, OracleOutcome,
    StrongColoringError, StrongEdgeColoring, StrongVerifyError, DEFAULT_ORACLE_EDGE_CAP,
};
use chordless::structure::{blocks, is_chordless, is_minimally_2connected};
use chordless::{EdgePair, DEFAULT_BUDGET_NODES};

/// (flat colors by edge, (class, shade) pairs by edge, colors used, bound claimed)
type StrongColorResult = (
    HashMap<(usize, usize), usize>,
    HashMap<(usize, usize), (usize, usize)>,
    usize,
    usize,
);

#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

fn value_err(msg: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        for &(a, b) in &edges {
            if a == b {
                return Err(value_err(format!("self-loop at vertex {a}")));
            }
        }
        Ok(PyGraph {
            inner: Graph::from_edges(n, edges),
        })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let loaded = load_edge_list(text).map_err(value_err)?;
        Ok(PyGraph {
            inner: loaded.graph.into_unlabelled(),
        })
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: generate(&GeneratorSpec::Cycle { n }).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: generate(&GeneratorSpec::Path { n }).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn tightness(delta: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: tightness(delta).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn random_chordless(base_n: usize, base_m: usize, seed: u64) -> Self {
        PyGraph {
            inner: chordless::corpus::random_chordless(base_n, base_m, seed),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().map(|e| (e.u(), e.v())).collect()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn is_chordless(&self) -> bool {
        is_chordless(&self.inner).is_ok()
    }

    /// The first chord and a cycle it is a chord of, or None.
    fn chord_witness(&self) -> Option<((usize, usize), Vec<usize>)> {
        is_chordless(&self.inner)
            .err()
            .map(|w| ((w.chord.u(), w.chord.v()), w.cycle))
    }

    fn is_minimally_2connected(&self) -> bool {
        is_minimally_2connected(&self.inner)
    }

    fn block_count(&self) -> usize {
        blocks(&self.inner).blocks.len()
    }

    /// Strong-color the graph; returns
    /// (colors: {(u,v): flat}, pairs: {(u,v): (class, shade)}, colors_used, bound_claimed).
    #[pyo3(signature = (budget_nodes = DEFAULT_BUDGET_NODES))]
    fn strong_color(&self, budget_nodes: u64) -> PyResult<StrongColorResult> {
        let out = strong_color_chordless(&self.inner, budget_nodes).map_err(|e| match e {
            StrongColoringError::NotChordless { .. } | StrongColoringError::NoEdges => value_err(e),
            other => PyRuntimeError::new_err(other.to_string()),
        })?;
        let mut flats = HashMap::new();
        let mut pairs = HashMap::new();
        for (e, c) in out.coloring.entries() {
            flats.insert((e.u(), e.v()), c.flat);
            pairs.insert((e.u(), e.v()), (c.class, c.shade));
        }
        Ok((
            flats,
            pairs,
            out.report.colors_used,
            out.report.bound_claimed,
        ))
    }

    /// Checks a {(u,v): color} map; returns None when valid, otherwise a
    /// description of the first violation.
    fn verify_strong(&self, colors: HashMap<(usize, usize), usize>) -> PyResult<Option<String>> {
        let mut map = BTreeMap::new();
        for ((a, b), flat) in colors {
            if a == b {
                return Err(value_err(format!("self-loop at vertex {a}")));
            }
            map.insert(
                EdgePair::new(a, b),
                ColorPair {
                    class: 1,
                    shade: flat,
                    flat,
                },
            );
        }
        Ok(
            match verify_strong(&self.inner, &StrongEdgeColoring::new(map)) {
                Ok(()) => None,
                Err(StrongVerifyError::UncoloredEdge(e)) => {
                    Some(format!("edge {}-{} is uncolored", e.u(), e.v()))
                }
                Err(StrongVerifyError::Violation { e1, e2, kind }) => Some(format!(
                    "edges {}-{} and {}-{} conflict ({kind:?})",
                    e1.u(),
                    e1.v(),
                    e2.u(),
                    e2.v()
                )),
            },
        )
    }

    /// Exact strong chromatic index; raises when the instance exceeds the
    /// edge cap or node budget (the message carries the certified bounds).
    #[pyo3(signature = (edge_cap = DEFAULT_ORACLE_EDGE_CAP, budget_nodes = DEFAULT_BUDGET_NODES))]
    fn exact_chi_s(&self, edge_cap: usize, budget_nodes: u64) -> PyResult<usize> {
        match exact_chi_s(&self.inner, edge_cap, budget_nodes) {
            OracleOutcome::Exact(r) => Ok(r.chi_s),
            OracleOutcome::Bounds {
                lower,
                upper,
                reason,
            } => Err(PyRuntimeError::new_err(format!(
                "{reason}; certified bounds {lower} <= chi_s <= {upper}"
            ))),
        }
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Runs the corpus audit; returns (all_pass, json_report).
#[pyfunction]
#[pyo3(signature = (count = 50, seed = 7, budget_nodes = DEFAULT_BUDGET_NODES))]
fn run_audit(count: usize, seed: u64, budget_nodes: u64) -> PyResult<(bool, String)> {
    let report = audit_run(AuditConfig {
        count,
        seed,
        budget_nodes,
        oracle_cap: DEFAULT_ORACLE_EDGE_CAP,
    });
    let json =
        serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((report.all_pass, json))
}

#[pymodule]
fn chordless_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(run_audit, m)?)?;
    m.add("DEFAULT_BUDGET_NODES", DEFAULT_BUDGET_NODES)?;
    m.add("DEFAULT_ORACLE_EDGE_CAP", DEFAULT_ORACLE_EDGE_CAP)?;
    Ok(())
}
