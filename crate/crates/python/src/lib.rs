//! Python bindings: graphs, flows, counting, existence verdicts and colorings.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use dflow::coloring::{coloring_to_flow, find_3_edge_coloring, flow_to_coloring};
use dflow::corpus;
use dflow::existence::{bounded_verdict, devos_verdict, obstrd6_check, ExistenceVerdict};
use dflow::flow::{self, DEFAULT_BUDGET};
use dflow::graph::enumerate_rotation_systems;
use dflow::text;
use dflow::{
    ColoringError, ColoringKind, DihedralElement, EdgeColoring, EmbeddedGraph, FlowAssignment,
    FlowError, GraphError, GroupContext, Multigraph,
};

create_exception!(
    pydflow,
    DflowError,
    PyException,
    "A dflow operation failed."
);
create_exception!(
    pydflow,
    ComplexityGuard,
    DflowError,
    "The search space exceeds the budget."
);

fn flow_err(e: FlowError) -> PyErr {
    match e {
        FlowError::ComplexityGuard { .. }
        | FlowError::Graph(GraphError::ComplexityGuard { .. }) => {
            ComplexityGuard::new_err(e.to_string())
        }
        other => DflowError::new_err(other.to_string()),
    }
}

fn graph_err(e: GraphError) -> PyErr {
    flow_err(e.into())
}

fn coloring_err(e: ColoringError) -> PyErr {
    match e {
        ColoringError::Flow(f) => flow_err(f),
        ColoringError::Graph(g) => graph_err(g),
        other => DflowError::new_err(other.to_string()),
    }
}

fn parse_err(e: text::ParseError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ctx_of(s: &str) -> PyResult<GroupContext> {
    s.parse()
        .map_err(|e: dflow::AlgebraError| PyValueError::new_err(e.to_string()))
}

fn element_of(s: &str) -> PyResult<DihedralElement> {
    s.parse()
        .map_err(|e: dflow::AlgebraError| PyValueError::new_err(e.to_string()))
}

/// An embedded graph given by its rotation system.
#[pyclass(name = "Graph", frozen)]
struct PyGraph(EmbeddedGraph);

#[pymethods]
impl PyGraph {
    /// Build from rotations: `rotations[v]` lists the darts at `v` in cyclic
    /// order; edge `e` has darts `2e` (head) and `2e + 1` (tail).
    #[new]
    #[pyo3(signature = (rotations, name = "graph"))]
    fn new(rotations: Vec<Vec<usize>>, name: &str) -> PyResult<Self> {
        EmbeddedGraph::from_rotations(name, rotations)
            .map(PyGraph)
            .map_err(graph_err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        text::parse_graph(text).map(PyGraph).map_err(parse_err)
    }

    fn to_text(&self) -> String {
        text::write_graph(&self.0)
    }

    #[getter]
    fn name(&self) -> &str {
        self.0.name()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.0.genus()
    }

    #[getter]
    fn rotations(&self) -> Vec<Vec<usize>> {
        self.0.rotations().to_vec()
    }

    /// Face walks as dart lists.
    fn faces(&self) -> Vec<Vec<usize>> {
        self.0.faces().faces
    }

    /// `(tail, head)` for every edge.
    fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.0.edge_count())
            .map(|e| (self.0.tail(e), self.0.head(e)))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({:?}, vertices={}, edges={}, genus={})",
            self.0.name(),
            self.0.vertex_count(),
            self.0.edge_count(),
            self.0.genus()
        )
    }
}

/// Edge values in a group context, read in the reference orientation.
#[pyclass(name = "Flow", frozen)]
struct PyFlow(FlowAssignment);

#[pymethods]
impl PyFlow {
    #[new]
    fn new(ctx: &str, values: Vec<String>) -> PyResult<Self> {
        let ctx = ctx_of(ctx)?;
        let values = values
            .iter()
            .map(|v| element_of(v))
            .collect::<PyResult<Vec<_>>>()?;
        FlowAssignment::new(ctx, values)
            .map(PyFlow)
            .map_err(flow_err)
    }

    /// Returns `(name, flow)`.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<(String, Self)> {
        let (name, f) = text::parse_flow(text).map_err(parse_err)?;
        Ok((name, PyFlow(f)))
    }

    #[pyo3(signature = (name = "flow"))]
    fn to_text(&self, name: &str) -> String {
        text::write_flow(name, &self.0)
    }

    #[getter]
    fn ctx(&self) -> String {
        self.0.ctx().to_string()
    }

    #[getter]
    fn values(&self) -> Vec<String> {
        self.0
            .normalized()
            .values()
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn is_rotation_only(&self) -> bool {
        self.0.is_rotation_only()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0.same_flow(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("Flow({:?}, {:?})", self.ctx(), self.values())
    }
}

fn budget_or_default(budget: Option<u128>) -> u128 {
    budget.unwrap_or(DEFAULT_BUDGET)
}

/// Product `x * y` in a context, e.g. `multiply("-1", "+2", "D2n:5")`.
#[pyfunction]
fn multiply(x: &str, y: &str, ctx: &str) -> PyResult<String> {
    let ctx = ctx_of(ctx)?;
    let read = |s: &str| -> PyResult<DihedralElement> {
        ctx.reduce(element_of(s)?)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    };
    ctx.multiply(read(x)?, read(y)?)
        .map(|z| z.to_string())
        .map_err(|e| DflowError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (g, ctx, nowhere_identity = true, budget = None))]
fn count_flows(
    g: &PyGraph,
    ctx: &str,
    nowhere_identity: bool,
    budget: Option<u128>,
) -> PyResult<u64> {
    let ctx = ctx_of(ctx)?;
    let budget = budget_or_default(budget);
    if nowhere_identity {
        corpus::count_any(&g.0, ctx, budget).map_err(flow_err)
    } else {
        flow::count_flows(&g.0, ctx, false, budget).map_err(flow_err)
    }
}

#[pyfunction]
#[pyo3(signature = (g, ctx, nowhere_identity = true, budget = None))]
fn find_flow(
    g: &PyGraph,
    ctx: &str,
    nowhere_identity: bool,
    budget: Option<u128>,
) -> PyResult<Option<PyFlow>> {
    let found = flow::find_flow(
        &g.0,
        ctx_of(ctx)?,
        nowhere_identity,
        budget_or_default(budget),
    );
    Ok(found.map_err(flow_err)?.map(PyFlow))
}

/// `(is_flow, is_nowhere_identity)`.
#[pyfunction]
fn verify(g: &PyGraph, f: &PyFlow) -> PyResult<(bool, bool)> {
    let r = flow::verify(&g.0, &f.0).map_err(flow_err)?;
    Ok((r.is_flow(), r.is_nowhere_identity()))
}

#[pyfunction]
fn lift(g: &PyGraph, f: &PyFlow) -> PyResult<Option<PyFlow>> {
    Ok(flow::lift(&g.0, &f.0).map_err(flow_err)?.map(PyFlow))
}

/// Rotation-only flow in the same group; raises when a reflection cycle blocks it.
#[pyfunction]
fn reduce_to_rotation_flow(g: &PyGraph, f: &PyFlow) -> PyResult<PyFlow> {
    flow::reduce_to_rotation_flow(&g.0, &f.0)
        .map(PyFlow)
        .map_err(flow_err)
}

fn verdict(v: ExistenceVerdict) -> (String, String) {
    (v.exists.to_string(), v.reason.to_string())
}

/// `(exists, reason)` for D2n:n, with `exists` one of yes/no/unknown.
#[pyfunction]
#[pyo3(signature = (g, n, budget = None))]
fn exists_d2n(g: &PyGraph, n: u64, budget: Option<u128>) -> PyResult<(String, String)> {
    devos_verdict(&g.0, n, budget_or_default(budget))
        .map(verdict)
        .map_err(flow_err)
}

/// `(exists, reason)` for flows with shifts below n.
#[pyfunction]
#[pyo3(signature = (g, n, budget = None))]
fn exists_bounded(g: &PyGraph, n: u64, budget: Option<u128>) -> PyResult<(String, String)> {
    bounded_verdict(&g.0, n, budget_or_default(budget))
        .map(verdict)
        .map_err(flow_err)
}

/// Whether the bridge obstruction to dihedral 3-flows holds, and its odd bridge set.
#[pyfunction]
#[pyo3(signature = (g, budget = None))]
fn obstruction(g: &PyGraph, budget: Option<u128>) -> PyResult<(bool, Option<Vec<usize>>)> {
    let r = obstrd6_check(&g.0, budget_or_default(budget)).map_err(flow_err)?;
    Ok((r.holds, r.odd_set))
}

/// All rotation systems of a multigraph given by `(tail, head)` edges.
#[pyfunction]
#[pyo3(signature = (vertex_count, edges, name = "graph"))]
fn rotation_systems(
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    name: &str,
) -> PyResult<Vec<PyGraph>> {
    let mg = Multigraph::new(vertex_count, edges).map_err(graph_err)?;
    Ok(enumerate_rotation_systems(&mg, name)
        .map_err(graph_err)?
        .map(PyGraph)
        .collect())
}

/// Colors 1..=3 per edge, or None.
#[pyfunction]
fn three_edge_coloring(
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
) -> PyResult<Option<Vec<u8>>> {
    let mg = Multigraph::new(vertex_count, edges).map_err(graph_err)?;
    Ok(find_3_edge_coloring(&mg)
        .map_err(coloring_err)?
        .map(|c| c.colors))
}

/// Embedding and flow with shifts below 2 induced by a proper 3-edge-coloring.
#[pyfunction]
fn coloring_flow(
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    colors: Vec<u8>,
) -> PyResult<(PyGraph, PyFlow)> {
    let mg = Multigraph::new(vertex_count, edges).map_err(graph_err)?;
    let c = EdgeColoring::new(ColoringKind::Proper3, colors).map_err(coloring_err)?;
    let (g, f) = coloring_to_flow(&mg, &c).map_err(coloring_err)?;
    Ok((PyGraph(g), PyFlow(f)))
}

#[pyfunction]
fn flow_coloring(g: &PyGraph, f: &PyFlow) -> PyResult<Vec<u8>> {
    Ok(flow_to_coloring(&g.0, &f.0).map_err(coloring_err)?.colors)
}

#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    corpus::NAMES.to_vec()
}

/// Embedding `k` (1-based) of a corpus entry.
#[pyfunction]
#[pyo3(signature = (name, k = 1))]
fn corpus_graph(name: &str, k: usize) -> PyResult<PyGraph> {
    let entry = corpus::corpus_entry(name)
        .ok_or_else(|| PyValueError::new_err(format!("no corpus entry {name:?}")))?;
    k.checked_sub(1)
        .and_then(|i| entry.embeddings.get(i))
        .map(|g| PyGraph(g.clone()))
        .ok_or_else(|| {
            PyValueError::new_err(format!(
                "{name} has embeddings 1..={}",
                entry.embeddings.len()
            ))
        })
}

/// Flows bundled with the first embedding of a corpus entry.
#[pyfunction]
fn corpus_flows(name: &str) -> PyResult<Vec<PyFlow>> {
    let entry = corpus::corpus_entry(name)
        .ok_or_else(|| PyValueError::new_err(format!("no corpus entry {name:?}")))?;
    Ok(entry.flows.into_iter().map(PyFlow).collect())
}

#[pymodule]
fn pydflow(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DflowError", m.py().get_type::<DflowError>())?;
    m.add("ComplexityGuard", m.py().get_type::<ComplexityGuard>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyFlow>()?;
    m.add_function(wrap_pyfunction!(multiply, m)?)?;
    m.add_function(wrap_pyfunction!(count_flows, m)?)?;
    m.add_function(wrap_pyfunction!(find_flow, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_to_rotation_flow, m)?)?;
    m.add_function(wrap_pyfunction!(exists_d2n, m)?)?;
    m.add_function(wrap_pyfunction!(exists_bounded, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(rotation_systems, m)?)?;
    m.add_function(wrap_pyfunction!(three_edge_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(coloring_flow, m)?)?;
    m.add_function(wrap_pyfunction!(flow_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_graph, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_flows, m)?)?;
    Ok(())
}
