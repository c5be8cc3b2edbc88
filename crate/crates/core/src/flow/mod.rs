//! Group-valued flows on embedded graphs.
//!
//! The Kirchhoff product at a vertex multiplies, in rotation order starting
//! at the smallest dart, the value of each edge whose head is there and the
//! inverse of each edge whose tail is there.

mod construct;
mod cycles;
mod lift;
mod reduce;
mod search;

use std::fmt;

use thiserror::Error;

use crate::dihedral::{AlgebraError, DihedralElement, GroupContext};
use crate::graph::{edge_of, head_dart, Dart, Edge, EmbeddedGraph, GraphError, Vertex};

pub use construct::{extend_over_triangle, removal_construction};
pub use cycles::{multiply_cycle, reflection_cycles, shift_reflection_cycle, ReflectionComponent};
pub use lift::{count_bounded_via_lifts, count_lifts, lift};
pub use reduce::{reduce_to_rotation_flow, BlockReason};
pub use search::{
    count_flows, enumerate_flows, find_flow, for_each_flow, FlowSearch, DEFAULT_BUDGET,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("flow has {flow} edges but the graph has {graph}")]
    EdgeCountMismatch { graph: usize, flow: usize },
    #[error("search space of about {estimate} assignments exceeds the budget of {budget}")]
    ComplexityGuard { estimate: u128, budget: u128 },
    #[error("edge {0} does not carry a reflection")]
    NotAReflectionCycle(Edge),
    #[error("cycle does not bound a disk")]
    NonContractible,
    #[error("edge {0} inside the disk carries a reflection")]
    ReflectionInInterior(Edge),
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("invalid input flow: {0}")]
    InvalidFlow(String),
    #[error("expected a {expected} flow, got {found}")]
    ContextMismatch {
        expected: &'static str,
        found: GroupContext,
    },
    #[error("reflection cycle {edges:?} blocks the reduction: {reason}")]
    Blocked {
        edges: Vec<Edge>,
        reason: BlockReason,
    },
    #[error("no admissible triangle value at vertex {0}")]
    NoFeasibleShift(Vertex),
}

/// Edge values together with the orientation they are read in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    ctx: GroupContext,
    heads: Vec<Dart>,
    values: Vec<DihedralElement>,
}

impl FlowAssignment {
    /// Values read in the reference orientation (head dart `2e`).
    pub fn new(ctx: GroupContext, values: Vec<DihedralElement>) -> Result<Self, FlowError> {
        let heads = (0..values.len()).map(head_dart).collect();
        Self::with_heads(ctx, heads, values)
    }

    pub fn with_heads(
        ctx: GroupContext,
        heads: Vec<Dart>,
        values: Vec<DihedralElement>,
    ) -> Result<Self, FlowError> {
        if heads.len() != values.len() {
            return Err(FlowError::InvalidFlow(
                "heads and values differ in length".into(),
            ));
        }
        for (e, (&h, &x)) in heads.iter().zip(&values).enumerate() {
            if edge_of(h) != e {
                return Err(FlowError::InvalidFlow(format!(
                    "dart {h} is not on edge {e}"
                )));
            }
            if !ctx.contains(x) {
                return Err(AlgebraError::OutOfRange {
                    element: x,
                    context: ctx,
                }
                .into());
            }
        }
        Ok(FlowAssignment { ctx, heads, values })
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, e: Edge) -> DihedralElement {
        self.values[e]
    }

    pub fn head(&self, e: Edge) -> Dart {
        self.heads[e]
    }

    pub fn values(&self) -> &[DihedralElement] {
        &self.values
    }

    /// The value of `e` read with `head` as its head dart.
    pub fn value_toward(&self, e: Edge, head: Dart) -> DihedralElement {
        if self.heads[e] == head {
            self.values[e]
        } else {
            self.ctx.inverse(self.values[e])
        }
    }

    /// What dart `d` contributes to the Kirchhoff product at its vertex.
    pub fn contribution(&self, d: Dart) -> DihedralElement {
        self.value_toward(edge_of(d), d)
    }

    pub fn set(&mut self, e: Edge, head: Dart, value: DihedralElement) -> Result<(), FlowError> {
        if edge_of(head) != e {
            return Err(FlowError::InvalidFlow(format!(
                "dart {head} is not on edge {e}"
            )));
        }
        self.heads[e] = head;
        self.values[e] = self.ctx.reduce(value)?;
        Ok(())
    }

    /// Reverse the orientation of `e`, keeping its value.
    pub fn flip(&mut self, e: Edge) {
        self.heads[e] ^= 1;
    }

    /// The same flow read in the reference orientation.
    pub fn normalized(&self) -> Self {
        let values = (0..self.values.len())
            .map(|e| self.value_toward(e, head_dart(e)))
            .collect();
        FlowAssignment {
            ctx: self.ctx,
            heads: (0..self.values.len()).map(head_dart).collect(),
            values,
        }
    }

    /// Equality after normalizing orientations.
    pub fn same_flow(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.normalized().values == other.normalized().values
    }

    pub fn is_nowhere_identity(&self) -> bool {
        self.values.iter().all(|x| !x.is_identity())
    }

    pub fn is_rotation_only(&self) -> bool {
        self.values.iter().all(|x| x.is_rotation())
    }

    pub fn with_ctx(&self, ctx: GroupContext) -> Result<Self, FlowError> {
        Self::with_heads(ctx, self.heads.clone(), self.values.clone())
    }

    pub(crate) fn check_graph(&self, g: &EmbeddedGraph) -> Result<(), FlowError> {
        if self.values.len() == g.edge_count() {
            Ok(())
        } else {
            Err(FlowError::EdgeCountMismatch {
                graph: g.edge_count(),
                flow: self.values.len(),
            })
        }
    }
}

/// Product of `values` in the infinite group, then reduced for modular contexts.
pub(crate) fn product_in(
    ctx: GroupContext,
    values: impl IntoIterator<Item = DihedralElement>,
) -> DihedralElement {
    let raw = values
        .into_iter()
        .fold(DihedralElement::IDENTITY, DihedralElement::compose);
    match ctx {
        GroupContext::DihedralMod(n) | GroupContext::CyclicRotationsMod(n) => raw.project(n),
        _ => raw,
    }
}

pub fn kirchhoff_product(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
    v: Vertex,
) -> Result<DihedralElement, FlowError> {
    f.check_graph(g)?;
    g.check_vertex(v)?;
    Ok(product_in(
        f.ctx,
        g.rotation(v).iter().map(|&d| f.contribution(d)),
    ))
}

/// Outcome of checking a flow.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    /// Vertices whose Kirchhoff product is not the identity, with that product.
    pub bad_vertices: Vec<(Vertex, DihedralElement)>,
    pub identity_edges: Vec<Edge>,
}

impl VerifyReport {
    pub fn is_flow(&self) -> bool {
        self.bad_vertices.is_empty()
    }

    pub fn is_nowhere_identity(&self) -> bool {
        self.identity_edges.is_empty()
    }

    pub fn is_valid_nowhere_identity(&self) -> bool {
        self.is_flow() && self.is_nowhere_identity()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "valid={} nowhere_identity={}",
            yn(self.is_flow()),
            yn(self.is_nowhere_identity())
        )?;
        for (v, p) in &self.bad_vertices {
            write!(f, "\nbad_vertex {v} product={p}")?;
        }
        for e in &self.identity_edges {
            write!(f, "\nidentity_edge {e}")?;
        }
        Ok(())
    }
}

pub fn verify(g: &EmbeddedGraph, f: &FlowAssignment) -> Result<VerifyReport, FlowError> {
    f.check_graph(g)?;
    let mut report = VerifyReport::default();
    for v in 0..g.vertex_count() {
        let p = kirchhoff_product(g, f, v)?;
        if !p.is_identity() {
            report.bad_vertices.push((v, p));
        }
    }
    report.identity_edges = (0..f.edge_count())
        .filter(|&e| f.values[e].is_identity())
        .collect();
    Ok(report)
}

/// Product of the values on edges with exactly one end in `side`, in
/// increasing edge order, read in the reference orientation.
pub fn cutset_product(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
    side: &[Vertex],
) -> Result<DihedralElement, FlowError> {
    f.check_graph(g)?;
    let inside = |v: Vertex| side.contains(&v);
    Ok(product_in(
        f.ctx,
        (0..g.edge_count())
            .filter(|&e| inside(g.head(e)) != inside(g.tail(e)))
            .map(|e| f.value_toward(e, head_dart(e))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> EmbeddedGraph {
        EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], vec![0, 2, 4]]).unwrap()
    }

    fn r(a: i64) -> DihedralElement {
        DihedralElement::rotation(a)
    }

    fn s(a: i64) -> DihedralElement {
        DihedralElement::reflection(a)
    }

    #[test]
    fn theta_torus_bundled_flows() {
        let g = theta();
        for n in 2..=9i64 {
            let ctx = GroupContext::DihedralMod(n as u64);
            let values = if n % 2 == 0 {
                vec![r(n / 2), s(n / 2), s(0)]
            } else {
                vec![r(n - 2), r(1), r(1)]
            };
            let f = FlowAssignment::new(ctx, values).unwrap();
            let report = verify(&g, &f).unwrap();
            assert!(report.is_valid_nowhere_identity(), "n = {n}: {report}");
        }
    }

    #[test]
    fn orientation_change_preserves_validity() {
        let g = theta();
        let ctx = GroupContext::DihedralMod(5);
        let f = FlowAssignment::new(ctx, vec![r(3), r(1), r(1)]).unwrap();
        let mut h = f.clone();
        h.flip(1);
        let x = h.value(1);
        h.set(1, h.head(1), ctx.inverse(x)).unwrap();
        assert!(verify(&g, &h).unwrap().is_flow());
        assert!(h.same_flow(&h.normalized()));
        let mut wrong = f.clone();
        wrong.flip(0);
        assert!(!verify(&g, &wrong).unwrap().is_flow());
    }

    #[test]
    fn report_lists_bad_vertices_and_identity_edges() {
        let g = theta();
        let f = FlowAssignment::new(GroupContext::DihedralMod(4), vec![r(0), r(1), r(1)]).unwrap();
        let report = verify(&g, &f).unwrap();
        assert_eq!(report.identity_edges, vec![0]);
        assert_eq!(report.bad_vertices.len(), 2);
        assert!(report
            .to_string()
            .starts_with("valid=no nowhere_identity=no"));
    }

    #[test]
    fn cutset_of_one_vertex_lies_in_commutator_subgroup() {
        let g = theta();
        let ctx = GroupContext::DihedralMod(6);
        let f = FlowAssignment::new(ctx, vec![r(3), s(3), s(0)]).unwrap();
        let p = cutset_product(&g, &f, &[0]).unwrap();
        assert!(ctx.in_commutator_subgroup(p));
    }

    #[test]
    fn rejects_out_of_context_values() {
        assert!(FlowAssignment::new(GroupContext::DihedralBounded(2), vec![r(2)]).is_err());
        assert!(FlowAssignment::new(GroupContext::CyclicRotationsMod(3), vec![s(1)]).is_err());
    }
}
