use std::ops::ControlFlow;

use super::{for_each_flow, FlowAssignment, FlowError};
use crate::dihedral::{DihedralElement, GroupContext};
use crate::graph::{edge_of, Edge, EmbeddedGraph};

/// Lifts of one value to shifts in `-(n-1)..n`. Zero shift has a single lift.
fn preimages(x: DihedralElement, n: u64) -> Vec<DihedralElement> {
    if x.shift == 0 {
        vec![x]
    } else {
        vec![
            x,
            DihedralElement {
                sign: x.sign,
                shift: x.shift - n as i64,
            },
        ]
    }
}

struct Lifter<'a> {
    graph: &'a EmbeddedGraph,
    flow: &'a FlowAssignment,
    options: Vec<Vec<DihedralElement>>,
    /// Vertices whose incident edges are all assigned once edge `e` is.
    closes: Vec<Vec<usize>>,
}

impl<'a> Lifter<'a> {
    fn new(graph: &'a EmbeddedGraph, flow: &'a FlowAssignment) -> Result<Self, FlowError> {
        flow.check_graph(graph)?;
        let n = match flow.ctx() {
            GroupContext::DihedralMod(n) | GroupContext::CyclicRotationsMod(n) => n,
            other => {
                return Err(FlowError::ContextMismatch {
                    expected: "D2n or Zn",
                    found: other,
                })
            }
        };
        if !flow.is_nowhere_identity() {
            return Err(FlowError::InvalidFlow(
                "lifting needs a nowhere-identity flow".into(),
            ));
        }
        let mut closes = vec![Vec::new(); graph.edge_count()];
        for v in 0..graph.vertex_count() {
            if let Some(last) = graph.rotation(v).iter().map(|&d| edge_of(d)).max() {
                closes[last].push(v);
            }
        }
        Ok(Lifter {
            graph,
            flow,
            options: flow.values().iter().map(|&x| preimages(x, n)).collect(),
            closes,
        })
    }

    fn balanced(&self, v: usize, values: &[DihedralElement]) -> bool {
        self.graph
            .rotation(v)
            .iter()
            .map(|&d| {
                let x = values[edge_of(d)];
                if self.flow.head(edge_of(d)) == d {
                    x
                } else {
                    x.invert()
                }
            })
            .fold(DihedralElement::IDENTITY, DihedralElement::compose)
            .is_identity()
    }

    fn walk<F>(&self, e: Edge, values: &mut Vec<DihedralElement>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[DihedralElement]) -> ControlFlow<()>,
    {
        if e == values.len() {
            return visit(values);
        }
        for &x in &self.options[e] {
            values[e] = x;
            if self.closes[e].iter().all(|&v| self.balanced(v, values)) {
                self.walk(e + 1, values, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// A flow with shifts in `-(n-1)..n` projecting onto `f`, if one exists.
/// Edges are decided in id order, trying the shift in `0..n` before the
/// shift minus `n`. The lift keeps the orientation of `f`.
pub fn lift(g: &EmbeddedGraph, f: &FlowAssignment) -> Result<Option<FlowAssignment>, FlowError> {
    let lifter = Lifter::new(g, f)?;
    let n = f.ctx().modulus().expect("checked");
    let mut values = vec![DihedralElement::IDENTITY; g.edge_count()];
    let mut found = None;
    let _ = lifter.walk(0, &mut values, &mut |vals| {
        found = Some(vals.to_vec());
        ControlFlow::Break(())
    });
    found
        .map(|vals| {
            let heads = (0..g.edge_count()).map(|e| f.head(e)).collect();
            FlowAssignment::with_heads(GroupContext::DihedralBounded(n), heads, vals)
        })
        .transpose()
}

/// Number of lifts of `f`.
pub fn count_lifts(g: &EmbeddedGraph, f: &FlowAssignment) -> Result<u64, FlowError> {
    let lifter = Lifter::new(g, f)?;
    let mut values = vec![DihedralElement::IDENTITY; g.edge_count()];
    let mut count = 0;
    let _ = lifter.walk(0, &mut values, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// Nowhere-identity flows with shifts below `n` in absolute value, counted
/// by lifting every nowhere-identity flow of the group of order `2n`.
pub fn count_bounded_via_lifts(g: &EmbeddedGraph, n: u64, budget: u128) -> Result<u64, FlowError> {
    let ctx = GroupContext::dihedral_mod(n)?;
    let mut total = 0;
    let mut failure = None;
    for_each_flow(g, ctx, true, budget, |f| match count_lifts(g, &f) {
        Ok(k) => {
            total += k;
            ControlFlow::Continue(())
        }
        Err(e) => {
            failure = Some(e);
            ControlFlow::Break(())
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}
