use std::collections::VecDeque;
use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{product_in, FlowAssignment, FlowError};
use crate::dihedral::{DihedralElement, GroupContext};
use crate::graph::{edge_of, head_dart, tail_dart, Dart, Edge, EmbeddedGraph, Vertex};

/// Default cap on `(number of candidate values) ^ (number of co-tree edges)`.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Exhaustive flow search over a fixed spanning tree.
///
/// The tree is grown breadth first from vertex 0, scanning edges in id
/// order. Co-tree edges are assigned in id order, each over the candidate
/// values in enumeration order; every tree edge is then forced by the
/// Kirchhoff condition at its child end, solved from the leaves upward as
/// soon as all other edges at that vertex are known.
pub struct FlowSearch<'g> {
    graph: &'g EmbeddedGraph,
    ctx: GroupContext,
    nowhere_identity: bool,
    choices: Vec<DihedralElement>,
    cotree: Vec<Edge>,
    parent: Vec<Option<Dart>>,
    initial: Vec<Vertex>,
    after: Vec<Vec<Vertex>>,
}

impl<'g> FlowSearch<'g> {
    pub fn new(
        graph: &'g EmbeddedGraph,
        ctx: GroupContext,
        nowhere_identity: bool,
        budget: u128,
    ) -> Result<Self, FlowError> {
        let mut choices = ctx.elements()?;
        if nowhere_identity {
            choices.retain(|x| !x.is_identity());
        }
        let n = graph.vertex_count();
        let mut parent: Vec<Option<Dart>> = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut in_tree = vec![false; graph.edge_count()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for e in graph.incident_edges(u) {
                if graph.is_loop(e) {
                    continue;
                }
                let w = graph.opposite(e, u);
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    parent[w] = Some(if graph.head(e) == w {
                        head_dart(e)
                    } else {
                        tail_dart(e)
                    });
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        let cotree: Vec<Edge> = (0..graph.edge_count()).filter(|&e| !in_tree[e]).collect();
        let estimate = (choices.len() as u128)
            .checked_pow(cotree.len() as u32)
            .unwrap_or(u128::MAX);
        if estimate > budget {
            return Err(FlowError::ComplexityGuard { estimate, budget });
        }
        let mut slot = vec![None; graph.edge_count()];
        for (i, &e) in cotree.iter().enumerate() {
            slot[e] = Some(i);
        }
        // Step after which each vertex can be settled; children come first.
        let mut ready: Vec<Option<usize>> = vec![None; n];
        let mut initial = Vec::new();
        let mut after = vec![Vec::new(); cotree.len()];
        for &v in order.iter().rev() {
            let own = graph
                .rotation(v)
                .iter()
                .filter_map(|&d| slot[edge_of(d)])
                .max();
            let below = children[v].iter().filter_map(|&c| ready[c]).max();
            ready[v] = own.max(below);
            match ready[v] {
                None => initial.push(v),
                Some(k) => after[k].push(v),
            }
        }
        Ok(FlowSearch {
            graph,
            ctx,
            nowhere_identity,
            choices,
            cotree,
            parent,
            initial,
            after,
        })
    }

    pub fn cotree(&self) -> &[Edge] {
        &self.cotree
    }

    fn contribution(values: &[DihedralElement], d: Dart) -> DihedralElement {
        let x = values[edge_of(d)];
        if d % 2 == 0 {
            x
        } else {
            x.invert()
        }
    }

    fn admissible(&self, x: DihedralElement) -> bool {
        if self.nowhere_identity && x.is_identity() {
            return false;
        }
        match self.ctx {
            GroupContext::DihedralBounded(n) => x.shift.unsigned_abs() < n,
            _ => true,
        }
    }

    fn settle(&self, vertices: &[Vertex], values: &mut [DihedralElement]) -> bool {
        for &v in vertices {
            let rot = self.graph.rotation(v);
            match self.parent[v] {
                None => {
                    let p =
                        product_in(self.ctx, rot.iter().map(|&d| Self::contribution(values, d)));
                    if !p.is_identity() {
                        return false;
                    }
                }
                Some(pd) => {
                    let pos = rot
                        .iter()
                        .position(|&d| d == pd)
                        .expect("parent dart at vertex");
                    let before = product_in(
                        GroupContext::DihedralInfinite,
                        rot[..pos].iter().map(|&d| Self::contribution(values, d)),
                    );
                    let after = product_in(
                        GroupContext::DihedralInfinite,
                        rot[pos + 1..]
                            .iter()
                            .map(|&d| Self::contribution(values, d)),
                    );
                    let seen_from_v = before.invert().compose(after.invert());
                    let raw = if pd % 2 == 0 {
                        seen_from_v
                    } else {
                        seen_from_v.invert()
                    };
                    let x = match self.ctx {
                        GroupContext::DihedralMod(n) | GroupContext::CyclicRotationsMod(n) => {
                            raw.project(n)
                        }
                        _ => raw,
                    };
                    if !self.admissible(x) {
                        return false;
                    }
                    values[edge_of(pd)] = x;
                }
            }
        }
        true
    }

    fn descend<F>(&self, k: usize, values: &mut [DihedralElement], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[DihedralElement]) -> ControlFlow<()>,
    {
        if k == self.cotree.len() {
            return visit(values);
        }
        let e = self.cotree[k];
        for &x in &self.choices {
            values[e] = x;
            if self.settle(&self.after[k], values) {
                self.descend(k + 1, values, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn start(&self) -> Option<Vec<DihedralElement>> {
        let mut values = vec![DihedralElement::IDENTITY; self.graph.edge_count()];
        self.settle(&self.initial, &mut values).then_some(values)
    }

    /// Visit every flow in enumeration order until `visit` breaks.
    pub fn for_each<F>(&self, mut visit: F)
    where
        F: FnMut(&[DihedralElement]) -> ControlFlow<()>,
    {
        if let Some(mut values) = self.start() {
            let _ = self.descend(0, &mut values, &mut visit);
        }
    }

    pub fn count(&self) -> u64 {
        let Some(values) = self.start() else {
            return 0;
        };
        let counter = |mut values: Vec<DihedralElement>, from: usize| {
            let mut count = 0u64;
            let _ = self.descend(from, &mut values, &mut |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            count
        };
        if self.cotree.is_empty() {
            return counter(values, 0);
        }
        self.choices
            .par_iter()
            .map(|&x| {
                let mut values = values.clone();
                values[self.cotree[0]] = x;
                if self.settle(&self.after[0], &mut values) {
                    counter(values, 1)
                } else {
                    0
                }
            })
            .sum()
    }

    pub fn first(&self) -> Option<FlowAssignment> {
        let mut found = None;
        self.for_each(|values| {
            found = Some(values.to_vec());
            ControlFlow::Break(())
        });
        found.map(|v| self.assignment(v))
    }

    pub(crate) fn assignment(&self, values: Vec<DihedralElement>) -> FlowAssignment {
        FlowAssignment::new(self.ctx, values).expect("search only produces values in context")
    }
}

/// Number of flows in `ctx`, counted in the reference orientation.
pub fn count_flows(
    g: &EmbeddedGraph,
    ctx: GroupContext,
    nowhere_identity: bool,
    budget: u128,
) -> Result<u64, FlowError> {
    Ok(FlowSearch::new(g, ctx, nowhere_identity, budget)?.count())
}

/// The first flow in enumeration order.
pub fn find_flow(
    g: &EmbeddedGraph,
    ctx: GroupContext,
    nowhere_identity: bool,
    budget: u128,
) -> Result<Option<FlowAssignment>, FlowError> {
    Ok(FlowSearch::new(g, ctx, nowhere_identity, budget)?.first())
}

/// Visit flows in enumeration order until `visit` breaks.
pub fn for_each_flow<F>(
    g: &EmbeddedGraph,
    ctx: GroupContext,
    nowhere_identity: bool,
    budget: u128,
    mut visit: F,
) -> Result<(), FlowError>
where
    F: FnMut(FlowAssignment) -> ControlFlow<()>,
{
    let search = FlowSearch::new(g, ctx, nowhere_identity, budget)?;
    search.for_each(|values| visit(search.assignment(values.to_vec())));
    Ok(())
}

/// Up to `limit` flows in enumeration order.
pub fn enumerate_flows(
    g: &EmbeddedGraph,
    ctx: GroupContext,
    nowhere_identity: bool,
    budget: u128,
    limit: usize,
) -> Result<Vec<FlowAssignment>, FlowError> {
    let mut out = Vec::new();
    for_each_flow(g, ctx, nowhere_identity, budget, |f| {
        if out.len() >= limit {
            return ControlFlow::Break(());
        }
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::verify;
    use crate::graph::Multigraph;

    fn theta(torus: bool) -> EmbeddedGraph {
        let v1 = if torus { vec![0, 2, 4] } else { vec![0, 4, 2] };
        EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], v1]).unwrap()
    }

    /// Brute force over all edge assignments.
    fn naive_count(g: &EmbeddedGraph, ctx: GroupContext, nowhere_identity: bool) -> u64 {
        let mut els = ctx.elements().unwrap();
        if nowhere_identity {
            els.retain(|x| !x.is_identity());
        }
        let m = g.edge_count();
        let total = els.len().pow(m as u32);
        let mut count = 0;
        for mut code in 0..total {
            let values: Vec<_> = (0..m)
                .map(|_| {
                    let x = els[code % els.len()];
                    code /= els.len();
                    x
                })
                .collect();
            let f = FlowAssignment::new(ctx, values).unwrap();
            if verify(g, &f).unwrap().is_flow() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn agrees_with_brute_force_on_small_maps() {
        let mut graphs = vec![theta(true), theta(false)];
        // A loop pair interleaved at one vertex joined to a second vertex.
        graphs.push(
            EmbeddedGraph::from_rotations("bouquet", vec![vec![1, 2, 4, 3, 5], vec![0]]).unwrap(),
        );
        let k4 = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        graphs.extend(
            crate::graph::enumerate_rotation_systems(&k4, "k4")
                .unwrap()
                .take(3),
        );
        let contexts = [
            GroupContext::DihedralMod(3),
            GroupContext::DihedralMod(4),
            GroupContext::DihedralBounded(2),
            GroupContext::CyclicRotationsMod(3),
        ];
        for g in &graphs {
            for &ctx in &contexts {
                if ctx.elements().unwrap().len().pow(g.edge_count() as u32) > 3_000_000 {
                    continue;
                }
                for nz in [true, false] {
                    let fast = count_flows(g, ctx, nz, DEFAULT_BUDGET).unwrap();
                    assert_eq!(fast, naive_count(g, ctx, nz), "{} {ctx} {nz}", g.name());
                }
            }
        }
    }

    #[test]
    fn theta_torus_has_no_bounded_two_flow() {
        assert_eq!(
            count_flows(
                &theta(true),
                GroupContext::DihedralBounded(2),
                true,
                DEFAULT_BUDGET
            )
            .unwrap(),
            0
        );
    }

    #[test]
    fn found_flows_verify_and_come_first() {
        let g = theta(true);
        let ctx = GroupContext::DihedralMod(4);
        let all = enumerate_flows(&g, ctx, true, DEFAULT_BUDGET, usize::MAX).unwrap();
        assert_eq!(
            all.len() as u64,
            count_flows(&g, ctx, true, DEFAULT_BUDGET).unwrap()
        );
        let first = find_flow(&g, ctx, true, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(first, all[0]);
        for f in &all {
            assert!(verify(&g, f).unwrap().is_valid_nowhere_identity());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = theta(true);
        assert!(matches!(
            count_flows(&g, GroupContext::DihedralMod(4), true, 10),
            Err(FlowError::ComplexityGuard { .. })
        ));
        assert!(count_flows(&g, GroupContext::DihedralInfinite, true, DEFAULT_BUDGET).is_err());
    }
}
