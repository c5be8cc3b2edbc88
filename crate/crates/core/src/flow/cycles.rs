use std::collections::{BTreeMap, BTreeSet};

use super::{FlowAssignment, FlowError};
use crate::dihedral::DihedralElement;
use crate::graph::{
    alpha, disk_interior, edge_of, CycleRef, DiskSide, Edge, EmbeddedGraph, UnionFind,
};

/// A connected component of the edges carrying reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionComponent {
    pub edges: Vec<Edge>,
    /// The component as a walk, when it is a simple cycle.
    pub cycle: Option<CycleRef>,
}

impl ReflectionComponent {
    /// Shifts of the reflections on this component.
    pub fn shifts(&self, f: &FlowAssignment) -> BTreeSet<i64> {
        self.edges.iter().map(|&e| f.value(e).shift).collect()
    }

    /// Whether the component carries the reflection with shift 0.
    pub fn contains_zero(&self, f: &FlowAssignment) -> bool {
        self.shifts(f).contains(&0)
    }
}

/// Reflection components ordered by smallest edge. On a cubic graph each one
/// must be a simple cycle and each reflection class a matching.
pub fn reflection_cycles(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
) -> Result<Vec<ReflectionComponent>, FlowError> {
    f.check_graph(g)?;
    let reflecting: Vec<Edge> = (0..g.edge_count())
        .filter(|&e| f.value(e).is_reflection())
        .collect();
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in &reflecting {
        uf.union(g.head(e), g.tail(e));
    }
    let mut groups: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for &e in &reflecting {
        groups.entry(uf.find(g.head(e))).or_default().push(e);
    }
    let mut out: Vec<ReflectionComponent> = groups
        .into_values()
        .map(|edges| ReflectionComponent {
            cycle: CycleRef::from_edges(g, &edges).ok(),
            edges,
        })
        .collect();
    out.sort_by_key(|c| c.edges[0]);
    if g.is_cubic() {
        if let Some(bad) = out.iter().find(|c| c.cycle.is_none()) {
            return Err(FlowError::StructureViolation(format!(
                "reflection edges {:?} do not form a cycle",
                bad.edges
            )));
        }
        for (shift, edges) in reflection_matchings(g, f)? {
            let mut seen = BTreeSet::new();
            for e in edges {
                for v in [g.head(e), g.tail(e)] {
                    if !seen.insert(v) {
                        return Err(FlowError::StructureViolation(format!(
                            "reflections with shift {shift} meet at vertex {v}"
                        )));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Edges grouped by the shift of the reflection they carry.
pub fn reflection_matchings(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
) -> Result<BTreeMap<i64, Vec<Edge>>, FlowError> {
    f.check_graph(g)?;
    let mut out: BTreeMap<i64, Vec<Edge>> = BTreeMap::new();
    for e in 0..g.edge_count() {
        let x = f.value(e);
        if x.is_reflection() {
            out.entry(x.shift).or_default().push(e);
        }
    }
    Ok(out)
}

/// Right-multiply every value on a reflection component by the rotation `-a`.
pub fn shift_reflection_cycle(
    f: &FlowAssignment,
    edges: &[Edge],
    a: i64,
) -> Result<FlowAssignment, FlowError> {
    let ctx = f.ctx();
    let step = ctx.reduce(DihedralElement::rotation(-a))?;
    let mut out = f.clone();
    for &e in edges {
        if e >= f.edge_count() {
            return Err(crate::graph::GraphError::NoSuchEdge(e).into());
        }
        let x = f.value(e);
        if !x.is_reflection() {
            return Err(FlowError::NotAReflectionCycle(e));
        }
        out.set(e, f.head(e), ctx.multiply(x, step)?)?;
    }
    Ok(out)
}

/// Multiply the values on a contractible cycle by a reflection and reverse
/// the rotations strictly inside the disk it bounds.
///
/// The cycle is oriented with the disk on its left, rotation values on it are
/// read along that direction, and every value on it is right-multiplied by
/// `reflector`. When both sides are disks the side chosen by
/// [`disk_interior`] is used.
pub fn multiply_cycle(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
    c: &CycleRef,
    reflector: DihedralElement,
) -> Result<FlowAssignment, FlowError> {
    f.check_graph(g)?;
    let side = disk_interior(g, c)?.ok_or(FlowError::NonContractible)?;
    multiply_on_side(f, c, &side, reflector)
}

pub(crate) fn multiply_on_side(
    f: &FlowAssignment,
    c: &CycleRef,
    side: &DiskSide,
    reflector: DihedralElement,
) -> Result<FlowAssignment, FlowError> {
    let ctx = f.ctx();
    if !ctx.has_reflections() || !reflector.is_reflection() || !ctx.contains(reflector) {
        return Err(FlowError::InvalidFlow(format!(
            "{reflector} is not a reflection of {ctx}"
        )));
    }
    if let Some(&e) = side
        .interior_edges
        .iter()
        .find(|&&e| f.value(e).is_reflection())
    {
        return Err(FlowError::ReflectionInInterior(e));
    }
    let mut out = f.clone();
    for &e in &side.interior_edges {
        out.flip(e);
    }
    for &d in side.orient(c).darts() {
        let e = edge_of(d);
        let along = out.value_toward(e, alpha(d));
        out.set(e, alpha(d), ctx.multiply(along, reflector)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::GroupContext;
    use crate::flow::{enumerate_flows, verify, DEFAULT_BUDGET};
    use crate::graph::{enumerate_rotation_systems, Multigraph};

    fn planar_k4() -> Vec<EmbeddedGraph> {
        let k4 = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        enumerate_rotation_systems(&k4, "k4").unwrap().collect()
    }

    #[test]
    fn facial_multiplication_keeps_flows_valid() {
        for g in planar_k4() {
            for n in [3, 4, 5] {
                let ctx = GroupContext::DihedralMod(n);
                for f in enumerate_flows(&g, ctx, true, DEFAULT_BUDGET, 40).unwrap() {
                    for face in g.faces().faces {
                        let Ok(c) = CycleRef::new(&g, face) else {
                            continue;
                        };
                        if !c.is_simple(&g) {
                            continue;
                        }
                        match multiply_cycle(&g, &f, &c, DihedralElement::reflection(0)) {
                            Ok(h) => {
                                assert!(verify(&g, &h).unwrap().is_flow());
                                let back =
                                    multiply_cycle(&g, &h, &c, DihedralElement::reflection(0))
                                        .unwrap();
                                assert!(back.same_flow(&f));
                            }
                            Err(FlowError::NonContractible) => {}
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shift_keeps_reflections_and_validity() {
        let g = &planar_k4()[0];
        let ctx = GroupContext::DihedralMod(5);
        for f in enumerate_flows(g, ctx, true, DEFAULT_BUDGET, 200).unwrap() {
            for comp in reflection_cycles(g, &f).unwrap() {
                for a in 0..5 {
                    let h = shift_reflection_cycle(&f, &comp.edges, a).unwrap();
                    assert!(verify(g, &h).unwrap().is_flow());
                    let back: BTreeSet<i64> = comp
                        .shifts(&h)
                        .iter()
                        .map(|s| (s - a).rem_euclid(5))
                        .collect();
                    assert_eq!(back, comp.shifts(&f));
                }
            }
        }
    }

    #[test]
    fn shift_rejects_rotation_edges() {
        let ctx = GroupContext::DihedralMod(3);
        let f = FlowAssignment::new(ctx, vec![DihedralElement::rotation(1)]).unwrap();
        assert_eq!(
            shift_reflection_cycle(&f, &[0], 1),
            Err(FlowError::NotAReflectionCycle(0))
        );
    }
}
