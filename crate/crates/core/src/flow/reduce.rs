use std::fmt;

use super::cycles::multiply_on_side;
use super::{
    reflection_cycles, shift_reflection_cycle, verify, FlowAssignment, FlowError,
    ReflectionComponent,
};
use crate::dihedral::{DihedralElement, GroupContext};
use crate::graph::{disk_sides, is_contractible, simple_cycles_through, EmbeddedGraph};

const SUBCYCLE_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockReason {
    NonContractible,
    ContainsAllReflections,
    /// The component is not a simple cycle and every simple cycle in it bounds a disk.
    NotACycle,
}

impl fmt::Display for BlockReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockReason::NonContractible => "non-contractible",
            BlockReason::ContainsAllReflections => "contains-all-reflections",
            BlockReason::NotACycle => "not-a-cycle",
        })
    }
}

/// Turn a nowhere-identity flow in the dihedral group of order `2n` into one
/// using rotations only, one reflection cycle at a time from the inside out.
///
/// Fails with [`FlowError::Blocked`] when some reflection component is not a
/// contractible simple cycle, or carries the zero reflection together with
/// every other reflection so that no shift can clear it.
pub fn reduce_to_rotation_flow(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
) -> Result<FlowAssignment, FlowError> {
    let GroupContext::DihedralMod(n) = f.ctx() else {
        return Err(FlowError::ContextMismatch {
            expected: "D2n",
            found: f.ctx(),
        });
    };
    if !verify(g, f)?.is_valid_nowhere_identity() {
        return Err(FlowError::InvalidFlow("not a nowhere-identity flow".into()));
    }
    let mut current = f.clone();
    loop {
        let comps = reflection_cycles(g, &current)?;
        if comps.is_empty() {
            return Ok(current);
        }
        for comp in &comps {
            check_contractible(g, comp)?;
        }
        for comp in &comps {
            if !comp.contains_zero(&current) {
                continue;
            }
            let shifts = comp.shifts(&current);
            if shifts.len() as u64 >= n {
                return Err(FlowError::Blocked {
                    edges: comp.edges.clone(),
                    reason: BlockReason::ContainsAllReflections,
                });
            }
            let a = (1..n as i64)
                .find(|a| !shifts.contains(&(n as i64 - a)))
                .expect("a reflection is missing");
            current = shift_reflection_cycle(&current, &comp.edges, a)?;
        }
        let mut best = None;
        for comp in &comps {
            let cycle = comp.cycle.as_ref().expect("checked above");
            for side in disk_sides(g, cycle)? {
                if side
                    .interior_edges
                    .iter()
                    .any(|&e| current.value(e).is_reflection())
                {
                    continue;
                }
                let key = (side.interior_edges.len(), comp.edges[0]);
                if best.as_ref().map_or(true, |(k, _, _)| key < *k) {
                    best = Some((key, cycle.clone(), side));
                }
            }
        }
        let (_, cycle, side) = best.ok_or_else(|| {
            FlowError::StructureViolation(
                "no reflection cycle bounds a reflection-free disk".into(),
            )
        })?;
        current = multiply_on_side(&current, &cycle, &side, DihedralElement::reflection(0))?;
        debug_assert!(verify(g, &current)?.is_valid_nowhere_identity());
    }
}

fn check_contractible(g: &EmbeddedGraph, comp: &ReflectionComponent) -> Result<(), FlowError> {
    let blocked = |reason| FlowError::Blocked {
        edges: comp.edges.clone(),
        reason,
    };
    match &comp.cycle {
        Some(c) if is_contractible(g, c)? => Ok(()),
        Some(_) => Err(blocked(BlockReason::NonContractible)),
        None => {
            for &e in &comp.edges {
                for c in simple_cycles_through(g, e, SUBCYCLE_LIMIT)? {
                    if c.edges().iter().all(|x| comp.edges.contains(x)) && !is_contractible(g, &c)?
                    {
                        return Err(blocked(BlockReason::NonContractible));
                    }
                }
            }
            Err(blocked(BlockReason::NotACycle))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{enumerate_flows, DEFAULT_BUDGET};
    use crate::graph::{enumerate_rotation_systems, Multigraph};

    #[test]
    fn planar_flows_always_reduce() {
        let k4 = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for g in enumerate_rotation_systems(&k4, "k4").unwrap() {
            if g.genus() != 0 {
                continue;
            }
            for n in [4, 5] {
                let ctx = GroupContext::DihedralMod(n);
                for f in enumerate_flows(&g, ctx, true, DEFAULT_BUDGET, usize::MAX).unwrap() {
                    match reduce_to_rotation_flow(&g, &f) {
                        Ok(h) => {
                            assert!(h.is_rotation_only());
                            assert!(verify(&g, &h).unwrap().is_valid_nowhere_identity());
                        }
                        // A 4-cycle can carry all four reflections of the group of order 8.
                        Err(FlowError::Blocked {
                            edges,
                            reason: BlockReason::ContainsAllReflections,
                        }) => assert!(n == 4 && edges.len() == 4),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn torus_theta_reflection_cycle_is_blocked() {
        let g = EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], vec![0, 2, 4]]).unwrap();
        let f = FlowAssignment::new(
            GroupContext::DihedralMod(4),
            vec![
                DihedralElement::rotation(2),
                DihedralElement::reflection(2),
                DihedralElement::reflection(0),
            ],
        )
        .unwrap();
        assert_eq!(
            reduce_to_rotation_flow(&g, &f),
            Err(FlowError::Blocked {
                edges: vec![1, 2],
                reason: BlockReason::NonContractible
            })
        );
    }
}
