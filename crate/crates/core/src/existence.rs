//! Structural answers to whether a nowhere-identity dihedral flow exists.

use std::fmt;

use itertools::Itertools;

use crate::corpus::count_any;
use crate::dihedral::GroupContext;
use crate::flow::{count_flows, FlowError};
use crate::graph::{bridges, delete_edge, Edge, EmbeddedGraph, GraphError};

/// Largest bridge count whose subsets are searched.
pub const BRIDGE_SUBSET_BITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::Yes => "yes",
            Existence::No => "no",
            Existence::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictReason {
    NoPlaneSidedBridge,
    PlaneSidedBridge(Edge),
    Bridgeless,
    OddBridgeSet(Vec<Edge>),
    NoOddBridgeSet,
    SearchResult(u64),
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictReason::NoPlaneSidedBridge => f.write_str("no-plane-sided-bridge"),
            VerdictReason::PlaneSidedBridge(e) => write!(f, "plane-sided-bridge:{e}"),
            VerdictReason::Bridgeless => f.write_str("bridgeless"),
            VerdictReason::OddBridgeSet(b) => write!(f, "odd-bridge-set:{}", b.iter().join(",")),
            VerdictReason::NoOddBridgeSet => f.write_str("no-odd-bridge-set"),
            VerdictReason::SearchResult(n) => write!(f, "search:{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistenceVerdict {
    pub exists: Existence,
    pub reason: VerdictReason,
}

impl fmt::Display for ExistenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exists={} reason={}", self.exists, self.reason)
    }
}

/// Bridges whose deletion leaves some component of genus 0.
pub fn plane_sided_bridges(g: &EmbeddedGraph) -> Vec<Edge> {
    bridges(&g.underlying())
        .into_iter()
        .filter(|&e| {
            delete_edge(g, e)
                .expect("bridge is an edge")
                .iter()
                .any(|piece| piece.graph.genus() == 0)
        })
        .collect()
}

/// Order of the commutator subgroup of the dihedral group of order `2n`.
pub fn commutator_order(n: u64) -> u64 {
    if n % 2 == 0 {
        n / 2
    } else {
        n
    }
}

/// Decide existence of a nowhere-identity flow mod `n`.
///
/// With a commutator subgroup larger than 2 the answer is whether there is
/// no plane-sided bridge. Order 8 is yes when bridgeless and otherwise
/// searched, as is order 4 (abelian).
pub fn devos_verdict(
    g: &EmbeddedGraph,
    n: u64,
    budget: u128,
) -> Result<ExistenceVerdict, FlowError> {
    let ctx = GroupContext::dihedral_mod(n)?;
    if commutator_order(n) > 2 {
        return Ok(match plane_sided_bridges(g).first() {
            None => ExistenceVerdict {
                exists: Existence::Yes,
                reason: VerdictReason::NoPlaneSidedBridge,
            },
            Some(&e) => ExistenceVerdict {
                exists: Existence::No,
                reason: VerdictReason::PlaneSidedBridge(e),
            },
        });
    }
    if n == 4 && bridges(&g.underlying()).is_empty() {
        return Ok(ExistenceVerdict {
            exists: Existence::Yes,
            reason: VerdictReason::Bridgeless,
        });
    }
    let count = count_flows(g, ctx, true, budget)?;
    Ok(ExistenceVerdict {
        exists: if count > 0 {
            Existence::Yes
        } else {
            Existence::No
        },
        reason: VerdictReason::SearchResult(count),
    })
}

/// Decide existence of a nowhere-identity flow with shifts below `n`.
///
/// A plane-sided bridge rules out every flow; for `n` of 3 or 4 so does an
/// odd bridge set. Otherwise the flows are counted, and a count over budget
/// gives [`Existence::Unknown`].
pub fn bounded_verdict(
    g: &EmbeddedGraph,
    n: u64,
    budget: u128,
) -> Result<ExistenceVerdict, FlowError> {
    let ctx = GroupContext::dihedral_bounded(n)?;
    if let Some(&e) = plane_sided_bridges(g).first() {
        return Ok(ExistenceVerdict {
            exists: Existence::No,
            reason: VerdictReason::PlaneSidedBridge(e),
        });
    }
    let odd_applies = n == 3 || n == 4;
    if odd_applies {
        if let Some(b) = odd_bridge_set(g)? {
            return Ok(ExistenceVerdict {
                exists: Existence::No,
                reason: VerdictReason::OddBridgeSet(b),
            });
        }
    }
    match count_any(g, ctx, budget) {
        Ok(count) => Ok(ExistenceVerdict {
            exists: if count > 0 {
                Existence::Yes
            } else {
                Existence::No
            },
            reason: VerdictReason::SearchResult(count),
        }),
        Err(FlowError::ComplexityGuard { .. }) => Ok(ExistenceVerdict {
            exists: Existence::Unknown,
            reason: if odd_applies {
                VerdictReason::NoOddBridgeSet
            } else {
                VerdictReason::NoPlaneSidedBridge
            },
        }),
        Err(e) => Err(e),
    }
}

/// The first odd set `B` of bridges, smallest size first and then
/// lexicographic, such that every `e` in `B` has a genus-0 side once all of
/// `B` is deleted.
pub fn odd_bridge_set(g: &EmbeddedGraph) -> Result<Option<Vec<Edge>>, FlowError> {
    let all = bridges(&g.underlying());
    if all.len() > BRIDGE_SUBSET_BITS as usize {
        return Err(GraphError::ComplexityGuard {
            what: format!("subsets of {} bridges", all.len()),
            limit: 1 << BRIDGE_SUBSET_BITS,
        }
        .into());
    }
    for size in (1..=all.len()).step_by(2) {
        for set in all.iter().copied().combinations(size) {
            if every_side_planar(g, &set) {
                return Ok(Some(set));
            }
        }
    }
    Ok(None)
}

fn every_side_planar(g: &EmbeddedGraph, set: &[Edge]) -> bool {
    let mut raw = g.raw();
    for &e in set {
        raw.remove_edge(e);
    }
    let pieces = raw.into_components(g.name());
    let piece_of = |v| {
        pieces
            .iter()
            .find(|p| p.vertex_origin.contains(&v))
            .expect("every vertex lands in a piece")
    };
    set.iter()
        .all(|&e| piece_of(g.tail(e)).graph.genus() == 0 || piece_of(g.head(e)).graph.genus() == 0)
}

/// Outcome of the structural obstruction to dihedral 3-flows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub holds: bool,
    pub plane_sided: Vec<Edge>,
    pub odd_set: Option<Vec<Edge>>,
    /// Confirming counts, present when the obstruction holds.
    pub d6_count: Option<u64>,
    pub bounded3_count: Option<u64>,
    pub bounded4_count: Option<u64>,
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |c| c.to_string());
        write!(
            f,
            "obstruction={} plane_sided={} odd_set={} d6={} dlt3={} dlt4={}",
            if self.holds { "yes" } else { "no" },
            self.plane_sided.iter().join(","),
            self.odd_set
                .as_ref()
                .map_or("-".to_string(), |b| b.iter().join(",")),
            opt(self.d6_count),
            opt(self.bounded3_count),
            opt(self.bounded4_count),
        )
    }
}

/// No plane-sided bridge but an odd bridge set as in [`odd_bridge_set`]:
/// a D6 flow exists and no flow with shifts below 3 or 4 does. When it
/// holds the counts are confirmed by search, and a disagreement is an error.
pub fn obstrd6_check(g: &EmbeddedGraph, budget: u128) -> Result<ObstructionReport, FlowError> {
    let plane_sided = plane_sided_bridges(g);
    let odd_set = if plane_sided.is_empty() {
        odd_bridge_set(g)?
    } else {
        None
    };
    let mut report = ObstructionReport {
        holds: plane_sided.is_empty() && odd_set.is_some(),
        plane_sided,
        odd_set,
        d6_count: None,
        bounded3_count: None,
        bounded4_count: None,
    };
    if !report.holds {
        return Ok(report);
    }
    let d6 = count_flows(g, GroupContext::DihedralMod(3), true, budget)?;
    let b3 = count_any(g, GroupContext::DihedralBounded(3), budget)?;
    report.d6_count = Some(d6);
    report.bounded3_count = Some(b3);
    report.bounded4_count = match count_any(g, GroupContext::DihedralBounded(4), budget) {
        Ok(c) => Some(c),
        Err(FlowError::ComplexityGuard { .. }) => None,
        Err(e) => return Err(e),
    };
    if d6 == 0 || b3 != 0 || report.bounded4_count.is_some_and(|c| c != 0) {
        return Err(FlowError::StructureViolation(format!(
            "search contradicts the obstruction: {report}"
        )));
    }
    Ok(report)
}
