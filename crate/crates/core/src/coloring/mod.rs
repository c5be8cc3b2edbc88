//! Edge colorings of cubic graphs and their translation into flows in the
//! bounded dihedral group with shifts in `{-1, 0, 1}`.
//!
//! Element names used throughout: `z = (-,0)`, `y = (-,1)`, `w = (-,-1)`,
//! `x = (+,1)`.

mod snark;
mod special;

use std::fmt;

use thiserror::Error;

use crate::dihedral::{DihedralElement, GroupContext};
use crate::flow::{verify, FlowAssignment, FlowError};
use crate::graph::{edge_of, Edge, EmbeddedGraph, GraphError, Multigraph, Vertex};

pub use snark::{
    almost_hamiltonian_flow, avc_flow, four_flow_from_coloring, hamiltonian_cycle,
    remainder_coloring, structure_sets, suppress_degree_two, StructureSets, Suppressed,
    STRUCTURE_VERTEX_LIMIT,
};
pub use special::{
    count_special4, flow_to_special4, special4_check, special4_to_flow, vertex_is_incoming,
};

pub type Color = u8;

pub const Z: DihedralElement = DihedralElement::reflection(0);
pub const Y: DihedralElement = DihedralElement::reflection(1);
pub const W: DihedralElement = DihedralElement::reflection(-1);
pub const X: DihedralElement = DihedralElement::rotation(1);

pub(crate) const SMALL: GroupContext = GroupContext::DihedralBounded(2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColoringKind {
    Proper3,
    Special4,
}

impl fmt::Display for ColoringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColoringKind::Proper3 => "proper3",
            ColoringKind::Special4 => "special4",
        })
    }
}

impl std::str::FromStr for ColoringKind {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proper3" => Ok(ColoringKind::Proper3),
            "special4" => Ok(ColoringKind::Special4),
            _ => Err(ColoringError::UnknownKind(s.to_string())),
        }
    }
}

/// One color per edge, colors starting at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub kind: ColoringKind,
    pub colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(kind: ColoringKind, colors: Vec<Color>) -> Result<Self, ColoringError> {
        let top = match kind {
            ColoringKind::Proper3 => 3,
            ColoringKind::Special4 => 4,
        };
        if let Some(e) = colors.iter().position(|&c| c == 0 || c > top) {
            return Err(ColoringError::ColorOutOfRange {
                edge: e,
                color: colors[e],
            });
        }
        Ok(EdgeColoring { kind, colors })
    }

    pub fn color(&self, e: Edge) -> Color {
        self.colors[e]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("unknown coloring kind {0:?}")]
    UnknownKind(String),
    #[error("edge {edge} has color {color}, out of range")]
    ColorOutOfRange { edge: Edge, color: Color },
    #[error("coloring has {coloring} edges but the graph has {graph}")]
    EdgeCountMismatch { graph: usize, coloring: usize },
    #[error("colors at vertex {0} are not admissible")]
    Improper(Vertex),
    #[error("vertices {tail} and {head} of color-3 edge {edge} have the same arrangement")]
    NotSpecial {
        edge: Edge,
        tail: Vertex,
        head: Vertex,
    },
    #[error("expected a {0} coloring")]
    WrongKind(ColoringKind),
    #[error("not a nowhere-identity flow with values among z, y, w, x")]
    NotASmallFlow,
    #[error("{0} is not a Hamiltonian cycle of the graph minus the vertex")]
    NotHamiltonian(String),
    #[error("no simple contractible cycle through an edge at vertex {0}")]
    NoSimpleCycleAtVertex(Vertex),
    #[error("no simple contractible cycle through edge {0}")]
    NoSimpleCycleThroughEdge(Edge),
    #[error("vertices {a} and {b} miss different colors ({missed_a} and {missed_b})")]
    MissedColorClash {
        a: Vertex,
        b: Vertex,
        missed_a: Color,
        missed_b: Color,
    },
    #[error("unsupported structure: {0}")]
    Unsupported(String),
}

/// Proper edge coloring with colors `1..=k` by backtracking over edges in id
/// order, trying colors in increasing order. Loops make it impossible.
pub fn find_proper_coloring(g: &Multigraph, k: Color) -> Option<Vec<Color>> {
    if g.edges.iter().any(|&(t, h)| t == h) {
        return None;
    }
    if (0..g.vertex_count).any(|v| g.degree(v) > k as usize) {
        return None;
    }
    let mut used = vec![0u32; g.vertex_count];
    let mut colors = vec![0; g.edge_count()];
    fn go(g: &Multigraph, k: Color, e: usize, used: &mut [u32], colors: &mut [Color]) -> bool {
        if e == colors.len() {
            return true;
        }
        let (t, h) = g.edges[e];
        for c in 1..=k {
            let bit = 1u32 << c;
            if used[t] & bit != 0 || used[h] & bit != 0 {
                continue;
            }
            used[t] |= bit;
            used[h] |= bit;
            colors[e] = c;
            if go(g, k, e + 1, used, colors) {
                return true;
            }
            used[t] &= !bit;
            used[h] &= !bit;
        }
        false
    }
    go(g, k, 0, &mut used, &mut colors).then_some(colors)
}

/// A proper 3-edge-coloring of a cubic multigraph, if one exists.
pub fn find_3_edge_coloring(g: &Multigraph) -> Result<Option<EdgeColoring>, ColoringError> {
    require_cubic(g)?;
    Ok(find_proper_coloring(g, 3).map(|colors| EdgeColoring {
        kind: ColoringKind::Proper3,
        colors,
    }))
}

pub(crate) fn require_cubic(g: &Multigraph) -> Result<(), ColoringError> {
    match (0..g.vertex_count).find(|&v| g.degree(v) != 3) {
        None => Ok(()),
        Some(v) => Err(GraphError::Degree {
            vertex: v,
            degree: g.degree(v),
            expected: 3,
        }
        .into()),
    }
}

/// Check that each vertex sees every color of `1..=3` exactly once.
pub fn check_proper3(g: &Multigraph, c: &EdgeColoring) -> Result<(), ColoringError> {
    if c.kind != ColoringKind::Proper3 {
        return Err(ColoringError::WrongKind(ColoringKind::Proper3));
    }
    if c.colors.len() != g.edge_count() {
        return Err(ColoringError::EdgeCountMismatch {
            graph: g.edge_count(),
            coloring: c.colors.len(),
        });
    }
    require_cubic(g)?;
    for (v, darts) in g.darts_at().iter().enumerate() {
        let mut seen = 0u8;
        for &d in darts {
            seen |= 1 << c.colors[edge_of(d)];
        }
        if seen != 0b1110 {
            return Err(ColoringError::Improper(v));
        }
    }
    Ok(())
}

/// Embed `g` so that a proper 3-edge-coloring becomes a nowhere-identity flow
/// with values `z`, `y`, `x` on colors 1, 2, 3.
///
/// At each vertex the rotation is (1, 2, 3) when the color-3 edge arrives
/// there and (1, 3, 2) otherwise.
pub fn coloring_to_flow(
    g: &Multigraph,
    c: &EdgeColoring,
) -> Result<(EmbeddedGraph, FlowAssignment), ColoringError> {
    check_proper3(g, c)?;
    let rotations = g
        .darts_at()
        .iter()
        .map(|darts| {
            let by_color = |k: Color| *darts.iter().find(|&&d| c.colors[edge_of(d)] == k).unwrap();
            let (d1, d2, d3) = (by_color(1), by_color(2), by_color(3));
            if d3 % 2 == 0 {
                vec![d1, d2, d3]
            } else {
                vec![d1, d3, d2]
            }
        })
        .collect();
    let embedded = EmbeddedGraph::from_rotations("colored", rotations)?;
    let values = c
        .colors
        .iter()
        .map(|&k| match k {
            1 => Z,
            2 => Y,
            _ => X,
        })
        .collect();
    let f = FlowAssignment::new(SMALL, values)?;
    if !verify(&embedded, &f)?.is_valid_nowhere_identity() {
        return Err(
            FlowError::StructureViolation("colored embedding did not balance".into()).into(),
        );
    }
    Ok((embedded, f))
}

/// Read a proper 3-edge-coloring off a nowhere-identity flow with values
/// among `z`, `y`, `w`, `x`: `z` is color 1, `y` and `w` color 2, the
/// rotations color 3.
pub fn flow_to_coloring(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
) -> Result<EdgeColoring, ColoringError> {
    check_small_flow(g, f)?;
    let colors = f
        .normalized()
        .values()
        .iter()
        .map(|&x| {
            if x == Z {
                1
            } else if x.is_reflection() {
                2
            } else {
                3
            }
        })
        .collect();
    let c = EdgeColoring {
        kind: ColoringKind::Proper3,
        colors,
    };
    check_proper3(&g.underlying(), &c)?;
    Ok(c)
}

pub(crate) fn check_small_flow(g: &EmbeddedGraph, f: &FlowAssignment) -> Result<(), ColoringError> {
    g.require_cubic()?;
    if f.ctx() != SMALL {
        return Err(FlowError::ContextMismatch {
            expected: "Dlt:2",
            found: f.ctx(),
        }
        .into());
    }
    if !verify(g, f)?.is_valid_nowhere_identity() {
        return Err(ColoringError::NotASmallFlow);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{count_flows, DEFAULT_BUDGET};

    fn k4() -> Multigraph {
        Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub(crate) fn petersen() -> Multigraph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        edges.extend((0..5).map(|i| (i, (i + 2) % 5)));
        edges.extend((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)));
        Multigraph::new(10, edges).unwrap()
    }

    fn brute_force_colorable(g: &Multigraph) -> bool {
        let m = g.edge_count() as u32;
        (0..3u64.pow(m)).any(|mut code| {
            let colors: Vec<Color> = (0..m)
                .map(|_| {
                    let c = (code % 3) as Color + 1;
                    code /= 3;
                    c
                })
                .collect();
            check_proper3(
                g,
                &EdgeColoring {
                    kind: ColoringKind::Proper3,
                    colors,
                },
            )
            .is_ok()
        })
    }

    #[test]
    fn k4_colors_and_round_trips() {
        let g = k4();
        let c = find_3_edge_coloring(&g).unwrap().unwrap();
        assert_eq!(c.colors, vec![1, 2, 3, 3, 2, 1]);
        let (emb, f) = coloring_to_flow(&g, &c).unwrap();
        assert_eq!(emb.underlying(), g);
        assert_eq!(flow_to_coloring(&emb, &f).unwrap(), c);
    }

    #[test]
    fn petersen_has_no_coloring() {
        assert_eq!(find_3_edge_coloring(&petersen()).unwrap(), None);
    }

    #[test]
    fn backtracking_agrees_with_brute_force() {
        let graphs = [
            k4(),
            Multigraph::new(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap(),
            Multigraph::new(4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (3, 0)]).unwrap(),
            Multigraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(
                find_3_edge_coloring(g).unwrap().is_some(),
                brute_force_colorable(g)
            );
        }
    }

    #[test]
    fn colored_embedding_flows_exist() {
        let g = k4();
        let c = find_3_edge_coloring(&g).unwrap().unwrap();
        let (emb, _) = coloring_to_flow(&g, &c).unwrap();
        assert!(count_flows(&emb, SMALL, true, DEFAULT_BUDGET).unwrap() > 0);
    }

    #[test]
    fn rejects_bad_colorings() {
        let g = k4();
        let c = EdgeColoring::new(ColoringKind::Proper3, vec![1, 1, 3, 3, 2, 1]).unwrap();
        assert_eq!(
            coloring_to_flow(&g, &c).unwrap_err(),
            ColoringError::Improper(0)
        );
        assert!(EdgeColoring::new(ColoringKind::Proper3, vec![4]).is_err());
    }
}
