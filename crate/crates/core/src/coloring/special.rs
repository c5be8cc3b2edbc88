use super::{
    check_small_flow, Color, ColoringError, ColoringKind, EdgeColoring, SMALL, W, X, Y, Z,
};
use crate::flow::{FlowAssignment, FlowError};
use crate::graph::{edge_of, EmbeddedGraph, Vertex};

/// Whether the color-3 edge must point into `v`, read from the cyclic order
/// of colors around `v` started at color 1: `(1,3,2)` and `(1,4,3)` point in,
/// `(1,2,3)` and `(1,3,4)` point out. Anything else is not admissible.
pub fn vertex_is_incoming(
    g: &EmbeddedGraph,
    colors: &[Color],
    v: Vertex,
) -> Result<bool, ColoringError> {
    g.check_vertex(v)?;
    let around: Vec<Color> = g.rotation(v).iter().map(|&d| colors[edge_of(d)]).collect();
    let [a, b, c] = around[..] else {
        return Err(ColoringError::Improper(v));
    };
    let (p, q) = match (a, b, c) {
        (1, p, q) | (q, 1, p) | (p, q, 1) => (p, q),
        _ => return Err(ColoringError::Improper(v)),
    };
    match (p, q) {
        (3, 2) | (4, 3) => Ok(true),
        (2, 3) | (3, 4) => Ok(false),
        _ => Err(ColoringError::Improper(v)),
    }
}

fn check_shape(g: &EmbeddedGraph, c: &EdgeColoring) -> Result<(), ColoringError> {
    if c.kind != ColoringKind::Special4 {
        return Err(ColoringError::WrongKind(ColoringKind::Special4));
    }
    if c.colors.len() != g.edge_count() {
        return Err(ColoringError::EdgeCountMismatch {
            graph: g.edge_count(),
            coloring: c.colors.len(),
        });
    }
    g.require_cubic()?;
    Ok(())
}

/// Check a special 4-edge-coloring: every vertex sees 1, 3 and one of 2, 4
/// in an admissible order, and the two ends of every color-3 edge disagree
/// on its direction.
pub fn special4_check(g: &EmbeddedGraph, c: &EdgeColoring) -> Result<(), ColoringError> {
    check_shape(g, c)?;
    let incoming = (0..g.vertex_count())
        .map(|v| vertex_is_incoming(g, &c.colors, v))
        .collect::<Result<Vec<_>, _>>()?;
    for e in 0..g.edge_count() {
        if c.colors[e] != 3 {
            continue;
        }
        let (tail, head) = (g.tail(e), g.head(e));
        if tail == head {
            return Err(ColoringError::Improper(tail));
        }
        if incoming[tail] == incoming[head] {
            return Err(ColoringError::NotSpecial {
                edge: e,
                tail,
                head,
            });
        }
    }
    Ok(())
}

/// The flow of a special 4-edge-coloring: 1, 2, 4 become `z`, `w`, `y` and
/// color-3 edges carry `x` pointed at the end that expects it.
pub fn special4_to_flow(
    g: &EmbeddedGraph,
    c: &EdgeColoring,
) -> Result<FlowAssignment, ColoringError> {
    special4_check(g, c)?;
    let values = (0..g.edge_count())
        .map(|e| {
            Ok(match c.colors[e] {
                1 => Z,
                2 => W,
                4 => Y,
                _ if vertex_is_incoming(g, &c.colors, g.head(e))? => X,
                _ => X.invert(),
            })
        })
        .collect::<Result<Vec<_>, ColoringError>>()?;
    Ok(FlowAssignment::new(SMALL, values)?)
}

pub fn flow_to_special4(
    g: &EmbeddedGraph,
    f: &FlowAssignment,
) -> Result<EdgeColoring, ColoringError> {
    check_small_flow(g, f)?;
    let colors = f
        .normalized()
        .values()
        .iter()
        .map(|&x| match x {
            Z => 1,
            W => 2,
            Y => 4,
            _ => 3,
        })
        .collect();
    let c = EdgeColoring {
        kind: ColoringKind::Special4,
        colors,
    };
    special4_check(g, &c)
        .map_err(|e| FlowError::StructureViolation(format!("flow gave a bad coloring: {e}")))?;
    Ok(c)
}

/// Number of special 4-edge-colorings, by backtracking over edges in id order.
pub fn count_special4(g: &EmbeddedGraph) -> Result<u64, ColoringError> {
    g.require_cubic()?;
    let m = g.edge_count();
    // Vertices whose last incident edge is `e`.
    let mut closes = vec![Vec::new(); m];
    for v in 0..g.vertex_count() {
        let last = g
            .rotation(v)
            .iter()
            .map(|&d| edge_of(d))
            .max()
            .expect("cubic");
        closes[last].push(v);
    }
    let mut colors = vec![0; m];
    let mut count = 0;
    fn go(
        g: &EmbeddedGraph,
        closes: &[Vec<Vertex>],
        e: usize,
        colors: &mut [Color],
        count: &mut u64,
    ) {
        if e == colors.len() {
            let c = EdgeColoring {
                kind: ColoringKind::Special4,
                colors: colors.to_vec(),
            };
            if special4_check(g, &c).is_ok() {
                *count += 1;
            }
            return;
        }
        for k in 1..=4 {
            colors[e] = k;
            if closes[e]
                .iter()
                .all(|&v| vertex_is_incoming(g, colors, v).is_ok())
            {
                go(g, closes, e + 1, colors, count);
            }
        }
    }
    go(g, &closes, 0, &mut colors, &mut count);
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{count_flows, enumerate_flows, verify, DEFAULT_BUDGET};
    use crate::graph::{enumerate_rotation_systems, Multigraph};

    fn small_cubics() -> Vec<Multigraph> {
        vec![
            Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap(),
            Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
            Multigraph::new(4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (3, 0)]).unwrap(),
            Multigraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap(),
        ]
    }

    #[test]
    fn counts_match_flow_counts_on_every_embedding() {
        for mg in small_cubics() {
            for g in enumerate_rotation_systems(&mg, "g").unwrap() {
                let flows = count_flows(&g, SMALL, true, DEFAULT_BUDGET).unwrap();
                assert_eq!(count_special4(&g).unwrap(), flows);
            }
        }
    }

    #[test]
    fn round_trip_through_colorings() {
        for mg in small_cubics() {
            for g in enumerate_rotation_systems(&mg, "g").unwrap() {
                for f in enumerate_flows(&g, SMALL, true, DEFAULT_BUDGET, usize::MAX).unwrap() {
                    let c = flow_to_special4(&g, &f).unwrap();
                    special4_check(&g, &c).unwrap();
                    let back = special4_to_flow(&g, &c).unwrap();
                    assert!(verify(&g, &back).unwrap().is_valid_nowhere_identity());
                    assert!(back.same_flow(&f));
                }
            }
        }
    }

    #[test]
    fn torus_theta_has_none() {
        let g = EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], vec![0, 2, 4]]).unwrap();
        let mut admissible = 0;
        for code in 0..64u32 {
            let colors = (0..3)
                .map(|i| ((code >> (2 * i)) & 3) as Color + 1)
                .collect();
            let c = EdgeColoring::new(ColoringKind::Special4, colors).unwrap();
            admissible += u32::from(special4_check(&g, &c).is_ok());
        }
        assert_eq!(admissible, 0);
        assert_eq!(count_special4(&g).unwrap(), 0);
    }

    #[test]
    fn reports_the_clashing_edge() {
        // Both ends read (1,2,3), so each wants edge 2 pointing away.
        let g = EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], vec![0, 2, 4]]).unwrap();
        let c = EdgeColoring::new(ColoringKind::Special4, vec![1, 2, 3]).unwrap();
        assert!(matches!(
            special4_check(&g, &c),
            Err(ColoringError::NotSpecial { edge: 2, .. })
        ));
    }
}
