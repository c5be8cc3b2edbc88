use super::{
    check_proper3, find_proper_coloring, Color, ColoringError, ColoringKind, EdgeColoring,
};
use crate::dihedral::{DihedralElement, GroupContext};
use crate::flow::{removal_construction, FlowAssignment};
use crate::graph::{
    delete_edge, edge_of, simple_contractible_cycle_through, tail_dart, CycleRef, Edge,
    EmbeddedGraph, GraphError, Multigraph, Vertex,
};

pub const STRUCTURE_VERTEX_LIMIT: usize = 30;
const CYCLE_LIMIT: usize = 100_000;

/// Vertices whose removal leaves a Hamiltonian graph, vertices and edges on
/// some simple contractible cycle, and edges `uv` whose removal together
/// with both ends leaves a 3-edge-colorable graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructureSets {
    pub almost_hamiltonian: Vec<Vertex>,
    pub simple_vertices: Vec<Vertex>,
    pub avc_edges: Vec<Edge>,
    pub simple_edges: Vec<Edge>,
}

pub fn structure_sets(g: &EmbeddedGraph) -> Result<StructureSets, ColoringError> {
    g.require_cubic()?;
    if g.vertex_count() > STRUCTURE_VERTEX_LIMIT {
        return Err(GraphError::ComplexityGuard {
            what: format!("structure search on {} vertices", g.vertex_count()),
            limit: STRUCTURE_VERTEX_LIMIT as u128,
        }
        .into());
    }
    let mg = g.underlying();
    let mut out = StructureSets {
        almost_hamiltonian: (0..g.vertex_count())
            .filter(|&v| hamiltonian_cycle(&mg, Some(v)).is_some())
            .collect(),
        ..Default::default()
    };
    for e in 0..g.edge_count() {
        if simple_contractible_cycle_through(g, e, CYCLE_LIMIT)?.is_some() {
            out.simple_edges.push(e);
            out.simple_vertices.extend([g.tail(e), g.head(e)]);
        }
        if remainder_coloring(g, e)?.is_some() {
            out.avc_edges.push(e);
        }
    }
    out.simple_vertices.sort_unstable();
    out.simple_vertices.dedup();
    Ok(out)
}

/// A Hamiltonian cycle of `g`, or of `g` minus `skip`, as a vertex sequence
/// starting at the smallest vertex. Depth-first with ascending darts.
pub fn hamiltonian_cycle(g: &Multigraph, skip: Option<Vertex>) -> Option<Vec<Vertex>> {
    let alive: Vec<bool> = (0..g.vertex_count).map(|v| Some(v) != skip).collect();
    let total = alive.iter().filter(|&&a| a).count();
    let start = alive.iter().position(|&a| a)?;
    let darts = g.darts_at();
    let mut visited = vec![false; g.vertex_count];
    visited[start] = true;
    let mut path = vec![start];
    let mut used = Vec::new();

    struct Search<'a> {
        g: &'a Multigraph,
        darts: &'a [Vec<usize>],
        alive: &'a [bool],
        total: usize,
        start: Vertex,
    }
    impl Search<'_> {
        fn go(&self, visited: &mut [bool], path: &mut Vec<Vertex>, used: &mut Vec<Edge>) -> bool {
            let here = *path.last().unwrap();
            if path.len() == self.total {
                return self.darts[here].iter().any(|&d| {
                    self.g.dart_vertex(d ^ 1) == self.start && !used.contains(&edge_of(d))
                });
            }
            for &d in &self.darts[here] {
                let next = self.g.dart_vertex(d ^ 1);
                if !self.alive[next] || visited[next] {
                    continue;
                }
                visited[next] = true;
                path.push(next);
                used.push(edge_of(d));
                if self.go(visited, path, used) {
                    return true;
                }
                used.pop();
                path.pop();
                visited[next] = false;
            }
            false
        }
    }
    let search = Search {
        g,
        darts: &darts,
        alive: &alive,
        total,
        start,
    };
    search
        .go(&mut visited, &mut path, &mut used)
        .then_some(path)
}

/// A proper 3-edge-coloring of `g` minus both ends of `e`, on the edges of `g`.
pub fn remainder_coloring(
    g: &EmbeddedGraph,
    e: Edge,
) -> Result<Option<Vec<Option<Color>>>, ColoringError> {
    g.check_edge(e)?;
    if g.is_loop(e) {
        return Ok(None);
    }
    let (rest, origin, _) = g.underlying().without_vertices(&[g.tail(e), g.head(e)]);
    Ok(find_proper_coloring(&rest, 3).map(|colors| {
        let mut out = vec![None; g.edge_count()];
        for (j, c) in colors.into_iter().enumerate() {
            out[origin[j]] = Some(c);
        }
        out
    }))
}

/// A multigraph with its degree-2 vertices smoothed away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suppressed {
    pub graph: Multigraph,
    pub vertex_origin: Vec<Vertex>,
    /// For each new edge, the old edges along it from its tail, each with
    /// whether it is traversed from its own tail to its head.
    pub paths: Vec<Vec<(Edge, bool)>>,
}

pub fn suppress_degree_two(g: &Multigraph) -> Result<Suppressed, ColoringError> {
    let darts = g.darts_at();
    let keep: Vec<bool> = darts.iter().map(|d| d.len() != 2).collect();
    let mut new_id = vec![usize::MAX; g.vertex_count];
    let mut vertex_origin = Vec::new();
    for v in (0..g.vertex_count).filter(|&v| keep[v]) {
        new_id[v] = vertex_origin.len();
        vertex_origin.push(v);
    }
    let mut visited = vec![false; g.edge_count()];
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    for &start in &vertex_origin {
        for &d0 in &darts[start] {
            if visited[edge_of(d0)] {
                continue;
            }
            let mut path = Vec::new();
            let mut d = d0;
            let end = loop {
                let e = edge_of(d);
                visited[e] = true;
                path.push((e, d % 2 == 1));
                let far = g.dart_vertex(d ^ 1);
                if keep[far] {
                    break far;
                }
                d = *darts[far]
                    .iter()
                    .find(|&&x| x != d ^ 1)
                    .expect("degree two");
            };
            edges.push((new_id[start], new_id[end]));
            paths.push(path);
        }
    }
    if let Some(e) = visited.iter().position(|&v| !v) {
        return Err(ColoringError::Unsupported(format!(
            "edge {e} lies on a cycle of degree-two vertices"
        )));
    }
    Ok(Suppressed {
        graph: Multigraph::new(vertex_origin.len(), edges)?,
        vertex_origin,
        paths,
    })
}

/// Nowhere-zero integer 4-flow from a proper 3-edge-coloring: unit flow
/// around the cycles of colors 1 and 2 plus twice the unit flow around the
/// cycles of colors 2 and 3, each cycle traversed from the tail of its
/// smallest edge.
pub fn four_flow_from_coloring(
    g: &Multigraph,
    colors: &[Color],
) -> Result<Vec<i64>, ColoringError> {
    check_proper3(
        g,
        &EdgeColoring {
            kind: ColoringKind::Proper3,
            colors: colors.to_vec(),
        },
    )?;
    let darts = g.darts_at();
    let mut flow = vec![0i64; g.edge_count()];
    for (pair, weight) in [([1, 2], 1), ([2, 3], 2)] {
        let inside = |e: Edge| pair.contains(&colors[e]);
        let mut visited = vec![false; g.edge_count()];
        for e0 in (0..g.edge_count()).filter(|&e| inside(e)) {
            let mut d = tail_dart(e0);
            while !visited[edge_of(d)] {
                visited[edge_of(d)] = true;
                flow[edge_of(d)] += if d % 2 == 1 { weight } else { -weight };
                let at = g.dart_vertex(d ^ 1);
                d = *darts[at]
                    .iter()
                    .find(|&&x| x != d ^ 1 && inside(edge_of(x)))
                    .expect("two edges of each color pair at every vertex");
            }
        }
    }
    Ok(flow)
}

/// Delete `removed`, smooth the result to a cubic graph colored by `colors`,
/// turn the coloring into an integer 4-flow and hand it to
/// [`removal_construction`].
fn removal_from_coloring(
    g: &EmbeddedGraph,
    removed: Edge,
    cycle: &CycleRef,
    colors: &[Option<Color>],
) -> Result<FlowAssignment, ColoringError> {
    let mut pieces = delete_edge(g, removed)?;
    if pieces.len() != 1 {
        return Err(ColoringError::Unsupported(format!(
            "edge {removed} is a bridge"
        )));
    }
    let minor = pieces.remove(0);
    let smooth = suppress_degree_two(&minor.graph.underlying())?;
    let mut path_colors = Vec::new();
    for path in &smooth.paths {
        let seen: Vec<Option<Color>> = path
            .iter()
            .map(|&(e, _)| colors[minor.edge_origin[e]])
            .collect();
        match seen[0] {
            Some(c) if seen.iter().all(|&s| s == Some(c)) => path_colors.push(c),
            _ => {
                return Err(ColoringError::Unsupported(format!(
                    "edges {:?} do not share a color",
                    path.iter()
                        .map(|&(e, _)| minor.edge_origin[e])
                        .collect::<Vec<_>>()
                )))
            }
        }
    }
    let four = four_flow_from_coloring(&smooth.graph, &path_colors)?;
    let mut values = vec![DihedralElement::IDENTITY; minor.graph.edge_count()];
    for (path, &x) in smooth.paths.iter().zip(&four) {
        for &(e, forward) in path {
            values[e] = DihedralElement::rotation(if forward { x } else { -x });
        }
    }
    let h = FlowAssignment::new(GroupContext::DihedralBounded(4), values)?;
    Ok(removal_construction(g, removed, cycle, &h)?)
}

/// Nowhere-identity flow with shifts below 4 built from a Hamiltonian cycle
/// `hamiltonian` of `g` minus `v`.
///
/// The edge at `v` is the first one, by id, on a simple contractible cycle.
/// Deleting it leaves its far end `v1` and `v` of degree two; the cycle is
/// colored 1 on both edges at `v1` and alternately 2, 1 elsewhere, every
/// other edge 3. Nothing here checks that `g` is a snark.
pub fn almost_hamiltonian_flow(
    g: &EmbeddedGraph,
    v: Vertex,
    hamiltonian: &[Vertex],
) -> Result<FlowAssignment, ColoringError> {
    g.require_cubic()?;
    g.check_vertex(v)?;
    let not_ham = || ColoringError::NotHamiltonian(format!("{hamiltonian:?}"));
    let len = hamiltonian.len();
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    for &w in hamiltonian {
        if w >= g.vertex_count() || std::mem::replace(&mut seen[w], true) {
            return Err(not_ham());
        }
    }
    if len + 1 != g.vertex_count() || len % 2 == 0 {
        return Err(not_ham());
    }
    let mut used = vec![false; g.edge_count()];
    let mut along = Vec::with_capacity(len);
    for i in 0..len {
        let (a, b) = (hamiltonian[i], hamiltonian[(i + 1) % len]);
        let e = (0..g.edge_count())
            .find(|&e| {
                !used[e] && !g.is_loop(e) && {
                    let (t, h) = (g.tail(e), g.head(e));
                    (t, h) == (a, b) || (t, h) == (b, a)
                }
            })
            .ok_or_else(not_ham)?;
        used[e] = true;
        along.push(e);
    }
    let mut chosen = None;
    for e in g.incident_edges(v) {
        if g.is_loop(e) {
            return Err(ColoringError::Unsupported(format!(
                "loop {e} at vertex {v}"
            )));
        }
        if let Some(c) = simple_contractible_cycle_through(g, e, CYCLE_LIMIT)? {
            chosen = Some((e, c));
            break;
        }
    }
    let (e1, cycle) = chosen.ok_or(ColoringError::NoSimpleCycleAtVertex(v))?;
    let v1 = g.opposite(e1, v);
    let p = hamiltonian
        .iter()
        .position(|&w| w == v1)
        .expect("v1 is on the cycle");
    let mut colors: Vec<Option<Color>> = vec![Some(3); g.edge_count()];
    colors[e1] = None;
    for k in 0..len {
        let e = along[(p + k) % len];
        colors[e] = Some(if k == 0 || k == len - 1 || k % 2 == 0 {
            1
        } else {
            2
        });
    }
    removal_from_coloring(g, e1, &cycle, &colors)
}

/// Nowhere-identity flow with shifts below 4 built from a proper
/// 3-edge-coloring `remainder` of `g` minus both ends of `e`, given on the
/// edges of `g` with `None` on the five edges touching those ends.
///
/// Fails with [`ColoringError::MissedColorClash`] when the two neighbours of
/// an end miss different colors.
pub fn avc_flow(
    g: &EmbeddedGraph,
    e: Edge,
    remainder: &[Option<Color>],
) -> Result<FlowAssignment, ColoringError> {
    g.require_cubic()?;
    g.check_edge(e)?;
    if remainder.len() != g.edge_count() {
        return Err(ColoringError::EdgeCountMismatch {
            graph: g.edge_count(),
            coloring: remainder.len(),
        });
    }
    if g.is_loop(e) {
        return Err(ColoringError::Unsupported(format!("edge {e} is a loop")));
    }
    let (u, v) = (g.tail(e), g.head(e));
    let others = |w: Vertex| -> Vec<Edge> {
        g.incident_edges(w)
            .into_iter()
            .filter(|&x| x != e)
            .collect()
    };
    let (at_u, at_v) = (others(u), others(v));
    if at_u.len() != 2 || at_v.len() != 2 {
        return Err(ColoringError::Unsupported(format!(
            "edge {e} is parallel to another"
        )));
    }
    let ends = [
        g.opposite(at_u[0], u),
        g.opposite(at_u[1], u),
        g.opposite(at_v[0], v),
        g.opposite(at_v[1], v),
    ];
    let mut distinct = ends.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 4 || distinct.iter().any(|&w| w == u || w == v) {
        return Err(ColoringError::Unsupported(format!(
            "the ends of edge {e} need four distinct other neighbours"
        )));
    }
    let touches = |x: Edge| [g.tail(x), g.head(x)].iter().any(|&w| w == u || w == v);
    let mut colors = vec![None; g.edge_count()];
    for x in (0..g.edge_count()).filter(|&x| !touches(x)) {
        match remainder[x] {
            Some(c @ 1..=3) => colors[x] = Some(c),
            Some(c) => return Err(ColoringError::ColorOutOfRange { edge: x, color: c }),
            None => return Err(ColoringError::Unsupported(format!("edge {x} has no color"))),
        }
    }
    let mut missed = Vec::new();
    for w in (0..g.vertex_count()).filter(|&w| w != u && w != v) {
        let mut mask = 0u8;
        for x in g.incident_edges(w) {
            if let Some(c) = colors[x] {
                if mask & (1 << c) != 0 {
                    return Err(ColoringError::Improper(w));
                }
                mask |= 1 << c;
            }
        }
        if ends.contains(&w) {
            missed.push((
                w,
                (1..=3)
                    .find(|&c| mask & (1 << c) == 0)
                    .expect("two colors present"),
            ));
        }
    }
    let miss = |w: Vertex| missed.iter().find(|m| m.0 == w).expect("neighbour").1;
    for pair in [[ends[0], ends[1]], [ends[2], ends[3]]] {
        let (a, b) = (miss(pair[0]), miss(pair[1]));
        if a != b {
            return Err(ColoringError::MissedColorClash {
                a: pair[0],
                b: pair[1],
                missed_a: a,
                missed_b: b,
            });
        }
    }
    for &x in &at_u {
        colors[x] = Some(miss(ends[0]));
    }
    for &x in &at_v {
        colors[x] = Some(miss(ends[2]));
    }
    let cycle = simple_contractible_cycle_through(g, e, CYCLE_LIMIT)?
        .ok_or(ColoringError::NoSimpleCycleThroughEdge(e))?;
    removal_from_coloring(g, e, &cycle, &colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::flow::verify;

    fn petersen() -> EmbeddedGraph {
        corpus::petersen(corpus::PetersenEmbedding::TwoTorus)
    }

    #[test]
    fn petersen_structure() {
        let g = petersen();
        let s = structure_sets(&g).unwrap();
        assert_eq!(s.almost_hamiltonian, (0..10).collect::<Vec<_>>());
        assert_eq!(hamiltonian_cycle(&g.underlying(), None), None);
        // Petersen minus an edge and its ends is 3-edge-colorable for every edge.
        assert_eq!(s.avc_edges, (0..15).collect::<Vec<_>>());
        assert!(!s.simple_edges.is_empty());
    }

    #[test]
    fn k4_planar_edges_are_all_simple() {
        let g = corpus::k4_planar();
        let s = structure_sets(&g).unwrap();
        assert_eq!(s.simple_edges, (0..6).collect::<Vec<_>>());
        assert_eq!(s.simple_vertices, (0..4).collect::<Vec<_>>());
        assert_eq!(s.almost_hamiltonian, (0..4).collect::<Vec<_>>());
    }

    #[test]
    fn torus_theta_has_no_simple_edges() {
        let g = corpus::theta();
        assert_eq!(structure_sets(&g).unwrap().simple_edges, Vec::<Edge>::new());
    }

    #[test]
    fn almost_hamiltonian_on_petersen() {
        for g in [
            petersen(),
            corpus::petersen(corpus::PetersenEmbedding::OneTorus),
        ] {
            let s = structure_sets(&g).unwrap();
            for &v in &s.simple_vertices {
                let h = hamiltonian_cycle(&g.underlying(), Some(v)).unwrap();
                let f = almost_hamiltonian_flow(&g, v, &h).unwrap();
                assert_eq!(f.ctx(), GroupContext::DihedralBounded(4));
                assert!(verify(&g, &f).unwrap().is_valid_nowhere_identity());
            }
        }
    }

    #[test]
    fn avc_on_petersen() {
        let g = petersen();
        for e in 0..g.edge_count() {
            let c = remainder_coloring(&g, e).unwrap().unwrap();
            let (u, v) = (g.tail(e), g.head(e));
            let ends: Vec<Vertex> = [u, v]
                .iter()
                .flat_map(|&w| {
                    g.incident_edges(w)
                        .into_iter()
                        .filter(|&x| x != e)
                        .map(move |x| (x, w))
                })
                .map(|(x, w)| g.opposite(x, w))
                .collect();
            // Every color is missed an even number of times around the four ends.
            for color in 1..=3u8 {
                let misses = ends
                    .iter()
                    .filter(|&&w| g.incident_edges(w).iter().all(|&x| c[x] != Some(color)))
                    .count();
                assert_eq!(misses % 2, 0);
            }
            match avc_flow(&g, e, &c) {
                Ok(f) => assert!(verify(&g, &f).unwrap().is_valid_nowhere_identity()),
                Err(ColoringError::NoSimpleCycleThroughEdge(_)) => {}
                Err(err) => panic!("edge {e}: {err}"),
            }
        }
    }

    #[test]
    fn avc_rejects_improper_remainder() {
        let g = petersen();
        let mut c = remainder_coloring(&g, 0).unwrap().unwrap();
        let x = c.iter().position(|c| c.is_some()).unwrap();
        let y = (0..c.len())
            .find(|&y| y != x && c[y].is_some() && g.incident_edges(g.tail(x)).contains(&y))
            .unwrap();
        c[x] = c[y];
        assert!(matches!(
            avc_flow(&g, 0, &c),
            Err(ColoringError::Improper(_))
        ));
    }

    #[test]
    fn four_flow_balances() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = find_proper_coloring(&g, 3).unwrap();
        let f = four_flow_from_coloring(&g, &c).unwrap();
        for v in 0..4 {
            let net: i64 = g
                .edges
                .iter()
                .zip(&f)
                .map(|(&(t, h), &x)| {
                    if h == v {
                        x
                    } else if t == v {
                        -x
                    } else {
                        0
                    }
                })
                .sum();
            assert_eq!(net, 0);
        }
        assert!(f.iter().all(|&x| x != 0 && x.abs() < 4));
    }

    #[test]
    fn suppression_of_a_subdivided_theta() {
        let g = Multigraph::new(4, vec![(0, 2), (2, 1), (1, 3), (0, 3), (0, 1)]).unwrap();
        let s = suppress_degree_two(&g).unwrap();
        assert_eq!(s.graph.vertex_count, 2);
        assert_eq!(s.graph.edge_count(), 3);
        assert_eq!(s.paths[0], vec![(0, true), (1, true)]);
        assert_eq!(s.paths[1], vec![(3, true), (2, false)]);
        let ring = Multigraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(suppress_degree_two(&ring).is_err());
    }
}
