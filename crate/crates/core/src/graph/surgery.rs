use super::{
    edge_of, head_dart, tail_dart, Edge, EmbeddedGraph, GraphError, RawMap, Relabeled, Vertex,
};

/// Remove edge `e`. Returns one entry per connected component of what remains,
/// ordered by smallest original vertex.
pub fn delete_edge(g: &EmbeddedGraph, e: Edge) -> Result<Vec<Relabeled>, GraphError> {
    g.check_edge(e)?;
    let mut raw = g.raw();
    raw.remove_edge(e);
    Ok(raw.into_components(g.name()))
}

/// Contract non-loop edge `e`, merging its ends into the smaller vertex id.
pub fn contract_edge(g: &EmbeddedGraph, e: Edge) -> Result<Relabeled, GraphError> {
    g.check_edge(e)?;
    if g.is_loop(e) {
        return Err(GraphError::Loop(e));
    }
    let (u, v) = (g.tail(e), g.head(e));
    let after = |vertex: Vertex, dart| {
        let rot = g.rotation(vertex);
        let pos = rot
            .iter()
            .position(|&d| d == dart)
            .expect("dart at its vertex");
        (1..rot.len())
            .map(|i| rot[(pos + i) % rot.len()])
            .collect::<Vec<_>>()
    };
    let mut merged = after(v, head_dart(e));
    merged.extend(after(u, tail_dart(e)));
    let (keep, gone) = (u.min(v), u.max(v));
    let mut origin = Vec::new();
    let mut rotations = Vec::new();
    for w in 0..g.vertex_count() {
        if w == gone {
            continue;
        }
        origin.push(w);
        rotations.push(if w == keep {
            merged.clone()
        } else {
            g.rotation(w).to_vec()
        });
    }
    let mut comps = RawMap { rotations }.into_components(g.name());
    debug_assert_eq!(comps.len(), 1);
    let mut out = comps.remove(0);
    out.vertex_origin = out.vertex_origin.iter().map(|&i| origin[i]).collect();
    Ok(out)
}

/// Result of replacing a cubic vertex by a triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YDelta {
    pub graph: EmbeddedGraph,
    /// Triangle corners; `corners[0]` reuses the old vertex id.
    pub corners: [Vertex; 3],
    /// Edge arriving at each corner, in rotation order at the old vertex.
    pub outer: [Edge; 3],
    /// `triangle[i]` runs from `corners[i]` (tail) to `corners[i + 1]` (head).
    pub triangle: [Edge; 3],
}

/// Replace degree-3 vertex `v` by a triangle bounding a new face.
/// Old vertex, edge and dart ids are preserved; new ones are appended.
pub fn y_delta(g: &EmbeddedGraph, v: Vertex) -> Result<YDelta, GraphError> {
    g.check_vertex(v)?;
    if g.degree(v) != 3 {
        return Err(GraphError::Degree {
            vertex: v,
            degree: g.degree(v),
            expected: 3,
        });
    }
    let darts: Vec<_> = g.rotation(v).to_vec();
    if let Some(&d) = darts.iter().find(|&&d| g.is_loop(edge_of(d))) {
        return Err(GraphError::Loop(edge_of(d)));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let corners = [v, n, n + 1];
    let triangle = [m, m + 1, m + 2];
    let mut rotations = g.rotations().to_vec();
    rotations.push(Vec::new());
    rotations.push(Vec::new());
    for i in 0..3 {
        let outgoing = tail_dart(triangle[i]);
        let incoming = head_dart(triangle[(i + 2) % 3]);
        rotations[corners[i]] = vec![darts[i], outgoing, incoming];
    }
    Ok(YDelta {
        graph: EmbeddedGraph::from_rotations(g.name(), rotations)?,
        corners,
        outer: [edge_of(darts[0]), edge_of(darts[1]), edge_of(darts[2])],
        triangle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> EmbeddedGraph {
        EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], vec![0, 2, 4]]).unwrap()
    }

    #[test]
    fn contracting_theta_edge_gives_two_interleaved_loops() {
        let c = contract_edge(&theta(), 0).unwrap();
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 2);
        assert!(c.graph.is_loop(0) && c.graph.is_loop(1));
        assert_eq!(c.graph.genus(), 1);
        assert_eq!(c.edge_origin, vec![1, 2]);
    }

    #[test]
    fn contraction_preserves_genus_on_both_theta_embeddings() {
        let sphere =
            EmbeddedGraph::from_rotations("s", vec![vec![1, 3, 5], vec![0, 4, 2]]).unwrap();
        for g in [theta(), sphere] {
            for e in 0..3 {
                assert_eq!(contract_edge(&g, e).unwrap().graph.genus(), g.genus());
            }
        }
    }

    #[test]
    fn deleting_sigma_adjacent_loop_keeps_genus() {
        // One vertex: loop 0 with adjacent darts, loop 1 interleaved with loop 2.
        let g = EmbeddedGraph::from_rotations("l", vec![vec![0, 1, 2, 4, 3, 5]]).unwrap();
        let comps = delete_edge(&g, 0).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].graph.vertex_count(), 1);
        assert_eq!(comps[0].graph.genus(), g.genus());
    }

    #[test]
    fn deleting_a_bridge_splits() {
        let g = EmbeddedGraph::from_rotations("b", vec![vec![1, 2, 3], vec![0, 4, 5]]).unwrap();
        let comps = delete_edge(&g, 0).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertex_origin, vec![0]);
        assert_eq!(comps[1].vertex_origin, vec![1]);
        assert_eq!(comps[1].edge_origin, vec![2]);
    }

    #[test]
    fn y_delta_adds_one_triangular_face() {
        let g = theta();
        let yd = y_delta(&g, 0).unwrap();
        let before = g.faces();
        let after = yd.graph.faces();
        assert_eq!(after.faces.len(), before.faces.len() + 1);
        assert_eq!(after.genus, before.genus);
        assert!(after
            .faces
            .iter()
            .any(|f| { f.len() == 3 && f.iter().all(|&d| yd.triangle.contains(&edge_of(d))) }));
        assert!(yd.graph.is_cubic());
        for (i, &c) in yd.corners.iter().enumerate() {
            assert_eq!(yd.graph.tail(yd.triangle[i]), c);
            assert_eq!(yd.graph.head(yd.triangle[(i + 2) % 3]), c);
        }
    }
}
