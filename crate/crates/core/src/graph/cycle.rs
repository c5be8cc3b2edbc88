use std::collections::{BTreeSet, HashMap};

use super::{
    alpha, edge_of, head_dart, tail_dart, Dart, Edge, EmbeddedGraph, GraphError, RawMap, Relabeled,
    Vertex,
};

/// A closed walk given by the dart leaving each visited vertex.
///
/// `darts[i]` sits at the i-th vertex of the walk and its partner sits at the
/// next one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleRef {
    darts: Vec<Dart>,
}

impl CycleRef {
    pub fn new(g: &EmbeddedGraph, darts: Vec<Dart>) -> Result<Self, GraphError> {
        if darts.is_empty() {
            return Err(GraphError::NotAClosedWalk("empty walk".into()));
        }
        for &d in &darts {
            if d >= g.dart_count() {
                return Err(GraphError::NoSuchEdge(edge_of(d)));
            }
        }
        let k = darts.len();
        for i in 0..k {
            let (here, next) = (darts[i], darts[(i + 1) % k]);
            if g.vertex_of(alpha(here)) != g.vertex_of(next) {
                return Err(GraphError::NotAClosedWalk(format!(
                    "dart {here} does not lead to the vertex of dart {next}"
                )));
            }
        }
        let edges: BTreeSet<Edge> = darts.iter().map(|&d| edge_of(d)).collect();
        if edges.len() != k {
            return Err(GraphError::NotAClosedWalk("edge repeated".into()));
        }
        Ok(CycleRef { darts })
    }

    /// Order an edge set that forms a simple cycle into a walk. The walk starts
    /// along the smallest edge, from its tail.
    pub fn from_edges(g: &EmbeddedGraph, edges: &[Edge]) -> Result<Self, GraphError> {
        let set: BTreeSet<Edge> = edges.iter().copied().collect();
        let Some(&first) = set.iter().next() else {
            return Err(GraphError::NotAClosedWalk("empty edge set".into()));
        };
        for &e in &set {
            g.check_edge(e)?;
        }
        let mut darts_at: HashMap<Vertex, Vec<Dart>> = HashMap::new();
        for &e in &set {
            for d in [head_dart(e), tail_dart(e)] {
                darts_at.entry(g.vertex_of(d)).or_default().push(d);
            }
        }
        if darts_at.values().any(|ds| ds.len() != 2) {
            return Err(GraphError::NotSimple);
        }
        let mut walk = vec![tail_dart(first)];
        loop {
            let arrive = alpha(*walk.last().unwrap());
            let at = &darts_at[&g.vertex_of(arrive)];
            let leave = if at[0] == arrive { at[1] } else { at[0] };
            if leave == walk[0] {
                break;
            }
            walk.push(leave);
        }
        if walk.len() != set.len() {
            return Err(GraphError::NotSimple);
        }
        Self::new(g, walk)
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.darts.iter().map(|&d| edge_of(d)).collect()
    }

    pub fn vertices(&self, g: &EmbeddedGraph) -> Vec<Vertex> {
        self.darts.iter().map(|&d| g.vertex_of(d)).collect()
    }

    pub fn is_simple(&self, g: &EmbeddedGraph) -> bool {
        let vs: BTreeSet<Vertex> = self.vertices(g).into_iter().collect();
        vs.len() == self.darts.len()
    }

    /// The same cycle traversed the other way.
    pub fn reversed(&self) -> Self {
        CycleRef {
            darts: self.darts.iter().rev().map(|&d| alpha(d)).collect(),
        }
    }
}

/// The surface cut open along a simple cycle, each boundary capped by a disk.
///
/// At every cycle vertex the darts strictly between the incoming and the
/// outgoing cycle dart (in rotation order) go to the left piece; the rest go
/// to the right piece.
#[derive(Debug, Clone)]
pub struct CycleCut {
    pub pieces: Vec<Relabeled>,
    pub left: usize,
    pub right: usize,
    original_vertices: usize,
    original_edges: usize,
    cycle_edges: BTreeSet<Edge>,
    cycle_vertices: BTreeSet<Vertex>,
}

impl CycleCut {
    pub fn is_separating(&self) -> bool {
        self.left != self.right
    }

    pub fn genus(&self, piece: usize) -> usize {
        self.pieces[piece].graph.genus()
    }

    /// Original edges of a piece that are not on the cycle.
    pub fn interior_edges(&self, piece: usize) -> Vec<Edge> {
        self.pieces[piece]
            .edge_origin
            .iter()
            .copied()
            .filter(|&e| e < self.original_edges && !self.cycle_edges.contains(&e))
            .collect()
    }

    /// Original vertices of a piece that are not on the cycle.
    pub fn interior_vertices(&self, piece: usize) -> Vec<Vertex> {
        self.pieces[piece]
            .vertex_origin
            .iter()
            .copied()
            .filter(|&v| v < self.original_vertices && !self.cycle_vertices.contains(&v))
            .collect()
    }
}

pub fn cut_along(g: &EmbeddedGraph, c: &CycleRef) -> Result<CycleCut, GraphError> {
    CycleRef::new(g, c.darts.clone())?;
    if !c.is_simple(g) {
        return Err(GraphError::NotSimple);
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let k = c.len();
    let slot: HashMap<Edge, usize> = c
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let right_copy = |d: Dart| 2 * (m + slot[&edge_of(d)]) + d % 2;
    let mut rotations = g.rotations().to_vec();
    rotations.resize(n + k, Vec::new());
    for i in 0..k {
        let out = c.darts[i];
        let inc = alpha(c.darts[(i + k - 1) % k]);
        let v = g.vertex_of(out);
        let rot = g.rotation(v);
        let len = rot.len();
        let p_in = rot.iter().position(|&d| d == inc).expect("dart at vertex");
        let p_out = rot.iter().position(|&d| d == out).expect("dart at vertex");
        let arc = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut p = (from + 1) % len;
            while p != to {
                out.push(rot[p]);
                p = (p + 1) % len;
            }
            out
        };
        let mut left = vec![inc];
        left.extend(arc(p_in, p_out));
        left.push(out);
        let mut right = vec![right_copy(out)];
        right.extend(arc(p_out, p_in));
        right.push(right_copy(inc));
        rotations[v] = left;
        rotations[n + i] = right;
    }
    let pieces = RawMap { rotations }.into_components(g.name());
    let locate = |raw: Vertex| {
        pieces
            .iter()
            .position(|p| p.vertex_origin.contains(&raw))
            .expect("every raw vertex lands in a piece")
    };
    let left = locate(g.vertex_of(c.darts[0]));
    let right = locate(n);
    Ok(CycleCut {
        left,
        right,
        pieces,
        original_vertices: n,
        original_edges: m,
        cycle_edges: slot.keys().copied().collect(),
        cycle_vertices: c.vertices(g).into_iter().collect(),
    })
}

pub fn is_contractible(g: &EmbeddedGraph, c: &CycleRef) -> Result<bool, GraphError> {
    let cut = cut_along(g, c)?;
    Ok(cut.is_separating() && (cut.genus(cut.left) == 0 || cut.genus(cut.right) == 0))
}

/// A side of a contractible cycle that is a disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskSide {
    /// Whether the cycle must be reversed to have this disk on its left.
    pub reversed: bool,
    pub interior_edges: Vec<Edge>,
    pub interior_vertices: Vec<Vertex>,
}

impl DiskSide {
    /// The cycle oriented so that this disk lies on its left.
    pub fn orient(&self, c: &CycleRef) -> CycleRef {
        if self.reversed {
            c.reversed()
        } else {
            c.clone()
        }
    }
}

/// Every disk bounded by `c`: none, one, or two on the sphere.
pub fn disk_sides(g: &EmbeddedGraph, c: &CycleRef) -> Result<Vec<DiskSide>, GraphError> {
    let cut = cut_along(g, c)?;
    if !cut.is_separating() {
        return Ok(Vec::new());
    }
    Ok([(cut.left, false), (cut.right, true)]
        .into_iter()
        .filter(|&(piece, _)| cut.genus(piece) == 0)
        .map(|(piece, reversed)| DiskSide {
            reversed,
            interior_edges: cut.interior_edges(piece),
            interior_vertices: cut.interior_vertices(piece),
        })
        .collect())
}

/// The disk bounded by `c`, or `None` if `c` is not contractible. When both
/// sides are disks the one with fewer edges wins, ties going to the
/// lexicographically smaller edge set.
pub fn disk_interior(g: &EmbeddedGraph, c: &CycleRef) -> Result<Option<DiskSide>, GraphError> {
    Ok(disk_sides(g, c)?.into_iter().min_by(|a, b| {
        (a.interior_edges.len(), &a.interior_edges)
            .cmp(&(b.interior_edges.len(), &b.interior_edges))
    }))
}

/// All simple cycles through `e`, shortest first, each starting along `e`
/// from its tail.
pub fn simple_cycles_through(
    g: &EmbeddedGraph,
    e: Edge,
    limit: usize,
) -> Result<Vec<CycleRef>, GraphError> {
    g.check_edge(e)?;
    if g.is_loop(e) {
        return Ok(vec![CycleRef {
            darts: vec![tail_dart(e)],
        }]);
    }
    let start = g.tail(e);
    let mut visited = vec![false; g.vertex_count()];
    visited[start] = true;
    visited[g.head(e)] = true;
    let mut found = Vec::new();
    let mut path = vec![tail_dart(e)];
    extend_paths(g, e, start, &mut visited, &mut path, &mut found, limit)?;
    found.sort_by_key(|c: &CycleRef| (c.len(), c.edges()));
    Ok(found)
}

fn extend_paths(
    g: &EmbeddedGraph,
    e: Edge,
    target: Vertex,
    visited: &mut [bool],
    path: &mut Vec<Dart>,
    found: &mut Vec<CycleRef>,
    limit: usize,
) -> Result<(), GraphError> {
    let here = g.vertex_of(alpha(*path.last().unwrap()));
    let mut darts = g.rotation(here).to_vec();
    darts.sort_unstable();
    for d in darts {
        let f = edge_of(d);
        if f == e || g.is_loop(f) {
            continue;
        }
        let next = g.vertex_of(alpha(d));
        if next == target {
            if found.len() >= limit {
                return Err(GraphError::ComplexityGuard {
                    what: format!("simple cycles through edge {e}"),
                    limit: limit as u128,
                });
            }
            let mut darts = path.clone();
            darts.push(d);
            found.push(CycleRef { darts });
        } else if !visited[next] {
            visited[next] = true;
            path.push(d);
            extend_paths(g, e, target, visited, path, found, limit)?;
            path.pop();
            visited[next] = false;
        }
    }
    Ok(())
}

/// A simple contractible cycle through `e`, preferring simple facial walks.
pub fn simple_contractible_cycle_through(
    g: &EmbeddedGraph,
    e: Edge,
    limit: usize,
) -> Result<Option<CycleRef>, GraphError> {
    g.check_edge(e)?;
    for face in g.faces().faces {
        if face.iter().any(|&d| edge_of(d) == e) {
            if let Ok(c) = CycleRef::new(g, face) {
                if c.is_simple(g) {
                    return Ok(Some(c));
                }
            }
        }
    }
    for c in simple_cycles_through(g, e, limit)? {
        if is_contractible(g, &c)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(torus: bool) -> EmbeddedGraph {
        let v1 = if torus { vec![0, 2, 4] } else { vec![0, 4, 2] };
        EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], v1]).unwrap()
    }

    fn euler(g: &EmbeddedGraph) -> i64 {
        g.vertex_count() as i64 - g.edge_count() as i64 + g.faces().count() as i64
    }

    #[test]
    fn theta_two_cycles() {
        for e in 0..3 {
            for f in (e + 1)..3 {
                let torus = theta(true);
                let c = CycleRef::from_edges(&torus, &[e, f]).unwrap();
                assert!(!is_contractible(&torus, &c).unwrap());
                let sphere = theta(false);
                let c = CycleRef::from_edges(&sphere, &[e, f]).unwrap();
                assert!(is_contractible(&sphere, &c).unwrap());
            }
        }
    }

    #[test]
    fn cutting_raises_euler_characteristic_by_two() {
        for g in [theta(true), theta(false)] {
            for e in 0..3 {
                for c in simple_cycles_through(&g, e, 100).unwrap() {
                    let cut = cut_along(&g, &c).unwrap();
                    let total: i64 = cut.pieces.iter().map(|p| euler(&p.graph)).sum();
                    assert_eq!(total, euler(&g) + 2);
                }
            }
        }
    }

    #[test]
    fn facial_walk_has_empty_left_disk() {
        let g = theta(false);
        for face in g.faces().faces {
            let c = CycleRef::new(&g, face).unwrap();
            let sides = disk_sides(&g, &c).unwrap();
            assert_eq!(sides.len(), 2);
            assert!(!sides[0].reversed);
            assert!(sides[0].interior_edges.is_empty());
            assert_eq!(disk_interior(&g, &c).unwrap().unwrap(), sides[0]);
        }
    }

    #[test]
    fn loops_on_a_torus_are_essential() {
        let g = EmbeddedGraph::from_rotations("l", vec![vec![0, 2, 1, 3]]).unwrap();
        for e in 0..2 {
            let c = CycleRef::from_edges(&g, &[e]).unwrap();
            assert!(!is_contractible(&g, &c).unwrap());
        }
        let h = EmbeddedGraph::from_rotations("l", vec![vec![0, 1, 2, 3]]).unwrap();
        let c = CycleRef::from_edges(&h, &[0]).unwrap();
        assert!(is_contractible(&h, &c).unwrap());
    }

    #[test]
    fn reversal_is_an_involution() {
        let g = theta(true);
        let c = CycleRef::from_edges(&g, &[0, 2]).unwrap();
        assert_eq!(c.reversed().reversed(), c);
        assert!(CycleRef::new(&g, c.reversed().darts().to_vec()).is_ok());
    }

    #[test]
    fn from_edges_rejects_non_cycles() {
        let g = theta(true);
        assert_eq!(
            CycleRef::from_edges(&g, &[0, 1, 2]),
            Err(GraphError::NotSimple)
        );
        assert!(CycleRef::from_edges(&g, &[0]).is_err());
    }
}
