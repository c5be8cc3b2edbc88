//! Cellularly embedded graphs stored as rotation systems on darts.
//!
//! Edge `e` owns darts `2e` and `2e + 1`. Dart `2e` sits at the head of `e`
//! and dart `2e + 1` at its tail, which fixes a reference orientation for
//! every edge. The rotation at a vertex is the cyclic order of its darts;
//! the face permutation is `d -> sigma(alpha(d))`.

mod bridges;
mod cycle;
mod enumerate;
mod faces;
mod surgery;

use std::collections::BTreeSet;

use thiserror::Error;

pub use bridges::bridges;
pub use cycle::{
    cut_along, disk_interior, disk_sides, is_contractible, simple_contractible_cycle_through,
    simple_cycles_through, CycleCut, CycleRef, DiskSide,
};
pub use enumerate::{enumerate_rotation_systems, RotationSystems, ROTATION_SYSTEM_LIMIT};
pub use faces::{trace_faces, FaceStructure};
pub use surgery::{contract_edge, delete_edge, y_delta, YDelta};

pub type Vertex = usize;
pub type Edge = usize;
pub type Dart = usize;

pub fn edge_of(d: Dart) -> Edge {
    d / 2
}

pub fn alpha(d: Dart) -> Dart {
    d ^ 1
}

pub fn head_dart(e: Edge) -> Dart {
    2 * e
}

pub fn tail_dart(e: Edge) -> Dart {
    2 * e + 1
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("dart {0} appears more than once in the rotation system")]
    DuplicateDart(Dart),
    #[error("dart {0} is missing from the rotation system")]
    MissingDart(Dart),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {0} has no darts but the graph has other vertices")]
    IsolatedVertex(Vertex),
    #[error("vertex {0} out of range")]
    NoSuchVertex(Vertex),
    #[error("edge {0} out of range")]
    NoSuchEdge(Edge),
    #[error("edge {0} is a loop")]
    Loop(Edge),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    Degree {
        vertex: Vertex,
        degree: usize,
        expected: usize,
    },
    #[error("not a closed walk: {0}")]
    NotAClosedWalk(String),
    #[error("cycle is not simple")]
    NotSimple,
    #[error("{what} exceeds the limit of {limit}")]
    ComplexityGuard { what: String, limit: u128 },
}

/// A connected graph together with a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    name: String,
    rotations: Vec<Vec<Dart>>,
    vertex_of: Vec<Vertex>,
    sigma: Vec<Dart>,
}

impl EmbeddedGraph {
    /// Build from per-vertex cyclic dart orders. Darts must be exactly `0..2m`.
    pub fn from_rotations(
        name: impl Into<String>,
        rotations: Vec<Vec<Dart>>,
    ) -> Result<Self, GraphError> {
        if rotations.is_empty() {
            return Err(GraphError::Empty);
        }
        let dart_count: usize = rotations.iter().map(Vec::len).sum();
        let mut vertex_of = vec![usize::MAX; dart_count + dart_count % 2];
        for (v, rot) in rotations.iter().enumerate() {
            for &d in rot {
                if d >= vertex_of.len() {
                    let present: BTreeSet<Dart> = rotations.iter().flatten().copied().collect();
                    let missing = (0..).find(|x| !present.contains(x)).unwrap_or(d);
                    return Err(GraphError::MissingDart(missing));
                }
                if vertex_of[d] != usize::MAX {
                    return Err(GraphError::DuplicateDart(d));
                }
                vertex_of[d] = v;
            }
        }
        if let Some(d) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(GraphError::MissingDart(d));
        }
        if rotations.len() > 1 {
            if let Some(v) = rotations.iter().position(Vec::is_empty) {
                return Err(GraphError::IsolatedVertex(v));
            }
        }
        let rotations: Vec<Vec<Dart>> = rotations.into_iter().map(canonical_cycle).collect();
        let mut sigma = vec![0; vertex_of.len()];
        for rot in &rotations {
            for (i, &d) in rot.iter().enumerate() {
                sigma[d] = rot[(i + 1) % rot.len()];
            }
        }
        let g = EmbeddedGraph {
            name: name.into(),
            rotations,
            vertex_of,
            sigma,
        };
        if !g.underlying().is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_of.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.vertex_of.len()
    }

    /// Rotation at `v`, starting at its smallest dart.
    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    pub fn vertex_of(&self, d: Dart) -> Vertex {
        self.vertex_of[d]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    pub fn face_next(&self, d: Dart) -> Dart {
        self.sigma[alpha(d)]
    }

    pub fn head(&self, e: Edge) -> Vertex {
        self.vertex_of[head_dart(e)]
    }

    pub fn tail(&self, e: Edge) -> Vertex {
        self.vertex_of[tail_dart(e)]
    }

    pub fn is_loop(&self, e: Edge) -> bool {
        self.head(e) == self.tail(e)
    }

    /// The end of `e` other than `v`.
    pub fn opposite(&self, e: Edge, v: Vertex) -> Vertex {
        if self.tail(e) == v {
            self.head(e)
        } else {
            self.tail(e)
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotations[v].len()
    }

    pub fn is_cubic(&self) -> bool {
        self.rotations.iter().all(|r| r.len() == 3)
    }

    pub fn require_cubic(&self) -> Result<(), GraphError> {
        match self.rotations.iter().position(|r| r.len() != 3) {
            None => Ok(()),
            Some(v) => Err(GraphError::Degree {
                vertex: v,
                degree: self.degree(v),
                expected: 3,
            }),
        }
    }

    /// Distinct edges at `v` in increasing id order.
    pub fn incident_edges(&self, v: Vertex) -> Vec<Edge> {
        let set: BTreeSet<Edge> = self.rotations[v].iter().map(|&d| edge_of(d)).collect();
        set.into_iter().collect()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::NoSuchVertex(v))
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<(), GraphError> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(GraphError::NoSuchEdge(e))
        }
    }

    pub fn underlying(&self) -> Multigraph {
        Multigraph {
            vertex_count: self.vertex_count(),
            edges: (0..self.edge_count())
                .map(|e| (self.tail(e), self.head(e)))
                .collect(),
        }
    }

    pub fn faces(&self) -> FaceStructure {
        trace_faces(self)
    }

    pub fn genus(&self) -> usize {
        trace_faces(self).genus
    }

    /// The same graph with the rotation at `v` reversed.
    pub fn with_reversed_rotation(&self, v: Vertex) -> Self {
        let mut rotations = self.rotations.clone();
        rotations[v].reverse();
        Self::from_rotations(self.name.clone(), rotations)
            .expect("reversing a rotation keeps the map valid")
    }

    pub(crate) fn raw(&self) -> RawMap {
        RawMap {
            rotations: self.rotations.clone(),
        }
    }
}

fn canonical_cycle(mut rot: Vec<Dart>) -> Vec<Dart> {
    if let Some(pos) = rot
        .iter()
        .enumerate()
        .min_by_key(|(_, &d)| d)
        .map(|(i, _)| i)
    {
        rot.rotate_left(pos);
    }
    rot
}

/// An abstract multigraph with a reference orientation on each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    pub vertex_count: usize,
    /// `(tail, head)` per edge.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        for &(t, h) in &edges {
            for v in [t, h] {
                if v >= vertex_count {
                    return Err(GraphError::NoSuchVertex(v));
                }
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .map(|&(t, h)| usize::from(t == v) + usize::from(h == v))
            .sum()
    }

    /// Darts at each vertex in increasing order, using the `2e`/`2e+1` convention.
    pub fn darts_at(&self) -> Vec<Vec<Dart>> {
        let mut out = vec![Vec::new(); self.vertex_count];
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            out[h].push(head_dart(e));
            out[t].push(tail_dart(e));
        }
        for darts in &mut out {
            darts.sort_unstable();
        }
        out
    }

    pub fn dart_vertex(&self, d: Dart) -> Vertex {
        let (t, h) = self.edges[edge_of(d)];
        if d % 2 == 0 {
            h
        } else {
            t
        }
    }

    pub fn is_cubic(&self) -> bool {
        self.darts_at().iter().all(|d| d.len() == 3)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(t, h) in &self.edges {
            uf.union(t, h);
        }
        uf.groups()
    }

    /// Remove the listed vertices and every edge touching them.
    /// Returns the remaining multigraph and, per new edge and vertex, the old id.
    pub fn without_vertices(&self, removed: &[Vertex]) -> (Multigraph, Vec<Edge>, Vec<Vertex>) {
        let keep: Vec<Vertex> = (0..self.vertex_count)
            .filter(|v| !removed.contains(v))
            .collect();
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if new_id[t] != usize::MAX && new_id[h] != usize::MAX {
                edges.push((new_id[t], new_id[h]));
                origin.push(e);
            }
        }
        (
            Multigraph {
                vertex_count: keep.len(),
                edges,
            },
            origin,
            keep,
        )
    }
}

/// A result of surgery, with maps back to the ids of the graph it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: EmbeddedGraph,
    pub vertex_origin: Vec<Vertex>,
    pub edge_origin: Vec<Edge>,
}

/// Rotation lists over an arbitrary dart id set; may be disconnected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawMap {
    pub rotations: Vec<Vec<Dart>>,
}

impl RawMap {
    pub fn remove_edge(&mut self, e: Edge) {
        for rot in &mut self.rotations {
            rot.retain(|&d| edge_of(d) != e);
        }
    }

    /// Split into connected components, renumbering vertices and edges in
    /// increasing order of their raw ids. Head and tail darts keep their roles.
    pub fn into_components(self, name: &str) -> Vec<Relabeled> {
        let mut dart_vertex = std::collections::HashMap::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            for &d in rot {
                dart_vertex.insert(d, v);
            }
        }
        let mut uf = UnionFind::new(self.rotations.len());
        for (&d, &v) in &dart_vertex {
            let w = dart_vertex[&alpha(d)];
            uf.union(v, w);
        }
        uf.groups()
            .into_iter()
            .map(|verts| {
                let edges: BTreeSet<Edge> = verts
                    .iter()
                    .flat_map(|&v| self.rotations[v].iter().map(|&d| edge_of(d)))
                    .collect();
                let edge_origin: Vec<Edge> = edges.into_iter().collect();
                let new_edge: std::collections::HashMap<Edge, Edge> = edge_origin
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| (e, i))
                    .collect();
                let rotations = verts
                    .iter()
                    .map(|&v| {
                        self.rotations[v]
                            .iter()
                            .map(|&d| 2 * new_edge[&edge_of(d)] + d % 2)
                            .collect()
                    })
                    .collect();
                Relabeled {
                    graph: EmbeddedGraph::from_rotations(name, rotations)
                        .expect("component of a valid raw map"),
                    vertex_origin: verts,
                    edge_origin,
                }
            })
            .collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        by_root.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> EmbeddedGraph {
        EmbeddedGraph::from_rotations("theta", vec![vec![1, 3, 5], vec![0, 2, 4]]).unwrap()
    }

    #[test]
    fn validation_rejects_broken_maps() {
        assert_eq!(
            EmbeddedGraph::from_rotations("x", vec![vec![1, 3, 5], vec![0, 2, 2]]),
            Err(GraphError::DuplicateDart(2))
        );
        assert!(matches!(
            EmbeddedGraph::from_rotations("x", vec![vec![1, 3], vec![0, 4]]),
            Err(GraphError::MissingDart(2))
        ));
        assert_eq!(
            EmbeddedGraph::from_rotations("x", vec![vec![0, 1], vec![2, 3]]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(
            EmbeddedGraph::from_rotations("x", vec![]),
            Err(GraphError::Empty)
        );
    }

    #[test]
    fn rotations_are_stored_from_smallest_dart() {
        let g = EmbeddedGraph::from_rotations("t", vec![vec![5, 1, 3], vec![2, 4, 0]]).unwrap();
        assert_eq!(g.rotation(0), &[1, 3, 5]);
        assert_eq!(g.rotation(1), &[0, 2, 4]);
        assert_eq!(g.sigma(5), 1);
    }

    #[test]
    fn orientation_convention() {
        let g = theta();
        for e in 0..3 {
            assert_eq!(g.head(e), 1);
            assert_eq!(g.tail(e), 0);
        }
        assert_eq!(g.underlying().edges, vec![(0, 1); 3]);
        assert!(g.is_cubic());
    }

    #[test]
    fn raw_components_relabel_in_order() {
        let mut raw = theta().raw();
        raw.rotations.push(vec![6, 7]);
        let comps = raw.into_components("split");
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].vertex_origin, vec![2]);
        assert_eq!(comps[1].edge_origin, vec![3]);
        assert_eq!(comps[1].graph.rotation(0), &[0, 1]);
    }
}
