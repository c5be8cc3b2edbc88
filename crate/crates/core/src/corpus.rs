//! Built-in example graphs, embeddings and flows.

use crate::dihedral::{DihedralElement, GroupContext};
use crate::flow::{count_bounded_via_lifts, count_flows, verify, FlowAssignment, FlowError};
use crate::graph::{enumerate_rotation_systems, y_delta, Edge, EmbeddedGraph, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedCount {
    pub ctx: GroupContext,
    pub count: u64,
}

/// Invariants shared by every embedding of an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
    pub counts: Vec<ExpectedCount>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// The first embedding is the default one.
    pub embeddings: Vec<EmbeddedGraph>,
    /// Flows on the first embedding.
    pub flows: Vec<FlowAssignment>,
    pub expected: Expected,
}

/// A count that came out differently from the bundled value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMismatch {
    pub embedding: usize,
    pub ctx: GroupContext,
    pub expected: u64,
    pub found: u64,
}

impl CorpusEntry {
    pub fn graph(&self) -> &EmbeddedGraph {
        &self.embeddings[0]
    }

    /// Face counts, genus, sizes and bundled flows.
    pub fn check_structure(&self) -> Result<(), String> {
        let x = &self.expected;
        for (i, g) in self.embeddings.iter().enumerate() {
            let got = (
                g.vertex_count(),
                g.edge_count(),
                g.faces().count(),
                g.genus(),
            );
            if got != (x.vertices, x.edges, x.faces, x.genus) {
                return Err(format!(
                    "{} embedding {}: (vertices, edges, faces, genus) = {got:?}",
                    self.name,
                    i + 1
                ));
            }
        }
        for f in &self.flows {
            let report = verify(self.graph(), f).map_err(|e| e.to_string())?;
            if !report.is_valid_nowhere_identity() {
                return Err(format!(
                    "{}: bundled {} flow fails: {report}",
                    self.name,
                    f.ctx()
                ));
            }
        }
        Ok(())
    }

    /// Recount every bundled count on every embedding. Bounded counts too big
    /// for a direct search are taken through lifts.
    pub fn check_counts(&self, budget: u128) -> Result<Vec<CountMismatch>, FlowError> {
        let mut out = Vec::new();
        for (i, g) in self.embeddings.iter().enumerate() {
            for c in &self.expected.counts {
                let found = count_any(g, c.ctx, budget)?;
                if found != c.count {
                    out.push(CountMismatch {
                        embedding: i + 1,
                        ctx: c.ctx,
                        expected: c.count,
                        found,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Nowhere-identity count, falling back to lifts for bounded contexts.
pub fn count_any(g: &EmbeddedGraph, ctx: GroupContext, budget: u128) -> Result<u64, FlowError> {
    match (count_flows(g, ctx, true, budget), ctx) {
        (Err(FlowError::ComplexityGuard { .. }), GroupContext::DihedralBounded(n)) => {
            count_bounded_via_lifts(g, n, budget)
        }
        (result, _) => result,
    }
}

pub const NAMES: [&str; 8] = [
    "fig1",
    "theta",
    "fig4",
    "petersen2t",
    "petersen1t",
    "petersen3t",
    "tietze",
    "k4planar",
];

/// All entries, each checked on construction.
pub fn corpus() -> Vec<CorpusEntry> {
    NAMES
        .iter()
        .map(|n| corpus_entry(n).expect("known name"))
        .collect()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    let count = |ctx, count| ExpectedCount { ctx, count };
    let no_small_flow = vec![count(GroupContext::DihedralBounded(2), 0)];
    let entry = match name {
        "fig1" => CorpusEntry {
            name: "fig1",
            description: "center with three bridges to blobs of two interleaved loops; D6 flow, no dihedral 3- or 4-flow",
            embeddings: vec![fig1()],
            flows: vec![fig1_flow()],
            expected: Expected {
                vertices: 4,
                edges: 9,
                faces: 1,
                genus: 3,
                counts: vec![
                    count(GroupContext::DihedralBounded(3), 0),
                    count(GroupContext::DihedralBounded(4), 0),
                ],
            },
        },
        "theta" => CorpusEntry {
            name: "theta",
            description: "three parallel edges on the torus",
            embeddings: vec![theta()],
            flows: (2..=6).map(theta_flow).collect(),
            expected: Expected {
                vertices: 2,
                edges: 3,
                faces: 1,
                genus: 1,
                counts: no_small_flow,
            },
        },
        "fig4" => CorpusEntry {
            name: "fig4",
            description: "six-vertex cubic graph with a bridge; one-face embeddings up to left-right mirror",
            embeddings: fig4_mirror_classes(),
            flows: Vec::new(),
            expected: Expected {
                vertices: 6,
                edges: 9,
                faces: 1,
                genus: 2,
                counts: vec![
                    count(GroupContext::DihedralMod(4), 576),
                    count(GroupContext::DihedralBounded(4), 512),
                ],
            },
        },
        "petersen2t" | "petersen1t" | "petersen3t" => {
            let (embedding, faces, genus, flows) = match name {
                "petersen2t" => (PetersenEmbedding::TwoTorus, 3, 2, vec![]),
                "petersen1t" => (PetersenEmbedding::OneTorus, 5, 1, vec![]),
                _ => (PetersenEmbedding::ThreeTorus, 1, 3, vec![petersen_three_flow()]),
            };
            CorpusEntry {
                name: match embedding {
                    PetersenEmbedding::TwoTorus => "petersen2t",
                    PetersenEmbedding::OneTorus => "petersen1t",
                    PetersenEmbedding::ThreeTorus => "petersen3t",
                },
                description: match embedding {
                    PetersenEmbedding::TwoTorus => "Petersen graph, all rotations clockwise",
                    PetersenEmbedding::OneTorus => "Petersen graph on the torus",
                    PetersenEmbedding::ThreeTorus => "Petersen graph with one face, with a dihedral 3-flow",
                },
                embeddings: vec![petersen(embedding)],
                flows,
                expected: Expected {
                    vertices: 10,
                    edges: 15,
                    faces,
                    genus,
                    counts: no_small_flow,
                },
            }
        }
        "tietze" => CorpusEntry {
            name: "tietze",
            description: "Tietze graph: vertex 0 of petersen2t replaced by a triangle",
            embeddings: vec![tietze()],
            flows: Vec::new(),
            expected: Expected {
                vertices: 12,
                edges: 18,
                faces: 4,
                genus: 2,
                counts: no_small_flow,
            },
        },
        "k4planar" => CorpusEntry {
            name: "k4planar",
            description: "K4 in the plane",
            embeddings: vec![k4_planar()],
            flows: Vec::new(),
            expected: Expected {
                vertices: 4,
                edges: 6,
                faces: 4,
                genus: 0,
                counts: Vec::new(),
            },
        },
        _ => return None,
    };
    if let Err(e) = entry.check_structure() {
        panic!("corpus entry is inconsistent: {e}");
    }
    Some(entry)
}

fn from_rotations(name: &str, rotations: Vec<Vec<usize>>) -> EmbeddedGraph {
    EmbeddedGraph::from_rotations(name, rotations).expect("corpus constant")
}

/// Theta graph with both rotations `(e0 e1 e2)`.
pub fn theta() -> EmbeddedGraph {
    from_rotations("theta", vec![vec![1, 3, 5], vec![0, 2, 4]])
}

/// Flow mod `n` on the torus theta: `(r^{n/2}, r^{n/2}s, s)` for even `n`,
/// `(r^{n-2}, r, r)` for odd `n`.
pub fn theta_flow(n: u64) -> FlowAssignment {
    let k = n as i64;
    let values = if n % 2 == 0 {
        vec![
            DihedralElement::rotation(k / 2),
            DihedralElement::reflection(k / 2),
            DihedralElement::reflection(0),
        ]
    } else {
        vec![
            DihedralElement::rotation(k - 2),
            DihedralElement::rotation(1),
            DihedralElement::rotation(1),
        ]
    };
    FlowAssignment::new(GroupContext::DihedralMod(n), values).expect("corpus constant")
}

pub fn k4_planar() -> EmbeddedGraph {
    from_rotations(
        "k4planar",
        vec![vec![1, 3, 5], vec![0, 9, 7], vec![2, 6, 11], vec![4, 10, 8]],
    )
}

/// Center vertex 0 joined by edge `i` (blob to center) to blob `i + 1`,
/// which carries loops `k + 2i` and `k + 2i + 1`. Loops at blobs listed in
/// `planar_blobs` are nested, the others interleaved.
pub fn spoked_blobs(k: usize, planar_blobs: &[usize]) -> EmbeddedGraph {
    let mut rotations = vec![(0..k).map(|i| 2 * i).collect::<Vec<_>>()];
    for i in 0..k {
        let (a, b) = (k + 2 * i, k + 2 * i + 1);
        rotations.push(if planar_blobs.contains(&i) {
            vec![2 * i + 1, 2 * a, 2 * a + 1, 2 * b, 2 * b + 1]
        } else {
            vec![2 * i + 1, 2 * a, 2 * b, 2 * a + 1, 2 * b + 1]
        });
    }
    from_rotations(&format!("blobs{k}"), rotations)
}

pub fn fig1() -> EmbeddedGraph {
    spoked_blobs(3, &[]).with_name("fig1")
}

/// Bridges carry `r^2` toward the center; each blob's loops carry `r^2 s`
/// and `r s`.
pub fn fig1_flow() -> FlowAssignment {
    let mut values = vec![DihedralElement::rotation(2); 3];
    for _ in 0..3 {
        values.push(DihedralElement::reflection(2));
        values.push(DihedralElement::reflection(1));
    }
    FlowAssignment::new(GroupContext::DihedralMod(3), values).expect("corpus constant")
}

/// Blocks `{0,1,2}` and `{3,4,5}` joined by the bridge 2-3, each block a
/// double edge plus a path closing a triangle.
pub fn fig4_multigraph() -> Multigraph {
    Multigraph::new(
        6,
        vec![
            (0, 1),
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (0, 2),
            (4, 5),
            (3, 5),
        ],
    )
    .expect("corpus constant")
}

/// All labeled one-face rotation systems of the graph, in enumeration order.
pub fn fig4_one_face_systems() -> Vec<EmbeddedGraph> {
    enumerate_rotation_systems(&fig4_multigraph(), "fig4")
        .expect("small graph")
        .filter(|g| g.faces().count() == 1)
        .collect()
}

/// Swaps the two blocks: vertices `0<->5, 1<->4, 2<->3`, double edges
/// `0<->5, 1<->7`, and `2<->4, 6<->8`; the bridge maps to itself reversed.
pub fn fig4_mirror(g: &EmbeddedGraph) -> EmbeddedGraph {
    const VERTEX: [Vertex; 6] = [5, 4, 3, 2, 1, 0];
    const EDGE: [Edge; 9] = [5, 7, 4, 3, 2, 0, 8, 1, 6];
    let mut rotations = vec![Vec::new(); 6];
    for (x, rot) in g.rotations().iter().enumerate() {
        let y = VERTEX[x];
        rotations[y] = rot
            .iter()
            .map(|&d| {
                let f = EDGE[d / 2];
                if g.head(f) == y {
                    2 * f
                } else {
                    2 * f + 1
                }
            })
            .collect();
    }
    from_rotations(g.name(), rotations)
}

/// One representative per mirror pair of one-face systems, the earlier one
/// in enumeration order.
pub fn fig4_mirror_classes() -> Vec<EmbeddedGraph> {
    let all = fig4_one_face_systems();
    let mut out: Vec<EmbeddedGraph> = Vec::new();
    for g in &all {
        let m = fig4_mirror(g);
        if !out.iter().any(|h| h.rotations() == m.rotations()) {
            out.push(g.clone());
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PetersenEmbedding {
    /// Three faces.
    TwoTorus,
    /// Five faces.
    OneTorus,
    /// One face.
    ThreeTorus,
}

/// Inner vertices 0-4, outer 5-9. Edges: spokes `(i, i+5)`, then the
/// pentagram `(i, i+2)`, then the pentagon `(5+i, 5+i+1)`.
pub fn petersen(which: PetersenEmbedding) -> EmbeddedGraph {
    let clockwise = from_rotations(
        "petersen2t",
        vec![
            vec![1, 16, 11],
            vec![3, 18, 13],
            vec![10, 15, 5],
            vec![12, 17, 7],
            vec![19, 9, 14],
            vec![28, 0, 21],
            vec![20, 2, 23],
            vec![22, 4, 25],
            vec![24, 6, 27],
            vec![29, 26, 8],
        ],
    );
    match which {
        PetersenEmbedding::TwoTorus => clockwise,
        PetersenEmbedding::OneTorus => clockwise
            .with_reversed_rotation(5)
            .with_reversed_rotation(7)
            .with_name("petersen1t"),
        PetersenEmbedding::ThreeTorus => clockwise
            .with_reversed_rotation(2)
            .with_reversed_rotation(6)
            .with_name("petersen3t"),
    }
}

/// Dihedral 3-flow on the one-face embedding.
pub fn petersen_three_flow() -> FlowAssignment {
    let r = DihedralElement::rotation;
    let s = DihedralElement::reflection;
    FlowAssignment::new(
        GroupContext::DihedralBounded(3),
        vec![
            r(1),
            r(1),
            r(1),
            r(1),
            r(-2),
            s(-1),
            s(1),
            s(0),
            s(0),
            s(2),
            s(0),
            s(1),
            s(0),
            s(-1),
            s(1),
        ],
    )
    .expect("corpus constant")
}

pub fn tietze() -> EmbeddedGraph {
    y_delta(&petersen(PetersenEmbedding::TwoTorus), 0)
        .expect("cubic vertex")
        .graph
        .with_name("tietze")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::DEFAULT_BUDGET;

    #[test]
    fn loads_every_entry() {
        let all = corpus();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].graph().genus(), 3);
        assert_eq!(
            corpus_entry("petersen1t").unwrap().graph().faces().count(),
            5
        );
        assert_eq!(corpus_entry("tietze").unwrap().graph().vertex_count(), 12);
        assert!(corpus_entry("nope").is_none());
    }

    #[test]
    fn fig4_has_sixteen_labeled_one_face_systems() {
        let all = fig4_one_face_systems();
        assert_eq!(all.len(), 16);
        assert_eq!(
            enumerate_rotation_systems(&fig4_multigraph(), "x")
                .unwrap()
                .total(),
            64
        );
        let fixed = all
            .iter()
            .filter(|g| fig4_mirror(g).rotations() == g.rotations())
            .count();
        // Orbits of an involution: (16 + fixed) / 2.
        assert_eq!(fixed, 4);
        assert_eq!(fig4_mirror_classes().len(), 10);
        for g in &all {
            assert_eq!(fig4_mirror(&fig4_mirror(g)).rotations(), g.rotations());
            assert_eq!(fig4_mirror(g).underlying(), g.underlying());
        }
    }

    #[test]
    fn petersen_faces_of_the_clockwise_embedding() {
        let g = petersen(PetersenEmbedding::TwoTorus);
        let mut lengths: Vec<usize> = g.faces().faces.iter().map(Vec::len).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![5, 5, 20]);
    }

    #[test]
    fn small_counts_hold() {
        for name in ["fig1", "theta", "petersen3t", "tietze"] {
            let e = corpus_entry(name).unwrap();
            assert_eq!(e.check_counts(DEFAULT_BUDGET).unwrap(), vec![], "{name}");
        }
    }

    #[test]
    fn planar_blob_gives_genus_drop() {
        assert_eq!(spoked_blobs(3, &[1]).genus(), 2);
        assert_eq!(spoked_blobs(5, &[]).genus(), 5);
    }
}
