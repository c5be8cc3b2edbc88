use super::{Dart, EmbeddedGraph};

/// Orbits of the face permutation and the resulting orientable genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructure {
    /// Each face starts at its smallest dart; faces are ordered by that dart.
    pub faces: Vec<Vec<Dart>>,
    pub genus: usize,
}

impl FaceStructure {
    /// Face count used in the Euler formula. A lone vertex has one empty face.
    pub fn count(&self) -> usize {
        self.faces.len().max(1)
    }
}

pub fn trace_faces(g: &EmbeddedGraph) -> FaceStructure {
    let mut seen = vec![false; g.dart_count()];
    let mut faces = Vec::new();
    for start in 0..g.dart_count() {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            face.push(d);
            d = g.face_next(d);
        }
        faces.push(face);
    }
    let f = faces.len().max(1) as i64;
    let chi = g.vertex_count() as i64 - g.edge_count() as i64 + f;
    debug_assert!(chi <= 2 && (2 - chi) % 2 == 0, "Euler characteristic {chi}");
    FaceStructure {
        faces,
        genus: ((2 - chi) / 2) as usize,
    }
}
