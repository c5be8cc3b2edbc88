use itertools::Itertools;

use super::{Dart, EmbeddedGraph, GraphError, Multigraph};

/// Largest number of rotation systems an enumeration may produce.
pub const ROTATION_SYSTEM_LIMIT: u128 = 10_000_000;

/// Every rotation system of a connected multigraph, each cyclic order
/// counted once. The last vertex varies fastest.
pub fn enumerate_rotation_systems(
    g: &Multigraph,
    name: &str,
) -> Result<RotationSystems, GraphError> {
    if g.vertex_count == 0 {
        return Err(GraphError::Empty);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let darts_at = g.darts_at();
    let mut total: u128 = 1;
    for darts in &darts_at {
        for k in 2..darts.len() {
            total = total.saturating_mul(k as u128);
        }
    }
    if total > ROTATION_SYSTEM_LIMIT {
        return Err(GraphError::ComplexityGuard {
            what: "number of rotation systems".into(),
            limit: ROTATION_SYSTEM_LIMIT,
        });
    }
    let choices: Vec<Vec<Vec<Dart>>> = darts_at
        .into_iter()
        .map(|darts| match darts.split_first() {
            None => vec![Vec::new()],
            Some((&first, rest)) => rest
                .iter()
                .copied()
                .permutations(rest.len())
                .map(|p| std::iter::once(first).chain(p).collect())
                .collect(),
        })
        .collect();
    Ok(RotationSystems {
        name: name.to_string(),
        index: vec![0; choices.len()],
        choices,
        total,
        done: false,
    })
}

pub struct RotationSystems {
    name: String,
    choices: Vec<Vec<Vec<Dart>>>,
    index: Vec<usize>,
    total: u128,
    done: bool,
}

impl RotationSystems {
    pub fn total(&self) -> u128 {
        self.total
    }
}

impl Iterator for RotationSystems {
    type Item = EmbeddedGraph;

    fn next(&mut self) -> Option<EmbeddedGraph> {
        if self.done {
            return None;
        }
        let rotations = self
            .index
            .iter()
            .zip(&self.choices)
            .map(|(&i, orders)| orders[i].clone())
            .collect();
        let g = EmbeddedGraph::from_rotations(self.name.clone(), rotations)
            .expect("connected multigraph gives a valid map");
        self.done = true;
        for v in (0..self.index.len()).rev() {
            self.index[v] += 1;
            if self.index[v] < self.choices[v].len() {
                self.done = false;
                break;
            }
            self.index[v] = 0;
        }
        Some(g)
    }
}
