use super::{Edge, Multigraph};

/// Bridges in increasing edge order. Parallel edges and loops are never bridges.
pub fn bridges(g: &Multigraph) -> Vec<Edge> {
    let n = g.vertex_count;
    let mut adj: Vec<Vec<(usize, Edge)>> = vec![Vec::new(); n];
    for (e, &(t, h)) in g.edges.iter().enumerate() {
        if t != h {
            adj[t].push((h, e));
            adj[h].push((t, e));
        }
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut clock = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        // (vertex, edge used to enter, next adjacency index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, via, ref mut idx)) = stack.last_mut() {
            if let Some(&(w, e)) = adj[v].get(*idx) {
                *idx += 1;
                if e == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push(via);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Multigraph) -> Vec<Edge> {
        let base = g.components().len();
        (0..g.edge_count())
            .filter(|&e| {
                let mut h = g.clone();
                h.edges.remove(e);
                h.components().len() > base
            })
            .collect()
    }

    #[test]
    fn matches_component_count_oracle() {
        let cases = [
            Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap(),
            Multigraph::new(2, vec![(0, 1)]).unwrap(),
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
            .unwrap(),
            Multigraph::new(4, vec![(1, 0), (2, 0), (3, 0), (1, 1), (1, 1)]).unwrap(),
            Multigraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 3)]).unwrap(),
        ];
        for g in &cases {
            assert_eq!(bridges(g), brute_force(g));
        }
        assert_eq!(bridges(&cases[2]), vec![3]);
    }
}
