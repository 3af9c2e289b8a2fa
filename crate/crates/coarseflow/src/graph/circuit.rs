use super::{Edge, Graph, Vertex};

/// Embedded cycles of length at most `max_len` through the edge `e`.
///
/// Each circuit is listed once, rotated to start at its least vertex and
/// oriented so that the second entry is smaller than the last. The result
/// is sorted.
pub fn circuits_through_edge(g: &Graph, e: Edge, max_len: usize) -> Vec<Vec<Vertex>> {
    let (u, v) = (e.lo(), e.hi());
    let mut out = Vec::new();
    if max_len < 3 || !g.has_edge(u, v) {
        return out;
    }
    // simple paths v -> u avoiding the edge itself; each closes a circuit
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = vec![v];
    on_path[v] = true;
    extend(g, u, max_len, &mut path, &mut on_path, &mut out);
    let mut out: Vec<Vec<Vertex>> = out.into_iter().map(canonical).collect();
    out.sort();
    out.dedup();
    out
}

fn extend(
    g: &Graph,
    goal: Vertex,
    max_len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
) {
    let x = *path.last().unwrap();
    for &y in g.neighbors(x) {
        if y == goal {
            // skip the direct edge back, which would be the edge itself
            if path.len() >= 2 {
                let mut cycle = path.clone();
                cycle.push(goal);
                out.push(cycle);
            }
            continue;
        }
        if on_path[y] || path.len() + 1 >= max_len {
            continue;
        }
        on_path[y] = true;
        path.push(y);
        extend(g, goal, max_len, path, on_path, out);
        path.pop();
        on_path[y] = false;
    }
}

/// Rotates a cycle to its least vertex and picks the orientation whose
/// second vertex is smaller.
pub(crate) fn canonical(cycle: Vec<Vertex>) -> Vec<Vertex> {
    let k = cycle.len();
    let start = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let forward: Vec<Vertex> = (0..k).map(|i| cycle[(start + i) % k]).collect();
    let backward: Vec<Vertex> = (0..k).map(|i| cycle[(start + k - i) % k]).collect();
    forward.min(backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn tree_has_none() {
        let g = corpus::path(5);
        assert!(circuits_through_edge(&g, Edge::new(1, 2), 10).is_empty());
    }

    #[test]
    fn hexagon_is_its_own_circuit() {
        let g = corpus::cycle(6);
        assert_eq!(circuits_through_edge(&g, Edge::new(2, 3), 6), vec![vec![0, 1, 2, 3, 4, 5]]);
        assert!(circuits_through_edge(&g, Edge::new(2, 3), 5).is_empty());
    }

    #[test]
    fn k4_edge_lies_on_two_triangles() {
        let g = corpus::complete(4);
        let c = circuits_through_edge(&g, Edge::new(0, 1), 3);
        assert_eq!(c, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        assert_eq!(circuits_through_edge(&g, Edge::new(0, 1), 4).len(), 4);
    }
}
