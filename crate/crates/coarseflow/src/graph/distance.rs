use std::collections::VecDeque;

use rayon::prelude::*;

use super::{Graph, Vertex};

/// Sentinel for pairs in different components.
pub const INF: u32 = u32::MAX;

/// All-pairs hop distances of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distances {
    n: usize,
    d: Vec<u32>,
}

impl Distances {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| bfs(g, s)).collect();
        Distances { n, d: rows.concat() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Distance, or `None` for pairs in different components.
    pub fn get(&self, u: Vertex, v: Vertex) -> Option<u32> {
        let x = self.d[u * self.n + v];
        (x != INF).then_some(x)
    }

    /// Distance with [`INF`] for disconnected pairs.
    pub fn raw(&self, u: Vertex, v: Vertex) -> u32 {
        self.d[u * self.n + v]
    }

    /// Distances from `u` to every vertex.
    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().filter(|&x| x != INF).max().unwrap_or(0)
    }

    /// Vertices with `d(a, x) + d(x, b) = d(a, b)`, i.e. the union of all
    /// geodesics from `a` to `b`, in increasing order.
    pub fn interval(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let dab = self.raw(a, b);
        if dab == INF {
            return Vec::new();
        }
        let (ra, rb) = (self.row(a), self.row(b));
        (0..self.n).filter(|&x| ra[x] != INF && ra[x] + rb[x] == dab).collect()
    }
}

/// Single-source hop distances.
pub fn bfs(g: &Graph, s: Vertex) -> Vec<u32> {
    let mut dist = vec![INF; g.vertex_count()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == INF {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs distances by breadth-first search from every vertex.
pub fn distance_matrix(g: &Graph) -> Distances {
    Distances::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn small_examples() {
        let c6 = distance_matrix(&corpus::cycle(6));
        assert_eq!(c6.get(0, 3), Some(3));
        let p3 = distance_matrix(&corpus::path(3));
        assert_eq!(p3.get(0, 2), Some(2));
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let d = distance_matrix(&two);
        assert_eq!(d.get(0, 3), None);
        assert_eq!(d.raw(1, 2), INF);
    }

    #[test]
    fn interval_of_even_cycle_antipodes_is_everything() {
        let d = distance_matrix(&corpus::cycle(6));
        assert_eq!(d.interval(0, 3), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(d.interval(0, 2), vec![0, 1, 2]);
    }
}
