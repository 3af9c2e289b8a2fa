use std::collections::BTreeMap;

use serde::Serialize;

use super::{Edge, Graph, Vertex};

/// Class of a vertex of the barycentric subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VertexClass {
    /// An original vertex.
    V,
    /// The midpoint of an original edge.
    VE,
}

/// First barycentric subdivision of a graph.
///
/// Original vertices keep their indices; the midpoint of the `k`-th edge in
/// increasing order gets index `n + k`. Hop counts in the subdivision are
/// lengths in half units of the original graph.
#[derive(Clone, Debug)]
pub struct Subdivision {
    graph: Graph,
    original_count: usize,
    edges: Vec<Edge>,
    midpoint: BTreeMap<Edge, Vertex>,
}

impl Subdivision {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let edges: Vec<Edge> = g.edges().collect();
        let mut midpoint = BTreeMap::new();
        let mut new_edges = Vec::with_capacity(2 * edges.len());
        for (k, &e) in edges.iter().enumerate() {
            let m = n + k;
            midpoint.insert(e, m);
            new_edges.push((e.lo(), m));
            new_edges.push((e.hi(), m));
        }
        let graph = Graph::new(n + edges.len(), new_edges)
            .expect("subdivision of a simple graph is simple")
            .with_cone_vertices(g.cone_vertices())
            .expect("cone vertices are in range")
            .with_labels(g.labels().clone())
            .expect("labels are in range");
        Subdivision { graph, original_count: n, edges, midpoint }
    }

    /// The subdivided graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn original_count(&self) -> usize {
        self.original_count
    }

    pub fn class(&self, v: Vertex) -> VertexClass {
        if v < self.original_count {
            VertexClass::V
        } else {
            VertexClass::VE
        }
    }

    pub fn classes(&self) -> Vec<VertexClass> {
        self.graph.vertices().map(|v| self.class(v)).collect()
    }

    pub fn is_midpoint(&self, v: Vertex) -> bool {
        v >= self.original_count
    }

    /// Midpoint vertices in increasing order.
    pub fn midpoints(&self) -> std::ops::Range<Vertex> {
        self.original_count..self.graph.vertex_count()
    }

    /// Original vertices.
    pub fn originals(&self) -> std::ops::Range<Vertex> {
        0..self.original_count
    }

    /// The midpoint of an original edge.
    pub fn midpoint(&self, e: Edge) -> Option<Vertex> {
        self.midpoint.get(&e).copied()
    }

    /// The original edge whose midpoint is `m`.
    pub fn edge_of(&self, m: Vertex) -> Option<Edge> {
        m.checked_sub(self.original_count).and_then(|k| self.edges.get(k).copied())
    }
}

/// Subdivides every edge once.
pub fn barycentric_subdivision(g: &Graph) -> (Subdivision, Vec<VertexClass>) {
    let s = Subdivision::new(g);
    let classes = s.classes();
    (s, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::distance_matrix;

    #[test]
    fn small_examples() {
        let (s, classes) = barycentric_subdivision(&corpus::path(2));
        assert_eq!(s.graph().vertex_count(), 3);
        assert_eq!(classes, vec![VertexClass::V, VertexClass::V, VertexClass::VE]);
        assert!(s.graph().has_edge(0, 2) && s.graph().has_edge(1, 2));

        let (s, classes) = barycentric_subdivision(&corpus::cycle(3));
        assert_eq!(s.graph().vertex_count(), 6);
        assert_eq!(classes.iter().filter(|&&c| c == VertexClass::VE).count(), 3);
        assert!(s.graph().vertices().all(|v| s.graph().degree(v) == 2));

        let (s, _) = barycentric_subdivision(&corpus::star(3));
        assert_eq!(s.graph().vertex_count(), 7);
        assert!(s.midpoints().all(|m| s.graph().degree(m) == 2));
    }

    #[test]
    fn distances_double() {
        let g = corpus::petersen();
        let (s, _) = barycentric_subdivision(&g);
        let d = distance_matrix(&g);
        let ds = distance_matrix(s.graph());
        for u in g.vertices() {
            for v in g.vertices() {
                assert_eq!(ds.raw(u, v), 2 * d.raw(u, v));
            }
        }
        let e = Edge::new(0, 1);
        assert_eq!(s.edge_of(s.midpoint(e).unwrap()), Some(e));
    }
}
