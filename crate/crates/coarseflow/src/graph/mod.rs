//! Finite simple graphs with marked cone vertices.

mod circuit;
mod distance;
mod geodesic;
mod slim;
mod subdivision;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use circuit::circuits_through_edge;
pub use distance::{bfs, distance_matrix, Distances, INF};
pub use geodesic::{geodesic_dag, small_geodesic_targets, Admissible, GeodesicDag};
pub use slim::{min_side_slimness, slimness_constant, SlimnessReport};
pub use subdivision::{barycentric_subdivision, Subdivision, VertexClass};

/// Vertices are dense indices `0..vertex_count`.
pub type Vertex = usize;

/// Default valency at which a vertex is treated as a cone vertex when the
/// graph document does not list cone vertices explicitly.
pub const DEFAULT_CONE_THRESHOLD: usize = 8;

/// An undirected edge with normalized endpoints `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Normalizes the endpoint order. Panics on a self-loop.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "self-loop");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint different from `v`.
    pub fn other(self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            debug_assert_eq!(self.1, v);
            self.0
        }
    }
}

/// A finite simple undirected graph.
///
/// Adjacency lists are sorted, so neighbor indices are stable and usable as
/// coordinates for angle tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    cone: Vec<bool>,
    labels: BTreeMap<Vertex, String>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints. No vertex is marked as a cone vertex.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertex_count];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: x, count: vertex_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = Edge::new(u, v);
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.lo(), e.hi()));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, edge_count: seen.len(), cone: vec![false; vertex_count], labels: BTreeMap::new() })
    }

    /// Replaces the cone vertex set.
    pub fn with_cone_vertices(mut self, cone: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let n = self.vertex_count();
        self.cone = vec![false; n];
        for v in cone {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, count: n });
            }
            self.cone[v] = true;
        }
        Ok(self)
    }

    /// Marks every vertex of valency at least `threshold` as a cone vertex.
    pub fn with_cone_threshold(mut self, threshold: usize) -> Self {
        self.cone = self.adj.iter().map(|a| a.len() >= threshold).collect();
        self
    }

    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Result<Self> {
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.vertex_count()) {
            return Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Position of `w` in the sorted neighbor list of `v`.
    pub fn neighbor_index(&self, v: Vertex, w: Vertex) -> Option<usize> {
        self.adj[v].binary_search(&w).ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.neighbor_index(u, v).is_some()
    }

    /// Edges in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| Edge(u, v)))
    }

    pub fn is_cone(&self, v: Vertex) -> bool {
        self.cone[v]
    }

    pub fn cone_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.cone[v]).collect()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    /// First edge joining two cone vertices, if any. Loading tolerates such
    /// an edge; Rips and cone operations refuse it.
    pub fn cone_conflict(&self) -> Option<Edge> {
        self.edges().find(|e| self.cone[e.lo()] && self.cone[e.hi()])
    }

    /// Errors if two cone vertices are adjacent.
    pub fn require_independent_cones(&self) -> Result<()> {
        match self.cone_conflict() {
            Some(e) => Err(Error::AdjacentConeVertices(e.lo(), e.hi())),
            None => Ok(()),
        }
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True if the graph has no cycles.
    pub fn is_forest(&self) -> bool {
        self.edge_count + self.components().len() == self.vertex_count()
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertex_count(),
            edges: self.edges().map(|e| [e.lo(), e.hi()]).collect(),
            cone_vertices: Some(self.cone_vertices()),
            cone_threshold: None,
            labels: if self.labels.is_empty() {
                None
            } else {
                Some(self.labels.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
            },
            action: None,
        }
    }
}

/// On-disk graph format.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_vertices: Option<Vec<Vertex>>,
    /// Valency threshold used when `cone_vertices` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_threshold: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
    /// Name of an action file, resolved relative to the graph file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
}

impl GraphDocument {
    pub fn to_graph(&self) -> Result<Graph> {
        let g = Graph::new(self.vertices, self.edges.iter().map(|e| (e[0], e[1])))?;
        let g = match &self.cone_vertices {
            Some(c) => g.with_cone_vertices(c.iter().copied())?,
            None => g.with_cone_threshold(self.cone_threshold.unwrap_or(DEFAULT_CONE_THRESHOLD)),
        };
        let mut labels = BTreeMap::new();
        for (k, v) in self.labels.iter().flatten() {
            let vertex: Vertex =
                k.parse().map_err(|_| Error::Malformed(format!("label key {k:?} is not a vertex")))?;
            labels.insert(vertex, v.clone());
        }
        g.with_labels(labels)
    }
}

/// Parses a graph document. Adjacent cone vertices are accepted here and
/// reported through [`Graph::cone_conflict`].
pub fn load_graph(document: &str) -> Result<Graph> {
    let doc: GraphDocument = serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;
    doc.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_path_and_star() {
        let g = load_graph(r#"{"vertices":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        let star = load_graph(r#"{"vertices":6,"edges":[[0,1],[0,2],[0,3],[0,4],[0,5]],"cone_threshold":5}"#)
            .unwrap();
        assert_eq!(star.cone_vertices(), vec![0]);
    }

    #[test]
    fn rejects_bad_edges() {
        let err = load_graph(r#"{"vertices":2,"edges":[[1,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("self-loop"));
        assert!(matches!(
            load_graph(r#"{"vertices":2,"edges":[[0,1],[1,0]]}"#),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(load_graph(r#"{"vertices":2,"edges":[[0,2]]}"#), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(load_graph(r#"{"vertices":2,"edge":[]}"#), Err(Error::Malformed(_))));
    }

    #[test]
    fn adjacent_cones_are_flagged() {
        let g = load_graph(r#"{"vertices":3,"edges":[[0,1],[1,2]],"cone_vertices":[0,1]}"#).unwrap();
        assert_eq!(g.cone_conflict(), Some(Edge::new(0, 1)));
        assert!(g.require_independent_cones().is_err());
    }

    #[test]
    fn document_round_trip() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap().with_cone_vertices([0, 2]).unwrap();
        let text = serde_json::to_string(&g.to_document()).unwrap();
        assert_eq!(load_graph(&text).unwrap(), g);
    }
}
