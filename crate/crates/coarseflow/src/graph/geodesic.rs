use rand::Rng;

use super::{Distances, Graph, Vertex, INF};
use crate::error::{Error, Result};

/// All geodesics between two vertices, encoded as the layered DAG of edges
/// lying on at least one of them.
#[derive(Clone, Debug)]
pub struct GeodesicDag {
    source: Vertex,
    target: Vertex,
    length: u32,
    layer: Vec<u32>,
    layers: Vec<Vec<Vertex>>,
    succ: Vec<Vec<Vertex>>,
    pred: Vec<Vec<Vertex>>,
}

impl GeodesicDag {
    pub fn new(g: &Graph, dist: &Distances, source: Vertex, target: Vertex) -> Result<Self> {
        Self::from_rows(g, dist.row(source), dist.row(target), source, target)
    }

    /// Builds the DAG from distance rows of the two endpoints.
    pub fn from_rows(g: &Graph, from_s: &[u32], to_t: &[u32], source: Vertex, target: Vertex) -> Result<Self> {
        let n = g.vertex_count();
        let length = from_s[target];
        if length == INF {
            return Err(Error::Disconnected(source, target));
        }
        let mut layer = vec![INF; n];
        let mut layers = vec![Vec::new(); length as usize + 1];
        for x in 0..n {
            if from_s[x] != INF && to_t[x] != INF && from_s[x] + to_t[x] == length {
                layer[x] = from_s[x];
                layers[from_s[x] as usize].push(x);
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for level in &layers {
            for &x in level {
                for &y in g.neighbors(x) {
                    if layer[y] != INF && layer[y] == layer[x] + 1 {
                        succ[x].push(y);
                        pred[y].push(x);
                    }
                }
            }
        }
        Ok(GeodesicDag { source, target, length, layer, layers, succ, pred })
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    /// Distance from the source, for vertices on some geodesic.
    pub fn layer(&self, v: Vertex) -> Option<u32> {
        let l = self.layer[v];
        (l != INF).then_some(l)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.layer[v] != INF
    }

    pub fn layers(&self) -> &[Vec<Vertex>] {
        &self.layers
    }

    /// Vertices in layer order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.layers.iter().flatten().copied()
    }

    /// Vertices other than the endpoints, in layer order.
    pub fn internal_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let end = self.layers.len().saturating_sub(1);
        self.layers.iter().take(end).skip(1).flatten().copied()
    }

    pub fn succ(&self, v: Vertex) -> &[Vertex] {
        &self.succ[v]
    }

    pub fn pred(&self, v: Vertex) -> &[Vertex] {
        &self.pred[v]
    }

    /// Directed DAG edges in layer order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |x| self.succ[x].iter().map(move |&y| (x, y)))
    }

    /// True if every geodesic from source to target passes through `v`.
    pub fn on_every_geodesic(&self, v: Vertex) -> bool {
        self.layer(v).is_some_and(|l| self.layers[l as usize].len() == 1)
    }

    /// Number of geodesics, saturating at `u128::MAX`.
    pub fn path_count(&self) -> u128 {
        let mut count = vec![0u128; self.layer.len()];
        count[self.source] = 1;
        for x in self.vertices() {
            for &y in &self.succ[x] {
                count[y] = count[y].saturating_add(count[x]);
            }
        }
        count[self.target]
    }

    /// All geodesics in lexicographic order.
    pub fn paths(&self, cap: usize) -> Result<Vec<Vec<Vertex>>> {
        self.paths_where(|_, _, _| true, cap)
    }

    /// The lexicographically first geodesic.
    pub fn first_path(&self) -> Vec<Vertex> {
        let mut path = vec![self.source];
        let mut x = self.source;
        while x != self.target {
            x = self.succ[x][0];
            path.push(x);
        }
        path
    }

    /// A geodesic drawn uniformly at random.
    pub fn random_path<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Vertex> {
        let mut to_target = vec![0f64; self.layer.len()];
        to_target[self.target] = 1.0;
        for level in self.layers.iter().rev().skip(1) {
            for &x in level {
                to_target[x] = self.succ[x].iter().map(|&y| to_target[y]).sum();
            }
        }
        let mut path = vec![self.source];
        let mut x = self.source;
        while x != self.target {
            let total = to_target[x];
            let mut pick = rng.gen::<f64>() * total;
            let mut next = *self.succ[x].last().unwrap();
            for &y in &self.succ[x] {
                if pick < to_target[y] {
                    next = y;
                    break;
                }
                pick -= to_target[y];
            }
            x = next;
            path.push(x);
        }
        path
    }

    /// Geodesics all of whose internal angles pass `small(prev, apex, next)`,
    /// in lexicographic order.
    pub fn paths_where(&self, small: impl Fn(Vertex, Vertex, Vertex) -> bool, cap: usize) -> Result<Vec<Vec<Vertex>>> {
        let mut out = Vec::new();
        let mut path = vec![self.source];
        self.dfs(&small, &mut path, &mut out, cap)?;
        Ok(out)
    }

    fn dfs(
        &self,
        small: &impl Fn(Vertex, Vertex, Vertex) -> bool,
        path: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
        cap: usize,
    ) -> Result<()> {
        let x = *path.last().unwrap();
        if x == self.target {
            if out.len() == cap {
                return Err(Error::CapExceeded { what: "geodesic enumeration", cap });
            }
            out.push(path.clone());
            return Ok(());
        }
        for &y in &self.succ[x] {
            if path.len() >= 2 && !small(path[path.len() - 2], x, y) {
                continue;
            }
            path.push(y);
            self.dfs(small, path, out, cap)?;
            path.pop();
        }
        Ok(())
    }

    /// First internal angle `(prev, apex, next)` on some geodesic that fails
    /// `small`, scanning apexes in layer order. `None` means every geodesic
    /// passes.
    pub fn first_violation(&self, small: impl Fn(Vertex, Vertex, Vertex) -> bool) -> Option<(Vertex, Vertex, Vertex)> {
        for x in self.internal_vertices() {
            for &p in &self.pred[x] {
                for &q in &self.succ[x] {
                    if !small(p, x, q) {
                        return Some((p, x, q));
                    }
                }
            }
        }
        None
    }

    /// True if every geodesic passes `small` at every internal vertex.
    pub fn all_paths(&self, small: impl Fn(Vertex, Vertex, Vertex) -> bool) -> bool {
        self.first_violation(small).is_none()
    }

    /// Dynamic program over the DAG recording which vertices lie on some
    /// geodesic passing `small` at every internal vertex.
    pub fn admissible(&self, small: impl Fn(Vertex, Vertex, Vertex) -> bool) -> Admissible {
        let n = self.layer.len();
        let (s, t) = (self.source, self.target);
        let mut on_path = vec![false; n];
        if s == t {
            on_path[s] = true;
            return Admissible { exists: true, on_path };
        }
        // fwd[x][i]: a good prefix reaches x through pred[x][i]
        let mut fwd: Vec<Vec<bool>> = vec![Vec::new(); n];
        for level in self.layers.iter().skip(1) {
            for &x in level {
                let flags = self.pred[x]
                    .iter()
                    .map(|&p| {
                        p == s || self.pred[p].iter().zip(&fwd[p]).any(|(&q, &ok)| ok && small(q, p, x))
                    })
                    .collect();
                fwd[x] = flags;
            }
        }
        // bwd[x][i]: a good suffix leaves x through succ[x][i]
        let mut bwd: Vec<Vec<bool>> = vec![Vec::new(); n];
        for level in self.layers.iter().rev().skip(1) {
            for &x in level {
                let flags = self.succ[x]
                    .iter()
                    .map(|&y| {
                        y == t || self.succ[y].iter().zip(&bwd[y]).any(|(&z, &ok)| ok && small(x, y, z))
                    })
                    .collect();
                bwd[x] = flags;
            }
        }
        let exists = bwd[s].iter().any(|&b| b);
        on_path[s] = exists;
        on_path[t] = exists;
        for x in self.internal_vertices() {
            on_path[x] = self.pred[x].iter().zip(&fwd[x]).any(|(&p, &f)| {
                f && self.succ[x].iter().zip(&bwd[x]).any(|(&q, &b)| b && small(p, x, q))
            });
        }
        Admissible { exists, on_path }
    }
}

/// Result of [`GeodesicDag::admissible`].
#[derive(Clone, Debug)]
pub struct Admissible {
    exists: bool,
    on_path: Vec<bool>,
}

impl Admissible {
    /// True if some geodesic passes at every internal vertex.
    pub fn exists(&self) -> bool {
        self.exists
    }

    /// True if `v` lies on some passing geodesic.
    pub fn on_path(&self, v: Vertex) -> bool {
        self.on_path[v]
    }
}

/// Geodesic DAG between two vertices, computing the two distance rows by
/// breadth-first search.
pub fn geodesic_dag(g: &Graph, u: Vertex, v: Vertex) -> Result<GeodesicDag> {
    let du = super::distance::bfs(g, u);
    let dv = super::distance::bfs(g, v);
    GeodesicDag::from_rows(g, &du, &dv, u, v)
}

/// For every vertex `t`, whether some geodesic from `s` to `t` has all
/// internal angles passing `small` and an initial edge `(s, w)` with
/// `first(w)`. The constant geodesic at `s` always qualifies.
pub fn small_geodesic_targets(
    g: &Graph,
    s: Vertex,
    from_s: &[u32],
    small: impl Fn(Vertex, Vertex, Vertex) -> bool,
    first: impl Fn(Vertex) -> bool,
) -> Vec<bool> {
    let n = g.vertex_count();
    let mut order: Vec<Vertex> = (0..n).filter(|&x| from_s[x] != INF).collect();
    order.sort_by_key(|&x| from_s[x]);
    let incoming = |x: Vertex| g.neighbors(x).iter().copied().filter(move |&p| from_s[p] != INF && from_s[p] + 1 == from_s[x]);
    let mut fwd: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut reach = vec![false; n];
    reach[s] = true;
    for &x in order.iter().skip(1) {
        let flags: Vec<bool> = incoming(x)
            .map(|p| {
                if p == s {
                    first(x)
                } else {
                    incoming(p).zip(&fwd[p]).any(|(q, &ok)| ok && small(q, p, x))
                }
            })
            .collect();
        reach[x] = flags.iter().any(|&f| f);
        fwd[x] = flags;
    }
    reach
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::distance_matrix;

    #[test]
    fn square_has_two_geodesics() {
        let g = corpus::cycle(4);
        let dag = geodesic_dag(&g, 0, 2).unwrap();
        assert_eq!(dag.paths(10).unwrap(), vec![vec![0, 1, 2], vec![0, 3, 2]]);
        assert_eq!(dag.path_count(), 2);
    }

    #[test]
    fn cube_antipodes_have_six_geodesics() {
        let g = corpus::hypercube(3);
        let dag = geodesic_dag(&g, 0, 7).unwrap();
        assert_eq!(dag.paths(10).unwrap().len(), 6);
        assert!(matches!(dag.paths(5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn disconnected_pair_errors() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(geodesic_dag(&g, 0, 2), Err(Error::Disconnected(0, 2))));
    }

    #[test]
    fn admissible_matches_enumeration_on_cycle() {
        let g = corpus::cycle(6);
        let d = distance_matrix(&g);
        let dag = GeodesicDag::new(&g, &d, 0, 3).unwrap();
        // forbid turning at vertex 1 only
        let small = |_p: Vertex, x: Vertex, _q: Vertex| x != 1;
        let adm = dag.admissible(small);
        assert!(adm.exists());
        assert!(!adm.on_path(1) && !adm.on_path(2));
        assert!(adm.on_path(5) && adm.on_path(4));
        assert_eq!(dag.paths_where(small, 10).unwrap(), vec![vec![0, 5, 4, 3]]);
        assert_eq!(dag.first_violation(small), Some((0, 1, 2)));
    }

    #[test]
    fn small_targets_respect_first_edge() {
        let g = corpus::cycle(6);
        let d = distance_matrix(&g);
        let reach = small_geodesic_targets(&g, 0, d.row(0), |_, _, _| true, |w| w == 1);
        assert_eq!(reach, vec![true, true, true, true, false, false]);
    }
}
