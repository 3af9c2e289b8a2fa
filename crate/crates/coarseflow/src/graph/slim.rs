use serde::Serialize;

use super::{Distances, Graph, Vertex, INF};
use crate::error::{Error, Result};
use crate::half::Half;

/// Slimness constant of a graph: the least `delta` such that in every
/// geodesic triangle each side lies in the closed `delta`-neighborhood of
/// the union of the other two sides. Distances are taken between vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlimnessReport {
    pub delta: Half,
    /// Corners `(a, b, c)` of a triangle realizing `delta`, with the side
    /// from `a` to `b` containing the far vertex.
    pub witness_triangle: Option<[Vertex; 3]>,
    /// A vertex on the side from `a` to `b` at distance `delta` from the
    /// other two sides.
    pub witness_vertex: Option<Vertex>,
}

impl SlimnessReport {
    /// The constant as a whole number of hops; vertex slimness is integral.
    pub fn hops(&self) -> u32 {
        self.delta.halves() / 2
    }

    /// The constant used in bounds that assume a positive integer `delta`.
    pub fn positive_hops(&self) -> u32 {
        self.hops().max(1)
    }
}

/// A triangle `(a, b, c)` and the far vertex on its side from `a` to `b`.
type Witness = ([Vertex; 3], Vertex);

/// Computes the slimness constant, choosing the sides of each triangle
/// adversarially among all geodesics.
///
/// For a vertex `x` and corners `p`, `q`, let `F(x, p, q)` be the largest
/// distance from `x` to a geodesic from `p` to `q`; a bottleneck dynamic
/// program computes it for all `p` at once. The answer is the maximum over
/// corners `a, b, c` and `x` in the interval `I(a, b)` of
/// `min(F(x, b, c), F(x, a, c))`.
pub fn slimness_constant(g: &Graph, dist: &Distances) -> Result<SlimnessReport> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if n == 0 {
        return Ok(SlimnessReport { delta: Half::ZERO, witness_triangle: None, witness_vertex: None });
    }
    use rayon::prelude::*;
    let per_corner: Vec<(u32, Option<Witness>)> = (0..n)
        .into_par_iter()
        .map(|c| {
            let mut best = 0u32;
            let mut witness = None;
            let dc = dist.row(c);
            let mut order: Vec<Vertex> = (0..n).collect();
            order.sort_by_key(|&p| dc[p]);
            let mut f = vec![0u32; n];
            let mut ranked: Vec<Vertex> = (0..n).collect();
            for x in 0..n {
                let dx = dist.row(x);
                for &p in &order {
                    if p == c {
                        f[p] = dx[c];
                        continue;
                    }
                    let onward = g
                        .neighbors(p)
                        .iter()
                        .filter(|&&w| dc[w] + 1 == dc[p])
                        .map(|&w| f[w])
                        .max()
                        .unwrap_or(0);
                    f[p] = dx[p].min(onward);
                }
                ranked.sort_by(|&u, &v| f[v].cmp(&f[u]).then(u.cmp(&v)));
                for (i, &a) in ranked.iter().enumerate() {
                    if f[a] <= best {
                        break;
                    }
                    let da = dist.row(a);
                    for &b in &ranked[i..] {
                        if f[b] <= best {
                            break;
                        }
                        if da[x] + dx[b] == da[b] {
                            best = f[b];
                            witness = Some(([a, b, c], x));
                            break;
                        }
                    }
                }
            }
            (best, witness)
        })
        .collect();
    let (delta, witness) = per_corner
        .into_iter()
        .fold((0, None), |acc, cur| if cur.0 > acc.0 { cur } else { acc });
    Ok(SlimnessReport {
        delta: Half::from_units(delta),
        witness_triangle: witness.map(|w| w.0),
        witness_vertex: witness.map(|w| w.1),
    })
}

/// Diagnostic variant that lets each triangle pick its slimmest choice of
/// sides. Enumerates geodesics, so it is only meant for small graphs.
pub fn min_side_slimness(g: &Graph, dist: &Distances, cap: usize) -> Result<u32> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut paths = vec![Vec::new(); n * n];
    for a in 0..n {
        for b in 0..n {
            paths[a * n + b] = super::GeodesicDag::new(g, dist, a, b)?.paths(cap)?;
        }
    }
    let side_gap = |side: &[Vertex], others: [&[Vertex]; 2]| -> u32 {
        side.iter()
            .map(|&x| {
                others.iter().flat_map(|o| o.iter()).map(|&y| dist.raw(x, y)).min().unwrap_or(INF)
            })
            .max()
            .unwrap_or(0)
    };
    let mut worst = 0;
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let mut slimmest = INF;
                for s_ab in &paths[a * n + b] {
                    for s_bc in &paths[b * n + c] {
                        for s_ca in &paths[c * n + a] {
                            let thick = side_gap(s_ab, [s_bc, s_ca])
                                .max(side_gap(s_bc, [s_ab, s_ca]))
                                .max(side_gap(s_ca, [s_ab, s_bc]));
                            slimmest = slimmest.min(thick);
                        }
                    }
                }
                worst = worst.max(slimmest);
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::distance_matrix;

    fn delta(g: &Graph) -> u32 {
        slimness_constant(g, &distance_matrix(g)).unwrap().hops()
    }

    #[test]
    fn known_values() {
        assert_eq!(delta(&corpus::path(5)), 0);
        assert_eq!(delta(&corpus::star(4)), 0);
        assert_eq!(delta(&corpus::cycle(6)), 1);
        assert_eq!(delta(&corpus::cycle(4)), 1);
        assert_eq!(delta(&corpus::complete(4)), 0);
    }

    #[test]
    fn witness_realizes_delta() {
        let g = corpus::cycle(8);
        let d = distance_matrix(&g);
        let r = slimness_constant(&g, &d).unwrap();
        assert_eq!(r.hops(), 2);
        let [a, b, _] = r.witness_triangle.unwrap();
        let x = r.witness_vertex.unwrap();
        assert_eq!(d.raw(a, x) + d.raw(x, b), d.raw(a, b));
    }

    #[test]
    fn min_side_never_exceeds_adversarial() {
        for g in [corpus::cycle(5), corpus::cycle(6), corpus::hypercube(3), corpus::grid(3, 3)] {
            let d = distance_matrix(&g);
            let adv = slimness_constant(&g, &d).unwrap().hops();
            assert!(min_side_slimness(&g, &d, 100).unwrap() <= adv);
        }
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(slimness_constant(&g, &distance_matrix(&g)).is_err());
    }
}
