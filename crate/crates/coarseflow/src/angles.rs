//! Angles, sizes for angles and the metric `d_Θ`.
//!
//! An angle at a vertex `v` is a pair of edges at `v`; it is written
//! `(a, v, b)` for the edges `(a, v)` and `(v, b)` and is trivial when
//! `a == b`. A size for angles is a group-invariant set of angles that
//! contains every trivial angle.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{
    circuits_through_edge, small_geodesic_targets, Distances, Edge, GeodesicDag, Graph, SlimnessReport, Subdivision,
    Vertex, INF,
};
use crate::symmetry::{Element, GroupModel};

/// An angle `(a, apex, b)` with `a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle {
    pub apex: Vertex,
    pub a: Vertex,
    pub b: Vertex,
}

impl Angle {
    pub fn new(a: Vertex, apex: Vertex, b: Vertex) -> Self {
        Angle { apex, a: a.min(b), b: a.max(b) }
    }

    pub fn is_trivial(self) -> bool {
        self.a == self.b
    }

    pub fn edges(self) -> (Edge, Edge) {
        (Edge::new(self.a, self.apex), Edge::new(self.apex, self.b))
    }

    pub fn act(self, group: &GroupModel, g: Element) -> Angle {
        Angle::new(group.act(g, self.a), group.act(g, self.apex), group.act(g, self.b))
    }

    pub fn triple(self) -> [Vertex; 3] {
        [self.a, self.apex, self.b]
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.apex, self.b)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.triple().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, apex, b] = <[Vertex; 3]>::deserialize(d)?;
        Ok(Angle::new(a, apex, b))
    }
}

/// The angles of a geodesic at its internal vertices, in order.
pub fn angles_of_geodesic(g: &Graph, dist: &Distances, path: &[Vertex]) -> Result<Vec<Angle>> {
    let not_geodesic = || Error::NotGeodesic(path.to_vec());
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
        return Err(not_geodesic());
    };
    if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) || dist.get(first, last) != Some(path.len() as u32 - 1) {
        return Err(not_geodesic());
    }
    Ok(path.windows(3).map(|w| Angle::new(w[0], w[1], w[2])).collect())
}

/// A set of angles of a fixed graph, stored as one symmetric bit matrix per
/// apex indexed by neighbor position. Trivial angles are always present.
#[derive(Clone, Debug)]
pub struct AngleSet {
    nbrs: Arc<Vec<Vec<Vertex>>>,
    offset: Vec<usize>,
    words: Vec<usize>,
    bits: Vec<u64>,
}

impl PartialEq for AngleSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_base(other) && self.bits == other.bits
    }
}

impl Eq for AngleSet {}

impl AngleSet {
    /// Only the trivial angles.
    pub fn trivial(g: &Graph) -> Self {
        let nbrs: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).to_vec()).collect();
        let words: Vec<usize> = nbrs.iter().map(|l| l.len().div_ceil(64)).collect();
        let mut offset = Vec::with_capacity(nbrs.len());
        let mut total = 0;
        for (l, &w) in nbrs.iter().zip(&words) {
            offset.push(total);
            total += l.len() * w;
        }
        let mut set = AngleSet { nbrs: Arc::new(nbrs), offset, words, bits: vec![0; total] };
        for v in 0..set.nbrs.len() {
            for i in 0..set.nbrs[v].len() {
                set.set_bit(v, i, i);
            }
        }
        set
    }

    /// Every angle of the graph.
    pub fn all(g: &Graph) -> Self {
        let mut set = Self::trivial(g);
        for v in g.vertices() {
            set.insert_all_at(v);
        }
        set
    }

    /// Trivial angles plus the given ones.
    pub fn from_angles(g: &Graph, angles: impl IntoIterator<Item = Angle>) -> Result<Self> {
        let mut set = Self::trivial(g);
        for x in angles {
            set.insert(x.a, x.apex, x.b)?;
        }
        Ok(set)
    }

    /// Parses the on-disk form: triples `[u, apex, w]`.
    pub fn from_triples(g: &Graph, triples: &[[Vertex; 3]]) -> Result<Self> {
        Self::from_angles(g, triples.iter().map(|t| Angle::new(t[0], t[1], t[2])))
    }

    /// Nontrivial angles as triples, in increasing order.
    pub fn to_triples(&self) -> Vec<[Vertex; 3]> {
        self.angles().map(Angle::triple).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.nbrs.len()
    }

    fn row(&self, v: Vertex, i: usize) -> &[u64] {
        let start = self.offset[v] + i * self.words[v];
        &self.bits[start..start + self.words[v]]
    }

    fn row_mut(&mut self, v: Vertex, i: usize) -> &mut [u64] {
        let start = self.offset[v] + i * self.words[v];
        let w = self.words[v];
        &mut self.bits[start..start + w]
    }

    fn bit(&self, v: Vertex, i: usize, j: usize) -> bool {
        self.row(v, i)[j / 64] >> (j % 64) & 1 == 1
    }

    fn set_bit(&mut self, v: Vertex, i: usize, j: usize) {
        self.row_mut(v, i)[j / 64] |= 1 << (j % 64);
        self.row_mut(v, j)[i / 64] |= 1 << (i % 64);
    }

    fn index(&self, apex: Vertex, w: Vertex) -> Option<usize> {
        self.nbrs.get(apex)?.binary_search(&w).ok()
    }

    /// True if the angle between edges `(p, apex)` and `(apex, q)` belongs to
    /// the set. Pairs that are not edges at `apex` are never members.
    pub fn small(&self, p: Vertex, apex: Vertex, q: Vertex) -> bool {
        match (self.index(apex, p), self.index(apex, q)) {
            (Some(i), Some(j)) => self.bit(apex, i, j),
            _ => false,
        }
    }

    pub fn contains(&self, angle: &Angle) -> bool {
        self.small(angle.a, angle.apex, angle.b)
    }

    /// Adds an angle; returns whether it was new.
    pub fn insert(&mut self, p: Vertex, apex: Vertex, q: Vertex) -> Result<bool> {
        match (self.index(apex, p), self.index(apex, q)) {
            (Some(i), Some(j)) => {
                let fresh = !self.bit(apex, i, j);
                self.set_bit(apex, i, j);
                Ok(fresh)
            }
            _ => Err(Error::BadAngle(p, apex, q)),
        }
    }

    /// Adds every angle at `apex`.
    pub fn insert_all_at(&mut self, apex: Vertex) {
        let d = self.nbrs[apex].len();
        for i in 0..d {
            for j in 0..d {
                self.set_bit(apex, i, j);
            }
        }
    }

    /// True if every angle at `apex` is in the set.
    pub fn is_all_at(&self, apex: Vertex) -> bool {
        let d = self.nbrs[apex].len();
        (0..d).all(|i| (0..d).all(|j| self.bit(apex, i, j)))
    }

    /// Adds every angle of every geodesic in the DAG: at each internal
    /// vertex, every predecessor paired with every successor.
    pub fn insert_geodesic_angles(&mut self, dag: &GeodesicDag) {
        for x in dag.internal_vertices() {
            for &p in dag.pred(x) {
                for &q in dag.succ(x) {
                    self.insert(p, x, q).expect("DAG edges are graph edges");
                }
            }
        }
    }

    /// Nontrivial angles in increasing order.
    pub fn angles(&self) -> impl Iterator<Item = Angle> + '_ {
        (0..self.nbrs.len()).flat_map(move |v| {
            let d = self.nbrs[v].len();
            (0..d).flat_map(move |i| {
                (i + 1..d).filter(move |&j| self.bit(v, i, j)).map(move |j| Angle::new(self.nbrs[v][i], v, self.nbrs[v][j]))
            })
        })
    }

    /// Nontrivial angles at one apex.
    pub fn angles_at(&self, apex: Vertex) -> Vec<Angle> {
        let d = self.nbrs[apex].len();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                if self.bit(apex, i, j) {
                    out.push(Angle::new(self.nbrs[apex][i], apex, self.nbrs[apex][j]));
                }
            }
        }
        out
    }

    pub fn nontrivial_count(&self) -> usize {
        self.angles().count()
    }

    pub fn is_trivial_only(&self) -> bool {
        self.angles().next().is_none()
    }

    pub fn same_base(&self, other: &AngleSet) -> bool {
        Arc::ptr_eq(&self.nbrs, &other.nbrs) || self.nbrs == other.nbrs
    }

    fn check_base(&self, other: &AngleSet) -> Result<()> {
        if self.same_base(other) {
            Ok(())
        } else {
            Err(Error::MismatchedBase)
        }
    }

    pub fn union(&self, other: &AngleSet) -> Result<AngleSet> {
        self.check_base(other)?;
        let mut out = self.clone();
        for (x, y) in out.bits.iter_mut().zip(&other.bits) {
            *x |= *y;
        }
        Ok(out)
    }

    /// The sum: angles `(e, e'')` with an edge `e'` such that `(e, e')` is in
    /// one set and `(e', e'')` in the other. Angles are unordered, so both
    /// composition orders contribute and the sum is commutative.
    pub fn sum(&self, other: &AngleSet) -> Result<AngleSet> {
        self.check_base(other)?;
        let mut out = self.clone();
        for v in 0..self.nbrs.len() {
            let d = self.nbrs[v].len();
            for i in 0..d {
                let mut acc = vec![0u64; self.words[v]];
                for j in 0..d {
                    if self.bit(v, i, j) {
                        for (a, b) in acc.iter_mut().zip(other.row(v, j)) {
                            *a |= *b;
                        }
                    }
                }
                for k in 0..d {
                    if acc[k / 64] >> (k % 64) & 1 == 1 {
                        out.set_bit(v, i, k);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `k`-fold sum of the set with itself; `k = 0` gives the trivial
    /// angles.
    pub fn times(&self, k: usize) -> AngleSet {
        let mut out = AngleSet { bits: vec![0; self.bits.len()], ..self.clone() };
        for v in 0..self.nbrs.len() {
            for i in 0..self.nbrs[v].len() {
                out.set_bit(v, i, i);
            }
        }
        for _ in 0..k {
            out = out.sum(self).expect("same base");
        }
        out
    }

    pub fn is_subset(&self, other: &AngleSet) -> Result<bool> {
        self.check_base(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(x, y)| x & !y == 0))
    }

    /// First angle of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &AngleSet) -> Result<Option<Angle>> {
        self.check_base(other)?;
        Ok(self.angles().find(|x| !other.contains(x)))
    }

    /// First angle whose translate by some element is missing.
    pub fn invariance_witness(&self, group: &GroupModel) -> Option<(Angle, Element)> {
        for x in self.angles() {
            for &g in group.generators() {
                if !self.contains(&x.act(group, g)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    pub fn is_invariant(&self, group: &GroupModel) -> bool {
        self.invariance_witness(group).is_none()
    }

    /// Smallest invariant superset.
    pub fn saturate(&self, group: &GroupModel) -> AngleSet {
        let mut out = self.clone();
        for x in self.angles() {
            for g in group.elements() {
                let y = x.act(group, g);
                out.insert(y.a, y.apex, y.b).expect("automorphisms map angles to angles");
            }
        }
        out
    }

    /// The corresponding set on the barycentric subdivision: an angle
    /// `(a, v, b)` becomes the angle at `v` between the half-edges towards
    /// the midpoints of `(a, v)` and `(v, b)`, and every angle at a midpoint
    /// is included.
    pub fn lift(&self, sub: &Subdivision) -> AngleSet {
        let mut out = AngleSet::trivial(sub.graph());
        for x in self.angles() {
            let ma = sub.midpoint(Edge::new(x.a, x.apex)).expect("edge");
            let mb = sub.midpoint(Edge::new(x.apex, x.b)).expect("edge");
            out.insert(ma, x.apex, mb).expect("half-edges");
        }
        for m in sub.midpoints() {
            out.insert_all_at(m);
        }
        out
    }

    /// Restriction of a set on the subdivision back to the original graph.
    pub fn descend(&self, sub: &Subdivision, g: &Graph) -> AngleSet {
        let mut out = AngleSet::trivial(g);
        for x in self.angles().filter(|x| !sub.is_midpoint(x.apex)) {
            let a = sub.edge_of(x.a).expect("midpoint").other(x.apex);
            let b = sub.edge_of(x.b).expect("midpoint").other(x.apex);
            out.insert(a, x.apex, b).expect("edges");
        }
        out
    }
}

/// The right-nested sum `sets[0] + (sets[1] + (… + sets[k-1]))`. Sums are
/// commutative but not associative; this nesting contains every chain of
/// angles `e₀, …, eₖ` with consecutive pairs in the listed sets, in order.
pub fn chain_sum(sets: &[&AngleSet]) -> Result<AngleSet> {
    let (last, rest) = sets.split_last().ok_or_else(|| Error::Parameter("empty chain".into()))?;
    rest.iter().rev().try_fold((*last).clone(), |acc, s| s.sum(&acc))
}

/// Definitional computation of `Θ⁽³⁾`: the angles `(x, v, y)` for which
/// there are corners `a, b` distinct from `v`, geodesics from `v` to `a`
/// through `x` and from `v` to `b` through `y`, and a geodesic from `a` to
/// `b` missing `v`.
///
/// With `include_cone_completion` false, cone vertices are not used as the
/// far corners `a, b`.
pub fn theta3(g: &Graph, dist: &Distances, include_cone_completion: bool) -> Result<AngleSet> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.vertex_count();
    let words = n.div_ceil(64);
    // cut[a*n+b] marks vertices lying on every geodesic from a to b
    let cut: Vec<Vec<u64>> = (0..n * n)
        .into_par_iter()
        .map(|ab| {
            let (a, b) = (ab / n, ab % n);
            let mut mask = vec![0u64; words];
            let dab = dist.raw(a, b) as usize;
            let mut count = vec![0u32; dab + 1];
            let (ra, rb) = (dist.row(a), dist.row(b));
            for x in 0..n {
                if ra[x] as usize + rb[x] as usize == dab {
                    count[ra[x] as usize] += 1;
                }
            }
            for x in 0..n {
                if ra[x] as usize + rb[x] as usize == dab && count[ra[x] as usize] == 1 {
                    mask[x / 64] |= 1 << (x % 64);
                }
            }
            mask
        })
        .collect();
    let corner_ok = |c: Vertex| include_cone_completion || !g.is_cone(c);
    let per_apex: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let nb = g.neighbors(v);
            let d = nb.len();
            let mut pairs = Vec::new();
            if d < 2 {
                return pairs;
            }
            let w = d.div_ceil(64);
            // toward[a]: neighbor positions starting a geodesic from v to a
            let toward: Vec<Vec<u64>> = (0..n)
                .map(|a| {
                    let mut m = vec![0u64; w];
                    if a != v && corner_ok(a) {
                        for (i, &x) in nb.iter().enumerate() {
                            if dist.raw(x, a) + 1 == dist.raw(v, a) {
                                m[i / 64] |= 1 << (i % 64);
                            }
                        }
                    }
                    m
                })
                .collect();
            let mut rows = vec![vec![0u64; w]; d];
            for a in 0..n {
                if toward[a].iter().all(|&x| x == 0) {
                    continue;
                }
                let mut reach = vec![0u64; w];
                for b in 0..n {
                    let avoids = cut[a * n + b][v / 64] >> (v % 64) & 1 == 0;
                    if avoids {
                        for (r, t) in reach.iter_mut().zip(&toward[b]) {
                            *r |= *t;
                        }
                    }
                }
                for i in 0..d {
                    if toward[a][i / 64] >> (i % 64) & 1 == 1 {
                        for (r, t) in rows[i].iter_mut().zip(&reach) {
                            *r |= *t;
                        }
                    }
                }
            }
            for i in 0..d {
                for j in 0..d {
                    if i != j && (rows[i][j / 64] >> (j % 64) & 1 == 1 || rows[j][i / 64] >> (i % 64) & 1 == 1) {
                        pairs.push((i, j));
                    }
                }
            }
            pairs
        })
        .collect();
    let mut out = AngleSet::trivial(g);
    for (v, pairs) in per_apex.into_iter().enumerate() {
        for (i, j) in pairs {
            out.set_bit(v, i, j);
        }
    }
    Ok(out)
}

/// Outcome of checking that `Θ⁽³⁾` angles lie on short circuits.
#[derive(Clone, Debug, Serialize)]
pub struct CircuitBoundReport {
    /// Slimness constant of the graph, in hops.
    pub delta: u32,
    /// The bound `16 * max(delta, 1)`.
    pub bound: u32,
    /// Nontrivial angles examined.
    pub checked: usize,
    /// Longest shortest circuit needed by any angle.
    pub max_needed: u32,
    /// Angles with no circuit within the bound; `None` length means no
    /// circuit at all.
    pub violations: Vec<(Angle, Option<u32>)>,
    /// Angles whose shortest circuit was confirmed by circuit enumeration.
    pub cross_checked: usize,
    /// For forests: whether the set is trivial-only, as it must be.
    pub forest_trivial: Option<bool>,
    pub passes: bool,
}

/// Shortest circuit through both edges of a nontrivial angle: two plus the
/// distance between its outer endpoints in the graph with the apex removed.
pub fn shortest_circuit_through(g: &Graph, angle: Angle) -> Option<u32> {
    let mut dist = vec![INF; g.vertex_count()];
    dist[angle.a] = 0;
    let mut queue = std::collections::VecDeque::from([angle.a]);
    while let Some(u) = queue.pop_front() {
        if u == angle.b {
            return Some(dist[u] + 2);
        }
        for &w in g.neighbors(u) {
            if w != angle.apex && dist[w] == INF {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Checks every nontrivial angle of `theta3` against the circuit bound
/// `16 * max(delta, 1)`, cross-checking up to `cross_check` angles by
/// explicit circuit enumeration.
pub fn theta3_circuit_bound_check(
    g: &Graph,
    theta3: &AngleSet,
    delta: &SlimnessReport,
    cross_check: usize,
) -> CircuitBoundReport {
    let bound = 16 * delta.positive_hops();
    let mut report = CircuitBoundReport {
        delta: delta.hops(),
        bound,
        checked: 0,
        max_needed: 0,
        violations: Vec::new(),
        cross_checked: 0,
        forest_trivial: g.is_forest().then(|| theta3.is_trivial_only()),
        passes: true,
    };
    for x in theta3.angles() {
        report.checked += 1;
        let len = shortest_circuit_through(g, x);
        match len {
            Some(l) if l <= bound => report.max_needed = report.max_needed.max(l),
            _ => report.violations.push((x, len)),
        }
        if let Some(l) = len {
            if report.cross_checked < cross_check {
                let (e1, e2) = x.edges();
                let circuits = circuits_through_edge(g, e1, l as usize);
                let found = circuits.iter().any(|c| {
                    c.len() == l as usize && (0..c.len()).any(|i| Edge::new(c[i], c[(i + 1) % c.len()]) == e2)
                });
                if found {
                    report.cross_checked += 1;
                } else {
                    report.violations.push((x, len));
                }
            }
        }
    }
    report.passes = report.violations.is_empty() && report.forest_trivial != Some(false);
    report
}

/// Geodesics from `u` to `v` all of whose internal angles lie in `theta`.
pub fn theta_small_geodesics(
    g: &Graph,
    dist: &Distances,
    theta: &AngleSet,
    u: Vertex,
    v: Vertex,
    cap: usize,
) -> Result<Vec<Vec<Vertex>>> {
    GeodesicDag::new(g, dist, u, v)?.paths_where(|p, x, q| theta.small(p, x, q), cap)
}

/// True if some geodesic from `u` to `v` is `theta`-small.
pub fn has_small_geodesic(g: &Graph, dist: &Distances, theta: &AngleSet, u: Vertex, v: Vertex) -> bool {
    GeodesicDag::new(g, dist, u, v).is_ok_and(|dag| dag.admissible(|p, x, q| theta.small(p, x, q)).exists())
}

/// Vertices reachable from `v` by a `theta`-small geodesic of length at
/// most `alpha` whose first edge `e'` satisfies `(e, e') ∈ theta`.
pub fn theta_ball(
    g: &Graph,
    dist: &Distances,
    theta: &AngleSet,
    v: Vertex,
    e: Edge,
    alpha: u32,
) -> Result<BTreeSet<Vertex>> {
    if !e.contains(v) || !g.has_edge(e.lo(), e.hi()) {
        return Err(Error::Parameter(format!("edge ({}, {}) is not incident to {v}", e.lo(), e.hi())));
    }
    let back = e.other(v);
    let row = dist.row(v);
    let reach = small_geodesic_targets(g, v, row, |p, x, q| theta.small(p, x, q), |w| theta.small(back, v, w));
    Ok(g.vertices().filter(|&x| reach[x] && row[x] <= alpha).collect())
}

/// The metric `d_Θ` on the midpoints of a subdivision: the least total
/// length of a chain of midpoints in which consecutive entries are joined
/// by a `theta`-small geodesic. Lengths are in half units.
#[derive(Clone, Debug)]
pub struct ThetaMetric {
    points: Vec<Vertex>,
    local: Vec<usize>,
    dist: Vec<u32>,
}

impl ThetaMetric {
    /// Midpoints, in increasing order.
    pub fn points(&self) -> &[Vertex] {
        &self.points
    }

    /// Local index of a midpoint.
    pub fn local(&self, v: Vertex) -> Option<usize> {
        self.local.get(v).copied().filter(|&i| i != usize::MAX)
    }

    /// Distance in half units, `None` if no chain exists or a vertex is not
    /// a midpoint.
    pub fn get(&self, u: Vertex, v: Vertex) -> Option<u32> {
        let (i, j) = (self.local(u)?, self.local(v)?);
        let x = self.dist[i * self.points.len() + j];
        (x != INF).then_some(x)
    }

    /// Distance by local indices, [`INF`] when unreachable.
    pub fn raw_local(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.points.len() + j]
    }

    /// Row-major matrix over local indices.
    pub fn matrix(&self) -> &[u32] {
        &self.dist
    }
}

/// Computes `d_Θ`. Angles at midpoints never obstruct smallness.
pub fn d_theta(sub: &Subdivision, sub_dist: &Distances, theta: &AngleSet) -> ThetaMetric {
    let g = sub.graph();
    let points: Vec<Vertex> = sub.midpoints().collect();
    let k = points.len();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &p) in points.iter().enumerate() {
        local[p] = i;
    }
    let small = |p: Vertex, x: Vertex, q: Vertex| sub.is_midpoint(x) || theta.small(p, x, q);
    let rows: Vec<Vec<u32>> = points
        .par_iter()
        .map(|&w| {
            let row = sub_dist.row(w);
            let reach = small_geodesic_targets(g, w, row, small, |_| true);
            points.iter().map(|&t| if reach[t] { row[t] } else { INF }).collect()
        })
        .collect();
    let mut dist = rows.concat();
    for m in 0..k {
        for i in 0..k {
            let dim = dist[i * k + m];
            if dim == INF {
                continue;
            }
            for j in 0..k {
                let dmj = dist[m * k + j];
                if dmj != INF && dim + dmj < dist[i * k + j] {
                    dist[i * k + j] = dim + dmj;
                }
            }
        }
    }
    ThetaMetric { points, local, dist }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{distance_matrix, slimness_constant};
    use crate::symmetry::close_group;

    #[test]
    fn geodesic_angles() {
        let g = corpus::path(4);
        let d = distance_matrix(&g);
        assert!(angles_of_geodesic(&g, &d, &[0, 1]).unwrap().is_empty());
        assert_eq!(angles_of_geodesic(&g, &d, &[0, 1, 2]).unwrap(), vec![Angle::new(0, 1, 2)]);
        assert_eq!(angles_of_geodesic(&g, &d, &[0, 1, 2, 3]).unwrap().len(), 2);
        let c = corpus::cycle(5);
        let dc = distance_matrix(&c);
        assert!(angles_of_geodesic(&c, &dc, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn theta3_examples() {
        let t = corpus::path(3);
        assert!(theta3(&t, &distance_matrix(&t), true).unwrap().is_trivial_only());
        let c6 = corpus::cycle(6);
        let th = theta3(&c6, &distance_matrix(&c6), true).unwrap();
        assert!(th.small(0, 1, 2));
        assert_eq!(th.nontrivial_count(), 6);
    }

    #[test]
    fn theta3_of_bouquet_separates_petals() {
        let g = corpus::bouquet(3, 4);
        let d = distance_matrix(&g);
        let th = theta3(&g, &d, true).unwrap();
        // the two hub edges of a petal form a small angle
        assert!(th.small(1, 0, 3));
        // edges of different petals do not
        assert!(!th.small(1, 0, 4));
    }

    #[test]
    fn sum_identity_and_monotone() {
        let g = corpus::cycle(6);
        let d = distance_matrix(&g);
        let th = theta3(&g, &d, true).unwrap();
        let triv = AngleSet::trivial(&g);
        assert_eq!(th.sum(&triv).unwrap(), th);
        assert_eq!(triv.sum(&th).unwrap(), th);
        assert!(th.is_subset(&th.times(2)).unwrap());
        assert_eq!(th.times(0), triv);
        assert_eq!(th.times(1), th);
    }

    #[test]
    fn sums_are_symmetric_and_commutative() {
        let g = corpus::star(4);
        let mut a = AngleSet::trivial(&g);
        a.insert(1, 0, 2).unwrap();
        let mut b = AngleSet::trivial(&g);
        b.insert(2, 0, 3).unwrap();
        let ab = a.sum(&b).unwrap();
        assert_eq!(ab, b.sum(&a).unwrap());
        assert!(ab.small(1, 0, 3) && ab.small(3, 0, 1));
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let a = AngleSet::trivial(&corpus::cycle(5));
        let b = AngleSet::trivial(&corpus::cycle(6));
        assert!(matches!(a.sum(&b), Err(Error::MismatchedBase)));
    }

    #[test]
    fn small_geodesics_on_square() {
        let g = corpus::cycle(4);
        let d = distance_matrix(&g);
        let all = AngleSet::all(&g);
        let triv = AngleSet::trivial(&g);
        assert_eq!(theta_small_geodesics(&g, &d, &all, 0, 2, 10).unwrap().len(), 2);
        assert!(theta_small_geodesics(&g, &d, &triv, 0, 2, 10).unwrap().is_empty());
        assert_eq!(theta_small_geodesics(&g, &d, &triv, 0, 1, 10).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn theta_balls() {
        let g = corpus::cycle(6);
        let d = distance_matrix(&g);
        let triv = AngleSet::trivial(&g);
        let e = Edge::new(0, 1);
        assert_eq!(theta_ball(&g, &d, &triv, 0, e, 0).unwrap(), BTreeSet::from([0]));
        // small geodesics under trivial-only have length at most one
        assert_eq!(theta_ball(&g, &d, &triv, 0, e, 3).unwrap(), BTreeSet::from([0, 1]));
        let all = AngleSet::all(&g);
        assert_eq!(theta_ball(&g, &d, &all, 0, e, 1).unwrap(), BTreeSet::from([0, 1, 5]));
    }

    #[test]
    fn d_theta_all_angles_is_graph_metric() {
        let g = corpus::petersen();
        let sub = Subdivision::new(&g);
        let sd = distance_matrix(sub.graph());
        let m = d_theta(&sub, &sd, &AngleSet::all(sub.graph()));
        for &u in m.points() {
            for &v in m.points() {
                assert_eq!(m.get(u, v), Some(sd.raw(u, v)));
            }
        }
    }

    #[test]
    fn d_theta_trivial_on_square_disconnects_midpoints() {
        let g = corpus::cycle(4);
        let sub = Subdivision::new(&g);
        let sd = distance_matrix(sub.graph());
        let m = d_theta(&sub, &sd, &AngleSet::trivial(&g).lift(&sub));
        let (m01, m23) = (sub.midpoint(Edge::new(0, 1)).unwrap(), sub.midpoint(Edge::new(2, 3)).unwrap());
        assert_eq!(m.get(m01, m01), Some(0));
        assert_eq!(m.get(m01, m23), None);
    }

    #[test]
    fn circuit_bound_on_hexagon() {
        let g = corpus::cycle(6);
        let d = distance_matrix(&g);
        let th = theta3(&g, &d, true).unwrap();
        let r = theta3_circuit_bound_check(&g, &th, &slimness_constant(&g, &d).unwrap(), 100);
        assert!(r.passes);
        assert_eq!(r.max_needed, 6);
        assert_eq!(r.cross_checked, 6);
    }

    #[test]
    fn saturation_and_lift() {
        let g = corpus::cycle(6);
        let grp = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        let one = AngleSet::from_angles(&g, [Angle::new(0, 1, 2)]).unwrap();
        assert!(!one.is_invariant(&grp));
        let sat = one.saturate(&grp);
        assert!(sat.is_invariant(&grp));
        assert_eq!(sat.nontrivial_count(), 6);
        let sub = Subdivision::new(&g);
        assert_eq!(sat.lift(&sub).descend(&sub, &g), sat);
    }
}
