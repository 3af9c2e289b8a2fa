//! The relative Rips complex `P_{d,Θ}`, rational homology, and the
//! vertex-replacement contraction of finite subcomplexes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angles::AngleSet;
use crate::error::{Error, Result};
use crate::graph::{small_geodesic_targets, Distances, GeodesicDag, Graph, SlimnessReport, Vertex};

/// Default bound on the number of maximal simplices and of simplices.
pub const DEFAULT_SIMPLEX_CAP: usize = 200_000;

/// A finite simplicial complex given by its maximal simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<Vertex>,
    pub maximal_simplices: Vec<Vec<Vertex>>,
}

impl SimplicialComplex {
    /// The complex generated by the given simplices; vertices of the
    /// simplices are added to `vertices`.
    pub fn from_simplices(vertices: impl IntoIterator<Item = Vertex>, simplices: impl IntoIterator<Item = Vec<Vertex>>) -> Self {
        let mut verts: BTreeSet<Vertex> = vertices.into_iter().collect();
        let mut sims: Vec<Vec<Vertex>> = simplices
            .into_iter()
            .map(|s| s.into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>())
            .filter(|s| !s.is_empty())
            .collect();
        for s in &sims {
            verts.extend(s);
        }
        for &v in &verts {
            sims.push(vec![v]);
        }
        sims.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sims.dedup();
        let mut maximal: Vec<Vec<Vertex>> = Vec::new();
        for s in sims {
            if !maximal.iter().any(|m| is_sub(&s, m)) {
                maximal.push(s);
            }
        }
        maximal.sort();
        SimplicialComplex { vertices: verts.into_iter().collect(), maximal_simplices: maximal }
    }

    /// Largest simplex size minus one; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.maximal_simplices.iter().map(|s| s.len() as i64).max().unwrap_or(0) - 1
    }

    /// All simplices grouped by dimension, each list sorted.
    pub fn simplices(&self, cap: usize) -> Result<Vec<Vec<Vec<Vertex>>>> {
        let dim = self.dimension();
        if dim < 0 {
            return Ok(Vec::new());
        }
        let mut by_dim: Vec<BTreeSet<Vec<Vertex>>> = vec![BTreeSet::new(); dim as usize + 1];
        let mut total = 0usize;
        for m in &self.maximal_simplices {
            if m.len() >= usize::BITS as usize - 1 || (1usize << m.len()) > cap {
                return Err(Error::CapExceeded { what: "simplex", cap });
            }
            for mask in 1usize..(1 << m.len()) {
                let face: Vec<Vertex> = (0..m.len()).filter(|i| mask >> i & 1 == 1).map(|i| m[i]).collect();
                if by_dim[face.len() - 1].insert(face) {
                    total += 1;
                    if total > cap {
                        return Err(Error::CapExceeded { what: "simplex", cap });
                    }
                }
            }
        }
        Ok(by_dim.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    /// True if every simplex of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        let verts: BTreeSet<Vertex> = other.vertices.iter().copied().collect();
        self.vertices.iter().all(|v| verts.contains(v))
            && self.maximal_simplices.iter().all(|s| other.maximal_simplices.iter().any(|m| is_sub(s, m)))
    }

    /// Replaces the vertex `v` by `w` in every simplex.
    pub fn substitute(&self, v: Vertex, w: Vertex) -> SimplicialComplex {
        let map = |x: Vertex| if x == v { w } else { x };
        SimplicialComplex::from_simplices(
            self.vertices.iter().map(|&x| map(x)),
            self.maximal_simplices.iter().map(|s| s.iter().map(|&x| map(x)).collect()),
        )
    }
}

fn is_sub(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// The pair relation of `P_{d,Θ}`: `v ~ w` when a `Θ`-small geodesic of
/// length at most `d` joins them.
pub fn rips_relation(g: &Graph, dist: &Distances, d: u32, theta: &AngleSet) -> Vec<BTreeSet<Vertex>> {
    g.vertices()
        .into_par_iter()
        .map(|u| {
            let row = dist.row(u);
            let reach = small_geodesic_targets(g, u, row, |p, x, q| theta.small(p, x, q), |_| true);
            g.vertices().filter(|&w| w != u && reach[w] && row[w] <= d).collect()
        })
        .collect()
}

/// True if a `Θ`-small geodesic of length at most `d` joins `u` and `w`.
pub fn small_pair(g: &Graph, dist: &Distances, d: u32, theta: &AngleSet, u: Vertex, w: Vertex) -> bool {
    if u == w {
        return true;
    }
    dist.get(u, w).is_some_and(|x| x <= d)
        && GeodesicDag::new(g, dist, u, w).is_ok_and(|dag| dag.admissible(|p, x, q| theta.small(p, x, q)).exists())
}

/// Maximal cliques of a graph restricted to `vertices`, by Bron–Kerbosch
/// with pivoting.
pub fn maximal_cliques(adj: &[BTreeSet<Vertex>], vertices: &BTreeSet<Vertex>, cap: usize) -> Result<Vec<Vec<Vertex>>> {
    fn bk(
        adj: &[BTreeSet<Vertex>],
        r: &mut Vec<Vertex>,
        p: BTreeSet<Vertex>,
        mut x: BTreeSet<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
        cap: usize,
    ) -> Result<()> {
        if p.is_empty() && x.is_empty() {
            if out.len() >= cap {
                return Err(Error::CapExceeded { what: "maximal simplex", cap });
            }
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return Ok(());
        }
        let pivot = p.iter().chain(x.iter()).max_by_key(|&&u| p.iter().filter(|w| adj[u].contains(w)).count()).copied();
        let candidates: Vec<Vertex> =
            p.iter().copied().filter(|w| pivot.map_or(true, |u| !adj[u].contains(w))).collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|w| adj[v].contains(w)).collect();
            let nx = x.iter().copied().filter(|w| adj[v].contains(w)).collect();
            bk(adj, r, np, nx, out, cap)?;
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
        Ok(())
    }
    let mut out = Vec::new();
    bk(adj, &mut Vec::new(), vertices.clone(), BTreeSet::new(), &mut out, cap)?;
    out.sort();
    Ok(out)
}

/// Builds `P_{d,Θ}` on all vertices.
pub fn build_rips(g: &Graph, dist: &Distances, d: u32, theta: &AngleSet, cap: usize) -> Result<SimplicialComplex> {
    let adj = rips_relation(g, dist, d, theta);
    let verts: BTreeSet<Vertex> = g.vertices().collect();
    let cliques = maximal_cliques(&adj, &verts, cap)?;
    Ok(SimplicialComplex { vertices: verts.into_iter().collect(), maximal_simplices: cliques })
}

/// Simplex counts and local finiteness data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexStats {
    pub dimension: i64,
    /// Number of simplices in each dimension.
    pub f_vector: Vec<usize>,
    pub maximal_simplices: usize,
    /// For each dimension `k`, the largest number of `(k+1)`-simplices
    /// containing one `k`-simplex.
    pub max_cofaces: Vec<usize>,
}

pub fn complex_stats(p: &SimplicialComplex, cap: usize) -> Result<ComplexStats> {
    let sims = p.simplices(cap)?;
    let mut max_cofaces = Vec::new();
    for k in 0..sims.len() {
        let mut count: HashMap<&[Vertex], usize> = sims[k].iter().map(|s| (s.as_slice(), 0)).collect();
        let mut faces = Vec::new();
        if let Some(up) = sims.get(k + 1) {
            for s in up {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    faces.push(f);
                }
            }
        }
        for f in &faces {
            if let Some(c) = count.get_mut(f.as_slice()) {
                *c += 1;
            }
        }
        max_cofaces.push(count.values().copied().max().unwrap_or(0));
    }
    Ok(ComplexStats {
        dimension: p.dimension(),
        f_vector: sims.iter().map(Vec::len).collect(),
        maximal_simplices: p.maximal_simplices.len(),
        max_cofaces,
    })
}

/// Rank over the rationals of a matrix given by sparse columns.
fn rank(columns: Vec<Vec<(usize, i64)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, BigRational)>> = HashMap::new();
    let mut rank = 0;
    for col in columns {
        let mut c: BTreeMap<usize, BigRational> =
            col.into_iter().map(|(r, x)| (r, BigRational::from_integer(x.into()))).collect();
        while let Some((&low, val)) = c.iter().next_back() {
            let Some(p) = pivots.get(&low) else { break };
            let factor = val.clone() / p.last().expect("pivot column").1.clone();
            for (r, x) in p {
                let e = c.entry(*r).or_insert_with(BigRational::zero);
                *e -= factor.clone() * x;
                if e.is_zero() {
                    c.remove(r);
                }
            }
        }
        if let Some((&low, _)) = c.iter().next_back() {
            pivots.insert(low, c.into_iter().collect());
            rank += 1;
        }
    }
    rank
}

/// Betti numbers over the rationals in dimensions `0..=max_dim`.
pub fn homology_oracle(p: &SimplicialComplex, max_dim: usize, cap: usize) -> Result<Vec<usize>> {
    let sims = p.simplices(cap)?;
    if sims.is_empty() {
        return Ok(vec![0; max_dim + 1]);
    }
    let index: Vec<HashMap<&[Vertex], usize>> =
        sims.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    let top = (max_dim + 1).min(sims.len() - 1);
    let ranks: Vec<usize> = (1..=top)
        .into_par_iter()
        .map(|k| {
            let columns = sims[k]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            (index[k - 1][f.as_slice()], if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect();
            rank(columns)
        })
        .collect();
    let rank_of = |k: usize| if (1..=top).contains(&k) { ranks[k - 1] } else { 0 };
    Ok((0..=max_dim)
        .map(|k| if k < sims.len() { sims[k].len() - rank_of(k) - rank_of(k + 1) } else { 0 })
        .collect())
}

/// Vertices on geodesics between vertices of `k`.
pub fn span_vertices(dist: &Distances, k: &SimplicialComplex) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::new();
    for &a in &k.vertices {
        for &b in &k.vertices {
            if a <= b {
                out.extend(dist.interval(a, b));
            }
        }
    }
    out
}

/// The full subcomplex of `P_{d,Θ}` on the vertices of geodesics between
/// vertices of `k`.
pub fn span_l(g: &Graph, dist: &Distances, d: u32, theta: &AngleSet, k: &SimplicialComplex, cap: usize) -> Result<SimplicialComplex> {
    let verts = span_vertices(dist, k);
    let adj = rips_relation(g, dist, d, theta);
    let cliques = maximal_cliques(&adj, &verts, cap)?;
    Ok(SimplicialComplex { vertices: verts.into_iter().collect(), maximal_simplices: cliques })
}

/// Which case of the replacement rule produced a move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveCase {
    /// A farthest vertex moved toward the base point.
    Far,
    /// No large angles remain: a farthest vertex moved to the base point.
    Base,
    /// A vertex moved to its farthest large-angle vertex.
    LargeAngle,
}

/// One vertex replacement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub vertex: Vertex,
    pub replacement: Vertex,
    pub case: MoveCase,
    /// `(α + β, a + b)` before and after the move.
    pub measure_before: (u32, usize),
    pub measure_after: (u32, usize),
}

/// A sequence of moves shrinking a complex to one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub base: Vertex,
    pub moves: Vec<Move>,
    pub final_vertex: Vertex,
}

/// Parameters of a contraction.
pub struct RipsSetting<'a> {
    pub graph: &'a Graph,
    pub dist: &'a Distances,
    pub d: u32,
    pub theta: &'a AngleSet,
    /// `Θ⁽³⁾` of the graph.
    pub theta3: &'a AngleSet,
    pub slim: &'a SlimnessReport,
}

impl RipsSetting<'_> {
    /// Checks `d >= 4δ`, `d >= 1` and `7Θ⁽³⁾ ⊆ Θ`.
    pub fn check(&self) -> Result<()> {
        let delta = self.slim.hops();
        if self.d < 4 * delta || self.d == 0 {
            return Err(Error::Hypothesis(format!("d = {} is below 4δ = {}", self.d, 4 * delta)));
        }
        if let Some(x) = self.theta3.times(7).first_missing_from(self.theta)? {
            return Err(Error::Hypothesis(format!("angle {x} of 7Θ⁽³⁾ is not in Θ")));
        }
        Ok(())
    }

    fn small(&self, u: Vertex, w: Vertex) -> bool {
        small_pair(self.graph, self.dist, self.d, self.theta, u, w)
    }

    /// `W(v)`: internal vertices of geodesics from `base` to `v` with a
    /// `2Θ⁽³⁾`-large angle.
    fn large_vertices(&self, two: &AngleSet, base: Vertex, v: Vertex) -> Vec<Vertex> {
        let dag = GeodesicDag::new(self.graph, self.dist, base, v).expect("connected");
        dag.internal_vertices()
            .filter(|&w| dag.pred(w).iter().any(|&p| dag.succ(w).iter().any(|&q| !two.small(p, w, q))))
            .collect()
    }

    /// `(α + β, a + b)` for a vertex set and base point.
    pub fn measure(&self, base: Vertex, verts: &[Vertex]) -> (u32, usize) {
        let two = self.theta3.times(2);
        let d = |v: Vertex| self.dist.raw(base, v);
        let alpha = verts.iter().map(|&v| d(v)).max().unwrap_or(0);
        let a = verts.iter().filter(|&&v| d(v) == alpha).count();
        let far: Vec<u32> =
            verts.iter().map(|&v| self.large_vertices(&two, base, v).into_iter().map(d).max().unwrap_or(0)).collect();
        let beta = far.iter().copied().max().unwrap_or(0);
        let b = if beta == 0 { 0 } else { far.iter().filter(|&&x| x == beta).count() };
        (alpha + beta, a + b)
    }
}

/// Contracts `k` to a vertex by replacing one vertex at a time, following
/// the two cases of the replacement rule, and validates every move.
pub fn contract_subcomplex(setting: &RipsSetting, k: &SimplicialComplex, cap: usize) -> Result<ContractionTrace> {
    setting.check()?;
    let base = *k.vertices.first().ok_or_else(|| Error::Parameter("empty complex".into()))?;
    for s in &k.maximal_simplices {
        for (i, &u) in s.iter().enumerate() {
            if s[i + 1..].iter().any(|&w| !setting.small(u, w)) {
                return Err(Error::Hypothesis(format!("simplex {s:?} is not a simplex of the Rips complex")));
            }
        }
    }
    let span = span_vertices(setting.dist, k);
    let two = setting.theta3.times(2);
    let step = (2 * setting.slim.hops()).max(1);
    let dist = |v: Vertex| setting.dist.raw(base, v);
    let mut current = k.clone();
    let mut moves = Vec::new();
    loop {
        let verts = current.vertices.clone();
        let alpha = verts.iter().map(|&v| dist(v)).max().unwrap_or(0);
        if alpha == 0 {
            break;
        }
        if moves.len() > cap {
            return Err(Error::CapExceeded { what: "contraction move", cap });
        }
        let before = setting.measure(base, &verts);
        // farthest large-angle vertex per vertex of K, ties by vertex id
        let large: Vec<(Vertex, Option<Vertex>)> = verts
            .iter()
            .map(|&v| (v, setting.large_vertices(&two, base, v).into_iter().max_by_key(|&w| (dist(w), std::cmp::Reverse(w)))))
            .collect();
        let beta = large.iter().filter_map(|(_, w)| w.map(dist)).max().unwrap_or(0);
        let farthest = *verts.iter().filter(|&&v| dist(v) == alpha).min().expect("nonempty");
        let (v, replacement, case) = if alpha >= beta + setting.d {
            let dag = GeodesicDag::new(setting.graph, setting.dist, base, farthest)?;
            let path = dag.first_path();
            (farthest, path[(alpha - step) as usize], MoveCase::Far)
        } else if beta == 0 {
            (farthest, base, MoveCase::Base)
        } else {
            let (v, w) = large
                .iter()
                .filter_map(|&(v, w)| w.filter(|&w| dist(w) == beta).map(|w| (v, w)))
                .min_by_key(|&(v, w)| (w, v))
                .expect("beta is attained");
            (v, w, MoveCase::LargeAngle)
        };
        let next = current.substitute(v, replacement);
        let after = setting.measure(base, &next.vertices);
        let mv = Move { vertex: v, replacement, case, measure_before: before, measure_after: after };
        validate_move(setting, &current, &mv, &span, base)?;
        moves.push(mv);
        current = next;
    }
    Ok(ContractionTrace { base, moves, final_vertex: base })
}

/// Checks one move against the current complex: a small geodesic joins the
/// vertex and its replacement, every small neighbor of the vertex in the
/// complex is a small neighbor of the replacement, the replacement lies on
/// a geodesic from the base point and in the span, and the measure drops.
pub fn validate_move(setting: &RipsSetting, current: &SimplicialComplex, mv: &Move, span: &BTreeSet<Vertex>, base: Vertex) -> Result<()> {
    let fail = |what: String| Err(Error::MoveValidation(format!("{} -> {}: {what}", mv.vertex, mv.replacement)));
    if !current.vertices.contains(&mv.vertex) {
        return fail("vertex not in the complex".into());
    }
    if !setting.small(mv.vertex, mv.replacement) {
        return fail("no small geodesic to the replacement".into());
    }
    for &w in &current.vertices {
        if w != mv.vertex && setting.small(mv.vertex, w) && !setting.small(mv.replacement, w) {
            return fail(format!("neighbor {w} is not a neighbor of the replacement"));
        }
    }
    let d = |a: Vertex, b: Vertex| setting.dist.raw(a, b);
    if d(base, mv.replacement) + d(mv.replacement, mv.vertex) != d(base, mv.vertex) {
        return fail("replacement is not on a geodesic from the base point".into());
    }
    if !span.contains(&mv.replacement) {
        return fail("replacement is outside the span".into());
    }
    let next = current.substitute(mv.vertex, mv.replacement);
    if setting.measure(base, &current.vertices) != mv.measure_before || setting.measure(base, &next.vertices) != mv.measure_after {
        return fail("recorded measure differs from recomputation".into());
    }
    if mv.measure_after >= mv.measure_before {
        return fail(format!("measure {:?} does not drop below {:?}", mv.measure_after, mv.measure_before));
    }
    Ok(())
}

/// Replays a trace from `k`, validating every move, and checks that it ends
/// at a single vertex.
pub fn validate_trace(setting: &RipsSetting, k: &SimplicialComplex, trace: &ContractionTrace) -> Result<()> {
    let span = span_vertices(setting.dist, k);
    let mut current = k.clone();
    for mv in &trace.moves {
        validate_move(setting, &current, mv, &span, trace.base)?;
        current = current.substitute(mv.vertex, mv.replacement);
    }
    if current.vertices != [trace.final_vertex] {
        return Err(Error::MoveValidation(format!("trace ends at {:?}", current.vertices)));
    }
    Ok(())
}

/// The complex swept by one move: the current complex together with the
/// joins `σ ∪ {ṽ}` of simplices `σ` containing the moved vertex.
pub fn move_sweep(current: &SimplicialComplex, mv: &Move) -> SimplicialComplex {
    let extra = current
        .maximal_simplices
        .iter()
        .filter(|s| s.contains(&mv.vertex))
        .map(|s| s.iter().copied().chain([mv.replacement]).collect::<Vec<_>>());
    SimplicialComplex::from_simplices(current.vertices.iter().copied(), current.maximal_simplices.iter().cloned().chain(extra))
}

/// For every move, compares the Betti numbers of the swept complex with
/// those of the complex after the move, and checks the swept complex is a
/// subcomplex of `l`. Returns the index of the first inconsistent move.
pub fn homology_certificate(k: &SimplicialComplex, trace: &ContractionTrace, l: &SimplicialComplex, cap: usize) -> Result<Option<usize>> {
    let mut current = k.clone();
    for (i, mv) in trace.moves.iter().enumerate() {
        let sweep = move_sweep(&current, mv);
        let next = current.substitute(mv.vertex, mv.replacement);
        let dim = sweep.dimension().max(0) as usize;
        if !sweep.is_subcomplex_of(l) || homology_oracle(&sweep, dim, cap)? != homology_oracle(&next, dim, cap)? {
            return Ok(Some(i));
        }
        current = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::theta3;
    use crate::corpus;
    use crate::graph::{distance_matrix, slimness_constant};

    #[test]
    fn rips_examples() {
        let c6 = corpus::cycle(6);
        let d = distance_matrix(&c6);
        let all = AngleSet::all(&c6);
        let p1 = build_rips(&c6, &d, 1, &all, 1000).unwrap();
        assert_eq!(p1.maximal_simplices.len(), 6);
        assert_eq!(homology_oracle(&p1, 1, 1000).unwrap(), vec![1, 1]);
        let p2 = build_rips(&c6, &d, 2, &all, 1000).unwrap();
        // the octahedron: antipodal pairs are the only non-edges
        assert_eq!(p2.maximal_simplices.len(), 8);
        assert_eq!(p2.dimension(), 2);
        assert_eq!(homology_oracle(&p2, 2, 1000).unwrap(), vec![1, 0, 1]);
        let t = corpus::path(5);
        let pt = build_rips(&t, &distance_matrix(&t), 4, &AngleSet::all(&t), 1000).unwrap();
        assert_eq!(pt.maximal_simplices, vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn stats_and_empty() {
        let s = SimplicialComplex::from_simplices([], [vec![0, 1, 2, 3]]);
        let st = complex_stats(&s, 100).unwrap();
        assert_eq!(st.dimension, 3);
        assert_eq!(st.f_vector, vec![4, 6, 4, 1]);
        assert_eq!(st.max_cofaces, vec![3, 2, 1, 0]);
        assert_eq!(SimplicialComplex::default().dimension(), -1);
        assert_eq!(homology_oracle(&s, 3, 100).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn hollow_triangle_and_sphere() {
        let circle = SimplicialComplex::from_simplices([], [vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(homology_oracle(&circle, 1, 100).unwrap(), vec![1, 1]);
        let sphere = SimplicialComplex::from_simplices([], [vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(homology_oracle(&sphere, 2, 100).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn span_of_antipodes() {
        let c6 = corpus::cycle(6);
        let d = distance_matrix(&c6);
        let k = SimplicialComplex::from_simplices([0, 3], []);
        assert_eq!(span_vertices(&d, &k), (0..6).collect());
        let edge = SimplicialComplex::from_simplices([], [vec![0, 1]]);
        assert_eq!(span_vertices(&d, &edge), BTreeSet::from([0, 1]));
    }

    fn setting_parts(g: &Graph) -> (Distances, AngleSet, SlimnessReport) {
        let d = distance_matrix(g);
        let t3 = theta3(g, &d, true).unwrap();
        let slim = slimness_constant(g, &d).unwrap();
        (d, t3, slim)
    }

    #[test]
    fn tree_edge_contracts_to_base() {
        let t = corpus::path(3);
        let (d, t3, slim) = setting_parts(&t);
        let theta = t3.times(7);
        let s = RipsSetting { graph: &t, dist: &d, d: 1, theta: &theta, theta3: &t3, slim: &slim };
        let k = SimplicialComplex::from_simplices([], [vec![1, 2]]);
        let trace = contract_subcomplex(&s, &k, 100).unwrap();
        assert_eq!(trace.moves.len(), 1);
        assert_eq!(trace.final_vertex, 1);
        validate_trace(&s, &k, &trace).unwrap();
        let single = SimplicialComplex::from_simplices([2], []);
        assert!(contract_subcomplex(&s, &single, 100).unwrap().moves.is_empty());
    }

    #[test]
    fn hexagon_rips_contracts() {
        let c6 = corpus::cycle(6);
        let (d, t3, slim) = setting_parts(&c6);
        let theta = t3.times(7);
        let dd = 4 * slim.hops();
        let p = build_rips(&c6, &d, dd, &theta, 1000).unwrap();
        assert_eq!(homology_oracle(&p, 3, 10_000).unwrap(), vec![1, 0, 0, 0]);
        let s = RipsSetting { graph: &c6, dist: &d, d: dd, theta: &theta, theta3: &t3, slim: &slim };
        let trace = contract_subcomplex(&s, &p, 100).unwrap();
        validate_trace(&s, &p, &trace).unwrap();
        let l = span_l(&c6, &d, dd, &theta, &p, 1000).unwrap();
        assert_eq!(homology_certificate(&p, &trace, &l, 10_000).unwrap(), None);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let c6 = corpus::cycle(6);
        let (d, t3, slim) = setting_parts(&c6);
        let theta = t3.times(7);
        let s = RipsSetting { graph: &c6, dist: &d, d: 1, theta: &theta, theta3: &t3, slim: &slim };
        assert!(matches!(s.check(), Err(Error::Hypothesis(_))));
        let triv = AngleSet::trivial(&c6);
        let s = RipsSetting { graph: &c6, dist: &d, d: 4, theta: &triv, theta3: &t3, slim: &slim };
        assert!(matches!(s.check(), Err(Error::Hypothesis(_))));
    }
}
