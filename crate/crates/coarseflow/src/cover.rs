//! Doubling certificates, equivariant greedy long thin covers of subsets of
//! `V × Z` with finite discrete `Z`, cover verification and the extension
//! of open sets and covers from a subspace.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Distances, Vertex, INF};
use crate::half::Half;
use crate::symmetry::{is_f_subset, Element, FSubsetReport, GroupModel, SubgroupFamily};

/// A metric on `0..len` stored as a dense matrix; [`INF`] marks infinite
/// distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetric {
    n: usize,
    d: Vec<u32>,
}

impl FiniteMetric {
    /// Validates a row-major matrix: zero diagonal and symmetry.
    pub fn from_matrix(n: usize, d: Vec<u32>) -> Result<Self> {
        if d.len() != n * n {
            return Err(Error::Mismatch(format!("matrix has {} entries, expected {}", d.len(), n * n)));
        }
        for i in 0..n {
            if d[i * n + i] != 0 {
                return Err(Error::Parameter(format!("nonzero self-distance at {i}")));
            }
            for j in 0..i {
                if d[i * n + j] != d[j * n + i] {
                    return Err(Error::Parameter(format!("asymmetric distance between {i} and {j}")));
                }
            }
        }
        Ok(FiniteMetric { n, d })
    }

    /// Builds the matrix from a distance function, which must be a metric.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> Result<Self> {
        Self::from_matrix(n, (0..n * n).map(|k| f(k / n, k % n)).collect())
    }

    /// The points `0..n` of a line with unit spacing.
    pub fn line(n: usize) -> Self {
        Self::from_fn(n, |i, j| i.abs_diff(j) as u32).expect("line metric")
    }

    /// Restriction of a graph metric to the listed vertices.
    pub fn restrict(dist: &Distances, points: &[Vertex]) -> Self {
        let n = points.len();
        let d = (0..n * n).map(|k| dist.raw(points[k / n], points[k % n])).collect();
        FiniteMetric { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance, [`INF`] if infinite.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    /// Closed ball.
    pub fn ball(&self, center: usize, radius: u32) -> Vec<usize> {
        (0..self.n).filter(|&j| self.get(center, j) <= radius).collect()
    }

    /// First pair whose distance the permutation fails to preserve.
    pub fn invariance_witness(&self, perm: &[usize]) -> Option<(usize, usize)> {
        (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != self.get(perm[i], perm[j]))
    }
}

/// A failing or extremal configuration of a doubling scan: at scale
/// `alpha`, the listed points are pairwise more than `alpha` apart and lie
/// within `2 alpha` of `center`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingWitness {
    pub alpha: Half,
    pub center: usize,
    pub separated: Vec<usize>,
}

/// Outcome of [`doubling_check`].
#[derive(Clone, Debug, Serialize)]
pub struct DoublingReport {
    pub holds: bool,
    pub d: usize,
    pub r: u32,
    /// Largest separated set found at scales `alpha >= r`.
    pub max_separated: usize,
    pub extremal: Option<DoublingWitness>,
    /// First violation, at the smallest failing scale.
    pub witness: Option<DoublingWitness>,
    /// Smallest `R'` for which the `(d, R')` property holds.
    pub min_r_for_d: Half,
    /// Distinct scales examined.
    pub scales: usize,
}

/// Largest clique of the graph given by bit rows, with a greedy coloring
/// bound. Stops as soon as a clique larger than `stop_above` is found.
fn max_clique(adj: &[Vec<u64>], stop_above: usize) -> Vec<usize> {
    fn linked(adj: &[Vec<u64>], a: usize, b: usize) -> bool {
        adj[a][b / 64] >> (b % 64) & 1 == 1
    }
    fn expand(adj: &[Vec<u64>], cur: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>, stop: usize) {
        // greedy coloring, vertices sorted by color
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &cand {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !linked(adj, u, v))) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let order: Vec<(usize, usize)> =
            classes.iter().enumerate().flat_map(|(k, c)| c.iter().map(move |&v| (v, k + 1))).collect();
        let mut alive: Vec<bool> = vec![true; adj.len()];
        for &(v, color) in order.iter().rev() {
            if cur.len() + color <= best.len() || best.len() > stop {
                return;
            }
            cur.push(v);
            let next: Vec<usize> = cand.iter().copied().filter(|&u| alive[u] && u != v && linked(adj, v, u)).collect();
            if next.is_empty() {
                if cur.len() > best.len() {
                    *best = cur.clone();
                }
            } else {
                expand(adj, cur, next, best, stop);
            }
            cur.pop();
            alive[v] = false;
        }
    }
    let mut best = Vec::new();
    if !adj.is_empty() {
        expand(adj, &mut Vec::new(), (0..adj.len()).collect(), &mut best, stop_above);
    }
    best
}

/// Largest subset of `ball` whose points are pairwise more than `alpha`
/// apart, with `alpha = alpha2 / 2`.
fn largest_separated(metric: &FiniteMetric, ball: &[usize], alpha2: u64, stop_above: usize) -> Vec<usize> {
    let m = ball.len();
    let words = m.div_ceil(64);
    let adj: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..m {
                if i != j && 2 * u64::from(metric.get(ball[i], ball[j])) > alpha2 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let mut out: Vec<usize> = max_clique(&adj, stop_above).into_iter().map(|i| ball[i]).collect();
    out.sort_unstable();
    out
}

/// Checks the `(d, r)`-doubling property of `points` inside `metric`: for
/// every `alpha >= r`, every subset of a closed `2 alpha`-ball (centered at
/// any point of the metric) whose points are pairwise more than `alpha`
/// apart has at most `d` elements.
///
/// Configurations only change at the scales `alpha` with `2 alpha` or
/// `alpha` a realized distance, so those scales and `r` are scanned.
pub fn doubling_check(metric: &FiniteMetric, points: &[usize], d: usize, r: u32) -> DoublingReport {
    let mut scales: BTreeSet<u64> = BTreeSet::from([0, 2 * u64::from(r)]);
    for c in 0..metric.len() {
        for &p in points {
            let x = metric.get(c, p);
            if x != INF {
                scales.insert(u64::from(x));
            }
        }
    }
    for &p in points {
        for &q in points {
            let x = metric.get(p, q);
            if x != INF {
                scales.insert(2 * u64::from(x));
            }
        }
    }
    let scales: Vec<u64> = scales.into_iter().collect();
    let r2 = 2 * u64::from(r);
    // per scale: largest separated set (exact above r, capped below r)
    let results: Vec<(u64, Option<DoublingWitness>)> = scales
        .par_iter()
        .map(|&alpha2| {
            let stop = if alpha2 >= r2 { usize::MAX } else { d };
            let mut best: Option<DoublingWitness> = None;
            for c in 0..metric.len() {
                let ball: Vec<usize> =
                    points.iter().copied().filter(|&p| u64::from(metric.get(c, p)) <= alpha2).collect();
                if ball.len() <= best.as_ref().map_or(0, |w| w.separated.len()) {
                    continue;
                }
                let sep = largest_separated(metric, &ball, alpha2, stop);
                if sep.len() > best.as_ref().map_or(0, |w| w.separated.len()) {
                    best = Some(DoublingWitness { alpha: Half::from_halves(alpha2 as u32), center: c, separated: sep });
                    if best.as_ref().unwrap().separated.len() > stop {
                        break;
                    }
                }
            }
            (alpha2, best)
        })
        .collect();
    let size = |w: &Option<DoublingWitness>| w.as_ref().map_or(0, |w| w.separated.len());
    let mut report = DoublingReport {
        holds: true,
        d,
        r,
        max_separated: 0,
        extremal: None,
        witness: None,
        min_r_for_d: Half::ZERO,
        scales: scales.len(),
    };
    for (k, (alpha2, w)) in results.iter().enumerate() {
        if size(w) > d {
            let next = scales.get(k + 1).copied().unwrap_or(alpha2 + 1);
            report.min_r_for_d = Half::from_halves(next as u32);
        }
        if *alpha2 >= r2 {
            if size(w) > report.max_separated {
                report.max_separated = size(w);
                report.extremal = w.clone();
            }
            if size(w) > d && report.witness.is_none() {
                report.holds = false;
                report.witness = w.clone();
            }
        }
    }
    report
}

/// A closed `G`-invariant subset `X` of `V × Z` with `Z` finite discrete.
#[derive(Clone, Debug)]
pub struct PairSpace {
    group: GroupModel,
    metric: FiniteMetric,
    v_action: Vec<Vec<usize>>,
    z_count: usize,
    z_action: Vec<Vec<usize>>,
    points: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    by_z: Vec<Vec<usize>>,
}

fn check_permutation(perm: &[usize], len: usize, what: &str, index: usize) -> Result<()> {
    let mut seen = vec![false; len];
    if perm.len() != len {
        return Err(Error::BadPermutation { index, reason: format!("{what} action has wrong length") });
    }
    for &x in perm {
        if x >= len || std::mem::replace(&mut seen[x], true) {
            return Err(Error::BadPermutation { index, reason: format!("{what} action is not a bijection") });
        }
    }
    Ok(())
}

impl PairSpace {
    /// Builds a pair space; the group acts on `V` through `v_act` and on `Z`
    /// through `z_act`. Errors if the metric or the point set is not
    /// invariant.
    pub fn new(
        group: GroupModel,
        metric: FiniteMetric,
        v_act: impl Fn(Element, usize) -> usize,
        z_count: usize,
        z_act: impl Fn(Element, usize) -> usize,
        points: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let nv = metric.len();
        let v_action: Vec<Vec<usize>> = group.elements().map(|g| (0..nv).map(|v| v_act(g, v)).collect()).collect();
        let z_action: Vec<Vec<usize>> = group.elements().map(|g| (0..z_count).map(|z| z_act(g, z)).collect()).collect();
        for g in group.elements() {
            check_permutation(&v_action[g], nv, "V", g)?;
            check_permutation(&z_action[g], z_count, "Z", g)?;
        }
        for &g in group.generators() {
            if metric.invariance_witness(&v_action[g]).is_some() {
                return Err(Error::NonInvariantMetric(g));
            }
        }
        let points: Vec<(usize, usize)> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&(v, z)) = points.iter().find(|&&(v, z)| v >= nv || z >= z_count) {
            return Err(Error::Parameter(format!("point ({v}, {z}) out of range")));
        }
        let index: HashMap<(usize, usize), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        for &g in group.generators() {
            for &(v, z) in &points {
                if !index.contains_key(&(v_action[g][v], z_action[g][z])) {
                    return Err(Error::Hypothesis(format!("point set not invariant under element {g}")));
                }
            }
        }
        let mut by_z = vec![Vec::new(); z_count];
        for (i, &(_, z)) in points.iter().enumerate() {
            by_z[z].push(i);
        }
        Ok(PairSpace { group, metric, v_action, z_count, z_action, points, index, by_z })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn metric(&self) -> &FiniteMetric {
        &self.metric
    }

    pub fn z_count(&self) -> usize {
        self.z_count
    }

    /// Points of `X`, sorted.
    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: (usize, usize)) -> bool {
        self.index.contains_key(&p)
    }

    pub fn index_of(&self, p: (usize, usize)) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn act_v(&self, g: Element, v: usize) -> usize {
        self.v_action[g][v]
    }

    pub fn act_z(&self, g: Element, z: usize) -> usize {
        self.z_action[g][z]
    }

    /// Diagonal action.
    pub fn act(&self, g: Element, (v, z): (usize, usize)) -> (usize, usize) {
        (self.v_action[g][v], self.z_action[g][z])
    }

    /// The fiber `V_z`.
    pub fn fiber(&self, z: usize) -> Vec<usize> {
        self.by_z[z].iter().map(|&i| self.points[i].0).collect()
    }

    /// Indices of the points of `X` in the fiber over `z`.
    pub fn fiber_indices(&self, z: usize) -> &[usize] {
        &self.by_z[z]
    }

    /// The fiber `Z_v`.
    pub fn fiber_z(&self, v: usize) -> Vec<usize> {
        self.points.iter().filter(|p| p.0 == v).map(|p| p.1).collect()
    }

    /// `z` values with nonempty fibers.
    pub fn occupied_z(&self) -> Vec<usize> {
        (0..self.z_count).filter(|&z| !self.by_z[z].is_empty()).collect()
    }

    /// Runs [`doubling_check`] on every nonempty fiber; returns the first
    /// failure or the report with the largest separated set.
    pub fn fiber_doubling(&self, d: usize, r: u32) -> Vec<(usize, DoublingReport)> {
        self.occupied_z().into_par_iter().map(|z| (z, doubling_check(&self.metric, &self.fiber(z), d, r))).collect()
    }
}

/// One triple `(v_i, U_i, F_i)` of a basis for the greedy construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub v: usize,
    pub u: BTreeSet<usize>,
    pub f: BTreeSet<Element>,
}

/// A member of a cover, annotated with a stabilizer subgroup and whether it
/// is the chosen representative of its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverMember {
    pub points: Vec<(usize, usize)>,
    pub stabilizer: Vec<Element>,
    pub orbit_rep: bool,
}

/// A cover of a pair space. Serialized as the bare member array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cover {
    pub members: Vec<CoverMember>,
    /// The length parameter the cover was built for.
    #[serde(skip)]
    pub alpha: Option<u32>,
}

impl Cover {
    /// Largest number of members sharing a point, minus one; `None` for a
    /// cover with no points.
    pub fn order(&self) -> Option<usize> {
        order_of(self.members.iter().map(|m| m.points.iter().copied()))
    }

    /// A point realizing the order.
    pub fn order_witness(&self) -> Option<(usize, usize)> {
        let counts = self.counts();
        counts.iter().max_by_key(|(p, c)| (**c, std::cmp::Reverse(**p))).map(|(p, _)| *p)
    }

    fn counts(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        for m in &self.members {
            for &p in &m.points {
                *counts.entry(p).or_insert(0) += 1;
            }
        }
        counts
    }
}

/// Order of a family of sets: the largest number of sets sharing a point,
/// minus one; `None` if no set has a point.
pub fn order_of<T: std::hash::Hash + Eq, I: IntoIterator<Item = T>>(sets: impl IntoIterator<Item = I>) -> Option<usize> {
    let mut counts: HashMap<T, usize> = HashMap::new();
    for s in sets {
        for p in s {
            *counts.entry(p).or_insert(0) += 1;
        }
    }
    counts.values().max().map(|c| c - 1)
}

/// One triple per `G`-orbit of points of `X`: the orbit's least point
/// `(v, z)`, `U = {z}`, and `F` generated by the elements `g` with
/// `d(gv, v) <= 4 alpha` and `gz = z`, which is the least choice allowed by
/// the F condition.
pub fn default_basis(space: &PairSpace, alpha: u32) -> Vec<BasisElement> {
    let group = space.group();
    let mut seen = vec![false; space.len()];
    let mut out = Vec::new();
    for (i, &(v, z)) in space.points().iter().enumerate() {
        if seen[i] {
            continue;
        }
        for g in group.elements() {
            seen[space.index_of(space.act(g, (v, z))).expect("invariant")] = true;
        }
        let offenders = group.elements().filter(|&g| {
            space.act_z(g, z) == z && u64::from(space.metric().get(space.act_v(g, v), v)) <= 4 * u64::from(alpha)
        });
        out.push(BasisElement { v, u: BTreeSet::from([z]), f: group.generated(offenders) });
    }
    out
}

fn translate(space: &PairSpace, g: Element, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    set.iter().map(|&z| space.act_z(g, z)).collect()
}

/// The greedy construction: `U'_i` removes from `U_i` every translate
/// `h U'_j` with `j < i` and `d(v_i, h v_j) <= alpha`, then
/// `W_i = B_{2 alpha}(v_i) × U'_i ∩ X`, and the cover consists of the
/// distinct nonempty translates `g F_i W_i`.
pub fn greedy_cover(space: &PairSpace, alpha: u32, basis: &[BasisElement]) -> Result<Cover> {
    let group = space.group();
    let metric = space.metric();
    let four = 4 * u64::from(alpha);
    for (i, b) in basis.iter().enumerate() {
        if !group.is_subgroup(&b.f) {
            return Err(Error::NotSubgroup(format!("F_{i}")));
        }
        if b.u.iter().any(|&z| !space.contains((b.v, z))) {
            return Err(Error::BasisOutsideX(i));
        }
        for g in group.elements() {
            let near = u64::from(metric.get(space.act_v(g, b.v), b.v)) <= four;
            if near && !b.f.contains(&g) && b.u.iter().any(|&z| b.u.contains(&space.act_z(g, z))) {
                return Err(Error::ConditionF { index: i, element: g });
            }
        }
    }
    let mut covered = vec![false; space.len()];
    for b in basis {
        for &z in &b.u {
            for g in group.elements() {
                covered[space.index_of(space.act(g, (b.v, z))).expect("invariant")] = true;
            }
        }
    }
    if let Some(i) = covered.iter().position(|c| !c) {
        let (v, z) = space.points()[i];
        return Err(Error::BasisNotCovering { v, z });
    }
    // translates of U'_j can only meet U_i inside the Z-orbits of U_i
    let mut z_orbit = vec![usize::MAX; space.z_count()];
    for z in 0..space.z_count() {
        if z_orbit[z] == usize::MAX {
            for g in group.elements() {
                z_orbit[space.act_z(g, z)] = z;
            }
        }
    }
    let mut by_orbit: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut shrunk: Vec<BTreeSet<usize>> = Vec::with_capacity(basis.len());
    for (i, b) in basis.iter().enumerate() {
        let mut u = b.u.clone();
        let candidates: BTreeSet<usize> =
            b.u.iter().filter_map(|z| by_orbit.get(&z_orbit[*z])).flatten().copied().collect();
        for j in candidates {
            let bj = &basis[j];
            for h in group.elements() {
                if u64::from(metric.get(b.v, space.act_v(h, bj.v))) <= u64::from(alpha) {
                    for z in translate(space, h, &shrunk[j]) {
                        u.remove(&z);
                    }
                }
            }
        }
        let orbits: BTreeSet<usize> = u.iter().map(|&z| z_orbit[z]).collect();
        for o in orbits {
            by_orbit.entry(o).or_default().push(i);
        }
        shrunk.push(u);
    }
    let mut members = Vec::new();
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    for (b, u) in basis.iter().zip(&shrunk) {
        let w: Vec<(usize, usize)> = u
            .iter()
            .flat_map(|&z| space.fiber_indices(z))
            .map(|&i| space.points()[i])
            .filter(|&(v, _)| metric.get(v, b.v) <= alpha.saturating_mul(2))
            .collect();
        if w.is_empty() {
            continue;
        }
        let fw: BTreeSet<(usize, usize)> = b.f.iter().flat_map(|&f| w.iter().map(move |&p| (f, p))).map(|(f, p)| space.act(f, p)).collect();
        let mut first = true;
        for g in group.elements() {
            let points: Vec<(usize, usize)> =
                fw.iter().map(|&p| space.act(g, p)).collect::<BTreeSet<_>>().into_iter().collect();
            if seen.insert(points.clone()) {
                let stabilizer: Vec<Element> =
                    group.conjugate(g, &b.f).into_iter().collect::<BTreeSet<_>>().into_iter().collect();
                members.push(CoverMember { points, stabilizer, orbit_rep: first });
            }
            first = false;
        }
    }
    Ok(Cover { members, alpha: Some(alpha) })
}

/// Outcome of [`verify_cover`]; every failing check carries a witness.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub members: usize,
    pub order: Option<usize>,
    pub order_witness: Option<(usize, usize)>,
    /// A point of a member that is not in `X`.
    pub foreign_point: Option<(usize, usize)>,
    /// A point of `X` in no member.
    pub uncovered: Option<(usize, usize)>,
    /// Members that are not F-subsets, with the check details.
    pub f_subset_failures: Vec<(usize, FSubsetReport)>,
    pub long: bool,
    /// A point whose `alpha`-ball in its fiber lies in no single member.
    pub longness_witness: Option<(usize, usize)>,
    pub invariant: bool,
    /// A member and a generator moving it outside the cover.
    pub invariance_witness: Option<(usize, Element)>,
    pub passes: bool,
}

/// Checks order, the F-subset property of every member, `alpha`-longness
/// and `G`-invariance of a cover of `space`.
pub fn verify_cover(cover: &Cover, space: &PairSpace, alpha: u32, family: &SubgroupFamily) -> CoverReport {
    let group = space.group();
    let n = space.len();
    let foreign_point = cover.members.iter().flat_map(|m| m.points.iter()).copied().find(|&p| !space.contains(p));
    let sets: Vec<Vec<usize>> = cover
        .members
        .iter()
        .map(|m| {
            let mut s: Vec<usize> = m.points.iter().filter_map(|&p| space.index_of(p)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, s) in sets.iter().enumerate() {
        for &i in s {
            containing[i].push(k);
        }
    }
    let uncovered = (0..n).find(|&i| containing[i].is_empty()).map(|i| space.points()[i]);
    let f_subset_failures: Vec<(usize, FSubsetReport)> = cover
        .members
        .par_iter()
        .enumerate()
        .filter_map(|(k, m)| {
            let set: BTreeSet<(usize, usize)> = m.points.iter().copied().collect();
            let r = is_f_subset(group, family, &set, |g, &p| space.act(g, p));
            (!r.holds).then_some((k, r))
        })
        .collect();
    let metric = space.metric();
    let longness_witness = (0..n)
        .into_par_iter()
        .find_first(|&i| {
            let (v, z) = space.points()[i];
            let ball: Vec<usize> =
                space.fiber_indices(z).iter().copied().filter(|&j| metric.get(v, space.points()[j].0) <= alpha).collect();
            !containing[i].iter().any(|&k| ball.iter().all(|j| sets[k].binary_search(j).is_ok()))
        })
        .map(|i| space.points()[i]);
    let keys: HashSet<&[(usize, usize)]> = cover.members.iter().map(|m| m.points.as_slice()).collect();
    let mut invariance_witness = None;
    'outer: for (k, m) in cover.members.iter().enumerate() {
        for &g in group.generators() {
            let image: Vec<(usize, usize)> =
                m.points.iter().map(|&p| space.act(g, p)).collect::<BTreeSet<_>>().into_iter().collect();
            if !keys.contains(image.as_slice()) {
                invariance_witness = Some((k, g));
                break 'outer;
            }
        }
    }
    let passes = foreign_point.is_none()
        && uncovered.is_none()
        && f_subset_failures.is_empty()
        && longness_witness.is_none()
        && invariance_witness.is_none();
    CoverReport {
        members: cover.members.len(),
        order: cover.order(),
        order_witness: cover.order_witness(),
        foreign_point,
        uncovered,
        f_subset_failures,
        long: longness_witness.is_none(),
        longness_witness,
        invariant: invariance_witness.is_none(),
        invariance_witness,
        passes,
    }
}

/// Distance from `x` to a set, `None` for the empty set (which is farther
/// than every finite or infinite distance).
fn set_distance(metric: &FiniteMetric, x: usize, set: impl Iterator<Item = usize>) -> Option<u32> {
    set.map(|y| metric.get(x, y)).min()
}

/// `U⁺ = {x : d(x, U) < d(x, X0 \ U)}` with `d(x, ∅) = ∞`.
pub fn extend_open(metric: &FiniteMetric, x0: &BTreeSet<usize>, u: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    if !u.is_subset(x0) || x0.iter().any(|&x| x >= metric.len()) {
        return Err(Error::NotSubset);
    }
    let rest: Vec<usize> = x0.difference(u).copied().collect();
    Ok((0..metric.len())
        .filter(|&x| {
            let du = set_distance(metric, x, u.iter().copied());
            let dr = set_distance(metric, x, rest.iter().copied());
            match (du, dr) {
                (None, _) => false,
                (Some(_), None) => true,
                (Some(a), Some(b)) => a < b,
            }
        })
        .collect())
}

/// Extends every member of a cover of `x0` to the ambient space. The
/// permutations describe the group action on the ambient points; the
/// metric and `x0` must be invariant.
pub fn extend_cover(
    metric: &FiniteMetric,
    x0: &BTreeSet<usize>,
    members: &[BTreeSet<usize>],
    action: &[Vec<usize>],
) -> Result<Vec<BTreeSet<usize>>> {
    for (k, perm) in action.iter().enumerate() {
        check_permutation(perm, metric.len(), "ambient", k)?;
        if metric.invariance_witness(perm).is_some() {
            return Err(Error::NonInvariantMetric(k));
        }
        if x0.iter().any(|&x| !x0.contains(&perm[x])) {
            return Err(Error::Hypothesis(format!("subspace not invariant under permutation {k}")));
        }
    }
    members.iter().map(|u| extend_open(metric, x0, u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::distance_matrix;
    use crate::symmetry::close_group;

    fn line_space(n: usize) -> PairSpace {
        PairSpace::new(GroupModel::trivial(1), FiniteMetric::line(n), |_, v| v, 1, |_, z| z, (0..n).map(|v| (v, 0)))
            .unwrap()
    }

    #[test]
    fn doubling_examples() {
        let one = FiniteMetric::line(1);
        assert!(doubling_check(&one, &[0], 1, 0).holds);
        let line = FiniteMetric::line(30);
        let all: Vec<usize> = (0..30).collect();
        let r = doubling_check(&line, &all, 5, 1);
        assert!(r.holds);
        assert!(r.max_separated <= 5);
        let grid = FiniteMetric::from_fn(100, |a, b| ((a % 10).abs_diff(b % 10) + (a / 10).abs_diff(b / 10)) as u32)
            .unwrap();
        let all: Vec<usize> = (0..100).collect();
        let r = doubling_check(&grid, &all, 5, 1);
        assert!(!r.holds);
        assert!(r.witness.unwrap().separated.len() > 5);
    }

    #[test]
    fn max_clique_small() {
        // triangle plus pendant
        let rows = |edges: &[(usize, usize)], n: usize| {
            let mut adj = vec![vec![0u64; 1]; n];
            for &(a, b) in edges {
                adj[a][0] |= 1 << b;
                adj[b][0] |= 1 << a;
            }
            adj
        };
        assert_eq!(max_clique(&rows(&[(0, 1), (1, 2), (0, 2), (2, 3)], 4), usize::MAX).len(), 3);
        assert_eq!(max_clique(&rows(&[], 3), usize::MAX).len(), 1);
    }

    #[test]
    fn single_point_cover() {
        let s = line_space(1);
        let c = greedy_cover(&s, 3, &default_basis(&s, 3)).unwrap();
        assert_eq!(c.members.len(), 1);
        assert_eq!(c.order(), Some(0));
    }

    #[test]
    fn line_cover_order() {
        let s = line_space(9);
        let basis: Vec<BasisElement> =
            (0..9).map(|v| BasisElement { v, u: BTreeSet::from([0]), f: BTreeSet::from([0]) }).collect();
        let c = greedy_cover(&s, 1, &basis).unwrap();
        assert!(c.order().unwrap() <= 4);
        let r = verify_cover(&c, &s, 1, &SubgroupFamily::TrivialOnly);
        assert!(r.passes, "{r:?}");
    }

    #[test]
    fn cyclic_cover_is_invariant() {
        let g = corpus::cycle(6);
        let grp = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        let metric = FiniteMetric::restrict(&distance_matrix(&g), &(0..6).collect::<Vec<_>>());
        let perms: Vec<Vec<usize>> = grp.elements().map(|e| grp.permutation(e)).collect();
        let s = PairSpace::new(grp, metric, |e, v| perms[e][v], 1, |_, z| z, (0..6).map(|v| (v, 0))).unwrap();
        let basis = default_basis(&s, 1);
        assert_eq!(basis.len(), 1);
        let c = greedy_cover(&s, 1, &basis).unwrap();
        let r = verify_cover(&c, &s, 1, &SubgroupFamily::AllSubgroups);
        assert!(r.passes, "{r:?}");
    }

    #[test]
    fn condition_f_is_enforced() {
        let g = corpus::cycle(6);
        let grp = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        let metric = FiniteMetric::restrict(&distance_matrix(&g), &(0..6).collect::<Vec<_>>());
        let perms: Vec<Vec<usize>> = grp.elements().map(|e| grp.permutation(e)).collect();
        let s = PairSpace::new(grp, metric, |e, v| perms[e][v], 1, |_, z| z, (0..6).map(|v| (v, 0))).unwrap();
        let bad = [BasisElement { v: 0, u: BTreeSet::from([0]), f: BTreeSet::from([0]) }];
        assert!(matches!(greedy_cover(&s, 1, &bad), Err(Error::ConditionF { index: 0, .. })));
    }

    #[test]
    fn deleted_member_breaks_longness() {
        let s = line_space(9);
        let c = greedy_cover(&s, 1, &default_basis(&s, 1)).unwrap();
        let broken = (0..c.members.len()).any(|k| {
            let mut d = c.clone();
            d.members.remove(k);
            let r = verify_cover(&d, &s, 1, &SubgroupFamily::TrivialOnly);
            !r.passes && r.longness_witness.is_some()
        });
        assert!(broken);
    }

    #[test]
    fn extension_examples() {
        let m = FiniteMetric::line(3);
        let x0 = BTreeSet::from([0, 2]);
        assert_eq!(extend_open(&m, &x0, &BTreeSet::from([0])).unwrap(), BTreeSet::from([0]));
        assert_eq!(extend_open(&m, &x0, &x0).unwrap(), BTreeSet::from([0, 1, 2]));
        assert!(extend_open(&m, &x0, &BTreeSet::new()).unwrap().is_empty());
        assert!(matches!(extend_open(&m, &x0, &BTreeSet::from([1])), Err(Error::NotSubset)));
    }

    #[test]
    fn cover_serializes_as_member_array() {
        let c = Cover {
            members: vec![CoverMember { points: vec![(0, 1)], stabilizer: vec![0], orbit_rep: true }],
            alpha: Some(2),
        };
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"[{"points":[[0,1]],"stabilizer":[0],"orbit_rep":true}]"#);
        let back: Cover = serde_json::from_str(&text).unwrap();
        assert_eq!(back.members, c.members);
    }
}
