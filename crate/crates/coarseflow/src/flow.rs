//! The coarse flow space on the barycentric subdivision, its doubling
//! certificate and long thin cover, and the pullback of covers to pairs
//! `(g, ξ)` along small geodesics from `g v₀`.
//!
//! Lengths passed in and reported are in units of `Γ`; hop counts on `Γ'`
//! are half units.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::angles::{chain_sum, d_theta, AngleSet, ThetaMetric};
use crate::cover::{default_basis, doubling_check, greedy_cover, Cover, DoublingReport, FiniteMetric, PairSpace};
use crate::error::{Error, Result};
use crate::graph::{Distances, GeodesicDag, Graph, Vertex, INF};
use crate::half::Half;
use crate::model::Model;
use crate::symmetry::Element;

/// Fibers of the flow space of a hyperbolic graph: for each ordered pair
/// `(a, b)` the vertices within `delta` of some geodesic from `a` to `b`.
pub fn build_cf_hyp(g: &Graph, dist: &Distances, delta: Half) -> BTreeMap<(Vertex, Vertex), Vec<Vertex>> {
    let radius = delta.halves() / 2;
    let n = g.vertex_count();
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    pairs
        .into_par_iter()
        .filter(|&(a, b)| dist.raw(a, b) != INF)
        .map(|(a, b)| {
            let interval = dist.interval(a, b);
            let fiber = (0..n).filter(|&v| interval.iter().any(|&x| dist.raw(v, x) <= radius)).collect();
            ((a, b), fiber)
        })
        .collect()
}

/// The coarse `Θ`-flow space: triples `(v, ξ₋, ξ₊)` of midpoints such that
/// some `Θ`-small geodesic from `ξ₋` to `ξ₊` has a midpoint within
/// `d_Θ`-distance `δ'` of `v`.
#[derive(Clone, Debug)]
pub struct CoarseFlowSpace {
    theta: AngleSet,
    delta_prime: Half,
    endpoints: Vec<Vertex>,
    pairs: Vec<(Vertex, Vertex)>,
    pair_index: HashMap<(Vertex, Vertex), usize>,
    cores: Vec<Vec<Vertex>>,
    fibers: Vec<Vec<Vertex>>,
    metric: ThetaMetric,
}

/// Sample of midpoints closed under the group: orbits are added in the
/// order of a farthest-point traversal until `limit` midpoints are chosen.
pub fn endpoint_orbits(model: &Model, limit: usize) -> Vec<Vertex> {
    let sub = &model.sub;
    let grp = &model.sub_group;
    let mids: Vec<Vertex> = sub.midpoints().collect();
    let mut chosen: BTreeSet<Vertex> = BTreeSet::new();
    let mut next = mids.first().copied();
    while let Some(m) = next {
        let orbit: BTreeSet<Vertex> = grp.elements().map(|g| grp.act(g, m)).collect();
        if !chosen.is_empty() && chosen.len() + orbit.len() > limit {
            break;
        }
        chosen.extend(orbit);
        next = mids
            .iter()
            .copied()
            .filter(|x| !chosen.contains(x))
            .max_by_key(|&x| (chosen.iter().map(|&c| model.sub_dist.raw(x, c)).min().unwrap_or(0), std::cmp::Reverse(x)));
    }
    chosen.into_iter().collect()
}

/// Builds the flow space over ordered pairs of distinct endpoints. Requires
/// `2Θ⁽³⁾ ⊆ Θ` on `Γ'`, invariance of `theta` and of the endpoint set.
pub fn build_cf_theta(model: &Model, theta: &AngleSet, endpoints: &[Vertex], delta_prime: Half) -> Result<CoarseFlowSpace> {
    let sub = &model.sub;
    let grp = &model.sub_group;
    let theta = model.complete(theta)?;
    if let Some(x) = model.sub_theta3.times(2).first_missing_from(&theta)? {
        return Err(Error::Hypothesis(format!("angle {x} of 2Θ⁽³⁾ is not in Θ")));
    }
    if let Some((x, g)) = theta.invariance_witness(grp) {
        return Err(Error::Hypothesis(format!("Θ is not invariant: element {g} moves {x} out")));
    }
    let endpoints: Vec<Vertex> = endpoints.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some(&v) = endpoints.iter().find(|&&v| !sub.is_midpoint(v)) {
        return Err(Error::Parameter(format!("endpoint {v} is not a midpoint")));
    }
    let set: HashSet<Vertex> = endpoints.iter().copied().collect();
    for &g in grp.generators() {
        if endpoints.iter().any(|&v| !set.contains(&grp.act(g, v))) {
            return Err(Error::Hypothesis(format!("endpoint set is not invariant under element {g}")));
        }
    }
    let metric = d_theta(sub, &model.sub_dist, &theta);
    let pairs: Vec<(Vertex, Vertex)> =
        endpoints.iter().flat_map(|&a| endpoints.iter().filter(move |&&b| b != a).map(move |&b| (a, b))).collect();
    let pair_index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let g = sub.graph();
    let radius = delta_prime.halves();
    let (cores, fibers): (Vec<Vec<Vertex>>, Vec<Vec<Vertex>>) = pairs
        .par_iter()
        .map(|&(a, b)| {
            let dag = GeodesicDag::new(g, &model.sub_dist, a, b).expect("connected");
            let adm = dag.admissible(|p, x, q| theta.small(p, x, q));
            let core: Vec<Vertex> = dag.vertices().filter(|&x| sub.is_midpoint(x) && adm.on_path(x)).collect();
            let fiber = metric
                .points()
                .iter()
                .copied()
                .filter(|&v| core.iter().any(|&c| metric.get(v, c).is_some_and(|d| d <= radius)))
                .collect();
            (core, fiber)
        })
        .unzip();
    Ok(CoarseFlowSpace { theta, delta_prime, endpoints, pairs, pair_index, cores, fibers, metric })
}

impl CoarseFlowSpace {
    pub fn theta(&self) -> &AngleSet {
        &self.theta
    }

    pub fn delta_prime(&self) -> Half {
        self.delta_prime
    }

    pub fn endpoints(&self) -> &[Vertex] {
        &self.endpoints
    }

    /// Ordered endpoint pairs; the index is the `Z` coordinate.
    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn pair_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        self.pair_index.get(&(a, b)).copied()
    }

    pub fn metric(&self) -> &ThetaMetric {
        &self.metric
    }

    /// Midpoints on `Θ`-small geodesics between the endpoints of a pair.
    pub fn core(&self, z: usize) -> &[Vertex] {
        &self.cores[z]
    }

    pub fn fiber(&self, z: usize) -> &[Vertex] {
        &self.fibers[z]
    }

    /// All triples `(v, ξ₋, ξ₊)` in increasing order.
    pub fn triples(&self) -> Vec<[Vertex; 3]> {
        let mut out: Vec<[Vertex; 3]> = self
            .pairs
            .iter()
            .zip(&self.fibers)
            .flat_map(|(&(a, b), f)| f.iter().map(move |&v| [v, a, b]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        self.fibers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `d_Θ` as a finite metric on the local indices of the midpoints.
    pub fn finite_metric(&self) -> FiniteMetric {
        let n = self.metric.points().len();
        FiniteMetric::from_matrix(n, self.metric.matrix().to_vec()).expect("d_Θ is symmetric")
    }

    fn local_fiber(&self, z: usize) -> Vec<usize> {
        self.fibers[z].iter().map(|&v| self.metric.local(v).expect("midpoint")).collect()
    }

    /// The flow space as a pair space over `V = V_E` with `d_Θ` and `Z` the
    /// endpoint pairs.
    pub fn pair_space(&self, model: &Model) -> Result<PairSpace> {
        let grp = &model.sub_group;
        let pts = self.metric.points();
        let points: Vec<(usize, usize)> =
            (0..self.pairs.len()).flat_map(|z| self.local_fiber(z).into_iter().map(move |v| (v, z))).collect();
        PairSpace::new(
            grp.clone(),
            self.finite_metric(),
            |g, i| self.metric.local(grp.act(g, pts[i])).expect("midpoints map to midpoints"),
            self.pairs.len(),
            |g, z| {
                let (a, b) = self.pairs[z];
                self.pair_index(grp.act(g, a), grp.act(g, b)).expect("invariant endpoints")
            },
            points,
        )
    }

    /// First pair whose fiber is not carried to the fiber of its image.
    pub fn equivariance_witness(&self, model: &Model) -> Option<((Vertex, Vertex), Element)> {
        let grp = &model.sub_group;
        for (z, &(a, b)) in self.pairs.iter().enumerate() {
            for &g in grp.generators() {
                let image: BTreeSet<Vertex> = self.fibers[z].iter().map(|&v| grp.act(g, v)).collect();
                let target = self.pair_index(grp.act(g, a), grp.act(g, b)).expect("invariant endpoints");
                if image != self.fibers[target].iter().copied().collect() {
                    return Some(((a, b), g));
                }
            }
        }
        None
    }

    /// One pair index per orbit of the group on pairs.
    pub fn pair_orbit_reps(&self, model: &Model) -> Vec<usize> {
        let grp = &model.sub_group;
        let mut seen = vec![false; self.pairs.len()];
        let mut reps = Vec::new();
        for z in 0..self.pairs.len() {
            if seen[z] {
                continue;
            }
            reps.push(z);
            let (a, b) = self.pairs[z];
            for g in grp.elements() {
                seen[self.pair_index(grp.act(g, a), grp.act(g, b)).expect("invariant endpoints")] = true;
            }
        }
        reps
    }
}

/// Result of checking that each fiber stays close to a single small
/// geodesic.
#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    /// Bound in half units.
    pub bound: u32,
    pub checked: usize,
    /// Pairs whose geodesics exceeded the enumeration cap.
    pub skipped: usize,
    pub failures: Vec<(Vertex, Vertex)>,
    pub passes: bool,
}

/// Checks that every fiber lies within `d_Θ`-distance `2δ' + 1` of the
/// midpoints of one `Θ`-small geodesic between the endpoints.
pub fn localization_check(model: &Model, cf: &CoarseFlowSpace, path_cap: usize) -> LocalizationReport {
    let bound = 2 * cf.delta_prime.halves() + 2;
    let g = model.sub.graph();
    let results: Vec<Option<bool>> = (0..cf.pairs.len())
        .into_par_iter()
        .map(|z| {
            let (a, b) = cf.pairs[z];
            if cf.fibers[z].is_empty() {
                return Some(true);
            }
            let dag = GeodesicDag::new(g, &model.sub_dist, a, b).expect("connected");
            let paths = dag.paths_where(|p, x, q| cf.theta.small(p, x, q), path_cap).ok()?;
            Some(paths.iter().any(|c| {
                let mids: Vec<Vertex> = c.iter().copied().filter(|&x| model.sub.is_midpoint(x)).collect();
                cf.fibers[z].iter().all(|&v| mids.iter().any(|&m| cf.metric.get(v, m).is_some_and(|d| d <= bound)))
            }))
        })
        .collect();
    let failures: Vec<(Vertex, Vertex)> =
        results.iter().zip(&cf.pairs).filter(|(r, _)| **r == Some(false)).map(|(_, &p)| p).collect();
    LocalizationReport {
        bound,
        checked: results.iter().filter(|r| r.is_some()).count(),
        skipped: results.iter().filter(|r| r.is_none()).count(),
        passes: failures.is_empty(),
        failures,
    }
}

/// Doubling certificate for all fibers of a flow space.
#[derive(Clone, Debug, Serialize)]
pub struct CfDoublingReport {
    pub d: usize,
    /// `R = 24δ' + 12`, in half units.
    pub r: u32,
    pub fibers_checked: usize,
    /// Largest separated set over all fibers at scales `>= R`.
    pub max_separated: usize,
    /// Smallest `R'` in half units for which every fiber is `(5, R')`-doubling.
    pub min_r: u32,
    /// Endpoint pair and report of the first failing fiber.
    pub failure: Option<((Vertex, Vertex), DoublingReport)>,
    pub passes: bool,
}

/// Runs the `(5, 24δ' + 12)` doubling check in `d_Θ` on one fiber per
/// orbit of endpoint pairs; the group acts by isometries, so the other
/// fibers are isometric copies.
pub fn cf_doubling_report(model: &Model, cf: &CoarseFlowSpace) -> CfDoublingReport {
    let d = 5;
    let r = 24 * cf.delta_prime.halves() + 24;
    let metric = cf.finite_metric();
    let reps = cf.pair_orbit_reps(model);
    let reports: Vec<(usize, DoublingReport)> =
        reps.par_iter().map(|&z| (z, doubling_check(&metric, &cf.local_fiber(z), d, r))).collect();
    let failure = reports.iter().find(|(_, rep)| !rep.holds).map(|(z, rep)| (cf.pairs[*z], rep.clone()));
    CfDoublingReport {
        d,
        r,
        fibers_checked: reports.len(),
        max_separated: reports.iter().map(|(_, rep)| rep.max_separated).max().unwrap_or(0),
        min_r: reports.iter().map(|(_, rep)| rep.min_r_for_d.halves()).max().unwrap_or(0),
        passes: failure.is_none(),
        failure,
    }
}

/// Long thin cover of the flow space, `alpha` long in `d_Θ` (units of `Γ`),
/// built with the greedy construction over the default basis.
pub fn cover_cf(model: &Model, cf: &CoarseFlowSpace, alpha: Half) -> Result<(PairSpace, Cover)> {
    let space = cf.pair_space(model)?;
    let hops = alpha.halves();
    let cover = greedy_cover(&space, hops, &default_basis(&space, hops))?;
    Ok((space, cover))
}

/// Pairs `(g, ξ)` with `ξ ≠ g v₀` an endpoint joined to `g v₀` by a
/// `Θ`-small geodesic.
pub fn eligible_targets(model: &Model, cf: &CoarseFlowSpace, v0: Vertex) -> Result<Vec<(Element, Vertex)>> {
    let grp = &model.sub_group;
    if !cf.endpoints.contains(&v0) {
        return Err(Error::Parameter(format!("base point {v0} is not an endpoint")));
    }
    let mut out = Vec::new();
    for g in grp.elements() {
        let s = grp.act(g, v0);
        let reach = crate::graph::small_geodesic_targets(
            model.sub.graph(),
            s,
            model.sub_dist.row(s),
            |p, x, q| cf.theta.small(p, x, q),
            |_| true,
        );
        out.extend(cf.endpoints.iter().filter(|&&x| x != s && reach[x]).map(|&x| (g, x)));
    }
    Ok(out)
}

/// A cover pulled back to pairs `(g, ξ)`.
#[derive(Clone, Debug, Serialize)]
pub struct Pullback {
    pub tau: Half,
    pub v0: Vertex,
    pub members: Vec<BTreeSet<(Element, Vertex)>>,
}

impl Pullback {
    pub fn order(&self) -> Option<usize> {
        crate::cover::order_of(self.members.iter().map(|m| m.iter().copied()))
    }
}

/// Midpoints at distance `tau` from `g v₀` on `Θ`-small geodesics to `ξ`;
/// empty if the geodesics are shorter than `tau` or none is small.
pub fn tau_vertices(model: &Model, cf: &CoarseFlowSpace, s: Vertex, xi: Vertex, tau: Half) -> Vec<Vertex> {
    let hops = tau.halves() as usize;
    let Ok(dag) = GeodesicDag::new(model.sub.graph(), &model.sub_dist, s, xi) else {
        return Vec::new();
    };
    if hops > dag.length() as usize {
        return Vec::new();
    }
    let adm = dag.admissible(|p, x, q| cf.theta.small(p, x, q));
    dag.layers()[hops].iter().copied().filter(|&x| adm.on_path(x)).collect()
}

/// The pullback `ι^{-τ} W` of each member `W`: `(g, ξ)` belongs to it when
/// the `tau`-vertex of every `Θ`-small geodesic from `g v₀` to `ξ` lies in
/// `W` over the pair `(g v₀, ξ)`.
pub fn pullback_cover(
    model: &Model,
    cf: &CoarseFlowSpace,
    cover: &Cover,
    tau: Half,
    v0: Vertex,
    targets: &[(Element, Vertex)],
) -> Result<Pullback> {
    if !tau.is_integral() {
        return Err(Error::NotHalfInteger(format!("τ = {tau} does not reach a midpoint")));
    }
    let grp = &model.sub_group;
    let keys: Vec<Option<(Vec<usize>, usize)>> = targets
        .par_iter()
        .map(|&(g, xi)| {
            let s = grp.act(g, v0);
            let z = cf.pair_index(s, xi)?;
            let vs = tau_vertices(model, cf, s, xi, tau);
            (!vs.is_empty()).then(|| (vs.iter().map(|&v| cf.metric.local(v).expect("midpoint")).collect(), z))
        })
        .collect();
    let members = cover
        .members
        .par_iter()
        .map(|m| {
            let set: HashSet<(usize, usize)> = m.points.iter().copied().collect();
            targets
                .iter()
                .zip(&keys)
                .filter(|(_, k)| k.as_ref().is_some_and(|(vs, z)| vs.iter().all(|&v| set.contains(&(v, *z)))))
                .map(|(&t, _)| t)
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| !s.is_empty())
        .collect();
    Ok(Pullback { tau, v0, members })
}

/// Whether every target `(g, ξ)` has a member containing
/// `B_α(g) × {ξ}` (intersected with the targets).
pub fn wide_witness(
    model: &Model,
    members: &[BTreeSet<(Element, Vertex)>],
    alpha: u32,
    targets: &[(Element, Vertex)],
) -> Option<(Element, Vertex)> {
    let grp = &model.sub_group;
    let target_set: HashSet<(Element, Vertex)> = targets.iter().copied().collect();
    targets
        .par_iter()
        .find_first(|&&(g, xi)| {
            let needed: Vec<(Element, Vertex)> =
                grp.ball(g, alpha).into_iter().map(|h| (h, xi)).filter(|p| target_set.contains(p)).collect();
            !members.iter().any(|m| needed.iter().all(|p| m.contains(p)))
        })
        .copied()
}

/// One row of a wideness scan.
#[derive(Clone, Debug, Serialize)]
pub struct WidenessRow {
    pub tau: Half,
    pub order: Option<usize>,
    pub witness: Option<(Element, Vertex)>,
}

/// Wideness of pulled back covers over a range of `tau`.
#[derive(Clone, Debug, Serialize)]
pub struct WidenessReport {
    pub alpha: u32,
    pub rows: Vec<WidenessRow>,
    pub smallest_passing: Option<Half>,
}

/// Scans `taus` for the first pullback that is `alpha`-wide (word metric)
/// on the targets.
pub fn wideness_scan(
    model: &Model,
    cf: &CoarseFlowSpace,
    cover: &Cover,
    alpha: u32,
    v0: Vertex,
    targets: &[(Element, Vertex)],
    taus: &[Half],
) -> Result<WidenessReport> {
    let mut rows = Vec::new();
    let mut smallest_passing = None;
    for &tau in taus {
        let pb = pullback_cover(model, cf, cover, tau, v0, targets)?;
        let witness = wide_witness(model, &pb.members, alpha, targets);
        if witness.is_none() && smallest_passing.is_none() {
            smallest_passing = Some(tau);
        }
        rows.push(WidenessRow { tau, order: pb.order(), witness });
    }
    Ok(WidenessReport { alpha, rows, smallest_passing })
}

/// Every angle on a geodesic between two of the given vertices.
pub fn geodesic_angles_among(g: &Graph, dist: &Distances, points: &[Vertex]) -> AngleSet {
    let mut out = AngleSet::trivial(g);
    for &a in points {
        for &b in points {
            if a < b {
                if let Ok(dag) = GeodesicDag::new(g, dist, a, b) {
                    out.insert_geodesic_angles(&dag);
                }
            }
        }
    }
    out
}

/// A size for angles adapted to `alpha`: `Θ = Θ₁ + 2X` where `Θ₁` is the
/// invariant closure of all angles on geodesics among `{h v₀ : |h| <= alpha}`
/// and `X = Θ₀ + 3Θ⁽³⁾`, all on `Γ'`.
pub fn theta_for_alpha(model: &Model, v0: Vertex, alpha: u32, theta0: &AngleSet) -> Result<AngleSet> {
    let grp = &model.sub_group;
    let g = model.sub.graph();
    let points: Vec<Vertex> =
        grp.ball(grp.identity(), alpha).into_iter().map(|h| grp.act(h, v0)).collect::<BTreeSet<_>>().into_iter().collect();
    let theta1 = model.complete(&geodesic_angles_among(g, &model.sub_dist, &points).saturate(grp))?;
    let t3 = &model.sub_theta3;
    let x = chain_sum(&[t3, &model.complete(theta0)?, t3, t3])?;
    theta1.sum(&x.times(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{distance_matrix, Edge};
    use crate::symmetry::{close_group, GroupModel};

    #[test]
    fn hyp_fibers() {
        let t = corpus::path(5);
        let d = distance_matrix(&t);
        let f = build_cf_hyp(&t, &d, Half::ZERO);
        assert_eq!(f[&(1, 3)], vec![1, 2, 3]);
        let c6 = corpus::cycle(6);
        let f = build_cf_hyp(&c6, &distance_matrix(&c6), Half::ZERO);
        assert_eq!(f[&(0, 3)], vec![0, 1, 2, 3, 4, 5]);
        let f = build_cf_hyp(&c6, &distance_matrix(&c6), Half::from_units(1));
        assert_eq!(f[&(2, 2)], vec![1, 2, 3]);
    }

    fn c6_model() -> Model {
        let g = corpus::cycle(6);
        let grp = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        Model::new(g, grp, true).unwrap()
    }

    #[test]
    fn tree_fibers_are_geodesic_bands() {
        let g = corpus::path(6);
        let m = Model::new(g, GroupModel::trivial(6), true).unwrap();
        let all = AngleSet::all(m.sub.graph());
        let mids: Vec<Vertex> = m.sub.midpoints().collect();
        let cf = build_cf_theta(&m, &all, &mids, m.delta_prime()).unwrap();
        let (a, b) = (mids[0], mids[3]);
        let z = cf.pair_index(a, b).unwrap();
        // δ' = 1: midpoints within one unit of the geodesic band
        assert_eq!(cf.fiber(z), &[mids[0], mids[1], mids[2], mids[3], mids[4]]);
    }

    #[test]
    fn theta_hypothesis_is_checked() {
        let m = c6_model();
        let mids: Vec<Vertex> = m.sub.midpoints().collect();
        let err = build_cf_theta(&m, &AngleSet::trivial(m.sub.graph()), &mids, m.delta_prime()).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn c6_flow_cover_and_pullback() {
        let m = c6_model();
        let mids: Vec<Vertex> = m.sub.midpoints().collect();
        let theta = m.sub_theta3.times(2);
        let cf = build_cf_theta(&m, &theta, &mids, m.delta_prime()).unwrap();
        assert!(cf.equivariance_witness(&m).is_none());
        assert!(cf_doubling_report(&m, &cf).passes);
        assert!(localization_check(&m, &cf, 1000).passes);
        let (space, cover) = cover_cf(&m, &cf, Half::from_halves(1)).unwrap();
        let r = crate::cover::verify_cover(&cover, &space, 1, &crate::symmetry::SubgroupFamily::AllSubgroups);
        assert!(r.passes, "{r:?}");
        let v0 = m.sub.midpoint(Edge::new(0, 1)).unwrap();
        let targets = eligible_targets(&m, &cf, v0).unwrap();
        let pb = pullback_cover(&m, &cf, &cover, Half::ZERO, v0, &targets).unwrap();
        assert!(pb.order() <= cover.order());
        assert!(pullback_cover(&m, &cf, &cover, Half::from_halves(1), v0, &targets).is_err());
    }

    #[test]
    fn pullback_of_everything_is_everything() {
        let m = c6_model();
        let mids: Vec<Vertex> = m.sub.midpoints().collect();
        let cf = build_cf_theta(&m, &AngleSet::all(m.sub.graph()), &mids, m.delta_prime()).unwrap();
        let space = cf.pair_space(&m).unwrap();
        let whole = Cover {
            members: vec![crate::cover::CoverMember { points: space.points().to_vec(), stabilizer: vec![], orbit_rep: true }],
            alpha: None,
        };
        let v0 = mids[0];
        let targets = eligible_targets(&m, &cf, v0).unwrap();
        let pb = pullback_cover(&m, &cf, &whole, Half::from_units(1), v0, &targets).unwrap();
        assert_eq!(pb.members.len(), 1);
        assert_eq!(pb.members[0].len(), targets.len());
    }
}
