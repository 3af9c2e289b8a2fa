//! Cone sets `V_+(v, Θ)` at original vertices, their interior
//! certificates, the three-layer cone cover and the dichotomy between
//! wide cone members and small geodesics.
//!
//! Everything lives on the subdivision `Γ'`. Pairs `(g, ξ)` range over the
//! group and all vertices of `Γ'`; midpoints stand in for boundary points.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angles::{chain_sum, AngleSet};
use crate::error::{Error, Result};
use crate::flow::Pullback;
use crate::graph::{small_geodesic_targets, GeodesicDag, Vertex, INF};
use crate::model::Model;
use crate::symmetry::Element;

/// A pair `(g, ξ)`.
pub type Pair = (Element, Vertex);

/// Which sufficient condition for interior membership holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InteriorClause {
    /// The angle at the apex is `Θ + 2Θ⁽³⁾`-large.
    WideApex,
    /// The angle at the apex is `Θ`-large and a later internal angle is
    /// `2Θ⁽³⁾`-large.
    LaterLarge,
}

fn preds(row: &[u32], nbrs: &[Vertex], x: Vertex) -> Vec<Vertex> {
    nbrs.iter().copied().filter(|&p| row[p] != INF && row[p] + 1 == row[x]).collect()
}

/// For every vertex `x`, whether all geodesics from `s` to `x` are small.
fn all_small_from(model: &Model, theta: &AngleSet, s: Vertex) -> Vec<bool> {
    let g = model.sub.graph();
    let row = model.sub_dist.row(s);
    let mut order: Vec<Vertex> = g.vertices().filter(|&x| row[x] != INF).collect();
    order.sort_by_key(|&x| row[x]);
    let mut ok = vec![false; g.vertex_count()];
    ok[s] = true;
    for &x in order.iter().skip(1) {
        ok[x] = preds(row, g.neighbors(x), x).into_iter().all(|u| {
            ok[u] && (u == s || preds(row, g.neighbors(u), u).into_iter().all(|t| theta.small(t, u, x)))
        });
    }
    ok
}

/// Neighbors `q` one step farther from `s` than `v` such that some geodesic
/// from `s` entering `v` and leaving to `q` has a `theta`-large angle at `v`.
fn large_exits(model: &Model, theta: &AngleSet, s: Vertex, v: Vertex) -> Vec<Vertex> {
    let g = model.sub.graph();
    let row = model.sub_dist.row(s);
    if v == s {
        return Vec::new();
    }
    let ps = preds(row, g.neighbors(v), v);
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&q| row[q] == row[v] + 1 && ps.iter().any(|&p| !theta.small(p, v, q)))
        .collect()
}

/// Membership in `V_+(v, Θ)` by direct evaluation on the geodesic DAGs:
/// all geodesics from `g v₀` to `apex` are small and, unless `ξ = apex`,
/// some geodesic from `g v₀` to `ξ` has a large angle at `apex`.
pub fn vplus_membership(model: &Model, theta: &AngleSet, g: Element, xi: Vertex, apex: Vertex, v0: Vertex) -> Result<bool> {
    let s = model.sub_group.act(g, v0);
    let graph = model.sub.graph();
    let to_apex = GeodesicDag::new(graph, &model.sub_dist, s, apex)?;
    if !to_apex.all_paths(|p, x, q| theta.small(p, x, q)) {
        return Ok(false);
    }
    if xi == apex {
        return Ok(true);
    }
    let dag = GeodesicDag::new(graph, &model.sub_dist, s, xi)?;
    if apex == s || apex == xi || !dag.contains(apex) {
        return Ok(false);
    }
    Ok(dag.pred(apex).iter().any(|&p| dag.succ(apex).iter().any(|&q| !theta.small(p, apex, q))))
}

/// Checks the two sufficient conditions for `(g, ξ)` to be interior to
/// `V_+(apex, Θ)`; assumes the pair is a member.
pub fn interior_certificate(
    model: &Model,
    theta: &AngleSet,
    g: Element,
    xi: Vertex,
    apex: Vertex,
    v0: Vertex,
) -> Result<Option<InteriorClause>> {
    let s = model.sub_group.act(g, v0);
    let dag = GeodesicDag::new(model.sub.graph(), &model.sub_dist, s, xi)?;
    Ok(certify_on_dag(model, theta, &dag, apex, &mut HashMap::new()))
}

fn certify_on_dag(
    model: &Model,
    theta: &AngleSet,
    dag: &GeodesicDag,
    apex: Vertex,
    memo: &mut HashMap<(Vertex, Vertex), bool>,
) -> Option<InteriorClause> {
    if apex == dag.source() || apex == dag.target() || !dag.contains(apex) {
        return None;
    }
    let wide = chain_sum(&[&model.sub_theta3, theta, &model.sub_theta3]).ok()?;
    let two = model.sub_theta3.times(2);
    let (ps, qs) = (dag.pred(apex), dag.succ(apex));
    if ps.iter().any(|&p| qs.iter().any(|&q| !wide.small(p, apex, q))) {
        return Some(InteriorClause::WideApex);
    }
    let later = |q: Vertex, memo: &mut HashMap<(Vertex, Vertex), bool>| later_large(dag, &two, apex, q, memo);
    for &q in qs {
        if ps.iter().any(|&p| !theta.small(p, apex, q)) && later(q, memo) {
            return Some(InteriorClause::LaterLarge);
        }
    }
    None
}

/// Whether some continuation entering `x` from `y` reaches the target
/// through an internal vertex with a large angle.
fn later_large(
    dag: &GeodesicDag,
    theta: &AngleSet,
    y: Vertex,
    x: Vertex,
    memo: &mut HashMap<(Vertex, Vertex), bool>,
) -> bool {
    if x == dag.target() {
        return false;
    }
    if let Some(&r) = memo.get(&(y, x)) {
        return r;
    }
    let r = dag.succ(x).iter().any(|&z| !theta.small(y, x, z) || later_large(dag, theta, x, z, memo));
    memo.insert((y, x), r);
    r
}

/// The cone set `V_+(apex, Θ)` over all pairs `(g, ξ)`.
pub fn cone_set(model: &Model, theta: &AngleSet, apex: Vertex, v0: Vertex) -> BTreeSet<Pair> {
    let grp = &model.sub_group;
    let mut by_source: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    let mut out = BTreeSet::new();
    for g in grp.elements() {
        let s = grp.act(g, v0);
        let xis = by_source.entry(s).or_insert_with(|| cone_targets(model, theta, s, apex, &all_small_from(model, theta, s)));
        out.extend(xis.iter().map(|&xi| (g, xi)));
    }
    out
}

fn cone_targets(model: &Model, theta: &AngleSet, s: Vertex, apex: Vertex, all_small: &[bool]) -> Vec<Vertex> {
    if !all_small[apex] {
        return Vec::new();
    }
    let exits = large_exits(model, theta, s, apex);
    let d = &model.sub_dist;
    model
        .sub
        .graph()
        .vertices()
        .filter(|&xi| xi == apex || exits.iter().any(|&q| d.raw(s, xi) == d.raw(s, q) + d.raw(q, xi)))
        .collect()
}

/// Angles on geodesics from any `h v₀` to any vertex of a geodesic between
/// `h' v₀` and `h'' v₀`, for `h, h', h''` within `alpha` of the identity;
/// closed under the group and completed at midpoints.
pub fn seed_theta0(model: &Model, v0: Vertex, alpha: u32) -> Result<AngleSet> {
    let grp = &model.sub_group;
    let g = model.sub.graph();
    let points: BTreeSet<Vertex> = grp.ball(grp.identity(), alpha).into_iter().map(|h| grp.act(h, v0)).collect();
    let mut span: BTreeSet<Vertex> = BTreeSet::new();
    for &a in &points {
        for &b in &points {
            span.extend(model.sub_dist.interval(a, b));
        }
    }
    let parts: Vec<AngleSet> = points
        .par_iter()
        .map(|&a| {
            let mut part = AngleSet::trivial(g);
            for &x in &span {
                if let Ok(dag) = GeodesicDag::new(g, &model.sub_dist, a, x) {
                    part.insert_geodesic_angles(&dag);
                }
            }
            part
        })
        .collect();
    let mut theta0 = model.midpoint_angles();
    for p in parts {
        theta0 = theta0.union(&p)?;
    }
    Ok(theta0.saturate(grp))
}

/// One cone set of the cover.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeMember {
    pub apex: Vertex,
    /// 0, 1, 2 for the sizes `2X`, `5X`, `6X`.
    pub layer: usize,
    #[serde(rename = "points")]
    pub pairs: BTreeSet<Pair>,
    /// Pairs with an interior certificate, when computed.
    #[serde(default)]
    pub interior: BTreeSet<Pair>,
}

/// Multiples of `X` used by the three layers.
pub const LAYER_MULTIPLES: [usize; 3] = [2, 5, 6];

/// The three-layer cone cover with its sizes for angles.
#[derive(Clone, Debug)]
pub struct ConeCover {
    pub alpha: u32,
    pub v0: Vertex,
    pub theta0: AngleSet,
    pub x: AngleSet,
    pub layers: Vec<AngleSet>,
    /// `Θ = 6X`.
    pub theta_out: AngleSet,
    pub members: Vec<ConeMember>,
}

/// Builds `V_1 ∪ V_2 ∪ V_3` from cone sets at sizes `2X`, `5X`, `6X` over
/// all original vertices, with `X = Θ₀ + 3Θ⁽³⁾` and `Θ₀` the seeded size
/// joined with `extra`. Empty cone sets are dropped. With `certify`, each
/// member records its certified interior pairs.
pub fn cone_cover(model: &Model, extra: Option<&AngleSet>, alpha: u32, v0: Vertex, certify: bool) -> Result<ConeCover> {
    model.graph.require_independent_cones()?;
    let mut theta0 = seed_theta0(model, v0, alpha)?;
    if let Some(e) = extra {
        theta0 = theta0.union(&model.complete(e)?)?.saturate(&model.sub_group);
    }
    let t3 = &model.sub_theta3;
    let x = chain_sum(&[t3, &theta0, t3, t3])?;
    let layers: Vec<AngleSet> = LAYER_MULTIPLES.iter().map(|&k| x.times(k)).collect();
    let grp = &model.sub_group;
    let sources: BTreeSet<Vertex> = grp.elements().map(|g| grp.act(g, v0)).collect();
    let apexes: Vec<Vertex> = model.sub.originals().collect();
    let mut members = Vec::new();
    for (layer, theta) in layers.iter().enumerate() {
        // per source: the targets of each apex
        let per_source: HashMap<Vertex, Vec<Vec<Vertex>>> = sources
            .par_iter()
            .map(|&s| {
                let ok = all_small_from(model, theta, s);
                (s, apexes.iter().map(|&v| cone_targets(model, theta, s, v, &ok)).collect())
            })
            .collect();
        let built: Vec<ConeMember> = apexes
            .par_iter()
            .enumerate()
            .map(|(k, &apex)| {
                let mut pairs = BTreeSet::new();
                let mut interior = BTreeSet::new();
                let mut memo_by_source: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
                for g in grp.elements() {
                    let s = grp.act(g, v0);
                    let xis = &per_source[&s][k];
                    pairs.extend(xis.iter().map(|&xi| (g, xi)));
                    if certify {
                        let cert = memo_by_source.entry(s).or_insert_with(|| {
                            xis.iter()
                                .copied()
                                .filter(|&xi| {
                                    GeodesicDag::new(model.sub.graph(), &model.sub_dist, s, xi)
                                        .ok()
                                        .and_then(|dag| certify_on_dag(model, theta, &dag, apex, &mut HashMap::new()))
                                        .is_some()
                                })
                                .collect()
                        });
                        interior.extend(cert.iter().map(|&xi| (g, xi)));
                    }
                }
                ConeMember { apex, layer, pairs, interior }
            })
            .collect();
        members.extend(built.into_iter().filter(|m| !m.pairs.is_empty()));
    }
    let theta_out = layers[2].clone();
    Ok(ConeCover { alpha, v0, theta0, x, layers, theta_out, members })
}

impl ConeCover {
    pub fn order(&self) -> Option<usize> {
        crate::cover::order_of(self.members.iter().map(|m| m.pairs.iter().copied()))
    }

    /// Two members of the same layer at different apexes that intersect.
    pub fn layer_overlap(&self) -> Option<(Vertex, Vertex, usize)> {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if a.layer == b.layer && a.apex != b.apex && !a.pairs.is_disjoint(&b.pairs) {
                    return Some((a.apex, b.apex, a.layer));
                }
            }
        }
        None
    }

    /// A member and an element `h` with `h·member` meeting the member while
    /// `h` moves the apex.
    pub fn stabilizer_violation(&self, model: &Model) -> Option<(Vertex, usize, Element)> {
        let grp = &model.sub_group;
        for m in &self.members {
            for h in grp.elements() {
                if grp.act(h, m.apex) == m.apex {
                    continue;
                }
                if m.pairs.iter().any(|&(g, xi)| m.pairs.contains(&(grp.mul(h, g), grp.act(h, xi)))) {
                    return Some((m.apex, m.layer, h));
                }
            }
        }
        None
    }

    /// A member whose translate by a generator is not the member at the
    /// translated apex of the same layer.
    pub fn invariance_violation(&self, model: &Model) -> Option<(Vertex, usize, Element)> {
        let grp = &model.sub_group;
        let index: HashMap<(Vertex, usize), &ConeMember> = self.members.iter().map(|m| ((m.apex, m.layer), m)).collect();
        for m in &self.members {
            for &h in grp.generators() {
                let image: BTreeSet<Pair> = m.pairs.iter().map(|&(g, xi)| (grp.mul(h, g), grp.act(h, xi))).collect();
                match index.get(&(grp.act(h, m.apex), m.layer)) {
                    Some(other) if other.pairs == image => {}
                    _ => return Some((m.apex, m.layer, h)),
                }
            }
        }
        None
    }

    /// The cover with one layer removed.
    pub fn without_layer(&self, layer: usize) -> ConeCover {
        let mut out = self.clone();
        out.members.retain(|m| m.layer != layer);
        out
    }
}

/// Outcome of [`dichotomy_check`].
#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub pairs: usize,
    /// Pairs with a member containing `B_α(g) × {ξ}`.
    pub wide: usize,
    /// Pairs relying only on a `Θ`-small geodesic from `g v₀` to `ξ`.
    pub small_only: usize,
    /// Of those, pairs whose `ξ` is an original vertex.
    pub small_only_original: usize,
    /// Pairs satisfying neither statement.
    pub violations: Vec<Pair>,
    pub passes: bool,
}

/// For every pair `(g, ξ)`: does some member contain `B_α(g) × {ξ}`, or is
/// there a `Θ_out`-small geodesic from `g v₀` to `ξ`?
pub fn dichotomy_check(model: &Model, cone: &ConeCover) -> DichotomyReport {
    let grp = &model.sub_group;
    let g_sub = model.sub.graph();
    let mut containing: HashMap<Pair, Vec<usize>> = HashMap::new();
    for (k, m) in cone.members.iter().enumerate() {
        for &p in &m.pairs {
            containing.entry(p).or_default().push(k);
        }
    }
    let small_from: HashMap<Vertex, Vec<bool>> = grp
        .elements()
        .map(|g| grp.act(g, cone.v0))
        .collect::<BTreeSet<_>>()
        .into_par_iter()
        .map(|s| {
            let theta = &cone.theta_out;
            (s, small_geodesic_targets(g_sub, s, model.sub_dist.row(s), |p, x, q| theta.small(p, x, q), |_| true))
        })
        .collect();
    let rows: Vec<(Pair, bool, bool)> = grp
        .elements()
        .flat_map(|g| g_sub.vertices().map(move |xi| (g, xi)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(g, xi)| {
            let ball = grp.ball(g, cone.alpha);
            let wide = containing.get(&(g, xi)).is_some_and(|ks| {
                ks.iter().any(|&k| ball.iter().all(|&h| cone.members[k].pairs.contains(&(h, xi))))
            });
            let small = small_from[&grp.act(g, cone.v0)][xi];
            ((g, xi), wide, small)
        })
        .collect();
    let violations: Vec<Pair> = rows.iter().filter(|r| !r.1 && !r.2).map(|r| r.0).collect();
    DichotomyReport {
        pairs: rows.len(),
        wide: rows.iter().filter(|r| r.1).count(),
        small_only: rows.iter().filter(|r| !r.1 && r.2).count(),
        small_only_original: rows.iter().filter(|r| !r.1 && r.2 && !model.sub.is_midpoint(r.0 .1)).count(),
        passes: violations.is_empty(),
        violations,
    }
}

/// Origin of a member of the combined cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MemberSource {
    Cone { apex: Vertex, layer: usize },
    Flow { index: usize },
}

/// Union of the cone cover and a pulled back flow cover.
#[derive(Clone, Debug, Serialize)]
pub struct CombinedCover {
    pub members: Vec<BTreeSet<Pair>>,
    pub sources: Vec<MemberSource>,
    pub flow_order: Option<usize>,
    pub cone_order: Option<usize>,
    pub order: Option<usize>,
}

/// Joins the two collections; both must use the same base point.
pub fn combined_cover(cone: &ConeCover, flow: &Pullback) -> Result<CombinedCover> {
    if flow.v0 != cone.v0 {
        return Err(Error::Mismatch(format!("base points {} and {} differ", flow.v0, cone.v0)));
    }
    let mut members = Vec::new();
    let mut sources = Vec::new();
    for m in &cone.members {
        members.push(m.pairs.clone());
        sources.push(MemberSource::Cone { apex: m.apex, layer: m.layer });
    }
    for (index, m) in flow.members.iter().enumerate() {
        members.push(m.clone());
        sources.push(MemberSource::Flow { index });
    }
    let order = crate::cover::order_of(members.iter().map(|m| m.iter().copied()));
    Ok(CombinedCover { members, sources, flow_order: flow.order(), cone_order: cone.order(), order })
}

impl CombinedCover {
    /// `order <= flow_order + 3`, treating an empty collection as order -1.
    pub fn order_bound_holds(&self) -> bool {
        let as_int = |o: Option<usize>| o.map_or(-1, |x| x as i64);
        as_int(self.order) <= as_int(self.flow_order) + 3
    }
}

/// Wideness of the combined cover on a set of pairs; flow members are
/// compared on the flow targets only.
#[derive(Clone, Debug, Serialize)]
pub struct CombinedWideness {
    pub checked: usize,
    pub wide: usize,
    pub not_wide: Vec<Pair>,
    pub passes: bool,
}

/// Checks that each pair `(g, ξ)` in `pairs` has a member containing
/// `B_α(g) × {ξ}`; for flow members the ball is intersected with
/// `flow_targets`.
pub fn combined_wideness(
    model: &Model,
    combined: &CombinedCover,
    alpha: u32,
    pairs: &[Pair],
    flow_targets: &[Pair],
) -> CombinedWideness {
    let grp = &model.sub_group;
    let targets: std::collections::HashSet<Pair> = flow_targets.iter().copied().collect();
    let not_wide: Vec<Pair> = pairs
        .par_iter()
        .filter(|&&(g, xi)| {
            let ball = grp.ball(g, alpha);
            !combined.members.iter().zip(&combined.sources).any(|(m, src)| {
                ball.iter().map(|&h| (h, xi)).filter(|p| matches!(src, MemberSource::Cone { .. }) || targets.contains(p)).all(|p| m.contains(&p))
                    && m.contains(&(g, xi))
            })
        })
        .copied()
        .collect();
    CombinedWideness { checked: pairs.len(), wide: pairs.len() - not_wide.len(), passes: not_wide.is_empty(), not_wide }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::Edge;
    use crate::symmetry::{close_group, GroupModel};

    fn bouquet_model() -> Model {
        let g = corpus::bouquet(3, 4);
        let grp = close_group(&g, &[corpus::petal_rotation(3, 4)], 100).unwrap();
        Model::new(g, grp, true).unwrap()
    }

    #[test]
    fn apex_pair_is_member_when_geodesics_small() {
        let m = bouquet_model();
        let all = AngleSet::all(m.sub.graph());
        let v0 = m.sub.midpoint(Edge::new(1, 2)).unwrap();
        assert!(vplus_membership(&m, &all, 0, 0, 0, v0).unwrap());
        // no large angles at all
        assert!(!vplus_membership(&m, &all, 0, 5, 0, v0).unwrap());
    }

    #[test]
    fn cone_set_matches_direct_evaluation() {
        let m = bouquet_model();
        let v0 = m.sub.midpoint(Edge::new(1, 2)).unwrap();
        let theta = m.sub_theta3.times(2);
        for apex in m.sub.originals() {
            let set = cone_set(&m, &theta, apex, v0);
            for g in m.sub_group.elements() {
                for xi in m.sub.graph().vertices() {
                    assert_eq!(set.contains(&(g, xi)), vplus_membership(&m, &theta, g, xi, apex, v0).unwrap());
                }
            }
        }
    }

    #[test]
    fn hub_collects_other_petals() {
        let m = bouquet_model();
        let v0 = m.sub.midpoint(Edge::new(1, 2)).unwrap();
        let theta = m.sub_theta3.times(2);
        let set = cone_set(&m, &theta, 0, v0);
        // a vertex of another petal is reached through a large angle at the hub
        assert!(set.contains(&(0, 5)));
        let cert = interior_certificate(&m, &theta, 0, 5, 0, v0).unwrap();
        assert!(cert.is_some());
    }

    #[test]
    fn bouquet_cone_cover() {
        let m = bouquet_model();
        let v0 = m.sub.midpoint(Edge::new(1, 2)).unwrap();
        let cone = cone_cover(&m, None, 1, v0, true).unwrap();
        assert!(cone.order().unwrap() <= 2);
        assert!(cone.layer_overlap().is_none());
        assert!(cone.stabilizer_violation(&m).is_none());
        assert!(cone.invariance_violation(&m).is_none());
        let r = dichotomy_check(&m, &cone);
        assert!(r.passes, "{r:?}");
    }

    #[test]
    fn all_angles_make_clause_two_universal() {
        let g = corpus::cycle(5);
        let m = Model::new(g, GroupModel::trivial(5), true).unwrap();
        let all = AngleSet::all(m.sub.graph());
        let cone = cone_cover(&m, Some(&all), 0, m.sub.midpoints().next().unwrap(), false).unwrap();
        let r = dichotomy_check(&m, &cone);
        assert!(r.passes);
        assert_eq!(r.wide + r.small_only, r.pairs);
    }
}
