//! Randomized checks of the large-angle lemmas on vertex corners.
//!
//! Each trial samples three vertices `ξ, ξ₁, ξ₂` and a random size `Θ`,
//! then checks every configuration of geodesics between them that meets a
//! lemma's hypotheses. Geodesics are represented by their DAGs, so "every
//! geodesic" and "some geodesic" quantifiers are evaluated exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::angles::{chain_sum, theta3, AngleSet};
use crate::error::{Error, Result};
use crate::graph::{bfs, distance_matrix, Distances, GeodesicDag, Graph, Vertex};
use crate::symmetry::GroupModel;

/// The lemmas exercised by the battery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Lemma {
    /// Initial edges of two geodesics with common ends form a
    /// `Θ⁽³⁾`-small angle.
    GeodesicTwoGons,
    /// A `Θ⁽³⁾`-large angle forces every geodesic with the same ends
    /// through its apex.
    LargeAngles,
    /// A `Θ₀ + 2Θ⁽³⁾`-large angle off the third side is seen as a
    /// `Θ₀`-large angle by every geodesic of the other side.
    LargeAnglesNoC,
    /// At a common internal vertex, a `2Θ₀ + 3Θ⁽³⁾`-large angle forces a
    /// `Θ₀`-large angle on one of the other sides.
    Tripod,
    /// Pass-through and angle transfer across a triangle with a `Θ₀`-small
    /// side.
    LargeAnglesInTriangles,
    /// Points of a geodesic bigon not joined inside the bigon are joined
    /// by a `2Θ⁽³⁾`-small geodesic.
    GeodesicsBetweenGeodesics,
}

pub const LEMMAS: [Lemma; 6] = [
    Lemma::GeodesicTwoGons,
    Lemma::LargeAngles,
    Lemma::LargeAnglesNoC,
    Lemma::Tripod,
    Lemma::LargeAnglesInTriangles,
    Lemma::GeodesicsBetweenGeodesics,
];

/// Counts for one lemma.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaTally {
    /// Configurations meeting the hypotheses.
    pub checked: u64,
    /// Configurations whose hypotheses hold non-degenerately (distinct
    /// edges, a genuinely large angle, a bigon with distinct sides).
    pub nonvacuous: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl LemmaTally {
    fn check(&mut self, nonvacuous: bool, holds: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        self.nonvacuous += u64::from(nonvacuous);
        if !holds {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(witness());
            }
        }
    }

    fn merge(&mut self, other: LemmaTally) {
        self.checked += other.checked;
        self.nonvacuous += other.nonvacuous;
        self.violations += other.violations;
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation;
        }
    }
}

/// Outcome of [`lemma_battery`].
#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub trials: u64,
    pub seed: u64,
    pub tallies: Vec<(Lemma, LemmaTally)>,
    /// True if `Θ₀` contains every trivial angle and is invariant.
    pub theta0_valid: bool,
}

impl BatteryReport {
    pub fn configurations(&self) -> u64 {
        self.tallies.iter().map(|(_, t)| t.checked).sum()
    }

    pub fn violations(&self) -> u64 {
        self.tallies.iter().map(|(_, t)| t.violations).sum()
    }

    pub fn tally(&self, lemma: Lemma) -> &LemmaTally {
        &self.tallies.iter().find(|(l, _)| *l == lemma).expect("every lemma is tallied").1
    }

    pub fn passes(&self) -> bool {
        self.theta0_valid && self.violations() == 0
    }

    /// Adds the counts of another report.
    pub fn merge(&mut self, other: BatteryReport) {
        self.trials += other.trials;
        self.theta0_valid &= other.theta0_valid;
        for ((_, a), (_, b)) in self.tallies.iter_mut().zip(other.tallies) {
            a.merge(b);
        }
    }
}

/// Composite sizes, each the right-nested sum `a₁ + (a₂ + (… + aₖ))` of
/// the chain of angles built in the corresponding proof. Sums of sizes are
/// commutative but not associative, and the nesting keeps every such chain.
struct Sizes {
    theta3: AngleSet,
    theta0: AngleSet,
    /// `Θ₀ + 2Θ⁽³⁾` as `Θ⁽³⁾ + (Θ₀ + Θ⁽³⁾)`.
    x2: AngleSet,
    /// `Θ₀ + 3Θ⁽³⁾` as `Θ⁽³⁾ + (Θ₀ + (Θ⁽³⁾ + Θ⁽³⁾))`.
    x3: AngleSet,
    /// `2Θ₀ + 3Θ⁽³⁾` as `Θ⁽³⁾ + (Θ₀ + (Θ⁽³⁾ + (Θ₀ + Θ⁽³⁾)))`.
    tripod: AngleSet,
    /// `2Θ⁽³⁾`.
    two3: AngleSet,
}

/// `Θ + X` for the angle-transfer claims: `Θ⁽³⁾ + (Θ₀ + (Θ⁽³⁾ + (Θ + Θ⁽³⁾)))`.
fn transfer_size(s: &Sizes, theta: &AngleSet) -> AngleSet {
    chain_sum(&[&s.theta3, &s.theta0, &s.theta3, theta, &s.theta3]).expect("same base")
}

/// Angles of a geodesic DAG at `v`, oriented from source to target.
fn dag_angles(dag: &GeodesicDag, v: Vertex) -> Vec<(Vertex, Vertex)> {
    if v == dag.source() || v == dag.target() || !dag.contains(v) {
        return Vec::new();
    }
    dag.pred(v).iter().flat_map(|&p| dag.succ(v).iter().map(move |&q| (p, q))).collect()
}

/// A random size: the saturation of a few random angles.
fn random_size<R: Rng>(g: &Graph, group: &GroupModel, rng: &mut R) -> AngleSet {
    let mut theta = AngleSet::trivial(g);
    let hubs: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 2).collect();
    if hubs.is_empty() {
        return theta;
    }
    for _ in 0..rng.gen_range(0..4) {
        let v = *hubs.choose(rng).expect("nonempty");
        let pair: Vec<&Vertex> = g.neighbors(v).choose_multiple(rng, 2).collect();
        theta.insert(*pair[0], v, *pair[1]).expect("neighbors");
    }
    theta.saturate(group)
}

/// Runs `trials` independent trials, each on its own random stream derived
/// from `seed`, and checks the lemma conclusions for `Θ₀ = theta0`.
pub fn lemma_battery(g: &Graph, group: &GroupModel, theta0: &AngleSet, trials: u64, seed: u64) -> Result<BatteryReport> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if theta0.vertex_count() != g.vertex_count() || !theta0.same_base(&AngleSet::trivial(g)) {
        return Err(Error::MismatchedBase);
    }
    let dist = distance_matrix(g);
    let t3 = theta3(g, &dist, true)?;
    let sizes = Sizes {
        x2: chain_sum(&[&t3, theta0, &t3])?,
        x3: chain_sum(&[&t3, theta0, &t3, &t3])?,
        tripod: chain_sum(&[&t3, theta0, &t3, theta0, &t3])?,
        two3: t3.times(2),
        theta3: t3,
        theta0: theta0.clone(),
    };
    let empty = || LEMMAS.iter().map(|&l| (l, LemmaTally::default())).collect::<Vec<_>>();
    let tallies = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let mut t = empty();
            run_trial(g, group, &dist, &sizes, &mut rng, &mut t);
            t
        })
        .reduce(empty, |mut a, b| {
            for ((_, x), (_, y)) in a.iter_mut().zip(b) {
                x.merge(y);
            }
            a
        });
    Ok(BatteryReport { trials, seed, tallies, theta0_valid: theta0.is_invariant(group) })
}

fn run_trial<R: Rng>(g: &Graph, group: &GroupModel, dist: &Distances, s: &Sizes, rng: &mut R, t: &mut [(Lemma, LemmaTally)]) {
    let n = g.vertex_count();
    let xi = rng.gen_range(0..n);
    let xi1 = rng.gen_range(0..n);
    let xi2 = rng.gen_range(0..n);
    let dag = |a, b| GeodesicDag::new(g, dist, a, b).expect("connected");
    let d12 = dag(xi1, xi2);
    let d1 = dag(xi1, xi);
    let d2 = dag(xi2, xi);
    let theta = random_size(g, group, rng);
    let [two_gons, large, no_c, tripod, triangles, between] = t else { unreachable!() };
    let two_gons = &mut two_gons.1;

    for d in [&d12, &d1, &d2] {
        let first = d.succ(d.source());
        for (i, &a) in first.iter().enumerate() {
            for &b in &first[i..] {
                two_gons.check(a != b, s.theta3.small(a, d.source(), b), || {
                    format!("initial edges ({a}, {}, {b}) toward {}", d.source(), d.target())
                });
            }
        }
    }

    for d in [&d12, &d1, &d2] {
        for v in d.internal_vertices() {
            for (p, q) in dag_angles(d, v) {
                if !s.theta3.small(p, v, q) {
                    large.1.check(true, d.on_every_geodesic(v), || {
                        format!("large angle ({p}, {v}, {q}) avoided between {} and {}", d.source(), d.target())
                    });
                }
            }
        }
    }

    // c1 from ξ to ξ1, c from ξ1 to ξ2, c2 from ξ2 to ξ
    for v in d1.internal_vertices() {
        if d12.on_every_geodesic(v) {
            continue;
        }
        for (p, q) in dag_angles(&d1, v) {
            if s.x2.small(p, v, q) {
                continue;
            }
            let through = v != xi2 && v != xi && d2.on_every_geodesic(v);
            let large_all = dag_angles(&d2, v).iter().all(|&(a, b)| !s.theta0.small(a, v, b));
            no_c.1.check(true, through && large_all, || {
                format!("ξ = {xi}, ξ₁ = {xi1}, ξ₂ = {xi2}, angle ({p}, {v}, {q})")
            });
        }
    }

    for v in d12.internal_vertices() {
        let a1 = dag_angles(&d1, v);
        let a2 = dag_angles(&d2, v);
        if a1.is_empty() || a2.is_empty() {
            continue;
        }
        for (p, q) in dag_angles(&d12, v) {
            if s.tripod.small(p, v, q) {
                continue;
            }
            for &(x, y) in &a1 {
                for &(z, w) in &a2 {
                    let holds = !s.theta0.small(x, v, y) || !s.theta0.small(z, v, w);
                    tripod.1.check(true, holds, || {
                        format!("ξ = {xi}, ξ₁ = {xi1}, ξ₂ = {xi2}, v = {v}, c1 ({x}, {y}), c2 ({z}, {w})")
                    });
                }
            }
        }
    }

    if xi != xi1 && xi != xi2 && d12.admissible(|p, v, q| s.theta0.small(p, v, q)).exists() {
        let sum_x3 = transfer_size(s, &theta);
        for v in d1.internal_vertices() {
            if v == xi2 {
                continue;
            }
            for (p, q) in dag_angles(&d1, v) {
                if s.x2.small(p, v, q) {
                    continue;
                }
                triangles.1.check(true, d2.on_every_geodesic(v), || {
                    format!("ξ = {xi}, ξ₁ = {xi1}, ξ₂ = {xi2}, v = {v} not passed")
                });
                if s.x3.small(p, v, q) {
                    continue;
                }
                let small1 = theta.small(p, v, q);
                let large1 = !sum_x3.small(p, v, q);
                for (a, b) in dag_angles(&d2, v) {
                    if small1 {
                        triangles.1.check(true, sum_x3.small(a, v, b), || {
                            format!("ξ = {xi}, ξ₁ = {xi1}, ξ₂ = {xi2}, small ({p}, {v}, {q}) became large ({a}, {v}, {b})")
                        });
                    }
                    if large1 {
                        triangles.1.check(true, !theta.small(a, v, b), || {
                            format!("ξ = {xi}, ξ₁ = {xi1}, ξ₂ = {xi2}, large ({p}, {v}, {q}) became small ({a}, {v}, {b})")
                        });
                    }
                }
            }
        }
    }

    if xi1 != xi2 {
        let c = d12.random_path(rng);
        let c2 = d12.random_path(rng);
        let edges: std::collections::BTreeSet<(Vertex, Vertex)> =
            c.windows(2).chain(c2.windows(2)).map(|e| (e[0].min(e[1]), e[0].max(e[1]))).collect();
        let sub = Graph::new(n, edges).expect("path edges");
        for &v in &c {
            let inside = bfs(&sub, v);
            for &w in &c2 {
                if inside[w] == dist.raw(v, w) {
                    continue;
                }
                let holds = dag(v, w).admissible(|p, x, q| s.two3.small(p, x, q)).exists();
                between.1.check(c != c2, holds, || format!("bigon {c:?} / {c2:?}, points {v}, {w}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::symmetry::close_group;

    #[test]
    fn tree_passes() {
        let t = corpus::random_tree(20, &mut ChaCha8Rng::seed_from_u64(3));
        let r = lemma_battery(&t, &GroupModel::trivial(20), &AngleSet::trivial(&t), 200, 1).unwrap();
        assert!(r.passes());
        assert_eq!(r.tally(Lemma::GeodesicTwoGons).nonvacuous, 0);
        assert_eq!(r.tally(Lemma::GeodesicsBetweenGeodesics).checked, 0);
    }

    #[test]
    fn hexagon_passes() {
        let g = corpus::cycle(6);
        let grp = close_group(&g, &[corpus::rotation(6)], 100).unwrap();
        let r = lemma_battery(&g, &grp, &AngleSet::trivial(&g), 1000, 7).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(r.tally(Lemma::GeodesicTwoGons).nonvacuous > 0);
    }

    #[test]
    fn bouquet_exercises_every_lemma() {
        let g = corpus::bouquet(3, 4);
        let grp = close_group(&g, &[corpus::petal_rotation(3, 4)], 100).unwrap();
        let r = lemma_battery(&g, &grp, &AngleSet::trivial(&g), 2000, 3).unwrap();
        assert!(r.passes(), "{r:?}");
        for l in &LEMMAS[..5] {
            assert!(r.tally(*l).nonvacuous > 0, "{l:?} never exercised");
        }
        // bigons in a bouquet are petals, which contain every geodesic
        // between their points; a grid has bigons that do not
        let g = corpus::grid(4, 4);
        let r = lemma_battery(&g, &GroupModel::trivial(16), &AngleSet::trivial(&g), 500, 3).unwrap();
        assert!(r.passes(), "{r:?}");
        assert!(r.tally(Lemma::GeodesicsBetweenGeodesics).nonvacuous > 0);
    }

    #[test]
    fn literal_transfer_sum_is_too_small() {
        // the chain 3 → 1 → 7 → 9 at the hub needs Θ between two Θ⁽³⁾ steps
        let g = corpus::bouquet(3, 4);
        let d = distance_matrix(&g);
        let t3 = theta3(&g, &d, true).unwrap();
        let mut theta = AngleSet::trivial(&g);
        theta.insert(1, 0, 7).unwrap();
        let literal = theta.sum(&t3.times(3)).unwrap();
        assert!(!literal.small(3, 0, 9));
        let chained = chain_sum(&[&t3, &AngleSet::trivial(&g), &t3, &theta, &t3]).unwrap();
        assert!(chained.small(3, 0, 9));
    }

    #[test]
    fn deterministic_in_seed() {
        let g = corpus::petersen();
        let triv = AngleSet::trivial(&g);
        let a = lemma_battery(&g, &GroupModel::trivial(10), &triv, 50, 9).unwrap();
        let b = lemma_battery(&g, &GroupModel::trivial(10), &triv, 50, 9).unwrap();
        assert_eq!(a.tallies, b.tallies);
    }
}
