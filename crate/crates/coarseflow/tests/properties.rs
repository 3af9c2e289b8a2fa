use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coarseflow::angles::{Angle, AngleSet};
use coarseflow::corpus;
use coarseflow::cover::{default_basis, greedy_cover, verify_cover, FiniteMetric, PairSpace};
use coarseflow::graph::{distance_matrix, Graph};
use coarseflow::model::Model;
use coarseflow::rips::{build_rips, contract_subcomplex, validate_trace, RipsSetting};
use coarseflow::symmetry::{close_group, GroupModel, SubgroupFamily, DEFAULT_GROUP_CAP};

const CAP: usize = 20_000;

fn small_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 3 {
        0 => corpus::random_tree(rng.gen_range(3..=10), &mut rng),
        1 => corpus::random_cactus(rng.gen_range(1..=3), 5, &mut rng),
        _ => corpus::random_connected(rng.gen_range(4..=8), rng.gen_range(0..=3), &mut rng),
    }
}

fn random_angles(g: &Graph, rng: &mut ChaCha8Rng) -> AngleSet {
    let mut s = AngleSet::trivial(g);
    for apex in g.vertices() {
        let nb = g.neighbors(apex);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if rng.gen_bool(0.3) {
                    s.insert(a, apex, b).unwrap();
                }
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sum_is_commutative_and_contains_both(seed in any::<u64>()) {
        let g = small_graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let a = random_angles(&g, &mut rng);
        let b = random_angles(&g, &mut rng);
        let ab = a.sum(&b).unwrap();
        prop_assert_eq!(&ab, &b.sum(&a).unwrap());
        prop_assert!(a.is_subset(&ab).unwrap());
        prop_assert!(b.is_subset(&ab).unwrap());
        prop_assert!(a.union(&b).unwrap().is_subset(&ab).unwrap());
        prop_assert!(a.is_subset(&a.times(3)).unwrap());
    }

    #[test]
    fn rips_complex_grows_with_d_and_theta(seed in any::<u64>()) {
        let g = small_graph(seed);
        let dist = distance_matrix(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let theta = random_angles(&g, &mut rng);
        let bigger = theta.union(&random_angles(&g, &mut rng)).unwrap();
        let d = rng.gen_range(1..=3);
        let p = build_rips(&g, &dist, d, &theta, CAP).unwrap();
        prop_assert!(p.is_subcomplex_of(&build_rips(&g, &dist, d + 1, &theta, CAP).unwrap()));
        prop_assert!(p.is_subcomplex_of(&build_rips(&g, &dist, d, &bigger, CAP).unwrap()));
    }

    #[test]
    fn contraction_measure_strictly_drops(seed in any::<u64>()) {
        let g = small_graph(seed);
        let m = Model::new(g.clone(), GroupModel::trivial(g.vertex_count()), true).unwrap();
        let theta = m.theta3.times(7);
        let d = (4 * m.slim.hops()).max(1);
        let setting = RipsSetting { graph: &m.graph, dist: &m.dist, d, theta: &theta, theta3: &m.theta3, slim: &m.slim };
        let p = build_rips(&m.graph, &m.dist, d, &theta, CAP).unwrap();
        let trace = contract_subcomplex(&setting, &p, CAP).unwrap();
        for mv in &trace.moves {
            prop_assert!(mv.measure_after < mv.measure_before);
        }
        prop_assert!(validate_trace(&setting, &p, &trace).is_ok());
    }

    #[test]
    fn greedy_cover_verifies(seed in any::<u64>(), alpha in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = [4usize, 6, 8, 10][rng.gen_range(0..4)];
        let g = corpus::cycle(n);
        let group = close_group(&g, &[corpus::rotation(n)], DEFAULT_GROUP_CAP).unwrap();
        let perms: Vec<Vec<usize>> = group.elements().map(|e| group.permutation(e)).collect();
        let metric = FiniteMetric::restrict(&distance_matrix(&g), &(0..n).collect::<Vec<_>>());
        let keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        let keep = if keep.is_empty() { vec![0] } else { keep };
        // Z = V with the same action; X is an orbit-closed set of pairs
        let points: BTreeSet<(usize, usize)> = keep
            .iter()
            .flat_map(|&v| group.elements().map(move |e| (e, v)))
            .map(|(e, v)| (perms[e][v], perms[e][0]))
            .collect();
        let space = PairSpace::new(group.clone(), metric, |e, v| perms[e][v], n, |e, z| perms[e][z], points).unwrap();
        let basis = default_basis(&space, alpha);
        let cover = greedy_cover(&space, alpha, &basis).unwrap();
        let report = verify_cover(&cover, &space, alpha, &SubgroupFamily::AllSubgroups);
        prop_assert!(report.passes, "{:?}", report);
        prop_assert!(report.uncovered.is_none() && report.foreign_point.is_none());
    }

    #[test]
    fn pair_stabilizer_is_intersection(u in 0usize..8, v in 0usize..8, flip in any::<bool>()) {
        let g = corpus::cycle(8);
        let gens = if flip { vec![corpus::rotation(8), corpus::reflection(8)] } else { vec![corpus::rotation(8)] };
        let group = close_group(&g, &gens, DEFAULT_GROUP_CAP).unwrap();
        let both: BTreeSet<_> = group.vertex_stabilizer(u).intersection(&group.vertex_stabilizer(v)).copied().collect();
        prop_assert_eq!(group.pair_stabilizer(u, v), both);
        prop_assert!(group.is_subgroup(&group.pair_stabilizer(u, v)));
    }

    #[test]
    fn saturation_is_invariant(seed in any::<u64>()) {
        let g = corpus::petersen();
        let group = GroupModel::trivial(g.vertex_count());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_angles(&g, &mut rng);
        prop_assert!(a.saturate(&group).is_invariant(&group));
        let c = corpus::cycle(6);
        let rot = close_group(&c, &[corpus::rotation(6)], DEFAULT_GROUP_CAP).unwrap();
        let mut s = AngleSet::trivial(&c);
        s.insert(5, 0, 1).unwrap();
        let sat = s.saturate(&rot);
        prop_assert!(sat.is_invariant(&rot));
        prop_assert!(sat.contains(&Angle::new(0, 1, 2)));
    }
}
