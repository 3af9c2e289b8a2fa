//! A graph with its group action and the derived data shared by the flow
//! space, cone cover and Rips constructions.

use crate::angles::{theta3, AngleSet};
use crate::error::{Error, Result};
use crate::graph::{distance_matrix, slimness_constant, Distances, Graph, SlimnessReport, Subdivision};
use crate::half::Half;
use crate::symmetry::GroupModel;

/// A connected graph `Γ`, a group acting on it, its barycentric subdivision
/// `Γ'` with the lifted action, distances on both, the slimness constant of
/// `Γ` and `Θ⁽³⁾` on both graphs.
///
/// On `Γ'`, `Θ⁽³⁾` is taken together with every angle at a midpoint, since
/// midpoints have valency two and never obstruct smallness.
#[derive(Clone, Debug)]
pub struct Model {
    pub graph: Graph,
    pub dist: Distances,
    pub group: GroupModel,
    pub slim: SlimnessReport,
    pub theta3: AngleSet,
    pub sub: Subdivision,
    pub sub_dist: Distances,
    pub sub_group: GroupModel,
    pub sub_theta3: AngleSet,
}

impl Model {
    /// Computes all derived data. With `include_cone_completion` false,
    /// cone vertices are not used as far corners in `Θ⁽³⁾`.
    pub fn new(graph: Graph, group: GroupModel, include_cone_completion: bool) -> Result<Self> {
        if !graph.is_connected() {
            return Err(Error::NotConnected);
        }
        if group.degree() != graph.vertex_count() {
            return Err(Error::Mismatch(format!(
                "group acts on {} points, graph has {} vertices",
                group.degree(),
                graph.vertex_count()
            )));
        }
        let dist = distance_matrix(&graph);
        let slim = slimness_constant(&graph, &dist)?;
        let theta3_g = theta3(&graph, &dist, include_cone_completion)?;
        let sub = Subdivision::new(&graph);
        let sub_dist = distance_matrix(sub.graph());
        let sub_group = group.lift(&sub);
        let mut sub_theta3 = theta3(sub.graph(), &sub_dist, include_cone_completion)?;
        for m in sub.midpoints() {
            sub_theta3.insert_all_at(m);
        }
        Ok(Model { graph, dist, group, slim, theta3: theta3_g, sub, sub_dist, sub_group, sub_theta3 })
    }

    /// `δ' = δ + 1`, in units of `Γ`.
    pub fn delta_prime(&self) -> Half {
        Half::from_units(self.slim.hops() + 1)
    }

    /// Trivial angles plus every angle at a midpoint of `Γ'`.
    pub fn midpoint_angles(&self) -> AngleSet {
        let mut out = AngleSet::trivial(self.sub.graph());
        for m in self.sub.midpoints() {
            out.insert_all_at(m);
        }
        out
    }

    /// Transfers a set of angles of `Γ` to `Γ'`.
    pub fn lift(&self, theta: &AngleSet) -> AngleSet {
        theta.lift(&self.sub)
    }

    /// A set of angles of `Γ'` together with every angle at a midpoint.
    pub fn complete(&self, theta: &AngleSet) -> Result<AngleSet> {
        theta.union(&self.midpoint_angles())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::symmetry::close_group;

    #[test]
    fn tree_model() {
        let g = corpus::star(3);
        let grp = close_group(&g, &[corpus::leaf_swap(3, 1, 2)], 10).unwrap();
        let m = Model::new(g, grp, true).unwrap();
        assert_eq!(m.slim.hops(), 0);
        assert!(m.theta3.is_trivial_only());
        assert_eq!(m.delta_prime(), Half::from_units(1));
        assert_eq!(m.sub_group.order(), 2);
        // on the subdivided tree only midpoint angles remain
        assert_eq!(m.sub_theta3, m.midpoint_angles());
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::new(2, []).unwrap();
        assert!(matches!(Model::new(g, GroupModel::trivial(2), true), Err(Error::NotConnected)));
    }
}
