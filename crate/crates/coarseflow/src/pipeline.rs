//! End-to-end runs: a structural analysis of an instance, and the full
//! chain from the subdivision to the combined cover of `G × Δ`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::angles::{theta3_circuit_bound_check, AngleSet, CircuitBoundReport};
use crate::cone::{
    combined_cover, combined_wideness, cone_cover, dichotomy_check, CombinedCover, CombinedWideness, ConeCover,
    DichotomyReport, Pair,
};
use crate::cover::{verify_cover, Cover, CoverReport};
use crate::error::{Error, Result};
use crate::flow::{
    build_cf_theta, cf_doubling_report, cover_cf, eligible_targets, endpoint_orbits, localization_check,
    pullback_cover, theta_for_alpha, wideness_scan, CfDoublingReport, CoarseFlowSpace, LocalizationReport, Pullback,
    WidenessReport,
};
use crate::graph::{circuits_through_edge, Vertex};
use crate::half::Half;
use crate::io::Instance;
use crate::model::Model;
use crate::symmetry::SubgroupFamily;

/// Number of circuits through an edge, maximized over edges, for one
/// length bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinenessRow {
    pub max_len: usize,
    pub max_circuits: usize,
}

/// Structural summary of an instance.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub vertices: usize,
    pub edges: usize,
    pub cone_vertices: Vec<Vertex>,
    pub forest: bool,
    pub diameter: u32,
    /// Slimness constant in hops, with a realizing triangle.
    pub delta: u32,
    pub delta_witness: Option<[Vertex; 3]>,
    pub group_order: usize,
    pub fineness: Vec<FinenessRow>,
    pub theta3_nontrivial: usize,
    pub circuit_bound: CircuitBoundReport,
}

impl AnalyzeReport {
    pub fn passes(&self) -> bool {
        self.circuit_bound.passes
    }
}

/// Distances, slimness, fineness profile up to circuits of length
/// `max_circuit_len`, and `Θ⁽³⁾` with its circuit bound.
pub fn analyze(inst: &Instance, max_circuit_len: usize) -> Result<AnalyzeReport> {
    let model = Model::new(inst.graph.clone(), inst.group.clone(), true)?;
    let g = &model.graph;
    let fineness = (3..=max_circuit_len)
        .map(|len| FinenessRow {
            max_len: len,
            max_circuits: g.edges().map(|e| circuits_through_edge(g, e, len).len()).max().unwrap_or(0),
        })
        .collect();
    Ok(AnalyzeReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        cone_vertices: g.cone_vertices(),
        forest: g.is_forest(),
        diameter: model.dist.diameter(),
        delta: model.slim.hops(),
        delta_witness: model.slim.witness_triangle,
        group_order: model.group.order(),
        fineness,
        theta3_nontrivial: model.theta3.nontrivial_count(),
        circuit_bound: theta3_circuit_bound_check(g, &model.theta3, &model.slim, 64),
    })
}

/// Parameters of [`run_pipeline`].
#[derive(Clone, Debug, Serialize)]
pub struct PipelineConfig {
    /// Wideness radius in the word metric of `G`.
    pub alpha: u32,
    /// Base midpoint `v₀` on `Γ'`; defaults to the first midpoint.
    pub v0: Option<Vertex>,
    /// Largest number of endpoints of the flow space.
    pub endpoint_limit: usize,
    /// Largest `τ` scanned, in units of `Γ`; defaults to the diameter.
    pub tau_max: Option<u32>,
    /// Largest subdivision accepted.
    pub max_sub_vertices: usize,
    /// Geodesic enumeration cap of the localization check.
    pub path_cap: usize,
    /// Cone layers removed before verification (falsification control).
    pub drop_layers: Vec<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            alpha: 1,
            v0: None,
            endpoint_limit: 48,
            tau_max: None,
            max_sub_vertices: 400,
            path_cap: 10_000,
            drop_layers: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeSummary {
    pub members: usize,
    pub order: Option<usize>,
    pub layer_overlap: Option<(Vertex, Vertex, usize)>,
    pub stabilizer_violation: Option<(Vertex, usize, usize)>,
    pub invariance_violation: Option<(Vertex, usize, usize)>,
    pub passes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowSummary {
    pub endpoints: usize,
    pub pairs: usize,
    pub points: usize,
    pub doubling: CfDoublingReport,
    pub localization: LocalizationReport,
    pub equivariance_witness: Option<((Vertex, Vertex), usize)>,
    pub passes: bool,
}

impl ConeSummary {
    /// Order, layer disjointness, stabilizer and invariance checks.
    pub fn of(model: &Model, cone: &ConeCover) -> Self {
        let order = cone.order();
        let layer_overlap = cone.layer_overlap();
        let stabilizer_violation = cone.stabilizer_violation(model);
        let invariance_violation = cone.invariance_violation(model);
        ConeSummary {
            members: cone.members.len(),
            passes: order.map_or(true, |o| o <= 2)
                && layer_overlap.is_none()
                && stabilizer_violation.is_none()
                && invariance_violation.is_none(),
            order,
            layer_overlap,
            stabilizer_violation,
            invariance_violation,
        }
    }
}

impl FlowSummary {
    /// Doubling, localization and equivariance checks.
    pub fn of(model: &Model, cf: &CoarseFlowSpace, path_cap: usize) -> Self {
        let doubling = cf_doubling_report(model, cf);
        let localization = localization_check(model, cf, path_cap);
        let equivariance_witness = cf.equivariance_witness(model);
        FlowSummary {
            endpoints: cf.endpoints().len(),
            pairs: cf.pairs().len(),
            points: cf.len(),
            passes: doubling.passes && localization.passes && equivariance_witness.is_none(),
            doubling,
            localization,
            equivariance_witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CombinedSummary {
    pub members: usize,
    pub order: Option<usize>,
    pub flow_order: Option<usize>,
    pub cone_order: Option<usize>,
    pub order_bound_holds: bool,
}

/// Verification summary of a pipeline run.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub vertices: usize,
    pub sub_vertices: usize,
    pub group_order: usize,
    pub delta: u32,
    pub v0: Vertex,
    pub cone: ConeSummary,
    pub dichotomy: DichotomyReport,
    pub flow: FlowSummary,
    /// Length of the flow cover, `max d(v₀, h v₀) + 2δ'` over `|h| <= α`.
    pub cover_alpha: Half,
    pub cover: CoverReport,
    /// The flow cover has order at most `D - 1 = 4`.
    pub cover_order_ok: bool,
    pub targets: usize,
    pub scan: WidenessReport,
    /// `τ` used for the pullback: the smallest passing one, or `tau_max`.
    pub tau: Half,
    pub combined: CombinedSummary,
    /// Pairs on which wideness is required: pairs widely covered by a
    /// cone member, and all flow targets when the scan found a wide `τ`.
    pub eligible: usize,
    pub wideness: CombinedWideness,
    pub failed_stage: Option<String>,
    pub passes: bool,
}

/// Artifacts produced by a pipeline run.
#[derive(Clone, Debug)]
pub struct PipelineArtifacts {
    pub model: Model,
    pub cone: ConeCover,
    pub cf: CoarseFlowSpace,
    pub cover: Cover,
    pub pullback: Pullback,
    pub combined: CombinedCover,
}

/// Builds the model and resolves the base midpoint `v₀` (default: the
/// first midpoint). Errors are tagged with the `model` stage.
pub fn setup_model(inst: &Instance, v0: Option<Vertex>, max_sub_vertices: usize) -> Result<(Model, Vertex)> {
    let model = Model::new(inst.graph.clone(), inst.group.clone(), true).map_err(|e| e.at("model"))?;
    let sub_vertices = model.sub.graph().vertex_count();
    if sub_vertices > max_sub_vertices {
        return Err(Error::CapExceeded { what: "subdivision vertex", cap: max_sub_vertices }.at("model"));
    }
    let v0 = match v0 {
        Some(v) if model.sub.is_midpoint(v) => v,
        Some(v) => return Err(Error::Parameter(format!("v0 = {v} is not a midpoint")).at("model")),
        None => model.sub.midpoints().next().ok_or_else(|| Error::Parameter("graph has no edges".into()).at("model"))?,
    };
    Ok((model, v0))
}

/// The flow space `CF(Θ)` over the sampled endpoint orbits together with
/// the orbit of `v₀`. Errors are tagged with the `flow` stage.
pub fn flow_space(model: &Model, v0: Vertex, theta: &AngleSet, endpoint_limit: usize) -> Result<CoarseFlowSpace> {
    let grp = &model.sub_group;
    let mut endpoints: BTreeSet<Vertex> = endpoint_orbits(model, endpoint_limit).into_iter().collect();
    endpoints.extend(grp.elements().map(|g| grp.act(g, v0)));
    let endpoints: Vec<Vertex> = endpoints.into_iter().collect();
    build_cf_theta(model, theta, &endpoints, model.delta_prime()).map_err(|e| e.at("flow"))
}

/// Length of the flow cover for wideness `alpha` in `G`:
/// `max d(v₀, h v₀) + 2δ'` over `|h| <= alpha`, in half units.
pub fn cover_length(model: &Model, v0: Vertex, alpha: u32) -> Half {
    let grp = &model.sub_group;
    let spread = grp.ball(grp.identity(), alpha).into_iter().map(|h| model.sub_dist.raw(v0, grp.act(h, v0))).max();
    Half::from_halves(spread.unwrap_or(0) + 2 * model.delta_prime().halves())
}

/// Subdivision, size seeding, cone cover and dichotomy, flow space with
/// doubling and localization, greedy cover, pullback scan, combined cover
/// and its order and wideness.
pub fn run_pipeline(inst: &Instance, cfg: &PipelineConfig) -> Result<(PipelineReport, PipelineArtifacts)> {
    let (model, v0) = setup_model(inst, cfg.v0, cfg.max_sub_vertices)?;
    let sub_vertices = model.sub.graph().vertex_count();
    let grp = &model.sub_group;

    let mut cone = cone_cover(&model, None, cfg.alpha, v0, false).map_err(|e| e.at("cone"))?;
    for &layer in &cfg.drop_layers {
        cone = cone.without_layer(layer);
    }
    let cone_summary = ConeSummary::of(&model, &cone);
    let dichotomy = dichotomy_check(&model, &cone);

    let theta = theta_for_alpha(&model, v0, cfg.alpha, &cone.theta_out).map_err(|e| e.at("theta"))?;
    let cf = flow_space(&model, v0, &theta, cfg.endpoint_limit)?;
    let flow = FlowSummary::of(&model, &cf, cfg.path_cap);

    let cover_alpha = cover_length(&model, v0, cfg.alpha);
    let (space, cover) = cover_cf(&model, &cf, cover_alpha).map_err(|e| e.at("cover"))?;
    let cover_report = verify_cover(&cover, &space, cover_alpha.halves(), &SubgroupFamily::AllSubgroups);
    let cover_order_ok = cover.order().map_or(true, |o| o <= 4);

    let targets = eligible_targets(&model, &cf, v0).map_err(|e| e.at("pullback"))?;
    let tau_max = cfg.tau_max.unwrap_or_else(|| model.dist.diameter().max(1));
    let taus: Vec<Half> = (1..=tau_max).map(Half::from_units).collect();
    let scan = wideness_scan(&model, &cf, &cover, cfg.alpha, v0, &targets, &taus).map_err(|e| e.at("pullback"))?;
    let tau = scan.smallest_passing.unwrap_or(Half::from_units(tau_max));
    let pullback = pullback_cover(&model, &cf, &cover, tau, v0, &targets).map_err(|e| e.at("pullback"))?;

    let combined = combined_cover(&cone, &pullback).map_err(|e| e.at("combine"))?;
    let combined_summary = CombinedSummary {
        members: combined.members.len(),
        order: combined.order,
        flow_order: combined.flow_order,
        cone_order: combined.cone_order,
        order_bound_holds: combined.order_bound_holds(),
    };
    let mut eligible: BTreeSet<Pair> = wide_cone_pairs(&model, &cone);
    if scan.smallest_passing.is_some() {
        eligible.extend(targets.iter().copied());
    }
    let eligible: Vec<Pair> = eligible.into_iter().collect();
    let wideness = combined_wideness(&model, &combined, cfg.alpha, &eligible, &targets);

    let stages = [
        ("cone", cone_summary.passes),
        ("dichotomy", dichotomy.passes),
        ("flow", flow.passes),
        ("cover", cover_report.passes && cover_order_ok),
        ("combine", combined_summary.order_bound_holds),
        ("wideness", wideness.passes),
    ];
    let failed_stage = stages.iter().find(|(_, ok)| !ok).map(|(s, _)| s.to_string());
    let report = PipelineReport {
        config: cfg.clone(),
        vertices: model.graph.vertex_count(),
        sub_vertices,
        group_order: grp.order(),
        delta: model.slim.hops(),
        v0,
        cone: cone_summary,
        dichotomy,
        flow,
        cover_alpha,
        cover: cover_report,
        cover_order_ok,
        targets: targets.len(),
        scan,
        tau,
        combined: combined_summary,
        eligible: eligible.len(),
        wideness,
        passes: failed_stage.is_none(),
        failed_stage,
    };
    Ok((report, PipelineArtifacts { model, cone, cf, cover, pullback, combined }))
}

/// Pairs `(g, ξ)` for which some cone member contains `B_α(g) × {ξ}`.
fn wide_cone_pairs(model: &Model, cone: &ConeCover) -> BTreeSet<Pair> {
    let grp = &model.sub_group;
    let mut out = BTreeSet::new();
    for m in &cone.members {
        for &(g, xi) in &m.pairs {
            if grp.ball(g, cone.alpha).iter().all(|&h| m.pairs.contains(&(h, xi))) {
                out.insert((g, xi));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::symmetry::{close_group, GroupModel};

    fn instance(g: crate::graph::Graph, gens: Vec<Vec<Vertex>>) -> Instance {
        let group = close_group(&g, &gens, 1000).unwrap();
        Instance { graph: g, generators: gens, group }
    }

    #[test]
    fn tree_pipeline_passes() {
        let inst = instance(corpus::path(4), Vec::new());
        let (r, art) = run_pipeline(&inst, &PipelineConfig::default()).unwrap();
        assert!(r.passes, "{:?}", r.failed_stage);
        assert!(r.scan.smallest_passing.is_some());
        assert!(art.combined.order_bound_holds());
    }

    #[test]
    fn hexagon_pipeline_passes() {
        let inst = instance(corpus::cycle(6), vec![corpus::rotation(6)]);
        let (r, _) = run_pipeline(&inst, &PipelineConfig::default()).unwrap();
        assert!(r.passes, "{:?}", r.failed_stage);
    }

    #[test]
    fn deleted_cone_layers_fail_at_dichotomy() {
        let inst = instance(corpus::star(3), vec![corpus::leaf_swap(3, 1, 2)]);
        let (ok, _) = run_pipeline(&inst, &PipelineConfig::default()).unwrap();
        assert!(ok.passes, "{:?}", ok.failed_stage);
        for layer in 0..3 {
            let cfg = PipelineConfig { drop_layers: vec![layer], ..PipelineConfig::default() };
            assert!(run_pipeline(&inst, &cfg).unwrap().0.dichotomy.passes);
        }
        let cfg = PipelineConfig { drop_layers: vec![0, 1, 2], ..PipelineConfig::default() };
        let (r, _) = run_pipeline(&inst, &cfg).unwrap();
        assert_eq!(r.failed_stage.as_deref(), Some("dichotomy"));
        assert!(!r.dichotomy.violations.is_empty());
    }

    #[test]
    fn caps_raise_stage_errors() {
        let inst = instance(corpus::grid(5, 5), Vec::new());
        let cfg = PipelineConfig { max_sub_vertices: 10, ..PipelineConfig::default() };
        let err = run_pipeline(&inst, &cfg).unwrap_err();
        assert!(matches!(err, Error::Stage { stage: "model", .. }));
    }

    #[test]
    fn analyze_cycle() {
        let inst = Instance { graph: corpus::cycle(6), generators: Vec::new(), group: GroupModel::trivial(6) };
        let r = analyze(&inst, 6).unwrap();
        assert_eq!(r.delta, 1);
        assert_eq!(r.fineness.last().unwrap(), &FinenessRow { max_len: 6, max_circuits: 1 });
        assert!(r.passes());
    }
}
