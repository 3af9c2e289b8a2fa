//! Command-line front end: structural analysis, the full pipeline, the
//! individual flow-space, cone and Rips stages, and DOT export.
//!
//! Reports are printed to standard output as JSON; artifacts go to the
//! file named by `--out` (or to standard output when it is absent). Exit
//! status is 0 when every verification passes, 1 when one fails and 2 for
//! usage and input errors.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use coarseflow::angles::AngleSet;
use coarseflow::battery::lemma_battery;
use coarseflow::cone::{cone_cover, dichotomy_check};
use coarseflow::cover::{verify_cover, Cover};
use coarseflow::dot;
use coarseflow::error::Error;
use coarseflow::flow::{cover_cf, eligible_targets, pullback_cover, theta_for_alpha, wideness_scan, CoarseFlowSpace};
use coarseflow::graph::{GeodesicDag, GraphDocument};
use coarseflow::half::Half;
use coarseflow::io::{load_angles, load_instance, read_json, write_json, Instance};
use coarseflow::model::Model;
use coarseflow::pipeline::{
    analyze, cover_length, flow_space, run_pipeline, setup_model, ConeSummary, FlowSummary, PipelineConfig,
};
use coarseflow::rips::{
    build_rips, complex_stats, contract_subcomplex, homology_certificate, homology_oracle, span_l, validate_trace,
    ContractionTrace, RipsSetting, SimplicialComplex, DEFAULT_SIMPLEX_CAP,
};
use coarseflow::symmetry::{SubgroupFamily, DEFAULT_GROUP_CAP};

const DEFAULTS: &str = "\
Default caps: group order 1024, subdivision 400 vertices, 48 flow-space \
endpoints, 10000 enumerated geodesics, 200000 simplices. All randomness \
is drawn from --seed (default 1).

Exit status: 0 when every verification passes, 1 when one fails, 2 for \
usage and input errors.";

#[derive(Parser)]
#[command(name = "coarseflow", version, about = "Long thin covers, coarse flow spaces and relative Rips complexes on finite graph models", after_help = DEFAULTS)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distances, slimness, fineness profile and large-corner angles.
    Analyze {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Longest circuit counted in the fineness profile.
        #[arg(long, default_value_t = 8)]
        max_circuit_len: usize,
    },
    /// Full chain from the subdivision to the verified combined cover.
    Pipeline {
        #[command(flatten)]
        stage: StageArgs,
        /// Largest tau scanned, in edges of the graph (default: diameter).
        #[arg(long)]
        tau_max: Option<u32>,
        /// Geodesic enumeration cap of the localization check.
        #[arg(long, default_value_t = 10_000)]
        path_cap: usize,
        /// Cone layer removed before verification; repeatable.
        #[arg(long)]
        drop_layer: Vec<usize>,
        /// Directory receiving the artifacts.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz DOT for a graph, geodesic DAG, cover, complex or trace file.
    ExportDot {
        /// Artifact file.
        input: PathBuf,
        /// Artifact kind; inferred from the document when absent.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Source vertex of a geodesic DAG.
        #[arg(long)]
        source: Option<usize>,
        /// Target vertex of a geodesic DAG.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Coarse flow space commands.
    Cf {
        #[command(subcommand)]
        command: CfCommand,
    },
    /// Cone cover commands.
    Cone {
        #[command(subcommand)]
        command: ConeCommand,
    },
    /// Combined covers.
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
    /// Relative Rips complex commands.
    Rips {
        #[command(subcommand)]
        command: RipsCommand,
    },
    /// Randomized check of the geodesic and angle lemmas.
    Battery {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Number of sampled trials.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Angle file seeding the size (default: trivial angles).
        #[arg(long)]
        theta: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Graph,
    Dag,
    Cover,
    Complex,
    Trace,
}

#[derive(Subcommand)]
enum CfCommand {
    /// Builds the flow space; the artifact is its array of triples.
    Build {
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Doubling, localization and equivariance of the flow space.
    Doubling {
        #[command(flatten)]
        flow: FlowArgs,
        /// Geodesic enumeration cap of the localization check.
        #[arg(long, default_value_t = 10_000)]
        path_cap: usize,
    },
    /// Greedy long thin cover of the flow space, verified.
    Cover {
        #[command(flatten)]
        flow: FlowArgs,
        /// Cover length in half edges (default: derived from --alpha).
        #[arg(long)]
        length_halves: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pullback of the flow cover to pairs (g, ξ) at one tau.
    Pullback {
        #[command(flatten)]
        flow: FlowArgs,
        /// Distance from g v0 along the geodesics, in edges of the graph.
        #[arg(long)]
        tau: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wideness of the pullback for tau = 1..tau-max.
    Scan {
        #[command(flatten)]
        flow: FlowArgs,
        /// Largest tau, in edges of the graph (default: diameter).
        #[arg(long)]
        tau_max: Option<u32>,
    },
}

#[derive(Subcommand)]
enum ConeCommand {
    /// Builds the three-layer cone cover of G × V.
    Build {
        #[command(flatten)]
        stage: StageArgs,
        /// Record interior certificates per member.
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks that every pair is widely covered or joined by a small geodesic.
    Dichotomy {
        #[command(flatten)]
        stage: StageArgs,
        /// Cone layer removed before the check; repeatable.
        #[arg(long)]
        drop_layer: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Cone cover plus pulled-back flow cover, with order and wideness.
    Combine {
        #[command(flatten)]
        stage: StageArgs,
        /// Largest tau scanned, in edges of the graph (default: diameter).
        #[arg(long)]
        tau_max: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RipsCommand {
    /// Builds the relative Rips complex of the graph.
    Build {
        #[command(flatten)]
        rips: RipsArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contracts a subcomplex (default: the whole complex) and validates the trace.
    Contract {
        #[command(flatten)]
        rips: RipsArgs,
        /// Complex file of the subcomplex to contract.
        #[arg(long)]
        subcomplex: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rational Betti numbers of a complex file or of the Rips complex.
    Homology {
        /// Complex file; the Rips complex of --graph is used when absent.
        #[arg(long, conflicts_with = "graph")]
        complex: Option<PathBuf>,
        #[command(flatten)]
        rips: OptionalRipsArgs,
        /// Highest dimension computed (default: the dimension of the complex).
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Action file; overrides the one named in the graph file.
    #[arg(long)]
    action: Option<PathBuf>,
    /// Largest group order accepted.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
}

#[derive(Args)]
struct StageArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Wideness radius in the word metric of G.
    #[arg(long, default_value_t = 1)]
    alpha: u32,
    /// Base midpoint v0 on the subdivision (default: the first midpoint).
    #[arg(long)]
    v0: Option<usize>,
    /// Largest number of flow-space endpoints.
    #[arg(long, default_value_t = 48)]
    endpoint_limit: usize,
    /// Largest subdivision accepted, in vertices.
    #[arg(long, default_value_t = 400)]
    max_sub_vertices: usize,
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    stage: StageArgs,
    /// Angle file on the subdivision replacing the seeded size.
    #[arg(long)]
    theta: Option<PathBuf>,
}

#[derive(Args)]
struct RipsArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Length bound of the geodesics joining simplex vertices (default: max(4δ, 1)).
    #[arg(long)]
    d: Option<u32>,
    /// Size for angles: `7t3` (seven times the large-corner angles), `all`, or an angle file.
    #[arg(long, default_value = "7t3")]
    theta: String,
    /// Largest number of simplices.
    #[arg(long, default_value_t = DEFAULT_SIMPLEX_CAP)]
    cap: usize,
}

#[derive(Args)]
struct OptionalRipsArgs {
    /// Graph file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Action file; overrides the one named in the graph file.
    #[arg(long)]
    action: Option<PathBuf>,
    /// Length bound (default: max(4δ, 1)).
    #[arg(long)]
    d: Option<u32>,
    /// Size for angles: `7t3`, `all`, or an angle file.
    #[arg(long, default_value = "7t3")]
    theta: String,
    /// Largest number of simplices.
    #[arg(long, default_value_t = DEFAULT_SIMPLEX_CAP)]
    cap: usize,
}

/// Why a command did not complete.
enum Failure {
    /// Unreadable or invalid input; exit status 2.
    Input(Error),
    /// A stage could not run on valid input; exit status 1.
    Stage(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e)
        } else {
            Failure::Stage(e)
        }
    }
}

type Outcome = Result<bool, Failure>;

/// Errors while reading inputs are usage errors whatever their kind.
fn input<T>(r: coarseflow::error::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Input)
}

fn print_json(value: &impl Serialize) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

/// Writes the artifact to `out` and prints the report, or prints the
/// artifact alone.
fn emit(out: Option<&Path>, artifact: &impl Serialize, report: &impl Serialize) -> Result<(), Failure> {
    match out {
        Some(p) => {
            input(write_json(p, artifact))?;
            print_json(report);
        }
        None => print_json(artifact),
    }
    Ok(())
}

fn load(args: &InstanceArgs) -> Result<Instance, Failure> {
    input(load_instance(&args.graph, args.action.as_deref(), args.group_cap))
}

fn stage_model(args: &StageArgs) -> Result<(Model, usize), Failure> {
    let inst = load(&args.inst)?;
    Ok(setup_model(&inst, args.v0, args.max_sub_vertices)?)
}

/// Model, base point, the size `Θ` and the flow space.
fn stage_flow(args: &FlowArgs) -> Result<(Model, usize, CoarseFlowSpace), Failure> {
    let (model, v0) = stage_model(&args.stage)?;
    let theta = match &args.theta {
        Some(p) => input(load_angles(p, model.sub.graph()))?,
        None => {
            let cone = cone_cover(&model, None, args.stage.alpha, v0, false).map_err(|e| e.at("cone"))?;
            theta_for_alpha(&model, v0, args.stage.alpha, &cone.theta_out).map_err(|e| e.at("theta"))?
        }
    };
    let cf = flow_space(&model, v0, &theta, args.stage.endpoint_limit)?;
    Ok((model, v0, cf))
}

fn flow_cover(model: &Model, v0: usize, cf: &CoarseFlowSpace, alpha: u32) -> Result<Cover, Failure> {
    let length = cover_length(model, v0, alpha);
    Ok(cover_cf(model, cf, length).map_err(|e| e.at("cover"))?.1)
}

fn taus(model: &Model, tau_max: Option<u32>) -> Vec<Half> {
    (1..=tau_max.unwrap_or_else(|| model.dist.diameter().max(1))).map(Half::from_units).collect()
}

fn theta_arg(value: &str, model: &Model) -> Result<AngleSet, Failure> {
    match value {
        "7t3" => Ok(model.theta3.times(7)),
        "all" => Ok(AngleSet::all(&model.graph)),
        path => input(load_angles(Path::new(path), &model.graph)),
    }
}

fn rips_model(graph: &Path, action: Option<&Path>) -> Result<Model, Failure> {
    let inst = input(load_instance(graph, action, DEFAULT_GROUP_CAP))?;
    Ok(Model::new(inst.graph, inst.group, true)?)
}

fn cmd_analyze(inst: &InstanceArgs, max_circuit_len: usize) -> Outcome {
    let r = analyze(&load(inst)?, max_circuit_len)?;
    print_json(&r);
    Ok(r.passes())
}

fn cmd_pipeline(stage: &StageArgs, tau_max: Option<u32>, path_cap: usize, drop_layers: &[usize], out: Option<&Path>) -> Outcome {
    let inst = load(&stage.inst)?;
    let cfg = PipelineConfig {
        alpha: stage.alpha,
        v0: stage.v0,
        endpoint_limit: stage.endpoint_limit,
        tau_max,
        max_sub_vertices: stage.max_sub_vertices,
        path_cap,
        drop_layers: drop_layers.to_vec(),
    };
    let (report, art) = run_pipeline(&inst, &cfg)?;
    if let Some(dir) = out {
        input(std::fs::create_dir_all(dir).map_err(Error::from))?;
        input(write_json(&dir.join("report.json"), &report))?;
        input(write_json(&dir.join("cone.json"), &art.cone.members))?;
        input(write_json(&dir.join("flow.json"), &art.cf.triples()))?;
        input(write_json(&dir.join("cover.json"), &art.cover))?;
        input(write_json(&dir.join("pullback.json"), &art.pullback))?;
        input(write_json(&dir.join("combined.json"), &art.combined))?;
    }
    print_json(&report);
    Ok(report.passes)
}

fn infer_kind(doc: &Value) -> Option<Kind> {
    match doc {
        Value::Array(_) => Some(Kind::Cover),
        Value::Object(m) if m.contains_key("edges") => Some(Kind::Graph),
        Value::Object(m) if m.contains_key("maximal_simplices") => Some(Kind::Complex),
        Value::Object(m) if m.contains_key("moves") => Some(Kind::Trace),
        _ => None,
    }
}

fn cmd_export_dot(path: &Path, kind: Option<Kind>, source: Option<usize>, target: Option<usize>) -> Outcome {
    let doc: Value = input(read_json(path))?;
    let kind = match kind {
        Some(k) => k,
        None if source.is_some() || target.is_some() => Kind::Dag,
        None => infer_kind(&doc).ok_or_else(|| Failure::Input(Error::Malformed(format!("{}: unknown artifact kind", path.display()))))?,
    };
    let parse = |e: serde_json::Error| Failure::Input(Error::Malformed(format!("{}: {e}", path.display())));
    let text = match kind {
        Kind::Graph => dot::graph_dot(&input(serde_json::from_value::<GraphDocument>(doc).map_err(parse)?.to_graph())?),
        Kind::Dag => {
            let g = input(serde_json::from_value::<GraphDocument>(doc).map_err(parse)?.to_graph())?;
            let (Some(s), Some(t)) = (source, target) else {
                return Err(Failure::Input(Error::Parameter("a geodesic DAG needs --source and --target".into())));
            };
            let d = coarseflow::graph::distance_matrix(&g);
            dot::dag_dot(&input(GeodesicDag::new(&g, &d, s, t))?)
        }
        Kind::Cover => dot::cover_dot(&serde_json::from_value::<Cover>(doc).map_err(parse)?),
        Kind::Complex => dot::complex_dot(&serde_json::from_value::<SimplicialComplex>(doc).map_err(parse)?),
        Kind::Trace => dot::trace_dot(&serde_json::from_value::<ContractionTrace>(doc).map_err(parse)?),
    };
    print!("{text}");
    Ok(true)
}

fn cmd_cf(command: &CfCommand) -> Outcome {
    match command {
        CfCommand::Build { flow, out } => {
            let (_, _, cf) = stage_flow(flow)?;
            let report = json!({
                "endpoints": cf.endpoints().len(),
                "pairs": cf.pairs().len(),
                "points": cf.len(),
                "theta_nontrivial": cf.theta().nontrivial_count(),
            });
            emit(out.as_deref(), &cf.triples(), &report)?;
            Ok(true)
        }
        CfCommand::Doubling { flow, path_cap } => {
            let (model, _, cf) = stage_flow(flow)?;
            let s = FlowSummary::of(&model, &cf, *path_cap);
            print_json(&s);
            Ok(s.passes)
        }
        CfCommand::Cover { flow, length_halves, out } => {
            let (model, v0, cf) = stage_flow(flow)?;
            let length = length_halves.map_or_else(|| cover_length(&model, v0, flow.stage.alpha), Half::from_halves);
            let (space, cover) = cover_cf(&model, &cf, length).map_err(|e| e.at("cover"))?;
            let report = verify_cover(&cover, &space, length.halves(), &SubgroupFamily::AllSubgroups);
            let ok = report.passes && cover.order().map_or(true, |o| o <= 4);
            emit(out.as_deref(), &cover, &json!({ "length": length, "verification": report }))?;
            Ok(ok)
        }
        CfCommand::Pullback { flow, tau, out } => {
            let (model, v0, cf) = stage_flow(flow)?;
            let cover = flow_cover(&model, v0, &cf, flow.stage.alpha)?;
            let targets = eligible_targets(&model, &cf, v0).map_err(|e| e.at("pullback"))?;
            let pb = pullback_cover(&model, &cf, &cover, Half::from_units(*tau), v0, &targets).map_err(|e| e.at("pullback"))?;
            let report = json!({ "tau": pb.tau, "v0": v0, "targets": targets.len(), "members": pb.members.len(), "order": pb.order() });
            emit(out.as_deref(), &pb, &report)?;
            Ok(true)
        }
        CfCommand::Scan { flow, tau_max } => {
            let (model, v0, cf) = stage_flow(flow)?;
            let cover = flow_cover(&model, v0, &cf, flow.stage.alpha)?;
            let targets = eligible_targets(&model, &cf, v0).map_err(|e| e.at("pullback"))?;
            let scan = wideness_scan(&model, &cf, &cover, flow.stage.alpha, v0, &targets, &taus(&model, *tau_max))
                .map_err(|e| e.at("pullback"))?;
            print_json(&scan);
            Ok(scan.smallest_passing.is_some())
        }
    }
}

fn cmd_cone(command: &ConeCommand) -> Outcome {
    match command {
        ConeCommand::Build { stage, certify, out } => {
            let (model, v0) = stage_model(stage)?;
            let cone = cone_cover(&model, None, stage.alpha, v0, *certify).map_err(|e| e.at("cone"))?;
            let s = ConeSummary::of(&model, &cone);
            emit(out.as_deref(), &cone.members, &s)?;
            Ok(s.passes)
        }
        ConeCommand::Dichotomy { stage, drop_layer } => {
            let (model, v0) = stage_model(stage)?;
            let mut cone = cone_cover(&model, None, stage.alpha, v0, false).map_err(|e| e.at("cone"))?;
            for &l in drop_layer {
                cone = cone.without_layer(l);
            }
            let r = dichotomy_check(&model, &cone);
            print_json(&r);
            Ok(r.passes)
        }
    }
}

fn cmd_cover(command: &CoverCommand) -> Outcome {
    let CoverCommand::Combine { stage, tau_max, out } = command;
    let inst = load(&stage.inst)?;
    let cfg = PipelineConfig {
        alpha: stage.alpha,
        v0: stage.v0,
        endpoint_limit: stage.endpoint_limit,
        tau_max: *tau_max,
        max_sub_vertices: stage.max_sub_vertices,
        ..PipelineConfig::default()
    };
    let (r, art) = run_pipeline(&inst, &cfg)?;
    let report = json!({
        "tau": r.tau,
        "combined": r.combined,
        "eligible": r.eligible,
        "wideness": r.wideness,
    });
    emit(out.as_deref(), &art.combined, &report)?;
    Ok(r.combined.order_bound_holds && r.wideness.passes)
}

fn cmd_rips(command: &RipsCommand) -> Outcome {
    match command {
        RipsCommand::Build { rips, out } => {
            let model = rips_model(&rips.inst.graph, rips.inst.action.as_deref())?;
            let theta = theta_arg(&rips.theta, &model)?;
            let d = rips.d.unwrap_or_else(|| (4 * model.slim.hops()).max(1));
            let p = build_rips(&model.graph, &model.dist, d, &theta, rips.cap)?;
            let stats = complex_stats(&p, rips.cap)?;
            emit(out.as_deref(), &p, &json!({ "d": d, "stats": stats }))?;
            Ok(true)
        }
        RipsCommand::Contract { rips, subcomplex, out } => {
            let model = rips_model(&rips.inst.graph, rips.inst.action.as_deref())?;
            let theta = theta_arg(&rips.theta, &model)?;
            let d = rips.d.unwrap_or_else(|| (4 * model.slim.hops()).max(1));
            let setting =
                RipsSetting { graph: &model.graph, dist: &model.dist, d, theta: &theta, theta3: &model.theta3, slim: &model.slim };
            let k = match subcomplex {
                Some(p) => input(read_json::<SimplicialComplex>(p))?,
                None => build_rips(&model.graph, &model.dist, d, &theta, rips.cap)?,
            };
            let trace = contract_subcomplex(&setting, &k, rips.cap)?;
            let validation = validate_trace(&setting, &k, &trace);
            let l = span_l(&model.graph, &model.dist, d, &theta, &k, rips.cap)?;
            let certificate = homology_certificate(&k, &trace, &l, rips.cap)?;
            let ok = validation.is_ok() && certificate.is_none();
            let report = json!({
                "d": d,
                "moves": trace.moves.len(),
                "final_vertex": trace.final_vertex,
                "valid": validation.is_ok(),
                "invalid_move": validation.err().map(|e| e.to_string()),
                "homology_failure_at_move": certificate,
            });
            emit(out.as_deref(), &trace, &report)?;
            Ok(ok)
        }
        RipsCommand::Homology { complex, rips, max_dim } => {
            let (p, cap) = match (complex, &rips.graph) {
                (Some(path), _) => (input(read_json::<SimplicialComplex>(path))?, rips.cap),
                (None, Some(graph)) => {
                    let model = rips_model(graph, rips.action.as_deref())?;
                    let theta = theta_arg(&rips.theta, &model)?;
                    let d = rips.d.unwrap_or_else(|| (4 * model.slim.hops()).max(1));
                    (build_rips(&model.graph, &model.dist, d, &theta, rips.cap)?, rips.cap)
                }
                (None, None) => {
                    return Err(Failure::Input(Error::Parameter("give --complex or --graph".into())));
                }
            };
            let dim = max_dim.unwrap_or(p.dimension().max(0) as usize);
            let betti = homology_oracle(&p, dim, cap)?;
            let contractible = betti.first() == Some(&1) && betti[1..].iter().all(|&b| b == 0);
            print_json(&json!({ "betti": betti, "acyclic": contractible }));
            Ok(true)
        }
    }
}

fn cmd_battery(inst: &InstanceArgs, trials: u64, theta: Option<&Path>, seed: u64) -> Outcome {
    let inst = load(inst)?;
    let theta0 = match theta {
        Some(p) => input(load_angles(p, &inst.graph))?,
        None => AngleSet::trivial(&inst.graph),
    };
    let r = lemma_battery(&inst.graph, &inst.group, &theta0, trials, seed)?;
    print_json(&r);
    Ok(r.passes())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { inst, max_circuit_len } => cmd_analyze(inst, *max_circuit_len),
        Command::Pipeline { stage, tau_max, path_cap, drop_layer, out } => {
            cmd_pipeline(stage, *tau_max, *path_cap, drop_layer, out.as_deref())
        }
        Command::ExportDot { input, kind, source, target } => cmd_export_dot(input, *kind, *source, *target),
        Command::Cf { command } => cmd_cf(command),
        Command::Cone { command } => cmd_cone(command),
        Command::Cover { command } => cmd_cover(command),
        Command::Rips { command } => cmd_rips(command),
        Command::Battery { inst, trials, theta } => cmd_battery(inst, *trials, theta.as_deref(), cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Stage(e)) => {
            let stage = match &e {
                Error::Stage { stage, .. } => *stage,
                _ => "run",
            };
            print_json(&json!({ "failed_stage": stage, "error": e.to_string() }));
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
