//! Command-line front end. `run` never exits the process; it returns the
//! exit status (0 ok, 1 negative verdict under `--expect`, 2 on errors).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::flex::{angle_grid, build_flex, export_frames, verify_flex, Point, VerifyOptions};
use crate::graph::cayley_graph;
use crate::group::{subgroup_closure, Capacity, GeneratorSet, GroupDescriptor, DEFAULT_CAPACITY};
use crate::io::export::{bounding_box, to_dot, to_svg};
use crate::io::{frame_from_json, graph_to_json, read_coloring, read_graph, to_canonical_string, ColoringJson, FrameJson, GraphJson};
use crate::nac::{search_nac, verdict, SearchMode, SearchOptions, DEFAULT_BUDGET, DEFAULT_MAX_EXHAUSTIVE_EDGES};
use crate::rigidity::{classify, Classification, ClassifyOptions};
use crate::theorems::{
    abelian_family, check_flexible_condition, check_movable_condition, check_pairwise_trivial, check_partition_condition,
    dense_abelian_family, family_capacity, regularity_construction, sl_family, sl_pair_product_family, sl_product_family,
    AbelianSpec, FamilyInstance, SlVariant,
};

#[derive(Debug, Parser)]
#[command(name = "rigidcay", version, about = "Flexibility and movability of Cayley graphs")]
pub struct Cli {
    /// Element-count cap for constructed groups (overrides RIGIDCAY_CAPACITY).
    #[arg(long, global = true)]
    pub capacity: Option<usize>,
    /// Seed for all randomness (flex anchor perturbation).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, commutativity, and subgroup closure of a group.
    Group(GroupArgs),
    /// Build a Cayley graph and write it as graph JSON.
    Cayley(CayleyArgs),
    /// Check a coloring for the NAC and good-NAC properties.
    CheckNac(CheckNacArgs),
    /// Search for NAC-colorings.
    SearchNac(SearchNacArgs),
    /// Rigid / flexible / movable classification report.
    Classify(ClassifyArgs),
    /// Subgroup-intersection conditions on a generating set.
    TheoremCheck(TheoremArgs),
    /// Emit a movable family instance with its good NAC-coloring.
    Family(FamilyArgs),
    /// Build and verify a flex from a NAC-coloring, optionally writing frames.
    Flex(FlexArgs),
    /// Convert graph JSON to DOT or SVG.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// e.g. `cyclic:12`, `product:(cyclic:4,cyclic:3)`, `sl:2:3`
    #[arg(long)]
    pub group: GroupDescriptor,
    /// Comma separated elements whose generated subgroup is reported.
    #[arg(long)]
    pub closure: Option<String>,
}

#[derive(Debug, Args)]
pub struct CayleyArgs {
    #[arg(long)]
    pub group: GroupDescriptor,
    /// Generators; closed under inversion before building.
    #[arg(long)]
    pub gens: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NacExpectation {
    Nac,
    Good,
}

#[derive(Debug, Args)]
pub struct CheckNacArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long, value_enum)]
    pub expect: Option<NacExpectation>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    FirstAny,
    FirstGood,
    CountAll,
    EnumerateAll,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::FirstAny => SearchMode::FirstAny,
            ModeArg::FirstGood => SearchMode::FirstGood,
            ModeArg::CountAll => SearchMode::CountAll,
            ModeArg::EnumerateAll => SearchMode::EnumerateAll,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SearchExpectation {
    Found,
    None,
}

#[derive(Debug, Args)]
pub struct SearchNacArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "first-any")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Edge limit for count-all / enumerate-all.
    #[arg(long, default_value_t = DEFAULT_MAX_EXHAUSTIVE_EDGES)]
    pub max_exhaustive_edges: usize,
    #[arg(long, value_enum)]
    pub expect: Option<SearchExpectation>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ClassExpectation {
    Rigid,
    Flexible,
    Movable,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// `flexible` also accepts movable graphs, since movable implies flexible.
    #[arg(long, value_enum)]
    pub expect: Option<ClassExpectation>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConditionExpectation {
    Flexible,
    Movable,
    Pairwise,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("check").required(true).args(["s", "partition", "pairwise"])))]
pub struct TheoremArgs {
    #[arg(long)]
    pub group: GroupDescriptor,
    /// The generating set S.
    #[arg(long)]
    pub gens: String,
    /// Single generator s for the {s, s⁻¹} versus rest split.
    #[arg(long)]
    pub s: Option<String>,
    /// Subset S1 for the S1 versus S \ (S1 ∪ S1⁻¹) split.
    #[arg(long)]
    pub partition: Option<String>,
    /// Pairwise trivial intersection of cyclic subgroups.
    #[arg(long)]
    pub pairwise: bool,
    #[arg(long, value_enum)]
    pub expect: Option<ConditionExpectation>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyName {
    AbelianPower,
    AbelianCrt,
    AbelianInvolution,
    Dense,
    SlElementary,
    SlTriangular,
    SlProduct,
    Regularity,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub name: FamilyName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Comma separated moduli for abelian-crt / abelian-involution.
    #[arg(long)]
    pub moduli: Option<String>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Second factor for sl-product, instead of `--k`.
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long)]
    pub p2: Option<u32>,
    /// Also write graph.json and coloring.json here.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FlexArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Number of frames written to `--out-dir`.
    #[arg(long, default_value_t = 36)]
    pub frames: usize,
    /// Directory for frame_NNN.json (and .svg with `--svg`).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub svg: bool,
    /// Exit 1 unless every check passes.
    #[arg(long)]
    pub expect_pass: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Svg,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub format: ExportFormat,
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Frame JSON with positions; SVG falls back to a circular layout.
    #[arg(long)]
    pub frame: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    out.write_all(to_canonical_string(value)?.as_bytes())?;
    Ok(())
}

fn write_or_emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("missing --{flag}")))
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::InvalidParameter(format!("`{t}` is not a number"))))
        .collect()
}

/// Returns `Ok(false)` when an `--expect` check fails.
fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let capacity = cli.capacity.map(Capacity).unwrap_or_else(|| Capacity::from_env_or(DEFAULT_CAPACITY));
    match &cli.command {
        Command::Group(a) => {
            let group = a.group.build(capacity)?;
            let mut report = json!({
                "group": group.descriptor().to_string(),
                "order": group.order(),
                "is_abelian": group.is_abelian(),
            });
            if let Some(text) = &a.closure {
                let seed = GeneratorSet::parse(&group, text)?;
                let closure = subgroup_closure(&group, seed.iter());
                report["closure_order"] = json!(closure.len());
                report["closure"] = json!(closure.iter().map(|&g| group.element_label(g)).collect::<Vec<_>>());
                report["generates"] = json!(closure.len() == group.order());
            }
            emit(out, &report)?;
            Ok(true)
        }
        Command::Cayley(a) => {
            let group = a.group.build(capacity)?;
            let gens = GeneratorSet::parse(&group, &a.gens)?.symmetric_closure();
            let cayley = cayley_graph(&gens)?;
            write_or_emit(out, a.out.as_deref(), &graph_to_json(&cayley.graph)?)?;
            Ok(true)
        }
        Command::CheckNac(a) => {
            let graph = read_graph(&a.graph)?;
            let coloring = read_coloring(&graph, &a.coloring)?;
            let v = verdict(&graph, &coloring)?;
            emit(out, &v)?;
            Ok(match a.expect {
                None => true,
                Some(NacExpectation::Nac) => v.is_nac,
                Some(NacExpectation::Good) => v.is_good,
            })
        }
        Command::SearchNac(a) => {
            let graph = read_graph(&a.graph)?;
            let mut options = SearchOptions::new(a.mode.into()).budget(a.budget).workers(a.workers);
            options.max_exhaustive_edges = a.max_exhaustive_edges;
            let outcome = search_nac(&graph, &options)?;
            let mut report = serde_json::to_value(&outcome)?;
            report["colorings"] = json!(outcome
                .colorings
                .iter()
                .map(|c| ColoringJson::from_coloring(&graph, c))
                .collect::<Vec<_>>());
            emit(out, &report)?;
            let found = !outcome.colorings.is_empty() || outcome.nac_count > 0;
            Ok(match a.expect {
                None => true,
                Some(SearchExpectation::Found) => found,
                Some(SearchExpectation::None) => !found && outcome.complete,
            })
        }
        Command::Classify(a) => {
            let graph = read_graph(&a.graph)?;
            let report = classify(&graph, &ClassifyOptions { budget: a.budget, workers: a.workers })?;
            emit(out, &report)?;
            Ok(match a.expect {
                None => true,
                Some(ClassExpectation::Rigid) => report.classification == Classification::Rigid,
                Some(ClassExpectation::Movable) => report.classification == Classification::Movable,
                Some(ClassExpectation::Flexible) => report.nac_exists,
            })
        }
        Command::TheoremCheck(a) => theorem_check(a, capacity, out),
        Command::Family(a) => {
            let capacity = cli.capacity.map(Capacity).unwrap_or_else(family_capacity);
            let instance = build_family(a, capacity)?;
            let graph = GraphJson::from_graph(&instance.graph);
            let coloring = ColoringJson::from_coloring(&instance.graph, &instance.coloring);
            if let Some(dir) = &a.out_dir {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("graph.json"), to_canonical_string(&graph)?)?;
                std::fs::write(dir.join("coloring.json"), to_canonical_string(&coloring)?)?;
            }
            let group = instance.group();
            let labels = |set: &[crate::group::GroupElement]| set.iter().map(|&g| group.element_label(g)).collect::<Vec<_>>();
            emit(
                out,
                &json!({
                    "family_name": instance.family_name,
                    "group": group.descriptor().to_string(),
                    "predicted": instance.predicted,
                    "actual": instance.actual(),
                    "generators": instance.cayley.generators.labels(),
                    "blue_class": labels(&instance.blue_class),
                    "red_class": labels(&instance.red_class),
                    "conditions": instance.conditions,
                    "graph": graph,
                    "coloring": coloring,
                }),
            )?;
            Ok(true)
        }
        Command::Flex(a) => {
            let graph = read_graph(&a.graph)?;
            let coloring = read_coloring(&graph, &a.coloring)?;
            let realization = build_flex(&graph, &coloring)?;
            let report = verify_flex(
                &realization,
                &VerifyOptions {
                    sample_count: a.samples,
                    tolerance: a.tolerance,
                    seed: cli.seed,
                    ..VerifyOptions::default()
                },
            )?;
            if let Some(dir) = &a.out_dir {
                std::fs::create_dir_all(dir)?;
                let frames = export_frames(&report.realization, &angle_grid(a.frames))?;
                let viewport = bounding_box(frames.iter().map(|f| f.positions.as_slice()));
                for (i, frame) in frames.iter().enumerate() {
                    std::fs::write(
                        dir.join(format!("frame_{i:03}.json")),
                        to_canonical_string(&FrameJson::from_frame(frame))?,
                    )?;
                    if a.svg {
                        std::fs::write(
                            dir.join(format!("frame_{i:03}.svg")),
                            to_svg(&graph, &frame.positions, Some(&coloring), viewport),
                        )?;
                    }
                }
            }
            emit(out, &report)?;
            Ok(!a.expect_pass || report.passed)
        }
        Command::Export(a) => {
            let graph = read_graph(&a.graph)?;
            let coloring = a.coloring.as_deref().map(|p| read_coloring(&graph, p)).transpose()?;
            let text = match a.format {
                ExportFormat::Dot => to_dot(&graph, coloring.as_ref()),
                ExportFormat::Svg => {
                    let positions = match &a.frame {
                        Some(path) => {
                            let positions = frame_from_json(&std::fs::read_to_string(path)?)?.positions()?;
                            if positions.len() != graph.vertex_count() {
                                return Err(Error::Validation(format!(
                                    "frame has {} positions, graph has {} vertices",
                                    positions.len(),
                                    graph.vertex_count()
                                )));
                            }
                            positions
                        }
                        None => circle_layout(graph.vertex_count()),
                    };
                    to_svg(&graph, &positions, coloring.as_ref(), bounding_box([positions.as_slice()]))
                }
            };
            write_or_emit(out, a.out.as_deref(), &text)?;
            Ok(true)
        }
    }
}

fn circle_layout(n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n.max(1) as f64;
            [t.cos(), t.sin()]
        })
        .collect()
}

fn theorem_check(a: &TheoremArgs, capacity: Capacity, out: &mut dyn Write) -> Result<bool> {
    let group = a.group.build(capacity)?;
    let set: Vec<_> = GeneratorSet::parse(&group, &a.gens)?.iter().collect();
    let (flexible, movable, pairwise) = if let Some(s) = &a.s {
        let s = group.parse_element(s)?;
        let f = check_flexible_condition(&group, &set, s)?;
        let m = check_movable_condition(&group, &set, s)?;
        (Some(f), Some(m), None)
    } else if let Some(part) = &a.partition {
        let part: Vec<_> = GeneratorSet::parse(&group, part)?.iter().collect();
        let r = check_partition_condition(&group, &set, &part)?;
        (Some(r.flexible), Some(r.movable), None)
    } else {
        (None, None, Some(check_pairwise_trivial(&group, &set)?))
    };
    emit(
        out,
        &json!({
            "group": group.descriptor().to_string(),
            "generators": set.iter().map(|&g| group.element_label(g)).collect::<Vec<_>>(),
            "flexible": flexible,
            "movable": movable,
            "pairwise": pairwise,
        }),
    )?;
    let holds = |r: &Option<crate::theorems::ConditionReport>| r.as_ref().is_some_and(|r| r.holds);
    Ok(match a.expect {
        None => true,
        Some(ConditionExpectation::Flexible) => holds(&flexible),
        Some(ConditionExpectation::Movable) => holds(&movable),
        Some(ConditionExpectation::Pairwise) => holds(&pairwise),
    })
}

fn build_family(a: &FamilyArgs, capacity: Capacity) -> Result<FamilyInstance> {
    match a.name {
        FamilyName::AbelianPower => abelian_family(
            &AbelianSpec::Power { q: need(a.q, "q")?, alpha: need(a.alpha, "alpha")? },
            capacity,
        ),
        FamilyName::AbelianCrt => abelian_family(&AbelianSpec::Crt(parse_list(need(a.moduli.as_deref(), "moduli")?)?), capacity),
        FamilyName::AbelianInvolution => abelian_family(
            &AbelianSpec::WithInvolution(parse_list(need(a.moduli.as_deref(), "moduli")?)?),
            capacity,
        ),
        FamilyName::Dense => dense_abelian_family(need(a.n, "n")?, a.k.unwrap_or(1), capacity),
        FamilyName::SlElementary => sl_family(need(a.n, "n")?, need(a.p, "p")?, SlVariant::Elementary, capacity),
        FamilyName::SlTriangular => sl_family(need(a.n, "n")?, need(a.p, "p")?, SlVariant::Triangular, capacity),
        FamilyName::SlProduct => {
            let (n, p) = (need(a.n, "n")?, need(a.p, "p")?);
            match (a.n2, a.k) {
                (Some(n2), _) => sl_pair_product_family((n, p), (n2, a.p2.unwrap_or(p)), capacity),
                (None, Some(k)) => sl_product_family(n, p, k as u32, capacity),
                (None, None) => Err(Error::InvalidParameter("sl-product needs --k or --n2".into())),
            }
        }
        FamilyName::Regularity => regularity_construction(need(a.r, "r")?, capacity),
    }
}
