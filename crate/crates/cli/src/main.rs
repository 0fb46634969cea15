//! `secgraph` — JSON-in, JSON-out command line for graph homology, covering
//! construction, section enumeration and the finite-descent checker.
//!
//! Exit codes: 0 on success, 2 when the input fails validation, 1 when an
//! internal invariant breaks (which indicates a bug or an inconsistent
//! oracle, not bad input).

mod report;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use secgraph_core::covers::{build_cover, derive_factor_witness, h1_transfer_rank, SubgroupRep};
use secgraph_core::descent::{
    adelic_nonempty, fin_descent_nonempty, rational_point_witness, CurveDescription,
    DescentVerdict,
};
use secgraph_core::sections::{
    are_conjugate, brute_force_cocycles, check_section, sections_enumerate, SectionData,
};
use secgraph_core::{Error as CoreError, Graph, GraphAction};

use report::*;

#[derive(Parser)]
#[command(name = "secgraph", version, about = "sections and descent on finite graphs")]
struct Cli {
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph validation, components and homology.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Shorthand for `graph homology`.
    #[command(hide = true)]
    Homology(GraphArgs),
    /// Covering graphs from coset permutation representations.
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
    /// Section enumeration, checking, conjugacy and brute-force search.
    Sections {
        #[command(subcommand)]
        command: SectionsCommand,
    },
    /// Finite-descent decisions on curve descriptions.
    Descent {
        #[command(subcommand)]
        command: DescentCommand,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file (JSON).
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Check the graph invariants.
    Validate(GraphArgs),
    /// Connected components with their edges.
    Components(GraphArgs),
    /// Reduced homology ranks.
    Homology(GraphArgs),
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Build the cover of a connected graph from a subgroup representation.
    Build {
        #[arg(long)]
        graph: PathBuf,
        /// Subgroup representation file (JSON).
        #[arg(long)]
        rep: PathBuf,
        /// Write the full cover (graph, projection, lifts) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of the induced map on cycle spaces along a tower.
    Transfer {
        #[arg(long)]
        graph: PathBuf,
        /// Lower-stage subgroup representation.
        #[arg(long)]
        rep: PathBuf,
        /// Higher-stage subgroup representation.
        #[arg(long)]
        higher: PathBuf,
        /// Coset surjection file {"map": [...]}; derived when omitted.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Also report the rank with Z/m coefficients.
        #[arg(long)]
        modulus: Option<u64>,
    },
}

#[derive(Args)]
struct ActionArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Action file (JSON): group table plus vertex and edge permutations.
    #[arg(long)]
    action: PathBuf,
}

#[derive(Subcommand)]
enum SectionsCommand {
    /// One section class per fixed component.
    Enumerate {
        #[command(flatten)]
        target: ActionArgs,
        /// Basepoint vertex; least vertex id when omitted.
        #[arg(long)]
        basepoint: Option<usize>,
    },
    /// Verify the cocycle law for a section file.
    Check {
        #[command(flatten)]
        target: ActionArgs,
        #[arg(long)]
        section: PathBuf,
    },
    /// Decide conjugacy of two section files, producing a witness loop.
    Conjugate {
        #[command(flatten)]
        target: ActionArgs,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Exhaustive cocycle search up to a word length.
    Brute {
        #[command(flatten)]
        target: ActionArgs,
        #[arg(long)]
        basepoint: Option<usize>,
        #[arg(long = "max-len")]
        max_len: usize,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// Curve description file (JSON).
    #[arg(long)]
    curve: PathBuf,
}

#[derive(Subcommand)]
enum DescentCommand {
    /// Adelic and finite-descent emptiness plus the verdict tag.
    Check(CurveArgs),
    /// Full verdict with the rational-point witness and local evidence.
    Witness(CurveArgs),
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        Failure { code: if e.is_internal() { 1 } else { 2 }, message: e.to_string() }
    }
}

macro_rules! core_failure {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Failure {
                Failure::from(CoreError::from(e))
            }
        }
    )*};
}

core_failure!(
    secgraph_core::GraphViolation,
    secgraph_core::GraphMapViolation,
    secgraph_core::PathError,
    secgraph_core::GroupViolation,
    secgraph_core::ActionViolation,
    secgraph_core::CoverError,
    secgraph_core::SectionError,
    secgraph_core::DescentError
);

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("malformed {what} file {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let graph: Graph = read_json(path, "graph")?;
    graph.validate()?;
    Ok(graph)
}

fn load_action(graph: &Graph, path: &Path) -> Result<GraphAction, Failure> {
    let action: GraphAction = read_json(path, "action")?;
    action.validate(graph)?;
    Ok(action)
}

fn least_vertex(graph: &Graph) -> Result<usize, Failure> {
    graph.vertices.iter().copied().min().ok_or_else(|| Failure::input("graph has no vertices"))
}

struct Output {
    json: String,
    code: i32,
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("report serialization")
    } else {
        serde_json::to_string(value).expect("report serialization")
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let pretty = cli.pretty;
    let ok = |report: &dyn erased::Report| Output { json: report.render(pretty), code: 0 };
    match &cli.command {
        Command::Graph { command: GraphCommand::Validate(args) } => {
            let graph: Graph = read_json(&args.graph, "graph")?;
            match graph.validate() {
                Ok(()) => Ok(ok(&ValidateReport { ok: true, violation: None })),
                Err(violation) => Ok(Output {
                    json: to_json(
                        &ValidateReport { ok: false, violation: Some(violation.to_string()) },
                        pretty,
                    ),
                    code: 2,
                }),
            }
        }
        Command::Graph { command: GraphCommand::Components(args) } => {
            let graph = load_graph(&args.graph)?;
            Ok(ok(&ComponentsReport { components: graph.components() }))
        }
        Command::Graph { command: GraphCommand::Homology(args) } | Command::Homology(args) => {
            let graph = load_graph(&args.graph)?;
            let (b0_reduced, b1) = graph.reduced_betti();
            Ok(ok(&HomologyReport { b0_reduced, b1 }))
        }
        Command::Cover { command: CoverCommand::Build { graph, rep, out } } => {
            let graph = load_graph(graph)?;
            let rep: SubgroupRep = read_json(rep, "subgroup representation")?;
            let forest = graph.spanning_forest();
            let result = build_cover(&graph, &forest, &rep)?;
            if let Some(out) = out {
                fs::write(out, to_json(&result, true)).map_err(|e| {
                    Failure::input(format!("cannot write {}: {e}", out.display()))
                })?;
            }
            let (_, b1) = result.cover.reduced_betti();
            Ok(ok(&CoverBuildReport {
                degree: rep.degree,
                vertices: result.cover.vertex_count(),
                edges: result.cover.edge_count(),
                b1,
                covering: result.projection.is_covering(),
            }))
        }
        Command::Cover {
            command: CoverCommand::Transfer { graph, rep, higher, witness, modulus },
        } => {
            let graph = load_graph(graph)?;
            let lower_rep: SubgroupRep = read_json(rep, "subgroup representation")?;
            let higher_rep: SubgroupRep = read_json(higher, "subgroup representation")?;
            let forest = graph.spanning_forest();
            let lower = build_cover(&graph, &forest, &lower_rep)?;
            let higher = build_cover(&graph, &forest, &higher_rep)?;
            let map = match witness {
                Some(path) => read_json::<WitnessFile>(path, "witness")?.map,
                None => derive_factor_witness(&graph, &forest, &lower_rep, &higher_rep)
                    .ok_or_else(|| {
                        Failure::input(
                            "no factorization: higher representation does not refine the lower one",
                        )
                    })?,
            };
            let rank = h1_transfer_rank(&lower, &higher, &map)?;
            Ok(ok(&TransferReport {
                rank: rank.rank(),
                rank_mod: modulus.map(|m| rank.rank_mod(m)),
                elementary_divisors: rank.divisors,
                modulus: *modulus,
            }))
        }
        Command::Sections { command: SectionsCommand::Enumerate { target, basepoint } } => {
            let graph = load_graph(&target.graph)?;
            let action = load_action(&graph, &target.action)?;
            let basepoint = match basepoint {
                Some(v) => *v,
                None => least_vertex(&graph)?,
            };
            let classes = sections_enumerate(&graph, &action, basepoint)?;
            Ok(ok(&EnumerateReport {
                classes: classes
                    .iter()
                    .map(|class| ClassReport {
                        component: class.component,
                        fixed_vertex: class.fixed_vertex,
                        alphas: SectionData::from_section(&class.section).alphas,
                    })
                    .collect(),
            }))
        }
        Command::Sections { command: SectionsCommand::Check { target, section } } => {
            let graph = load_graph(&target.graph)?;
            let action = load_action(&graph, &target.action)?;
            let data: SectionData = read_json(section, "section")?;
            let section = data.to_section(&graph, action.group.order())?;
            Ok(ok(&match check_section(&graph, &action, &section) {
                Ok(()) => SectionCheckReport { is_section: true, violation: None },
                Err(e) => {
                    SectionCheckReport { is_section: false, violation: Some(e.to_string()) }
                }
            }))
        }
        Command::Sections { command: SectionsCommand::Conjugate { target, left, right } } => {
            let graph = load_graph(&target.graph)?;
            let action = load_action(&graph, &target.action)?;
            let order = action.group.order();
            let left = read_json::<SectionData>(left, "section")?.to_section(&graph, order)?;
            let right = read_json::<SectionData>(right, "section")?.to_section(&graph, order)?;
            for s in [&left, &right] {
                check_section(&graph, &action, s)?;
            }
            let witness = are_conjugate(&graph, &action, &left, &right)?;
            Ok(ok(&ConjugateReport {
                conjugate: witness.is_some(),
                witness: witness.map(|w| w.to_string()),
            }))
        }
        Command::Sections { command: SectionsCommand::Brute { target, basepoint, max_len } } => {
            let graph = load_graph(&target.graph)?;
            let action = load_action(&graph, &target.action)?;
            let basepoint = match basepoint {
                Some(v) => *v,
                None => least_vertex(&graph)?,
            };
            let sections = brute_force_cocycles(&graph, &action, basepoint, *max_len)?;
            Ok(ok(&BruteReport {
                count: sections.len(),
                sections: sections
                    .iter()
                    .map(|s| BruteSectionReport {
                        alphas: SectionData::from_section(s).alphas,
                    })
                    .collect(),
            }))
        }
        Command::Descent { command: DescentCommand::Check(args) } => {
            let curve: CurveDescription = read_json(&args.curve, "curve")?;
            curve.validate()?;
            let adelic = adelic_nonempty(&curve)?;
            let fin_descent = fin_descent_nonempty(&curve)?;
            let verdict = rational_point_witness(&curve)?;
            Ok(ok(&DescentCheckReport {
                adelic,
                fin_descent,
                verdict: match verdict {
                    DescentVerdict::NoSection => "NoSection".into(),
                    DescentVerdict::ObstructedEverywhereLocally => {
                        "ObstructedEverywhereLocally".into()
                    }
                    DescentVerdict::RationalPoint { .. } => "RationalPoint".into(),
                },
            }))
        }
        Command::Descent { command: DescentCommand::Witness(args) } => {
            let curve: CurveDescription = read_json(&args.curve, "curve")?;
            curve.validate()?;
            let adelic = adelic_nonempty(&curve)?;
            let fin_descent = fin_descent_nonempty(&curve)?;
            let verdict = rational_point_witness(&curve)?;
            Ok(ok(&DescentWitnessReport { adelic, fin_descent, verdict }))
        }
    }
}

/// File form of a coset surjection for `cover transfer`.
#[derive(serde::Deserialize)]
struct WitnessFile {
    map: Vec<usize>,
}

mod erased {
    /// Object-safe rendering so `run` can hand any report back uniformly.
    pub trait Report {
        fn render(&self, pretty: bool) -> String;
    }

    impl<T: serde::Serialize> Report for T {
        fn render(&self, pretty: bool) -> String {
            super::to_json(self, pretty)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            println!("{}", output.json);
            std::process::exit(output.code);
        }
        Err(failure) => {
            println!("{}", to_json(&ErrorReport { error: failure.message }, cli.pretty));
            std::process::exit(failure.code);
        }
    }
}
