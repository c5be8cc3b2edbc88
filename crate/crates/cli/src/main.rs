use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use dflow::coloring::{
    almost_hamiltonian_flow, avc_flow, coloring_to_flow, find_3_edge_coloring, flow_to_special4,
    hamiltonian_cycle, remainder_coloring, special4_check, special4_to_flow, structure_sets,
};
use dflow::corpus::{self, count_any};
use dflow::existence::{
    bounded_verdict, devos_verdict, obstrd6_check, plane_sided_bridges, Existence,
};
use dflow::flow::{
    count_flows, extend_over_triangle, find_flow, lift, reduce_to_rotation_flow, verify, FlowError,
    DEFAULT_BUDGET,
};
use dflow::graph::{bridges, enumerate_rotation_systems, GraphError};
use dflow::text::{
    parse_any_multigraph, parse_coloring, parse_flow, parse_graph, write_coloring, write_flow,
    write_graph, ParseError,
};
use dflow::{ColoringError, EdgeColoring, EmbeddedGraph, FlowAssignment, GroupContext};

/// Dihedral flows on embedded graphs.
///
/// Graph arguments are a graph file or `@name[:k]` for embedding `k` of a
/// corpus entry. Flow and coloring arguments are files; a missing flow on a
/// corpus graph means its first bundled flow.
#[derive(Parser)]
#[command(name = "dflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Face walks and genus.
    Faces { graph: String },
    /// Bridges and whether each is plane-sided.
    Bridges { graph: String },
    /// Count flows in a context such as D2n:4, Dlt:3 or Zn:5.
    Count {
        graph: String,
        #[arg(long)]
        ctx: GroupContext,
        /// Allow the identity on edges.
        #[arg(long)]
        all: bool,
    },
    /// Print the first flow in enumeration order.
    Find {
        graph: String,
        #[arg(long)]
        ctx: GroupContext,
        #[arg(long)]
        all: bool,
    },
    /// Check a flow.
    Verify {
        graph: String,
        flow: Option<PathBuf>,
        /// Accept flows that use the identity.
        #[arg(long)]
        allow_identity: bool,
    },
    /// Lift a flow mod n to shifts below n.
    Lift {
        graph: String,
        flow: Option<PathBuf>,
    },
    /// Turn a flow mod n into one with rotations only.
    Reduce {
        graph: String,
        flow: Option<PathBuf>,
    },
    /// Find a proper 3-edge-coloring; `--embed` also prints the induced embedding and flow.
    Color3 {
        /// Graph or multigraph file, or `@name`.
        input: String,
        #[arg(long)]
        embed: bool,
    },
    /// Convert to and from a flow with shifts below 2 (the flow is read as
    /// Dlt:2) and check special 4-edge-colorings.
    Special4 {
        #[command(subcommand)]
        action: Special4Action,
    },
    /// Existence of a nowhere-identity flow; D2n:n uses the structural rules,
    /// Dlt:n the bridge obstructions and then search.
    Exists {
        graph: String,
        #[arg(long)]
        group: GroupContext,
        /// Write a witness flow here when one exists.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Bridge obstruction to dihedral 3-flows, confirmed by counting.
    Obstruction { graph: String },
    /// Count table over a range of n.
    Sweep {
        graph: String,
        #[arg(long, value_enum)]
        ctx_family: Family,
        #[arg(long)]
        n_from: u64,
        #[arg(long)]
        n_to: u64,
    },
    /// Enumerate the rotation systems of a multigraph.
    Rotations {
        input: String,
        /// Keep only systems with this many faces.
        #[arg(long)]
        faces: Option<usize>,
        /// Print each kept system as a graph file.
        #[arg(long)]
        emit: bool,
    },
    /// Vertices and edges usable by the snark constructions.
    Structure { graph: String },
    /// Flow with shifts below 4 built from a Hamiltonian cycle missing a vertex,
    /// or from a coloring of the graph minus an edge and its ends.
    Snark {
        graph: String,
        #[arg(long, conflicts_with = "edge", required_unless_present = "edge")]
        vertex: Option<usize>,
        #[arg(long)]
        edge: Option<usize>,
    },
    /// Replace a vertex by a triangle and extend a flow with shifts below n.
    Triangle {
        graph: String,
        flow: Option<PathBuf>,
        #[arg(long)]
        vertex: usize,
    },
    /// Built-in examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum Special4Action {
    Check {
        graph: String,
        coloring: PathBuf,
    },
    FromFlow {
        graph: String,
        flow: Option<PathBuf>,
    },
    ToFlow {
        graph: String,
        coloring: PathBuf,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    /// Print an entry as a graph file, followed by its bundled flows.
    Emit {
        name: String,
        #[arg(long)]
        flows: bool,
    },
    /// Re-check every entry; `--counts` also recounts the bundled counts.
    Check {
        #[arg(long)]
        counts: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "D2n")]
    Mod,
    #[value(name = "Dlt")]
    Bounded,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Failed(_) => 4,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Flow(f) => f.into(),
            ParseError::Graph(g) => g.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::ComplexityGuard { .. } => CliError::Guard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FlowError> for CliError {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::ComplexityGuard { .. } => CliError::Guard(e.to_string()),
            FlowError::Graph(g) => g.into(),
            FlowError::Algebra(_) | FlowError::EdgeCountMismatch { .. } => {
                CliError::Input(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::Graph(g) => g.into(),
            ColoringError::Flow(f) => f.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Output text and the exit status of the decision, if any.
struct Outcome {
    text: String,
    yes: bool,
}

impl Outcome {
    fn done(text: String) -> Self {
        Outcome { text, yes: true }
    }

    fn decided(text: String, yes: bool) -> Self {
        Outcome { text, yes }
    }
}

struct Graph {
    g: EmbeddedGraph,
    flows: Vec<FlowAssignment>,
}

fn load_graph(arg: &str) -> Result<Graph, CliError> {
    if let Some(spec) = arg.strip_prefix('@') {
        let (name, k) = match spec.split_once(':') {
            Some((name, k)) => (
                name,
                k.parse::<usize>()
                    .map_err(|_| CliError::Input(format!("bad embedding index {k:?}")))?,
            ),
            None => (spec, 1),
        };
        let entry = corpus::corpus_entry(name)
            .ok_or_else(|| CliError::Input(format!("no corpus entry {name:?}")))?;
        let g = entry
            .embeddings
            .get(k.wrapping_sub(1))
            .ok_or_else(|| {
                CliError::Input(format!(
                    "{name} has embeddings 1..={}",
                    entry.embeddings.len()
                ))
            })?
            .clone();
        let flows = if k == 1 { entry.flows } else { Vec::new() };
        return Ok(Graph { g, flows });
    }
    Ok(Graph {
        g: parse_graph(&read(arg)?)?,
        flows: Vec::new(),
    })
}

fn read(path: impl AsRef<std::path::Path>) -> Result<String, CliError> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_flow(graph: &Graph, path: &Option<PathBuf>) -> Result<FlowAssignment, CliError> {
    match path {
        Some(p) => Ok(parse_flow(&read(p)?)?.1),
        None => graph.flows.first().cloned().ok_or_else(|| {
            CliError::Input("no flow given and the graph has no bundled flow".into())
        }),
    }
}

fn load_coloring(path: &PathBuf) -> Result<EdgeColoring, CliError> {
    Ok(parse_coloring(&read(path)?)?.1)
}

fn budget() -> Result<u128, CliError> {
    match std::env::var("DFLOW_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("DFLOW_BUDGET={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(items: &[usize]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut out = String::new();
    match cli.command {
        Command::Faces { graph } => {
            let g = load_graph(&graph)?.g;
            let faces = g.faces();
            writeln!(
                out,
                "vertices={} edges={} faces={} genus={}",
                g.vertex_count(),
                g.edge_count(),
                faces.count(),
                faces.genus
            )
            .unwrap();
            for (i, f) in faces.faces.iter().enumerate() {
                writeln!(
                    out,
                    "face {i}: {}",
                    f.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                )
                .unwrap();
            }
            Ok(Outcome::done(out))
        }
        Command::Bridges { graph } => {
            let g = load_graph(&graph)?.g;
            let all = bridges(&g.underlying());
            let plane = plane_sided_bridges(&g);
            for e in &all {
                writeln!(out, "bridge {e} plane_sided={}", yn(plane.contains(e))).unwrap();
            }
            writeln!(out, "bridges={} plane_sided={}", all.len(), plane.len()).unwrap();
            Ok(Outcome::done(out))
        }
        Command::Count { graph, ctx, all } => {
            let g = load_graph(&graph)?.g;
            let n = if all {
                count_flows(&g, ctx, false, budget()?)?
            } else {
                count_any(&g, ctx, budget()?)?
            };
            writeln!(out, "count={n}").unwrap();
            Ok(Outcome::done(out))
        }
        Command::Find { graph, ctx, all } => {
            let g = load_graph(&graph)?.g;
            match find_flow(&g, ctx, !all, budget()?)? {
                Some(f) => Ok(Outcome::decided(write_flow(g.name(), &f), true)),
                None => Ok(Outcome::decided("found=no\n".into(), false)),
            }
        }
        Command::Verify {
            graph,
            flow,
            allow_identity,
        } => {
            let graph = load_graph(&graph)?;
            let f = load_flow(&graph, &flow)?;
            let report = verify(&graph.g, &f)?;
            writeln!(out, "{report}").unwrap();
            let ok = report.is_flow() && (allow_identity || report.is_nowhere_identity());
            Ok(Outcome::decided(out, ok))
        }
        Command::Lift { graph, flow } => {
            let graph = load_graph(&graph)?;
            let f = load_flow(&graph, &flow)?;
            match lift(&graph.g, &f)? {
                Some(h) => Ok(Outcome::decided(write_flow(graph.g.name(), &h), true)),
                None => Ok(Outcome::decided("lift=no\n".into(), false)),
            }
        }
        Command::Reduce { graph, flow } => {
            let graph = load_graph(&graph)?;
            let f = load_flow(&graph, &flow)?;
            match reduce_to_rotation_flow(&graph.g, &f) {
                Ok(h) => Ok(Outcome::decided(write_flow(graph.g.name(), &h), true)),
                Err(FlowError::Blocked { edges, reason }) => {
                    writeln!(out, "blocked reason={reason} edges={}", join(&edges)).unwrap();
                    Ok(Outcome::decided(out, false))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Color3 { input, embed } => {
            let (name, mg) = if input.starts_with('@') {
                let g = load_graph(&input)?.g;
                (g.name().to_string(), g.underlying())
            } else {
                parse_any_multigraph(&read(&input)?)?
            };
            match find_3_edge_coloring(&mg)? {
                Some(c) => {
                    out.push_str(&write_coloring(&name, &c));
                    if embed {
                        let (g, f) = coloring_to_flow(&mg, &c)?;
                        let g = g.with_name(name.clone());
                        out.push_str(&write_graph(&g));
                        out.push_str(&write_flow(&name, &f));
                    }
                    Ok(Outcome::decided(out, true))
                }
                None => Ok(Outcome::decided("colorable=no\n".into(), false)),
            }
        }
        Command::Special4 { action } => match action {
            Special4Action::Check { graph, coloring } => {
                let g = load_graph(&graph)?.g;
                let c = load_coloring(&coloring)?;
                match special4_check(&g, &c) {
                    Ok(()) => Ok(Outcome::decided("special=yes\n".into(), true)),
                    Err(ColoringError::NotSpecial { edge, tail, head }) => {
                        writeln!(out, "special=no edge={edge} vertices={tail},{head}").unwrap();
                        Ok(Outcome::decided(out, false))
                    }
                    Err(ColoringError::Improper(v)) => {
                        writeln!(out, "special=no vertex={v}").unwrap();
                        Ok(Outcome::decided(out, false))
                    }
                    Err(e) => Err(e.into()),
                }
            }
            Special4Action::FromFlow { graph, flow } => {
                let graph = load_graph(&graph)?;
                let f = load_flow(&graph, &flow)?;
                let c = flow_to_special4(&graph.g, &f)?;
                Ok(Outcome::done(write_coloring(graph.g.name(), &c)))
            }
            Special4Action::ToFlow { graph, coloring } => {
                let g = load_graph(&graph)?.g;
                let c = load_coloring(&coloring)?;
                let f = special4_to_flow(&g, &c)?;
                Ok(Outcome::done(write_flow(g.name(), &f)))
            }
        },
        Command::Exists {
            graph,
            group,
            witness,
        } => {
            let g = load_graph(&graph)?.g;
            let budget = budget()?;
            let verdict = match group {
                GroupContext::DihedralMod(n) => devos_verdict(&g, n, budget)?,
                GroupContext::DihedralBounded(n) => bounded_verdict(&g, n, budget)?,
                other => {
                    return Err(CliError::Input(format!(
                        "exists takes D2n:n or Dlt:n, not {other}"
                    )))
                }
            };
            writeln!(out, "{verdict}").unwrap();
            if let (Some(path), Existence::Yes) = (witness, verdict.exists) {
                let f = find_flow(&g, group, true, budget)?.ok_or_else(|| {
                    CliError::Failed("verdict says yes but search found nothing".into())
                })?;
                std::fs::write(&path, write_flow(g.name(), &f))
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                writeln!(out, "witness={}", path.display()).unwrap();
            }
            match verdict.exists {
                Existence::Unknown => Err(CliError::Guard(out.trim_end().to_string())),
                e => Ok(Outcome::decided(out, e == Existence::Yes)),
            }
        }
        Command::Obstruction { graph } => {
            let g = load_graph(&graph)?.g;
            let report = obstrd6_check(&g, budget()?)?;
            writeln!(out, "{report}").unwrap();
            Ok(Outcome::decided(out, report.holds))
        }
        Command::Sweep {
            graph,
            ctx_family,
            n_from,
            n_to,
        } => {
            let g = load_graph(&graph)?.g;
            let budget = budget()?;
            for n in n_from..=n_to {
                let ctx = match ctx_family {
                    Family::Mod => GroupContext::dihedral_mod(n),
                    Family::Bounded => GroupContext::dihedral_bounded(n),
                }
                .map_err(|e| CliError::Input(e.to_string()))?;
                writeln!(out, "n={n} ctx={ctx} count={}", count_any(&g, ctx, budget)?).unwrap();
            }
            Ok(Outcome::done(out))
        }
        Command::Rotations { input, faces, emit } => {
            let (name, mg) = if input.starts_with('@') {
                let g = load_graph(&input)?.g;
                (g.name().to_string(), g.underlying())
            } else {
                parse_any_multigraph(&read(&input)?)?
            };
            let systems = enumerate_rotation_systems(&mg, &name)?;
            let total = systems.total();
            let mut kept = 0;
            for (i, g) in systems.enumerate() {
                let f = g.faces();
                if faces.is_some_and(|k| k != f.count()) {
                    continue;
                }
                kept += 1;
                writeln!(
                    out,
                    "system {} faces={} genus={}",
                    i + 1,
                    f.count(),
                    f.genus
                )
                .unwrap();
                if emit {
                    out.push_str(&write_graph(&g));
                }
            }
            writeln!(out, "systems={total} kept={kept}").unwrap();
            Ok(Outcome::done(out))
        }
        Command::Structure { graph } => {
            let g = load_graph(&graph)?.g;
            let s = structure_sets(&g)?;
            writeln!(out, "almost_hamiltonian={}", join(&s.almost_hamiltonian)).unwrap();
            writeln!(out, "simple_vertices={}", join(&s.simple_vertices)).unwrap();
            writeln!(out, "avc_edges={}", join(&s.avc_edges)).unwrap();
            writeln!(out, "simple_edges={}", join(&s.simple_edges)).unwrap();
            Ok(Outcome::done(out))
        }
        Command::Snark {
            graph,
            vertex,
            edge,
        } => {
            let g = load_graph(&graph)?.g;
            let f = match (vertex, edge) {
                (Some(v), _) => {
                    g.check_vertex(v)?;
                    let h = hamiltonian_cycle(&g.underlying(), Some(v)).ok_or_else(|| {
                        CliError::Failed(format!("graph minus vertex {v} is not Hamiltonian"))
                    })?;
                    almost_hamiltonian_flow(&g, v, &h)?
                }
                (None, Some(e)) => {
                    let c = remainder_coloring(&g, e)?.ok_or_else(|| {
                        CliError::Failed(format!(
                            "graph minus the ends of edge {e} is not 3-edge-colorable"
                        ))
                    })?;
                    avc_flow(&g, e, &c)?
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            Ok(Outcome::done(write_flow(g.name(), &f)))
        }
        Command::Triangle {
            graph,
            flow,
            vertex,
        } => {
            let graph = load_graph(&graph)?;
            let f = load_flow(&graph, &flow)?;
            let (yd, h) = extend_over_triangle(&graph.g, &f, vertex)?;
            out.push_str(&write_graph(&yd.graph));
            out.push_str(&write_flow(yd.graph.name(), &h));
            Ok(Outcome::done(out))
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for e in corpus::corpus() {
                    let g = e.graph();
                    writeln!(
                        out,
                        "{} vertices={} edges={} faces={} genus={} embeddings={} flows={}",
                        e.name,
                        g.vertex_count(),
                        g.edge_count(),
                        e.expected.faces,
                        e.expected.genus,
                        e.embeddings.len(),
                        e.flows.len()
                    )
                    .unwrap();
                }
                Ok(Outcome::done(out))
            }
            CorpusAction::Emit { name, flows } => {
                let graph = load_graph(&format!("@{name}"))?;
                out.push_str(&write_graph(&graph.g));
                if flows {
                    for f in &graph.flows {
                        out.push_str(&write_flow(graph.g.name(), f));
                    }
                }
                Ok(Outcome::done(out))
            }
            CorpusAction::Check { counts } => {
                let mut all_ok = true;
                for e in corpus::corpus() {
                    let mismatches = if counts {
                        e.check_counts(budget()?)?
                    } else {
                        Vec::new()
                    };
                    for m in &mismatches {
                        writeln!(
                            out,
                            "{} embedding={} ctx={} expected={} found={}",
                            e.name, m.embedding, m.ctx, m.expected, m.found
                        )
                        .unwrap();
                    }
                    all_ok &= mismatches.is_empty();
                    writeln!(out, "{} ok={}", e.name, yn(mismatches.is_empty())).unwrap();
                }
                Ok(Outcome::decided(out, all_ok))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(if o.yes { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
