//! `wgraph`: analyses of weighted graphs from the command line.
//!
//! Every command prints JSON except `render`, which prints DOT. Exit codes:
//! 0 when the answer is decided, 1 on input errors, 2 when a search ran out
//! of budget and the answer stays open.

mod input;
mod library;
mod render;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wgraph::moves::BirationalSequence;
use wgraph::notation::format_short;
use wgraph::testgen::random_diagram;
use wgraph::{
    apply, canonical_key, check_graph_lemma, discriminant, dominate, enumerate_minimal_models,
    has_unique_minimal_model, inertia, is_admissible_mod_earrings, is_contractible,
    is_surface_rigid, minimal_model, relatively_minimize, segments, standard_form,
    triangulate_circular, validate, Budget, Error, Shape, StandardForm, ValidateOptions,
    WeightedGraph,
};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    /// Graph objects as in the input documents.
    Json,
    /// Bracket shorthand for chains and cycles, objects otherwise.
    Short,
}

#[derive(Parser)]
#[command(
    name = "wgraph",
    version,
    about = "Blowups, minimal models and rigidity of weighted graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// How graphs appear in the output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Short)]
    format: Format,
    /// Blowdown order: smallest, largest, random, or a comma list of ids.
    #[arg(long, global = true, default_value = "smallest")]
    policy: String,
    /// Seed for random policies and generated diagrams.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Elementary transformations applied by the enumeration pump.
    #[arg(long, global = true)]
    pump: Option<usize>,
    /// Vertex cap for the enumeration search.
    #[arg(long = "max-size", global = true)]
    max_size: Option<usize>,
    /// Number of model classes reported before truncating.
    #[arg(long = "max-results", global = true)]
    max_results: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks; `--surface` adds the boundary-divisor conditions.
    Validate {
        graph: String,
        #[arg(long)]
        surface: bool,
    },
    /// Sizes, inertia, discriminant, branching set and segments.
    Info { graph: String },
    /// Contracts at-most-linear (−1)-vertices until minimal.
    MinimalModel { graph: String },
    /// Surface and birational rigidity with witnesses.
    Rigid { graph: String },
    /// Whether the minimal model is unique up to isomorphism.
    UniqueMinimal { graph: String },
    /// Minimal models in the birational class, within the budget.
    Enumerate { graph: String },
    /// Standard form of a minimal chain or cycle with the reducing sequence.
    StandardForm { graph: String },
    /// Triangulation of a circular graph, if one exists.
    Triangulate { graph: String },
    /// Replays a sequence of moves.
    Apply { graph: String, sequence: String },
    /// Common domination of a chain of contractions.
    Dominate {
        chain: String,
        /// Peel (−1)-vertices contracted on both sides.
        #[arg(long)]
        minimize: bool,
    },
    /// Graph Lemma clauses for a diagram, or for a random one over a graph.
    CheckGraphLemma {
        input: String,
        /// Blowups used when generating a diagram from a graph.
        #[arg(long, default_value_t = 4)]
        blowups: usize,
    },
    /// DOT rendering.
    Render { graph: String },
    /// The built-in examples, or their verification.
    Examples {
        #[arg(long)]
        verify: bool,
    },
}

enum Outcome {
    Json(Value),
    Open(Value),
    Text(String),
    /// Decided, but negatively for a self-check.
    Failed(Value),
}

struct Ctx {
    format: Format,
}

impl Ctx {
    fn graph(&self, g: &WeightedGraph) -> Value {
        match (self.format, format_short(g)) {
            (Format::Short, Some(s)) => json!(s),
            _ => serde_json::to_value(g).expect("graph serializes"),
        }
    }

    /// Standard forms read zeros first, which the generic shorthand may reverse.
    fn standard(&self, sf: &StandardForm) -> Value {
        if matches!(self.format, Format::Json) {
            return self.graph(&sf.graph);
        }
        let ws: Vec<String> = std::iter::repeat_n(0, sf.zeros)
            .chain(sf.tail.iter().copied())
            .map(|w| w.to_string())
            .collect();
        match sf.shape {
            Shape::Linear => json!(format!("[[{}]]", ws.join(","))),
            Shape::Circular => json!(format!("(({}))", ws.join(","))),
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    let d = Budget::default();
    Budget {
        max_weight_pump: cli.pump.unwrap_or(d.max_weight_pump),
        max_graph_size: cli.max_size.unwrap_or(d.max_graph_size),
        max_results: cli.max_results.unwrap_or(d.max_results),
        max_nodes: d.max_nodes,
    }
}

fn end_of(g: &WeightedGraph, seq: &BirationalSequence) -> Result<WeightedGraph> {
    Ok(apply(g, seq)?.pop().expect("trace includes the start"))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cx = Ctx { format: cli.format };
    Ok(match &cli.command {
        Command::Validate { graph, surface } => {
            let g = input::graph(graph)?;
            let opts = if *surface {
                ValidateOptions::surface()
            } else {
                ValidateOptions::default()
            };
            let violations = validate(&g, &opts);
            Outcome::Json(json!({"valid": violations.is_empty(), "violations": violations}))
        }
        Command::Info { graph } => {
            let g = input::graph(graph)?;
            let i = inertia(&g);
            let contractible = if g.is_connected() {
                Some(is_contractible(&g)?)
            } else {
                None
            };
            Outcome::Json(json!({
                "graph": cx.graph(&g),
                "vertices": g.len(),
                "edges": g.edge_count(),
                "weight_sum": g.total_weight(),
                "connected": g.is_connected(),
                "tree": g.is_tree(),
                "minimal": g.is_minimal(),
                "contractible": contractible,
                "inertia": {"plus": i.plus, "minus": i.minus, "zero": i.zero},
                "discriminant": discriminant(&g).to_string(),
                "branching": g.branching_set(),
                "segments": segments(&g),
                "canonical_key": canonical_key(&g),
            }))
        }
        Command::MinimalModel { graph } => {
            let g = input::graph(graph)?;
            let policy = input::policy(&cli.policy, &g, cli.seed)?;
            let (m, p) = minimal_model(&g, &policy)?;
            Outcome::Json(
                json!({"model": cx.graph(&m), "blowdowns": p.blowdown_order(), "sequence": p.seq}),
            )
        }
        Command::Rigid { graph } => {
            let g = input::graph(graph)?;
            let v = is_surface_rigid(&g)?;
            let a1_end = match &v.a1_sequence {
                Some(seq) => Some(cx.graph(&end_of(&g, seq)?)),
                None => None,
            };
            let mut out = serde_json::to_value(&v)?;
            out["a1_end"] = json!(a1_end);
            Outcome::Json(out)
        }
        Command::UniqueMinimal { graph } => {
            let g = input::graph(graph)?;
            Outcome::Json(json!({
                "unique": has_unique_minimal_model(&g)?,
                "admissible_mod_earrings": is_admissible_mod_earrings(&g)?,
            }))
        }
        Command::Enumerate { graph } => {
            let g = input::graph(graph)?;
            let e = enumerate_minimal_models(&g, &budget(cli))?;
            let out = json!({
                "classes": e.classes.len(),
                "complete": e.complete,
                "search_closed": e.search_closed,
                "truncated": e.truncated,
                "visited": e.visited,
                "models": e.classes.iter().map(|c| cx.graph(&c.graph)).collect::<Vec<_>>(),
            });
            if e.complete {
                Outcome::Json(out)
            } else {
                Outcome::Open(out)
            }
        }
        Command::StandardForm { graph } => {
            let g = input::graph(graph)?;
            match standard_form(&g) {
                Ok(sf) => Outcome::Json(json!({
                    "shape": sf.shape,
                    "zeros": sf.zeros,
                    "tail": sf.tail,
                    "graph": cx.standard(&sf),
                    "reduction": sf.reduction,
                })),
                Err(Error::Stalled(msg)) => Outcome::Open(json!({"error": msg})),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Triangulate { graph } => {
            let g = input::graph(graph)?;
            let t = triangulate_circular(&g)?;
            Outcome::Json(json!({"triangulable": t.is_some(), "triangulation": t}))
        }
        Command::Apply { graph, sequence } => {
            let g = input::graph(graph)?;
            let (seq, end) = BirationalSequence::record(&g, &input::steps(sequence)?)?;
            let trace = apply(&g, &seq)?;
            Outcome::Json(json!({
                "end": cx.graph(&end),
                "trace": trace.iter().map(|h| cx.graph(h)).collect::<Vec<_>>(),
                "sequence": seq,
            }))
        }
        Command::Dominate { chain, minimize } => {
            let mut d = dominate(&input::chain(chain)?)?;
            if *minimize {
                d = relatively_minimize(&d)?;
            }
            let (a, b) = d.ends();
            Outcome::Json(json!({
                "top": cx.graph(&d.top),
                "ends": [cx.graph(&a), cx.graph(&b)],
                "p1": d.p1.blowdown_order(),
                "p2": d.p2.blowdown_order(),
                "relatively_minimal": d.is_relatively_minimal(),
            }))
        }
        Command::CheckGraphLemma {
            input: arg,
            blowups,
        } => {
            let text = input::read_arg(arg)?;
            let d = match input::diagram_doc(&text) {
                Ok(d) => d,
                Err(doc_err) => {
                    let g = wgraph::parse(text.trim()).map_err(|_| doc_err)?;
                    random_diagram(&mut ChaCha8Rng::seed_from_u64(cli.seed), &g, *blowups)?
                }
            };
            let r = check_graph_lemma(&d)?;
            Outcome::Json(json!({
                "pass": r.pass(),
                "report": r,
                "top": cx.graph(&d.top),
                "p1": d.p1.blowdown_order(),
                "p2": d.p2.blowdown_order(),
            }))
        }
        Command::Render { graph } => Outcome::Text(render::dot(&input::graph(graph)?)),
        Command::Examples { verify } => {
            if *verify {
                let (checked, bad) = library::verify();
                let out = json!({"checked": checked, "mismatches": bad});
                if bad.is_empty() {
                    Outcome::Json(out)
                } else {
                    Outcome::Failed(out)
                }
            } else {
                Outcome::Json(serde_json::to_value(library::entries())?)
            }
        }
    })
}

/// The error chain, skipping causes their parent already quotes.
fn message(e: &anyhow::Error) -> String {
    let mut out = e.to_string();
    for cause in e.chain().skip(1) {
        let text = cause.to_string();
        if !out.contains(&text) {
            out = format!("{out}: {text}");
        }
    }
    out
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(Outcome::Json(v)) => (format!("{v}\n"), 0),
        Ok(Outcome::Text(s)) => (s, 0),
        Ok(Outcome::Open(v)) => (format!("{v}\n"), 2),
        Ok(Outcome::Failed(v)) => (format!("{v}\n"), 1),
        Err(e) => (format!("{}\n", json!({"error": message(&e)})), 1),
    };
    emit(&text);
    ExitCode::from(code)
}
