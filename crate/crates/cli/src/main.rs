use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use respgraph::enumeration::{catalog, census_of, enumerate_generic, verify_forms};
use respgraph::io::{
    catalog_line, emit_dot, emit_game, emit_weighted_dot, graph_classification_json,
    graph_document_json, labeling_json, parse_game_document, parse_graph, parse_input, pretty,
    report_json, weighted_graph_json, InputDocument, IoError,
};
use respgraph::reconstruction::{reconstruct, Reconstruction};
use respgraph::{classify, Player, RawGraph, ResponseGraph, Shape, WeightedResponseGraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "respgraph",
    version,
    about = "Response graphs of two-player normal-form games"
)]
struct Cli {
    /// Cap on worker threads for parallel work.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the response graph of a game as a graph document.
    Build {
        game: PathBuf,
        /// Also write a DOT rendering to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Label arcs with payoff differences.
        #[arg(long)]
        weighted: bool,
    },
    /// Classify a game or graph document.
    Classify {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a game whose response graph is the given graph.
    Reconstruct {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List sink components and pure Nash equilibria.
    Sinks { input: PathBuf },
    /// Negate one player's payoffs (reverse that player's arcs).
    Reflect {
        input: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        player: u8,
    },
    /// Negate both players' payoffs (reverse every arc).
    Reverse { input: PathBuf },
    /// Enumerate generic response graphs of a shape up to isomorphism.
    Enumerate {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        /// Keep only classes without strictly dominated strategies.
        #[arg(long)]
        nondominated: bool,
        /// Print census statistics instead of the class list.
        #[arg(long)]
        census: bool,
        /// Census as JSON.
        #[arg(long, requires = "census")]
        json: bool,
        /// Write one JSON line per class to this path.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Check the structural claims on every generic class of a shape.
    Verify {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
    },
}

fn parse_shape(text: &str) -> Result<Shape, String> {
    let (n, m) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got `{text}`"))?;
    let dim = |s: &str| match s.trim().parse::<usize>() {
        Ok(d) if d > 0 => Ok(d),
        _ => Err(format!("`{s}` is not a positive integer")),
    };
    Ok(Shape::new(dim(n)?, dim(m)?))
}

/// Exit code 2: bad input or usage, as opposed to a domain failure.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())).into())
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load(path: &Path) -> Result<InputDocument> {
    Ok(parse_input(&read(path)?)?)
}

/// Graph input, labelled onto a grid.
fn labelled(raw: &RawGraph) -> Result<Reconstruction> {
    Ok(reconstruct(raw)?)
}

/// Graph document of `graph` with the node ids of `raw`.
fn relabelled_document(raw: &RawGraph, r: &Reconstruction, graph: &ResponseGraph) -> Value {
    let id = |p| raw.nodes()[r.labeling.node_of(p)].clone();
    let mut arcs: Vec<(usize, usize, String, String)> = graph
        .arcs()
        .into_iter()
        .map(|(a, b)| (r.labeling.node_of(a), r.labeling.node_of(b), id(a), id(b)))
        .collect();
    arcs.sort();
    json!({
        "nodes": raw.nodes(),
        "arcs": arcs.into_iter().map(|(_, _, a, b)| [a, b]).collect::<Vec<_>>(),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn profiles(ps: &[respgraph::Profile]) -> String {
    if ps.is_empty() {
        return "none".to_string();
    }
    ps.iter()
        .map(|p| format!("({p})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_classification(c: &respgraph::GraphClassification) {
    println!(
        "shape {}, {}",
        c.shape,
        if c.generic { "generic" } else { "non-generic" }
    );
    match c.preference_potential.cycle() {
        None => println!("preference-potential: yes"),
        Some(cycle) => println!(
            "preference-potential: no (cycle {})",
            profiles(cycle.nodes())
        ),
    }
    match c.preference_zero_sum.cycle() {
        None => println!("preference-zero-sum: yes"),
        Some(cycle) => println!(
            "preference-zero-sum: no (reflected cycle {})",
            profiles(cycle.nodes())
        ),
    }
    let e = &c.elimination;
    println!(
        "dominance-solvable: {} (survivors p1 {:?}, p2 {:?})",
        yes_no(e.is_dominance_solvable()),
        e.rows,
        e.cols
    );
    println!("sink components: {}", c.sinks.sink_components.len());
    for s in &c.sinks.sink_components {
        println!("  {}", profiles(s));
    }
    println!("pure Nash: {}", profiles(&c.sinks.pure_nash));
    for (forms, n) in c.pattern_counts() {
        println!("2x2 subgames {forms}: {n}");
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build {
            game,
            dot,
            weighted,
        } => {
            let doc = parse_game_document(&read(&game)?)?;
            let w = WeightedResponseGraph::from_game(&doc.game);
            let json = if weighted {
                weighted_graph_json(&w)
            } else {
                graph_document_json(w.graph())
            };
            println!("{}", pretty(&json));
            if let Some(path) = dot {
                let text = if weighted {
                    emit_weighted_dot(&w)
                } else {
                    emit_dot(w.graph())
                };
                write(&path, &text)?;
            }
        }
        Command::Classify { input, json } => match load(&input)? {
            InputDocument::Game(doc) => {
                let report = classify(&doc.game);
                if json {
                    println!("{}", pretty(&report_json(&report)));
                } else {
                    print_classification(&report.graph);
                    println!(
                        "strategically potential: {}",
                        yes_no(report.is_strategically_potential())
                    );
                    println!(
                        "strategically zero-sum: {}",
                        yes_no(report.strategically_zero_sum)
                    );
                }
            }
            InputDocument::Graph(raw) => {
                let r = labelled(&raw)?;
                let report = classify(&r.game);
                if json {
                    let mut v = graph_classification_json(&report.graph);
                    v["labeling"] = labeling_json(&raw, &r.labeling);
                    println!("{}", pretty(&v));
                } else {
                    print_classification(&report.graph);
                }
            }
        },
        Command::Reconstruct { graph, out } => {
            let raw = parse_graph(&read(&graph)?)?;
            let r = labelled(&raw)?;
            let text = emit_game(&r.game, None);
            match out {
                Some(path) => write(&path, &text)?,
                None => println!("{text}"),
            }
        }
        Command::Sinks { input } => {
            let (graph, name): (ResponseGraph, Box<dyn Fn(respgraph::Profile) -> String>) =
                match load(&input)? {
                    InputDocument::Game(doc) => (
                        ResponseGraph::from_game(&doc.game),
                        Box::new(|p| format!("({p})")),
                    ),
                    InputDocument::Graph(raw) => {
                        let r = labelled(&raw)?;
                        let ids: Vec<String> = r
                            .graph
                            .shape()
                            .profiles()
                            .map(|p| raw.nodes()[r.labeling.node_of(p)].clone())
                            .collect();
                        let shape = r.graph.shape();
                        (r.graph, Box::new(move |p| ids[shape.index(p)].clone()))
                    }
                };
            let report = respgraph::sink_components(&graph);
            println!("sink components: {}", report.sink_components.len());
            for s in &report.sink_components {
                println!(
                    "  {}",
                    s.iter().map(|&p| name(p)).collect::<Vec<_>>().join(" ")
                );
            }
            let nash: Vec<String> = report.pure_nash.iter().map(|&p| name(p)).collect();
            println!(
                "pure Nash: {}",
                if nash.is_empty() {
                    "none".to_string()
                } else {
                    nash.join(" ")
                }
            );
        }
        Command::Reflect { input, player } => {
            let player = Player::from_number(player).expect("clap restricts the range");
            transform(&input, |g| g.reflect(player), |g| g.reflect(player))?;
        }
        Command::Reverse { input } => transform(&input, |g| g.reverse(), |g| g.reverse())?,
        Command::Enumerate {
            shape,
            nondominated,
            census,
            json,
            catalog: catalog_path,
        } => {
            let mut entries = catalog(shape)?;
            if census {
                let c = census_of(shape, &entries);
                if json {
                    println!("{}", pretty(&serde_json::to_value(&c)?));
                } else {
                    println!("{c}");
                }
            }
            if nondominated {
                entries.retain(|e| e.nondominated);
            }
            if let Some(path) = catalog_path {
                let mut text = String::new();
                for e in &entries {
                    text.push_str(&catalog_line(e));
                    text.push('\n');
                }
                write(&path, &text)?;
            }
            if !census {
                for e in &entries {
                    println!("{}", e.form.to_hex());
                }
            }
        }
        Command::Verify { shape } => {
            let report = verify_forms(&enumerate_generic(shape)?);
            println!("{}", pretty(&serde_json::to_value(&report)?));
            if !report.passed() {
                bail!(
                    "{} counterexamples, {} invalid inputs",
                    report.counterexamples.len(),
                    report.invalid_inputs.len()
                );
            }
        }
    }
    Ok(())
}

/// Applies a payoff negation to a game document, or the matching arc
/// reversal to a graph document (keeping its node ids).
fn transform(
    input: &Path,
    on_game: impl Fn(&respgraph::RationalGame) -> respgraph::RationalGame,
    on_graph: impl Fn(&ResponseGraph) -> ResponseGraph,
) -> Result<()> {
    match load(input)? {
        InputDocument::Game(doc) => {
            println!("{}", emit_game(&on_game(&doc.game), doc.names.as_ref()))
        }
        InputDocument::Graph(raw) => {
            let r = labelled(&raw)?;
            println!(
                "{}",
                pretty(&relabelled_document(&raw, &r, &on_graph(&r.graph)))
            );
        }
    }
    Ok(())
}

/// 2 for unreadable or malformed input, 1 for everything else
/// (`NotHamming`, `ShapeTooLarge`, failed verification, ...).
fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<UsageError>() || err.is::<IoError>() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
