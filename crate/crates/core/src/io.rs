//! JSON documents for games and graphs, DOT output, and JSON renderings of
//! reports and catalog entries.
//!
//! A game document:
//!
//! ```json
//! {"shape": [2, 2],
//!  "payoffs": {"p1": [["1", "-1"], ["-1", "1"]], "p2": [["-1", "1"], ["1", "-1"]]},
//!  "strategy_names": {"p1": ["H", "T"], "p2": ["H", "T"]}}
//! ```
//!
//! Payoffs are strings in the forms `"3"`, `"-1.25"`, `"7/2"`, or JSON
//! numbers. `strategy_names` is optional. A graph document is
//! `{"nodes": ["a", ...], "arcs": [["a", "b"], ...]}`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::analysis::Cycle;
use crate::classification::{ClassificationReport, GraphClassification, PreferenceWitness};
use crate::enumeration::ClassEntry;
use crate::game::{Game, GameError, Player, Profile, Shape};
use crate::graph::{ResponseGraph, WeightedResponseGraph};
use crate::reconstruction::{GridLabeling, RawGraph, RawGraphError};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("ParseError at {locus}: {message}")]
    Parse { locus: String, message: String },
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("DuplicateArc: `{0}` -> `{1}` listed more than once")]
    DuplicateArc(String, String),
}

fn parse_error(locus: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Parse {
        locus: locus.into(),
        message: message.into(),
    }
}

fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| {
        parse_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn object<'a>(value: &'a Value, locus: &str) -> Result<&'a Map<String, Value>, IoError> {
    value
        .as_object()
        .ok_or_else(|| parse_error(locus, "expected an object"))
}

fn array<'a>(value: &'a Value, locus: &str) -> Result<&'a Vec<Value>, IoError> {
    value
        .as_array()
        .ok_or_else(|| parse_error(locus, "expected an array"))
}

fn field<'a>(map: &'a Map<String, Value>, key: &str, locus: &str) -> Result<&'a Value, IoError> {
    map.get(key)
        .ok_or_else(|| parse_error(locus, format!("missing field `{key}`")))
}

fn string<'a>(value: &'a Value, locus: &str) -> Result<&'a str, IoError> {
    value
        .as_str()
        .ok_or_else(|| parse_error(locus, "expected a string"))
}

/// Per-player strategy names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyNames {
    pub p1: Vec<String>,
    pub p2: Vec<String>,
}

impl StrategyNames {
    pub fn get(&self, player: Player) -> &[String] {
        match player {
            Player::One => &self.p1,
            Player::Two => &self.p2,
        }
    }
}

/// A parsed game document.
#[derive(Debug, Clone, PartialEq)]
pub struct GameDocument {
    pub game: Game<Rational>,
    pub names: Option<StrategyNames>,
}

fn payoff_table(value: &Value, shape: Shape, locus: &str) -> Result<Vec<Vec<Rational>>, IoError> {
    let rows = array(value, locus)?;
    if rows.len() != shape.rows {
        return Err(IoError::ShapeMismatch(format!(
            "{locus} has {} rows, shape says {}",
            rows.len(),
            shape.rows
        )));
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let locus = format!("{locus}[{r}]");
            let cells = array(row, &locus)?;
            if cells.len() != shape.cols {
                return Err(parse_error(
                    &locus,
                    format!(
                        "ragged row: {} entries, shape says {}",
                        cells.len(),
                        shape.cols
                    ),
                ));
            }
            cells
                .iter()
                .enumerate()
                .map(|(c, cell)| {
                    let locus = format!("{locus}[{c}]");
                    let text = match cell {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => {
                            return Err(parse_error(&locus, "expected a rational string or number"))
                        }
                    };
                    parse_rational(&text).map_err(|e| parse_error(&locus, e.to_string()))
                })
                .collect()
        })
        .collect()
}

fn name_list(value: &Value, expected: usize, locus: &str) -> Result<Vec<String>, IoError> {
    let items = array(value, locus)?;
    if items.len() != expected {
        return Err(IoError::ShapeMismatch(format!(
            "{locus} has {} names for {expected} strategies",
            items.len()
        )));
    }
    items
        .iter()
        .enumerate()
        .map(|(k, v)| string(v, &format!("{locus}[{k}]")).map(str::to_string))
        .collect()
}

pub fn parse_game_document(text: &str) -> Result<GameDocument, IoError> {
    let root = parse_json(text)?;
    let doc = object(&root, "document")?;
    let shape_value = array(field(doc, "shape", "document")?, "shape")?;
    let dims: Vec<usize> = shape_value
        .iter()
        .enumerate()
        .map(|(k, v)| {
            v.as_u64()
                .filter(|&d| d > 0)
                .map(|d| d as usize)
                .ok_or_else(|| parse_error(format!("shape[{k}]"), "expected a positive integer"))
        })
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        return Err(parse_error("shape", "expected [rows, cols]"));
    };
    let shape = Shape::new(rows, cols);
    let payoffs = object(field(doc, "payoffs", "document")?, "payoffs")?;
    let u1 = payoff_table(field(payoffs, "p1", "payoffs")?, shape, "payoffs.p1")?;
    let u2 = payoff_table(field(payoffs, "p2", "payoffs")?, shape, "payoffs.p2")?;
    let game = Game::new(u1, u2).map_err(|e: GameError| IoError::ShapeMismatch(e.to_string()))?;
    let names = match doc.get("strategy_names") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let names = object(v, "strategy_names")?;
            Some(StrategyNames {
                p1: name_list(
                    field(names, "p1", "strategy_names")?,
                    rows,
                    "strategy_names.p1",
                )?,
                p2: name_list(
                    field(names, "p2", "strategy_names")?,
                    cols,
                    "strategy_names.p2",
                )?,
            })
        }
    };
    Ok(GameDocument { game, names })
}

pub fn parse_game(text: &str) -> Result<Game<Rational>, IoError> {
    parse_game_document(text).map(|d| d.game)
}

fn table_json(game: &Game<Rational>, player: Player) -> Value {
    Value::Array(
        game.table(player)
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|v| Value::String(format_rational(v)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn game_document_json(game: &Game<Rational>, names: Option<&StrategyNames>) -> Value {
    let shape = game.shape();
    let mut doc = json!({
        "shape": [shape.rows, shape.cols],
        "payoffs": {"p1": table_json(game, Player::One), "p2": table_json(game, Player::Two)},
    });
    if let Some(n) = names {
        doc["strategy_names"] = json!({"p1": n.p1, "p2": n.p2});
    }
    doc
}

pub fn emit_game(game: &Game<Rational>, names: Option<&StrategyNames>) -> String {
    pretty(&game_document_json(game, names))
}

pub fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}

pub fn parse_graph(text: &str) -> Result<RawGraph, IoError> {
    let root = parse_json(text)?;
    let doc = object(&root, "document")?;
    let nodes = array(field(doc, "nodes", "document")?, "nodes")?
        .iter()
        .enumerate()
        .map(|(k, v)| string(v, &format!("nodes[{k}]")).map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;
    let arcs = array(field(doc, "arcs", "document")?, "arcs")?
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let locus = format!("arcs[{k}]");
            match array(v, &locus)?.as_slice() {
                [a, b] => Ok((
                    string(a, &locus)?.to_string(),
                    string(b, &locus)?.to_string(),
                )),
                _ => Err(parse_error(&locus, "expected [from, to]")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    RawGraph::new(nodes, arcs).map_err(|e| match e {
        RawGraphError::DuplicateArc(a, b) => IoError::DuplicateArc(a, b),
        RawGraphError::DuplicateNode(id) => {
            parse_error("nodes", format!("duplicate node id `{id}`"))
        }
        RawGraphError::UnknownNode(id) => parse_error("arcs", format!("unknown node id `{id}`")),
        RawGraphError::SelfLoop(id) => parse_error("arcs", format!("self-loop on `{id}`")),
    })
}

/// Graph document with `"row,col"` node ids.
pub fn graph_document_json(graph: &ResponseGraph) -> Value {
    let shape = graph.shape();
    json!({
        "nodes": shape.profiles().map(|p| p.to_string()).collect::<Vec<_>>(),
        "arcs": graph.arcs().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
    })
}

/// Graph document whose arcs carry `u_i(to) - u_i(from)` as a third entry.
pub fn weighted_graph_json(graph: &WeightedResponseGraph<Rational>) -> Value {
    let mut doc = graph_document_json(graph.graph());
    doc["arcs"] = graph
        .graph()
        .arcs()
        .iter()
        .map(|&(a, b)| {
            json!([
                a.to_string(),
                b.to_string(),
                format_rational(graph.weight(a, b).unwrap())
            ])
        })
        .collect();
    doc
}

/// Either kind of input document.
#[derive(Debug, Clone)]
pub enum InputDocument {
    Game(GameDocument),
    Graph(RawGraph),
}

/// Game documents have `payoffs`, graph documents have `arcs`.
pub fn parse_input(text: &str) -> Result<InputDocument, IoError> {
    let root = parse_json(text)?;
    let doc = object(&root, "document")?;
    if doc.contains_key("payoffs") {
        parse_game_document(text).map(InputDocument::Game)
    } else if doc.contains_key("arcs") {
        parse_graph(text).map(InputDocument::Graph)
    } else {
        Err(parse_error(
            "document",
            "neither a game (`payoffs`) nor a graph (`arcs`) document",
        ))
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot(graph: &ResponseGraph, label: impl Fn(Profile, Profile) -> Option<String>) -> String {
    let shape = graph.shape();
    let mut out = String::from("digraph response {\n");
    for p in shape.profiles() {
        let _ = writeln!(out, "  \"{p}\" [label=\"{}\"];", dot_escape(&p.to_string()));
    }
    for (a, b) in graph.arcs() {
        let undirected = graph.is_undirected(a, b);
        if undirected && b < a {
            continue;
        }
        let mut attrs = Vec::new();
        if undirected {
            attrs.push("dir=none".to_string());
        }
        if let Some(l) = label(a, b) {
            attrs.push(format!("label=\"{}\"", dot_escape(&l)));
        }
        let attrs = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        let _ = writeln!(out, "  \"{a}\" -> \"{b}\"{attrs};");
    }
    out.push_str("}\n");
    out
}

/// DOT rendering: strict arcs directed, undirected edges once with
/// `dir=none`, nodes labelled `"row,col"`.
pub fn emit_dot(graph: &ResponseGraph) -> String {
    dot(graph, |_, _| None)
}

pub fn emit_weighted_dot(graph: &WeightedResponseGraph<Rational>) -> String {
    dot(graph.graph(), |a, b| {
        graph.weight(a, b).map(format_rational)
    })
}

fn profile_json(p: Profile) -> Value {
    json!([p.row, p.col])
}

fn profiles_json(ps: &[Profile]) -> Value {
    Value::Array(ps.iter().copied().map(profile_json).collect())
}

fn cycle_json(c: &Cycle) -> Value {
    profiles_json(c.nodes())
}

fn grid<T>(shape: Shape, value: impl Fn(Profile) -> T) -> Vec<Vec<T>> {
    (0..shape.rows)
        .map(|r| (0..shape.cols).map(|c| value(Profile::new(r, c))).collect())
        .collect()
}

fn witness_json(w: &PreferenceWitness, shape: Shape) -> Value {
    match w {
        PreferenceWitness::Potential(phi) => json!({
            "holds": true,
            "ordinal_potential": grid(shape, |p| phi.value(p)),
        }),
        PreferenceWitness::StrictCycle(c) => json!({"holds": false, "cycle": cycle_json(c)}),
    }
}

/// Fields that depend only on the response graph.
pub fn graph_classification_json(c: &GraphClassification) -> Value {
    let e = &c.elimination;
    let patterns: Map<String, Value> = c
        .pattern_counts()
        .into_iter()
        .map(|(forms, n)| (forms.to_string(), json!(n)))
        .collect();
    let participation: Map<String, Value> = c
        .participation
        .iter()
        .map(|(s, subs)| {
            let list = subs
                .iter()
                .map(|x| json!({"rows": x.rows, "cols": x.cols, "forms": x.forms}))
                .collect::<Vec<_>>();
            (s.to_string(), Value::Array(list))
        })
        .collect();
    json!({
        "shape": [c.shape.rows, c.shape.cols],
        "generic": c.generic,
        "preference_potential": witness_json(&c.preference_potential, c.shape),
        "preference_zero_sum": witness_json(&c.preference_zero_sum, c.shape),
        "dominance_solvable": e.is_dominance_solvable(),
        "elimination": e.steps,
        "surviving": {"p1": e.rows, "p2": e.cols},
        "sinks": {
            "count": c.sinks.sink_components.len(),
            "components": c.sinks.sink_components.iter().map(|s| profiles_json(s)).collect::<Vec<_>>(),
            "pure_nash": profiles_json(&c.sinks.pure_nash),
        },
        "patterns": patterns,
        "mp_co_participation": participation,
    })
}

pub fn report_json(report: &ClassificationReport<Rational>) -> Value {
    let mut v = graph_classification_json(&report.graph);
    let shape = report.graph.shape;
    v["strategically_potential"] = match &report.strategic_potential {
        Some(phi) => {
            json!({"holds": true, "potential": grid(shape, |p| format_rational(phi.value(p)))})
        }
        None => json!({"holds": false}),
    };
    v["strategically_zero_sum"] = json!(report.strategically_zero_sum);
    v
}

/// Node id to profile, for reports on graph input.
pub fn labeling_json(graph: &RawGraph, labeling: &GridLabeling) -> Value {
    let map: Map<String, Value> = graph
        .nodes()
        .iter()
        .enumerate()
        .map(|(k, id)| (id.clone(), profile_json(labeling.profile_of(k))))
        .collect();
    Value::Object(map)
}

/// One catalog line: canonical form and headline classification.
pub fn catalog_line(entry: &ClassEntry) -> String {
    let c = &entry.classification;
    let v = json!({
        "form": entry.form.to_hex(),
        "shape": [entry.form.shape().rows, entry.form.shape().cols],
        "nondominated": entry.nondominated,
        "category": entry.category(),
        "preference_potential": c.is_preference_potential(),
        "preference_zero_sum": c.is_preference_zero_sum(),
        "dominance_solvable": c.is_dominance_solvable(),
        "sink_components": c.sinks.sink_components.len(),
        "pure_nash": c.sinks.pure_nash.len(),
    });
    serde_json::to_string(&v).expect("JSON values always serialize")
}
