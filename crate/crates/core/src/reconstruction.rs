//! Deciding whether an arbitrary digraph is a response graph and, if so,
//! synthesising a game for it.
//!
//! The underlying undirected graph of an `n x m` response graph is the rook's
//! graph `K_n x K_m`. Recognition picks a base node, splits its neighbourhood
//! into the two cliques it must consist of (its row and its column), lays
//! those out as the first row and column, and then places every other node
//! at the intersection of its unique neighbours in each. The result is
//! checked against the full adjacency afterwards, so any graph that slips
//! through the local steps is still rejected.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::game::{comparable, Game, Player, Profile, Shape};
use crate::graph::{OrientationError, ResponseGraph};
use crate::scalar::{from_small_int, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RawGraphError {
    #[error("node id `{0}` appears more than once")]
    DuplicateNode(String),
    #[error("arc refers to unknown node `{0}`")]
    UnknownNode(String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("arc `{0}` -> `{1}` listed more than once")]
    DuplicateArc(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructionError {
    #[error("NotHamming: underlying graph is not a product of two cliques ({0})")]
    NotHamming(String),
    #[error("MissingArc: comparable nodes `{a}` and `{b}` have no arc")]
    MissingArc { a: String, b: String },
    #[error("NotTotalPreorder: arcs `{a}` -> `{b}` -> `{c}` without `{a}` -> `{c}` on one line")]
    NotTotalPreorder { a: String, b: String, c: String },
}

/// A directed graph with opaque node ids: no self-loops, no repeated arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGraph {
    nodes: Vec<String>,
    arcs: Vec<(usize, usize)>,
}

impl RawGraph {
    pub fn new(
        nodes: Vec<String>,
        arcs: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, RawGraphError> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, id) in nodes.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(RawGraphError::DuplicateNode(id.clone()));
            }
        }
        let lookup = |id: &String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| RawGraphError::UnknownNode(id.clone()))
        };
        let mut seen = BTreeSet::new();
        let mut indexed = Vec::new();
        for (from, to) in arcs {
            let (a, b) = (lookup(&from)?, lookup(&to)?);
            if a == b {
                return Err(RawGraphError::SelfLoop(from));
            }
            if !seen.insert((a, b)) {
                return Err(RawGraphError::DuplicateArc(from, to));
            }
            indexed.push((a, b));
        }
        Ok(RawGraph {
            nodes,
            arcs: indexed,
        })
    }

    /// Nodes named `0..count`.
    pub fn from_indices(
        count: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RawGraphError> {
        RawGraph::new(
            (0..count).map(|i| i.to_string()).collect(),
            arcs.into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string())),
        )
    }

    /// Forgets the grid structure; node ids are `"row,col"`.
    pub fn from_response_graph(graph: &ResponseGraph) -> Self {
        let shape = graph.shape();
        RawGraph {
            nodes: shape.profiles().map(|p| p.to_string()).collect(),
            arcs: graph
                .arcs()
                .into_iter()
                .map(|(a, b)| (shape.index(a), shape.index(b)))
                .collect(),
        }
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Arcs as node-index pairs, in input order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in &self.arcs {
            adj[a][b] = true;
        }
        adj
    }
}

/// Bijection between the nodes of a raw graph and the profiles of a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridLabeling {
    shape: Shape,
    profile_of: Vec<Profile>,
    node_of: Vec<usize>,
}

impl GridLabeling {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn profile_of(&self, node: usize) -> Profile {
        self.profile_of[node]
    }

    pub fn node_of(&self, p: Profile) -> usize {
        self.node_of[self.shape.index(p)]
    }
}

fn not_hamming(reason: impl Into<String>) -> ReconstructionError {
    ReconstructionError::NotHamming(reason.into())
}

/// Finds a labelling of the nodes by grid profiles such that adjacency in
/// the underlying graph is exactly comparability.
///
/// The shape is reported with `rows <= cols`; complete graphs are `1 x k`.
pub fn recognize_hamming(graph: &RawGraph) -> Result<GridLabeling, ReconstructionError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(not_hamming("graph has no nodes"));
    }
    let directed = graph.adjacency();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| directed[i][j] || directed[j][i]).collect())
        .collect();

    let complete = (0..n).all(|i| (0..n).all(|j| i == j || adj[i][j]));
    let (shape, profile_of) = if complete {
        (
            Shape::new(1, n),
            (0..n).map(|i| Profile::new(0, i)).collect(),
        )
    } else {
        grid_labels(&adj)?
    };

    let mut node_of = vec![usize::MAX; n];
    for (v, &p) in profile_of.iter().enumerate() {
        let slot = &mut node_of[shape.index(p)];
        if *slot != usize::MAX {
            return Err(not_hamming(format!("two nodes land on profile {p}")));
        }
        *slot = v;
    }
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] != comparable(profile_of[i], profile_of[j]).is_some() {
                return Err(not_hamming(format!(
                    "adjacency of `{}` and `{}` disagrees with the grid",
                    graph.nodes[i], graph.nodes[j]
                )));
            }
        }
    }
    Ok(GridLabeling {
        shape,
        profile_of,
        node_of,
    })
}

/// Labels a non-complete graph, assuming it is `K_n x K_m` with `n, m >= 2`.
fn grid_labels(adj: &[Vec<bool>]) -> Result<(Shape, Vec<Profile>), ReconstructionError> {
    let n = adj.len();
    let base = 0;
    let neighbourhood: Vec<usize> = (0..n).filter(|&v| adj[base][v]).collect();
    if neighbourhood.is_empty() {
        return Err(not_hamming("graph is disconnected"));
    }
    // connected components of the neighbourhood
    let mut comp = vec![usize::MAX; n];
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for &start in &neighbourhood {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = cliques.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let v = members[k];
            k += 1;
            for &w in &neighbourhood {
                if adj[v][w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        cliques.push(members);
    }
    if cliques.len() != 2 {
        return Err(not_hamming(format!(
            "neighbourhood of the first node splits into {} parts, expected 2",
            cliques.len()
        )));
    }
    for clique in &cliques {
        for (i, &a) in clique.iter().enumerate() {
            if clique[i + 1..].iter().any(|&b| !adj[a][b]) {
                return Err(not_hamming("a neighbourhood part is not a clique"));
            }
        }
    }
    // the larger part is the base node's row, so rows <= cols
    let (row_mates, col_mates) = if cliques[0].len() >= cliques[1].len() {
        (&cliques[0], &cliques[1])
    } else {
        (&cliques[1], &cliques[0])
    };
    let shape = Shape::new(col_mates.len() + 1, row_mates.len() + 1);
    if shape.node_count() != n {
        return Err(not_hamming(format!("{n} nodes cannot form a {shape} grid")));
    }
    let row_line: Vec<usize> = std::iter::once(base)
        .chain(row_mates.iter().copied())
        .collect();
    let col_line: Vec<usize> = std::iter::once(base)
        .chain(col_mates.iter().copied())
        .collect();
    let mut labels = vec![Profile::new(usize::MAX, usize::MAX); n];
    for (c, &v) in row_line.iter().enumerate() {
        labels[v] = Profile::new(0, c);
    }
    for (r, &v) in col_line.iter().enumerate().skip(1) {
        labels[v] = Profile::new(r, 0);
    }
    for v in 0..n {
        if labels[v].row != usize::MAX {
            continue;
        }
        let unique = |line: &[usize]| {
            let hits: Vec<usize> = (0..line.len()).filter(|&k| adj[v][line[k]]).collect();
            (hits.len() == 1).then(|| hits[0])
        };
        match (unique(&col_line), unique(&row_line)) {
            (Some(r), Some(c)) if r > 0 && c > 0 => labels[v] = Profile::new(r, c),
            _ => {
                return Err(not_hamming(
                    "a node does not sit on a unique row and column",
                ))
            }
        }
    }
    Ok((shape, labels))
}

/// Checks that every comparable pair has an arc and each line is a total
/// preorder, returning the labelled response graph.
pub fn validate_orientation(
    graph: &RawGraph,
    labeling: &GridLabeling,
) -> Result<ResponseGraph, ReconstructionError> {
    let arcs: BTreeSet<(usize, usize)> = graph.arcs.iter().copied().collect();
    let id = |p: Profile| graph.nodes[labeling.node_of(p)].clone();
    ResponseGraph::from_relation(labeling.shape, |s, t| {
        arcs.contains(&(labeling.node_of(s), labeling.node_of(t)))
    })
    .map_err(|e| match e {
        OrientationError::MissingArc { a, b } => {
            ReconstructionError::MissingArc { a: id(a), b: id(b) }
        }
        OrientationError::NotTotalPreorder { a, b, c, .. } => {
            ReconstructionError::NotTotalPreorder {
                a: id(a),
                b: id(b),
                c: id(c),
            }
        }
        OrientationError::NonComparableArc { from, to } => not_hamming(format!(
            "arc `{}` -> `{}` crosses the grid",
            id(from),
            id(to)
        )),
    })
}

/// A game together with the labelling that realises the input graph.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub game: Game<Rational>,
    pub labeling: GridLabeling,
    pub graph: ResponseGraph,
}

pub fn reconstruct(graph: &RawGraph) -> Result<Reconstruction, ReconstructionError> {
    let labeling = recognize_hamming(graph)?;
    let response = validate_orientation(graph, &labeling)?;
    Ok(Reconstruction {
        game: game_from_graph(&response),
        labeling,
        graph: response,
    })
}

/// A game whose response graph is `graph`, with payoffs `1, 2, ...` by rank
/// within each line and equal payoffs for undirected edges.
pub fn reconstruct_game(graph: &RawGraph) -> Result<Game<Rational>, ReconstructionError> {
    reconstruct(graph).map(|r| r.game)
}

/// Payoffs by dense rank along each line of a validated response graph.
pub fn game_from_graph<T: Scalar>(graph: &ResponseGraph) -> Game<T> {
    let shape = graph.shape();
    let mut payoff: BTreeMap<(Player, Profile), i64> = BTreeMap::new();
    for (owner, line) in shape.lines() {
        // in a total preorder, "how many others do I weakly beat" is a
        // monotone class invariant
        let score: Vec<usize> = line
            .iter()
            .map(|&x| {
                line.iter()
                    .filter(|&&y| y != x && graph.has_arc(y, x))
                    .count()
            })
            .collect();
        let distinct: BTreeSet<usize> = score.iter().copied().collect();
        let rank: BTreeMap<usize, i64> = distinct.into_iter().zip(1..).collect();
        for (&x, s) in line.iter().zip(&score) {
            payoff.insert((owner, x), rank[s]);
        }
    }
    Game::from_fn(shape, |player, p| from_small_int(payoff[&(player, p)]))
}
