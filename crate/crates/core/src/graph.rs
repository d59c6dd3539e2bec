//! Response graphs and weighted response graphs.
//!
//! Nodes are the profiles of an `n x m` grid. There is an arc `s -> t`
//! between comparable profiles whenever the deviating player weakly prefers
//! `t`; payoff ties therefore produce arcs in both directions, which is how
//! undirected edges are represented throughout the crate. Arc ownership is
//! never stored: it is the player in whose strategy the endpoints differ.

use std::fmt;

use thiserror::Error;

use crate::game::{check_selection, comparable, Game, GameError, Player, Profile, Shape};
use crate::scalar::{compare, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("arc {from} -> {to} joins profiles that are not comparable")]
    NonComparableArc { from: Profile, to: Profile },
    #[error("comparable profiles {a} and {b} have no arc between them")]
    MissingArc { a: Profile, b: Profile },
    #[error("arcs of {owner} along the line through {anchor} are not a total preorder: {a} -> {b} -> {c} without {a} -> {c}")]
    NotTotalPreorder {
        owner: Player,
        anchor: Profile,
        a: Profile,
        b: Profile,
        c: Profile,
    },
}

/// Directed graph over the profiles of a grid whose arcs join comparable
/// profiles and, along every line, form a total preorder.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResponseGraph {
    shape: Shape,
    adj: Vec<bool>,
}

impl ResponseGraph {
    /// The response graph of a game: `s -> t` iff the deviating player gets
    /// at least as much at `t` as at `s`.
    pub fn from_game<T: Scalar>(game: &Game<T>) -> Self {
        let shape = game.shape();
        Self::from_relation_unchecked(shape, |s, t| {
            let player = comparable(s, t).expect("only called on comparable pairs");
            compare(game.payoff(player, t), game.payoff(player, s)).is_ge()
        })
    }

    /// Builds a graph from an arc predicate evaluated on every ordered pair of
    /// comparable profiles, validating the response-graph invariants.
    pub fn from_relation(
        shape: Shape,
        arc: impl FnMut(Profile, Profile) -> bool,
    ) -> Result<Self, OrientationError> {
        let graph = Self::from_relation_unchecked(shape, arc);
        graph.validate()?;
        Ok(graph)
    }

    /// Builds a graph from an explicit arc list, validating it.
    pub fn from_arcs(
        shape: Shape,
        arcs: impl IntoIterator<Item = (Profile, Profile)>,
    ) -> Result<Self, OrientationError> {
        let n = shape.node_count();
        let mut adj = vec![false; n * n];
        for (from, to) in arcs {
            if !shape.contains(from) || !shape.contains(to) || comparable(from, to).is_none() {
                return Err(OrientationError::NonComparableArc { from, to });
            }
            adj[shape.index(from) * n + shape.index(to)] = true;
        }
        let graph = ResponseGraph { shape, adj };
        graph.validate()?;
        Ok(graph)
    }

    pub(crate) fn from_relation_unchecked(
        shape: Shape,
        mut arc: impl FnMut(Profile, Profile) -> bool,
    ) -> Self {
        let n = shape.node_count();
        let mut adj = vec![false; n * n];
        for (a, b) in shape.comparable_pairs() {
            let (i, j) = (shape.index(a), shape.index(b));
            adj[i * n + j] = arc(a, b);
            adj[j * n + i] = arc(b, a);
        }
        ResponseGraph { shape, adj }
    }

    /// Checks that every comparable pair has an arc and that each line is a
    /// total preorder.
    pub fn validate(&self) -> Result<(), OrientationError> {
        for (owner, line) in self.shape.lines() {
            for (i, &a) in line.iter().enumerate() {
                for &b in &line[i + 1..] {
                    if !self.has_arc(a, b) && !self.has_arc(b, a) {
                        return Err(OrientationError::MissingArc { a, b });
                    }
                }
            }
            for &a in &line {
                for &b in &line {
                    if a == b || !self.has_arc(a, b) {
                        continue;
                    }
                    for &c in &line {
                        if c != a && c != b && self.has_arc(b, c) && !self.has_arc(a, c) {
                            return Err(OrientationError::NotTotalPreorder {
                                owner,
                                anchor: line[0],
                                a,
                                b,
                                c,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn node_count(&self) -> usize {
        self.shape.node_count()
    }

    pub fn has_arc(&self, from: Profile, to: Profile) -> bool {
        self.has_arc_index(self.shape.index(from), self.shape.index(to))
    }

    pub fn has_arc_index(&self, from: usize, to: usize) -> bool {
        self.adj[from * self.node_count() + to]
    }

    /// Both directions present.
    pub fn is_undirected(&self, a: Profile, b: Profile) -> bool {
        self.has_arc(a, b) && self.has_arc(b, a)
    }

    /// `from -> to` present and `to -> from` absent.
    pub fn is_strict(&self, from: Profile, to: Profile) -> bool {
        self.has_arc(from, to) && !self.has_arc(to, from)
    }

    /// Profiles comparable to `p`, in row-major order.
    pub fn neighbors(&self, p: Profile) -> impl Iterator<Item = Profile> + '_ {
        self.shape
            .profiles()
            .filter(move |&q| comparable(p, q).is_some())
    }

    pub fn successors(&self, p: Profile) -> impl Iterator<Item = Profile> + '_ {
        self.neighbors(p).filter(move |&q| self.has_arc(p, q))
    }

    pub fn predecessors(&self, p: Profile) -> impl Iterator<Item = Profile> + '_ {
        self.neighbors(p).filter(move |&q| self.has_arc(q, p))
    }

    /// All arcs, ordered by source then target.
    pub fn arcs(&self) -> Vec<(Profile, Profile)> {
        let n = self.node_count();
        (0..n * n)
            .filter(|&k| self.adj[k])
            .map(|k| (self.shape.profile(k / n), self.shape.profile(k % n)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count()
    }

    /// Undirected edges as pairs `(a, b)` with `a < b`.
    pub fn undirected_edges(&self) -> Vec<(Profile, Profile)> {
        self.shape
            .comparable_pairs()
            .into_iter()
            .filter(|&(a, b)| self.is_undirected(a, b))
            .collect()
    }

    /// No undirected edges.
    pub fn is_generic(&self) -> bool {
        self.shape
            .comparable_pairs()
            .into_iter()
            .all(|(a, b)| !self.is_undirected(a, b))
    }

    /// Reverses exactly the arcs owned by `player`; undirected edges stay.
    pub fn reflect(&self, player: Player) -> Self {
        Self::from_relation_unchecked(self.shape, |s, t| {
            if comparable(s, t) == Some(player) {
                self.has_arc(t, s)
            } else {
                self.has_arc(s, t)
            }
        })
    }

    /// Reverses every arc.
    pub fn reverse(&self) -> Self {
        Self::from_relation_unchecked(self.shape, |s, t| self.has_arc(t, s))
    }

    /// Exchanges the players: profile `(r, c)` becomes `(c, r)` in the
    /// transposed shape.
    pub fn swap_players(&self) -> Self {
        Self::from_relation_unchecked(self.shape.transposed(), |s, t| {
            self.has_arc(s.transposed(), t.transposed())
        })
    }

    /// Induced subgraph on `rows x cols`, relabelled in the given index order.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Result<Self, GameError> {
        check_selection(Player::One, rows, self.shape.rows)?;
        check_selection(Player::Two, cols, self.shape.cols)?;
        let lift = |p: Profile| Profile::new(rows[p.row], cols[p.col]);
        Ok(Self::from_relation_unchecked(
            Shape::new(rows.len(), cols.len()),
            |s, t| self.has_arc(lift(s), lift(t)),
        ))
    }

    /// Relabels nodes: profile `(r, c)` of `self` becomes
    /// `(row_map[r], col_map[c])`. Both maps must be permutations.
    pub fn permute(&self, row_map: &[usize], col_map: &[usize]) -> Self {
        let mut row_inv = vec![0; row_map.len()];
        let mut col_inv = vec![0; col_map.len()];
        for (i, &r) in row_map.iter().enumerate() {
            row_inv[r] = i;
        }
        for (j, &c) in col_map.iter().enumerate() {
            col_inv[c] = j;
        }
        let back = |p: Profile| Profile::new(row_inv[p.row], col_inv[p.col]);
        Self::from_relation_unchecked(self.shape, |s, t| self.has_arc(back(s), back(t)))
    }
}

impl fmt::Debug for ResponseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut strict = Vec::new();
        let mut undirected = Vec::new();
        for (a, b) in self.shape.comparable_pairs() {
            match (self.has_arc(a, b), self.has_arc(b, a)) {
                (true, true) => undirected.push(format!("{a}--{b}")),
                (true, false) => strict.push(format!("{a}->{b}")),
                (false, true) => strict.push(format!("{b}->{a}")),
                (false, false) => strict.push(format!("{a}??{b}")),
            }
        }
        f.debug_struct("ResponseGraph")
            .field("shape", &self.shape.to_string())
            .field("strict", &strict)
            .field("undirected", &undirected)
            .finish()
    }
}

/// A response graph whose arcs carry the deviating player's payoff gain.
///
/// Alongside the arc weights this keeps the signed payoff difference for
/// every ordered comparable pair, so reflection and path-weights need no
/// access to the original game.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedResponseGraph<T> {
    graph: ResponseGraph,
    diff: Vec<Option<T>>,
}

impl<T: Scalar> WeightedResponseGraph<T> {
    pub fn from_game(game: &Game<T>) -> Self {
        let graph = ResponseGraph::from_game(game);
        let shape = game.shape();
        let n = shape.node_count();
        let mut diff = vec![None; n * n];
        for (a, b) in shape.comparable_pairs() {
            let player = comparable(a, b).unwrap();
            let d = game.payoff(player, b).clone() - game.payoff(player, a).clone();
            diff[shape.index(a) * n + shape.index(b)] = Some(d.clone());
            diff[shape.index(b) * n + shape.index(a)] = Some(-d);
        }
        WeightedResponseGraph { graph, diff }
    }

    pub fn graph(&self) -> &ResponseGraph {
        &self.graph
    }

    pub fn shape(&self) -> Shape {
        self.graph.shape
    }

    /// `u_i(to) - u_i(from)` for comparable profiles, `None` otherwise.
    pub fn payoff_difference(&self, from: Profile, to: Profile) -> Option<&T> {
        let shape = self.graph.shape;
        self.diff[shape.index(from) * shape.node_count() + shape.index(to)].as_ref()
    }

    /// Weight of the arc `from -> to`, if that arc exists.
    pub fn weight(&self, from: Profile, to: Profile) -> Option<&T> {
        if self.graph.has_arc(from, to) {
            self.payoff_difference(from, to)
        } else {
            None
        }
    }

    /// Weighted form of negating one player's payoffs.
    pub fn reflect(&self, player: Player) -> Self {
        let shape = self.graph.shape;
        let n = shape.node_count();
        let mut diff = self.diff.clone();
        for (k, d) in diff.iter_mut().enumerate() {
            if comparable(shape.profile(k / n), shape.profile(k % n)) == Some(player) {
                *d = d.as_ref().map(|v| -v.clone());
            }
        }
        WeightedResponseGraph {
            graph: self.graph.reflect(player),
            diff,
        }
    }
}
