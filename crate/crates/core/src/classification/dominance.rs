//! Strict dominance read off the response graph, iterated elimination, and
//! which surviving strategies sit in weak Matching Pennies or Coordination
//! subgames.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::game::{Player, Profile, Strategy};
use crate::graph::ResponseGraph;
use crate::patterns::{all_2x2_subgame_patterns, SubgamePattern};

/// `dominator` strictly dominates `dominated` for `player`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Domination {
    pub player: Player,
    pub dominated: usize,
    pub dominator: usize,
}

fn dominates(graph: &ResponseGraph, player: Player, s: usize, t: usize) -> bool {
    let shape = graph.shape();
    match player {
        Player::One => {
            (0..shape.cols).all(|c| graph.is_strict(Profile::new(t, c), Profile::new(s, c)))
        }
        Player::Two => {
            (0..shape.rows).all(|r| graph.is_strict(Profile::new(r, t), Profile::new(r, s)))
        }
    }
}

/// Every strictly dominated strategy paired with every strategy dominating it.
pub fn dominated_strategies(graph: &ResponseGraph) -> Vec<Domination> {
    let shape = graph.shape();
    let mut out = Vec::new();
    for player in [Player::One, Player::Two] {
        let k = shape.strategies(player);
        for dominated in 0..k {
            for dominator in (0..k).filter(|&s| s != dominated) {
                if dominates(graph, player, dominator, dominated) {
                    out.push(Domination {
                        player,
                        dominated,
                        dominator,
                    });
                }
            }
        }
    }
    out
}

/// No strategy of either player is strictly dominated.
pub fn is_nondominated(graph: &ResponseGraph) -> bool {
    let shape = graph.shape();
    [Player::One, Player::Two].into_iter().all(|player| {
        let k = shape.strategies(player);
        (0..k).all(|t| (0..k).all(|s| s == t || !dominates(graph, player, s, t)))
    })
}

/// One removal, in the indices of the original game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EliminationStep {
    pub round: usize,
    pub player: Player,
    pub dominated: usize,
    pub dominator: usize,
}

/// Result of iterated strict dominance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    /// Surviving rows, as original indices.
    pub rows: Vec<usize>,
    /// Surviving columns, as original indices.
    pub cols: Vec<usize>,
    pub steps: Vec<EliminationStep>,
    #[serde(skip)]
    pub reduced: ResponseGraph,
}

impl Elimination {
    pub fn is_dominance_solvable(&self) -> bool {
        self.rows.len() == 1 && self.cols.len() == 1
    }

    pub fn rounds(&self) -> usize {
        self.steps.last().map_or(0, |s| s.round)
    }

    pub fn survivors(&self) -> Vec<Strategy> {
        let one = self.rows.iter().map(|&index| Strategy {
            player: Player::One,
            index,
        });
        let two = self.cols.iter().map(|&index| Strategy {
            player: Player::Two,
            index,
        });
        one.chain(two).collect()
    }
}

/// Removes all currently dominated strategies of both players each round
/// until none remain.
///
/// Strict dominance is order independent, so the survivors are the same as
/// for any other removal order. Each recorded dominator is one that survives
/// its round.
pub fn iterated_elimination(graph: &ResponseGraph) -> Elimination {
    let shape = graph.shape();
    let mut rows: Vec<usize> = (0..shape.rows).collect();
    let mut cols: Vec<usize> = (0..shape.cols).collect();
    let mut reduced = graph.clone();
    let mut steps = Vec::new();
    for round in 1.. {
        let found = dominated_strategies(&reduced);
        if found.is_empty() {
            break;
        }
        let is_dominated =
            |player: Player, k: usize| found.iter().any(|d| d.player == player && d.dominated == k);
        let mut removed_rows = Vec::new();
        let mut removed_cols = Vec::new();
        for d in &found {
            let already = match d.player {
                Player::One => removed_rows.contains(&d.dominated),
                Player::Two => removed_cols.contains(&d.dominated),
            };
            if already || is_dominated(d.player, d.dominator) {
                continue;
            }
            let original = match d.player {
                Player::One => (rows[d.dominated], rows[d.dominator]),
                Player::Two => (cols[d.dominated], cols[d.dominator]),
            };
            steps.push(EliminationStep {
                round,
                player: d.player,
                dominated: original.0,
                dominator: original.1,
            });
            match d.player {
                Player::One => removed_rows.push(d.dominated),
                Player::Two => removed_cols.push(d.dominated),
            }
        }
        let keep = |len: usize, removed: &[usize]| -> Vec<usize> {
            (0..len).filter(|k| !removed.contains(k)).collect()
        };
        let keep_rows = keep(rows.len(), &removed_rows);
        let keep_cols = keep(cols.len(), &removed_cols);
        reduced = reduced
            .restrict(&keep_rows, &keep_cols)
            .expect("an undominated strategy always survives");
        rows = keep_rows.iter().map(|&k| rows[k]).collect();
        cols = keep_cols.iter().map(|&k| cols[k]).collect();
    }
    Elimination {
        rows,
        cols,
        steps,
        reduced,
    }
}

/// Weak MP / CO subgames of the reduced game containing each surviving
/// strategy, in original indices. Empty when the game is dominance-solvable.
pub fn mp_co_participation(graph: &ResponseGraph) -> BTreeMap<Strategy, Vec<SubgamePattern>> {
    let elimination = iterated_elimination(graph);
    participation_after(&elimination)
}

pub(crate) fn participation_after(
    elimination: &Elimination,
) -> BTreeMap<Strategy, Vec<SubgamePattern>> {
    let mut out = BTreeMap::new();
    if elimination.is_dominance_solvable() {
        return out;
    }
    for s in elimination.survivors() {
        out.insert(s, Vec::new());
    }
    for sub in all_2x2_subgame_patterns(&elimination.reduced) {
        if !sub.forms.is_weak_mp_or_co() {
            continue;
        }
        let original = SubgamePattern {
            rows: sub.rows.map(|k| elimination.rows[k]),
            cols: sub.cols.map(|k| elimination.cols[k]),
            forms: sub.forms,
        };
        for index in original.rows {
            out.get_mut(&Strategy {
                player: Player::One,
                index,
            })
            .unwrap()
            .push(original);
        }
        for index in original.cols {
            out.get_mut(&Strategy {
                player: Player::Two,
                index,
            })
            .unwrap()
            .push(original);
        }
    }
    out
}
