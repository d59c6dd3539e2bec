//! Game-class predicates and the combined classification report.

mod dominance;
mod potential;

use std::collections::BTreeMap;

pub use dominance::{
    dominated_strategies, is_nondominated, iterated_elimination, mp_co_participation, Domination,
    Elimination, EliminationStep,
};
pub use potential::{
    is_preference_potential, is_preference_zero_sum, is_strategically_potential,
    is_strategically_zero_sum, path_weight, OrdinalPotential, PathError, PotentialFunction,
    PreferenceWitness,
};

use crate::analysis::{sink_components, SinkReport};
use crate::game::{Game, Shape, Strategy};
use crate::graph::{ResponseGraph, WeightedResponseGraph};
use crate::patterns::{all_2x2_subgame_patterns, Pattern, SubgamePattern, WeakFormSet};
use crate::scalar::Scalar;

/// Everything that depends only on the response graph.
#[derive(Debug, Clone)]
pub struct GraphClassification {
    pub shape: Shape,
    pub generic: bool,
    pub preference_potential: PreferenceWitness,
    pub preference_zero_sum: PreferenceWitness,
    pub elimination: Elimination,
    pub sinks: SinkReport,
    pub subgames: Vec<SubgamePattern>,
    pub participation: BTreeMap<Strategy, Vec<SubgamePattern>>,
}

impl GraphClassification {
    pub fn is_preference_potential(&self) -> bool {
        self.preference_potential.holds()
    }

    pub fn is_preference_zero_sum(&self) -> bool {
        self.preference_zero_sum.holds()
    }

    pub fn is_dominance_solvable(&self) -> bool {
        self.elimination.is_dominance_solvable()
    }

    /// Number of `2 x 2` subgames per weak-form set.
    pub fn pattern_counts(&self) -> BTreeMap<WeakFormSet, usize> {
        let mut counts = BTreeMap::new();
        for s in &self.subgames {
            *counts.entry(s.forms).or_insert(0) += 1;
        }
        counts
    }

    /// Some `2 x 2` subgame is exactly `pattern` (no undirected edge).
    pub fn has_subgame(&self, pattern: Pattern) -> bool {
        self.subgames.iter().any(|s| s.forms.is_exactly(pattern))
    }
}

pub fn classify_graph(graph: &ResponseGraph) -> GraphClassification {
    let elimination = iterated_elimination(graph);
    let participation = dominance::participation_after(&elimination);
    GraphClassification {
        shape: graph.shape(),
        generic: graph.is_generic(),
        preference_potential: is_preference_potential(graph),
        preference_zero_sum: is_preference_zero_sum(graph),
        elimination,
        sinks: sink_components(graph),
        subgames: all_2x2_subgame_patterns(graph),
        participation,
    }
}

/// Graph classification plus the strategic (payoff-exact) predicates.
#[derive(Debug, Clone)]
pub struct ClassificationReport<T> {
    pub graph: GraphClassification,
    pub strategic_potential: Option<PotentialFunction<T>>,
    pub strategically_zero_sum: bool,
}

impl<T> ClassificationReport<T> {
    pub fn is_strategically_potential(&self) -> bool {
        self.strategic_potential.is_some()
    }
}

pub fn classify<T: Scalar>(game: &Game<T>) -> ClassificationReport<T> {
    let weighted = WeightedResponseGraph::from_game(game);
    ClassificationReport {
        graph: classify_graph(weighted.graph()),
        strategic_potential: is_strategically_potential(&weighted),
        strategically_zero_sum: is_strategically_zero_sum(&weighted),
    }
}
