//! Potential and zero-sum predicates, in the ordinal (graph) and strategic
//! (weighted) forms.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{find_cycle_with_strict_arc, scc, Cycle};
use crate::game::{comparable, Player, Profile, Shape};
use crate::graph::{ResponseGraph, WeightedResponseGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("NotAPath: step {index} from {from} to {to} is not a unilateral deviation")]
    NotAPath {
        index: usize,
        from: Profile,
        to: Profile,
    },
}

/// Sum of `u_i(x_k) - u_i(x_{k+1})` over the steps of `path`, where `i` is
/// the player deviating at step `k`. Steps may go against arcs.
pub fn path_weight<T: Scalar>(
    graph: &WeightedResponseGraph<T>,
    path: &[Profile],
) -> Result<T, PathError> {
    let mut total = T::zero();
    for (index, pair) in path.windows(2).enumerate() {
        let (from, to) = (pair[0], pair[1]);
        let d = graph
            .payoff_difference(from, to)
            .ok_or(PathError::NotAPath { index, from, to })?;
        total = total - d.clone();
    }
    Ok(total)
}

/// A value per profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialFunction<T> {
    shape: Shape,
    values: Vec<T>,
}

impl<T> PotentialFunction<T> {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn value(&self, p: Profile) -> &T {
        &self.values[self.shape.index(p)]
    }

    /// Values in row-major order.
    pub fn values(&self) -> &[T] {
        &self.values
    }
}

impl<T: Scalar> PotentialFunction<T> {
    /// `phi(t) - phi(s) = u_i(t) - u_i(s)` for every comparable pair.
    pub fn is_exact_for(&self, graph: &WeightedResponseGraph<T>) -> bool {
        self.shape == graph.shape()
            && self.shape.comparable_pairs().into_iter().all(|(s, t)| {
                let d = graph.payoff_difference(s, t).expect("comparable");
                self.value(t).clone() - self.value(s).clone() == *d
            })
    }
}

/// Potential with `phi(s) = 0` at `(0, 0)`, if the weighted graph has one.
pub fn is_strategically_potential<T: Scalar>(
    graph: &WeightedResponseGraph<T>,
) -> Option<PotentialFunction<T>> {
    let shape = graph.shape();
    let mut values: Vec<Option<T>> = vec![None; shape.node_count()];
    let base = Profile::new(0, 0);
    values[shape.index(base)] = Some(T::zero());
    let mut queue = VecDeque::from([base]);
    while let Some(s) = queue.pop_front() {
        let phi = values[shape.index(s)]
            .clone()
            .expect("queued nodes have values");
        for t in shape.profiles().filter(|&t| comparable(s, t).is_some()) {
            let slot = &mut values[shape.index(t)];
            if slot.is_none() {
                *slot =
                    Some(phi.clone() + graph.payoff_difference(s, t).expect("comparable").clone());
                queue.push_back(t);
            }
        }
    }
    let phi = PotentialFunction {
        shape,
        values: values
            .into_iter()
            .map(|v| v.expect("grid graphs are connected"))
            .collect(),
    };
    phi.is_exact_for(graph).then_some(phi)
}

/// The reflection `(u1, -u2)` is strategically potential.
pub fn is_strategically_zero_sum<T: Scalar>(graph: &WeightedResponseGraph<T>) -> bool {
    is_strategically_potential(&graph.reflect(Player::Two)).is_some()
}

/// Integer-valued potential: strict arcs increase it, undirected edges keep
/// it constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdinalPotential {
    #[serde(skip)]
    shape: Shape,
    values: Vec<usize>,
}

impl OrdinalPotential {
    pub fn value(&self, p: Profile) -> usize {
        self.values[self.shape.index(p)]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_valid_for(&self, graph: &ResponseGraph) -> bool {
        graph.arcs().into_iter().all(|(s, t)| {
            if graph.is_strict(s, t) {
                self.value(s) < self.value(t)
            } else {
                self.value(s) == self.value(t)
            }
        })
    }
}

/// Outcome of a preference-potential test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PreferenceWitness {
    Potential(OrdinalPotential),
    /// A cycle through a strict arc, which no potential can satisfy.
    StrictCycle(Cycle),
}

impl PreferenceWitness {
    pub fn holds(&self) -> bool {
        matches!(self, PreferenceWitness::Potential(_))
    }

    pub fn potential(&self) -> Option<&OrdinalPotential> {
        match self {
            PreferenceWitness::Potential(phi) => Some(phi),
            PreferenceWitness::StrictCycle(_) => None,
        }
    }

    pub fn cycle(&self) -> Option<&Cycle> {
        match self {
            PreferenceWitness::StrictCycle(c) => Some(c),
            PreferenceWitness::Potential(_) => None,
        }
    }
}

/// Preference-equivalent to a potential game: no cycle uses a strict arc.
pub fn is_preference_potential(graph: &ResponseGraph) -> PreferenceWitness {
    if let Some(cycle) = find_cycle_with_strict_arc(graph) {
        return PreferenceWitness::StrictCycle(cycle);
    }
    let partition = scc(graph);
    let mut rank = vec![0; partition.len()];
    for (position, &c) in partition.topological_order().iter().enumerate() {
        rank[c] = position;
    }
    let shape = graph.shape();
    PreferenceWitness::Potential(OrdinalPotential {
        shape,
        values: shape
            .profiles()
            .map(|p| rank[partition.component_of(p)])
            .collect(),
    })
}

/// Preference-equivalent to a zero-sum game; witnesses refer to the graph
/// reflected in player 2.
pub fn is_preference_zero_sum(graph: &ResponseGraph) -> PreferenceWitness {
    is_preference_potential(&graph.reflect(Player::Two))
}
