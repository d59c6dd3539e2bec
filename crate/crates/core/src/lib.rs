//! Response graphs of two-player normal-form games.
//!
//! The response graph of a game has one node per pure strategy profile and
//! an arc towards every unilateral deviation the deviating player weakly
//! prefers. This crate builds those graphs, reconstructs games from them,
//! finds sink components, classifies games as preference-potential or
//! preference-zero-sum via reflection, runs iterated strict dominance,
//! locates weak Matching Pennies / Coordination subgames, and enumerates
//! small generic response graphs up to isomorphism.
//!
//! Payoff-carrying types are generic over [`Scalar`]; the aliases below fix
//! the common choices.

pub mod analysis;
pub mod canonical;
pub mod classification;
pub mod enumeration;
pub mod game;
pub mod graph;
pub mod io;
pub mod patterns;
pub mod reconstruction;
pub mod scalar;

#[cfg(test)]
mod fixtures;

pub use analysis::{
    find_cycle_with_strict_arc, is_near_subgame, is_subgame_set, scc, sink_components,
    SccPartition, SinkReport,
};
pub use canonical::{canonical_form, isomorphic, CanonicalForm, Relabeling};
pub use classification::{
    classify, classify_graph, ClassificationReport, GraphClassification, OrdinalPotential,
    PotentialFunction,
};
pub use game::{comparable, Game, GameError, Player, Profile, Shape, Strategy};
pub use graph::{OrientationError, ResponseGraph, WeightedResponseGraph};
pub use patterns::{classify_2x2, Pattern, WeakFormSet};
pub use reconstruction::{
    recognize_hamming, reconstruct_game, validate_orientation, GridLabeling, RawGraph,
    ReconstructionError,
};
pub use scalar::{parse_rational, Rational, Scalar};

/// Game with exact rational payoffs.
pub type RationalGame = Game<Rational>;
/// Game with `f64` payoffs.
pub type F64Game = Game<f64>;
/// Game with `f32` payoffs.
pub type F32Game = Game<f32>;
/// Game with integer payoffs.
pub type IntGame = Game<i64>;

pub type RationalWeightedGraph = WeightedResponseGraph<Rational>;
pub type F64WeightedGraph = WeightedResponseGraph<f64>;

pub type RationalReport = ClassificationReport<Rational>;
