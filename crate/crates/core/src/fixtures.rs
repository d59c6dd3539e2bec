//! Shared test games.

use proptest::prelude::*;

use crate::game::{Game, Player, Shape};
use crate::graph::ResponseGraph;
use crate::scalar::Rational;

pub fn int_game(u1: &[&[i64]], u2: &[&[i64]]) -> Game<Rational> {
    let conv = |t: &[&[i64]]| {
        t.iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect()
    };
    Game::new(conv(u1), conv(u2)).unwrap()
}

pub fn rps() -> Game<Rational> {
    int_game(
        &[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]],
        &[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]],
    )
}

pub fn mp() -> ResponseGraph {
    ResponseGraph::from_game(&int_game(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]]))
}

pub fn co() -> ResponseGraph {
    ResponseGraph::from_game(&int_game(&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]))
}

/// Player 1 strictly prefers row 1; player 2 then prefers column 1 in row 1
/// but column 0 in row 0.
pub fn sd() -> ResponseGraph {
    ResponseGraph::from_game(&int_game(&[&[0, 0], &[1, 1]], &[&[1, 0], &[0, 1]]))
}

/// Both players have a strictly dominant strategy.
pub fn dd() -> ResponseGraph {
    ResponseGraph::from_game(&int_game(&[&[0, 0], &[1, 1]], &[&[0, 1], &[0, 1]]))
}

pub fn constant_2x2() -> ResponseGraph {
    ResponseGraph::from_game(&int_game(&[&[0, 0], &[0, 0]], &[&[0, 0], &[0, 0]]))
}

/// Games up to `max x max` with integer payoffs in `[-values, values]`.
pub fn arb_game(max: usize, values: i64) -> impl Strategy<Value = Game<Rational>> {
    (1..=max, 1..=max).prop_flat_map(move |(n, m)| {
        proptest::collection::vec(-values..=values, 2 * n * m).prop_map(move |vals| {
            Game::from_fn(Shape::new(n, m), |pl, p| {
                let base = if pl == Player::One { 0 } else { n * m };
                Rational::from_integer(vals[base + p.row * m + p.col].into())
            })
        })
    })
}
