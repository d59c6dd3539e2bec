//! Two-player normal-form games over an `n x m` strategy grid.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// One of the two players. Player one picks the row, player two the column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn number(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }

    pub fn from_number(number: u8) -> Option<Player> {
        match number {
            1 => Some(Player::One),
            2 => Some(Player::Two),
            _ => None,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "player {}", self.number())
    }
}

/// A pure strategy profile: the row chosen by player one and the column
/// chosen by player two. Profiles order row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Profile {
    pub row: usize,
    pub col: usize,
}

impl Profile {
    pub const fn new(row: usize, col: usize) -> Self {
        Profile { row, col }
    }

    pub fn transposed(self) -> Self {
        Profile::new(self.col, self.row)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

/// The player who deviates between two profiles, if exactly one does.
///
/// Profiles in the same column differ in player one's strategy; profiles in
/// the same row differ in player two's.
pub fn comparable(a: Profile, b: Profile) -> Option<Player> {
    match (a.row == b.row, a.col == b.col) {
        (false, true) => Some(Player::One),
        (true, false) => Some(Player::Two),
        _ => None,
    }
}

/// A pure strategy of one player, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Strategy {
    pub player: Player,
    pub index: usize,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}:{}", self.player.number(), self.index)
    }
}

/// Number of strategies of each player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl Shape {
    pub const fn new(rows: usize, cols: usize) -> Self {
        Shape { rows, cols }
    }

    pub fn node_count(self) -> usize {
        self.rows * self.cols
    }

    pub fn strategies(self, player: Player) -> usize {
        match player {
            Player::One => self.rows,
            Player::Two => self.cols,
        }
    }

    pub fn transposed(self) -> Shape {
        Shape::new(self.cols, self.rows)
    }

    /// Row-major node index of a profile.
    pub fn index(self, p: Profile) -> usize {
        debug_assert!(self.contains(p), "{p} outside {self}");
        p.row * self.cols + p.col
    }

    pub fn profile(self, index: usize) -> Profile {
        Profile::new(index / self.cols, index % self.cols)
    }

    pub fn contains(self, p: Profile) -> bool {
        p.row < self.rows && p.col < self.cols
    }

    /// All profiles in row-major order.
    pub fn profiles(self) -> impl Iterator<Item = Profile> {
        let cols = self.cols;
        (0..self.rows).flat_map(move |r| (0..cols).map(move |c| Profile::new(r, c)))
    }

    /// Unordered comparable pairs `(a, b)` with `a < b`, sorted lexicographically.
    pub fn comparable_pairs(self) -> Vec<(Profile, Profile)> {
        let profiles: Vec<Profile> = self.profiles().collect();
        let mut pairs = Vec::new();
        for (i, &a) in profiles.iter().enumerate() {
            for &b in &profiles[i + 1..] {
                if comparable(a, b).is_some() {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// The lines of the grid: every column (player one's choices against a
    /// fixed column) and every row (player two's choices against a fixed row).
    pub fn lines(self) -> Vec<(Player, Vec<Profile>)> {
        let mut lines = Vec::with_capacity(self.rows + self.cols);
        for c in 0..self.cols {
            lines.push((
                Player::One,
                (0..self.rows).map(|r| Profile::new(r, c)).collect(),
            ));
        }
        for r in 0..self.rows {
            lines.push((
                Player::Two,
                (0..self.cols).map(|c| Profile::new(r, c)).collect(),
            ));
        }
        lines
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("payoff tables must be non-empty and rectangular with equal shapes: {0}")]
    ShapeMismatch(String),
    #[error("subgame selection for {0} is empty")]
    EmptySelection(Player),
    #[error("strategy index {index} out of range for {player} ({available} strategies)")]
    IndexOutOfRange {
        player: Player,
        index: usize,
        available: usize,
    },
    #[error("strategy index {index} selected twice for {player}")]
    DuplicateIndex { player: Player, index: usize },
}

/// A two-player game: one payoff table per player, both `rows x cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct Game<T> {
    shape: Shape,
    u1: Vec<T>,
    u2: Vec<T>,
}

impl<T: Scalar> Game<T> {
    /// Builds a game from two row-major payoff tables.
    pub fn new(u1: Vec<Vec<T>>, u2: Vec<Vec<T>>) -> Result<Self, GameError> {
        let shape1 = table_shape(&u1).map_err(|e| GameError::ShapeMismatch(format!("p1 {e}")))?;
        let shape2 = table_shape(&u2).map_err(|e| GameError::ShapeMismatch(format!("p2 {e}")))?;
        if shape1 != shape2 {
            return Err(GameError::ShapeMismatch(format!(
                "p1 is {shape1} but p2 is {shape2}"
            )));
        }
        Ok(Game {
            shape: shape1,
            u1: u1.into_iter().flatten().collect(),
            u2: u2.into_iter().flatten().collect(),
        })
    }

    /// Builds a game from a payoff function per player.
    pub fn from_fn(shape: Shape, mut payoff: impl FnMut(Player, Profile) -> T) -> Self {
        assert!(shape.rows > 0 && shape.cols > 0, "empty shape");
        let u1 = shape.profiles().map(|p| payoff(Player::One, p)).collect();
        let u2 = shape.profiles().map(|p| payoff(Player::Two, p)).collect();
        Game { shape, u1, u2 }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn payoff(&self, player: Player, p: Profile) -> &T {
        let i = self.shape.index(p);
        match player {
            Player::One => &self.u1[i],
            Player::Two => &self.u2[i],
        }
    }

    /// Payoff table of one player as nested rows.
    pub fn table(&self, player: Player) -> Vec<Vec<T>> {
        let flat = match player {
            Player::One => &self.u1,
            Player::Two => &self.u2,
        };
        flat.chunks(self.shape.cols).map(|r| r.to_vec()).collect()
    }

    /// Restricts both payoff tables to `rows x cols`, in the given index order.
    pub fn subgame(&self, rows: &[usize], cols: &[usize]) -> Result<Self, GameError> {
        check_selection(Player::One, rows, self.shape.rows)?;
        check_selection(Player::Two, cols, self.shape.cols)?;
        let shape = Shape::new(rows.len(), cols.len());
        Ok(Game::from_fn(shape, |player, p| {
            self.payoff(player, Profile::new(rows[p.row], cols[p.col]))
                .clone()
        }))
    }

    /// Negates the payoffs of one player.
    pub fn reflect(&self, player: Player) -> Self {
        let mut out = self.clone();
        let table = match player {
            Player::One => &mut out.u1,
            Player::Two => &mut out.u2,
        };
        for v in table.iter_mut() {
            *v = -v.clone();
        }
        out
    }

    /// Negates both players' payoffs.
    pub fn reverse(&self) -> Self {
        self.reflect(Player::One).reflect(Player::Two)
    }

    /// The same game with the players' roles exchanged (an `m x n` game).
    pub fn swap_players(&self) -> Self {
        Game::from_fn(self.shape.transposed(), |player, p| {
            self.payoff(player.other(), p.transposed()).clone()
        })
    }

    /// Converts payoffs into another scalar type.
    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Game<U> {
        Game {
            shape: self.shape,
            u1: self.u1.iter().map(&mut f).collect(),
            u2: self.u2.iter().map(&mut f).collect(),
        }
    }
}

fn table_shape<T>(table: &[Vec<T>]) -> Result<Shape, String> {
    let rows = table.len();
    let cols = table.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err("table is empty".into());
    }
    if let Some((r, row)) = table.iter().enumerate().find(|(_, row)| row.len() != cols) {
        return Err(format!(
            "row {r} has {} entries, expected {cols}",
            row.len()
        ));
    }
    Ok(Shape::new(rows, cols))
}

pub(crate) fn check_selection(
    player: Player,
    indices: &[usize],
    available: usize,
) -> Result<(), GameError> {
    if indices.is_empty() {
        return Err(GameError::EmptySelection(player));
    }
    let mut seen = vec![false; available];
    for &index in indices {
        if index >= available {
            return Err(GameError::IndexOutOfRange {
                player,
                index,
                available,
            });
        }
        if std::mem::replace(&mut seen[index], true) {
            return Err(GameError::DuplicateIndex { player, index });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::{any, prop_assert_eq, proptest};
    use proptest::strategy::Strategy as _;

    fn int_table(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect()
    }

    pub(crate) fn rps() -> Game<Rational> {
        let u1 = int_table(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]);
        let u2 = int_table(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]);
        Game::new(u1, u2).unwrap()
    }

    #[test]
    fn builds_rps() {
        let g = rps();
        assert_eq!(g.shape(), Shape::new(3, 3));
        for p in g.shape().profiles() {
            assert_eq!(*g.payoff(Player::Two, p), -g.payoff(Player::One, p).clone());
        }
    }

    #[test]
    fn builds_trivial_game() {
        let g = Game::new(int_table(&[&[0]]), int_table(&[&[0]])).unwrap();
        assert_eq!(g.shape(), Shape::new(1, 1));
    }

    #[test]
    fn rejects_mismatched_tables() {
        let err = Game::new(
            int_table(&[&[1, 2], &[3, 4]]),
            int_table(&[&[1, 2, 3], &[4, 5, 6]]),
        );
        assert!(matches!(err, Err(GameError::ShapeMismatch(_))));
        let ragged = Game::new(int_table(&[&[1, 2], &[3]]), int_table(&[&[1, 2], &[3, 4]]));
        assert!(matches!(ragged, Err(GameError::ShapeMismatch(_))));
        let empty = Game::<Rational>::new(vec![], vec![]);
        assert!(matches!(empty, Err(GameError::ShapeMismatch(_))));
    }

    #[test]
    fn comparability() {
        let (r, p, s) = (0, 1, 2);
        assert_eq!(
            comparable(Profile::new(r, r), Profile::new(p, r)),
            Some(Player::One)
        );
        assert_eq!(
            comparable(Profile::new(r, r), Profile::new(r, s)),
            Some(Player::Two)
        );
        assert_eq!(comparable(Profile::new(r, r), Profile::new(r, r)), None);
        assert_eq!(comparable(Profile::new(r, r), Profile::new(p, s)), None);
    }

    #[test]
    fn subgame_of_rps() {
        let g = rps();
        let sub = g.subgame(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(sub.table(Player::One), int_table(&[&[0, -1], &[1, 0]]));
        assert_eq!(g.subgame(&[0, 1, 2], &[0, 1, 2]).unwrap(), g);
        assert_eq!(
            g.subgame(&[], &[0]),
            Err(GameError::EmptySelection(Player::One))
        );
        assert!(matches!(
            g.subgame(&[3], &[0]),
            Err(GameError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            g.subgame(&[1, 1], &[0]),
            Err(GameError::DuplicateIndex { .. })
        ));
    }

    #[test]
    fn reflections() {
        let g = rps();
        assert_eq!(g.reflect(Player::Two).reflect(Player::Two), g);
        assert_eq!(g.reverse(), g.reflect(Player::Two).reflect(Player::One));
        assert_eq!(g.swap_players().swap_players(), g);
    }

    fn arb_game() -> impl proptest::strategy::Strategy<Value = Game<i64>> {
        (1usize..4, 1usize..4).prop_flat_map(|(n, m)| {
            proptest::collection::vec(-3i64..4, 2 * n * m).prop_map(move |vals| {
                Game::from_fn(Shape::new(n, m), |pl, p| {
                    let base = if pl == Player::One { 0 } else { n * m };
                    vals[base + p.row * m + p.col]
                })
            })
        })
    }

    proptest! {
        #[test]
        fn comparable_is_symmetric(a in 0usize..4, b in 0usize..4, c in 0usize..4, d in 0usize..4) {
            let x = Profile::new(a, b);
            let y = Profile::new(c, d);
            prop_assert_eq!(comparable(x, y), comparable(y, x));
        }

        #[test]
        fn subgame_composes(g in arb_game(), seed in any::<u64>()) {
            let shape = g.shape();
            // pick index sequences from the seed deterministically
            let pick = |len: usize, salt: u64| -> Vec<usize> {
                let mut idx: Vec<usize> = (0..len).collect();
                let mut s = seed ^ salt;
                for i in (1..len).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    idx.swap(i, (s >> 33) as usize % (i + 1));
                }
                idx.truncate(1 + (s as usize % len));
                idx
            };
            let r1 = pick(shape.rows, 1);
            let c1 = pick(shape.cols, 2);
            let first = g.subgame(&r1, &c1).unwrap();
            let r2 = pick(r1.len(), 3);
            let c2 = pick(c1.len(), 4);
            let composed_rows: Vec<usize> = r2.iter().map(|&i| r1[i]).collect();
            let composed_cols: Vec<usize> = c2.iter().map(|&j| c1[j]).collect();
            prop_assert_eq!(
                first.subgame(&r2, &c2).unwrap(),
                g.subgame(&composed_rows, &composed_cols).unwrap()
            );
        }
    }
}
