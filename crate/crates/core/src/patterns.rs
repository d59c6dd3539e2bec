//! The four generic `2 x 2` response graphs and weak forms of them.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::game::{Profile, Shape};
use crate::graph::ResponseGraph;

/// Orientations of the 4-cycle up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Pattern {
    /// Matching Pennies: a directed 4-cycle.
    #[serde(rename = "MP")]
    MatchingPennies,
    /// Coordination: two sources, two sinks.
    #[serde(rename = "CO")]
    Coordination,
    /// Single-dominance: one source and one sink, comparable.
    #[serde(rename = "SD")]
    SingleDominance,
    /// Double-dominance: one source and one sink, diagonal.
    #[serde(rename = "DD")]
    DoubleDominance,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::MatchingPennies,
        Pattern::Coordination,
        Pattern::SingleDominance,
        Pattern::DoubleDominance,
    ];

    pub fn abbreviation(self) -> &'static str {
        match self {
            Pattern::MatchingPennies => "MP",
            Pattern::Coordination => "CO",
            Pattern::SingleDominance => "SD",
            Pattern::DoubleDominance => "DD",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.abbreviation())
    }
}

/// Set of patterns a `2 x 2` graph is a weak form of.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeakFormSet(u8);

impl WeakFormSet {
    pub fn empty() -> Self {
        WeakFormSet(0)
    }

    pub fn singleton(p: Pattern) -> Self {
        WeakFormSet(p.bit())
    }

    pub fn insert(&mut self, p: Pattern) {
        self.0 |= p.bit();
    }

    pub fn contains(self, p: Pattern) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The single pattern of a generic graph.
    pub fn exact(self) -> Option<Pattern> {
        let mut it = self.iter();
        match (it.next(), it.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }

    /// Exactly `{p}`: the subgraph is `p` itself, with no undirected edge.
    pub fn is_exactly(self, p: Pattern) -> bool {
        self == WeakFormSet::singleton(p)
    }

    /// Weak form of Matching Pennies or of Coordination.
    pub fn is_weak_mp_or_co(self) -> bool {
        self.contains(Pattern::MatchingPennies) || self.contains(Pattern::Coordination)
    }

    pub fn iter(self) -> impl Iterator<Item = Pattern> {
        Pattern::ALL.into_iter().filter(move |p| self.contains(*p))
    }
}

impl fmt::Debug for WeakFormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for WeakFormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Pattern::abbreviation).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl FromIterator<Pattern> for WeakFormSet {
    fn from_iter<I: IntoIterator<Item = Pattern>>(iter: I) -> Self {
        let mut set = WeakFormSet::empty();
        for p in iter {
            set.insert(p);
        }
        set
    }
}

impl Serialize for WeakFormSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

const CORNERS: [Profile; 4] = [
    Profile::new(0, 0),
    Profile::new(0, 1),
    Profile::new(1, 0),
    Profile::new(1, 1),
];

/// Pattern of a fully oriented 4-cycle given as an arc predicate.
fn classify_oriented(arc: impl Fn(Profile, Profile) -> bool) -> Pattern {
    let out_degree = |p: Profile| {
        CORNERS
            .iter()
            .filter(|&&q| crate::game::comparable(p, q).is_some() && arc(p, q))
            .count()
    };
    let sinks: Vec<Profile> = CORNERS
        .into_iter()
        .filter(|&p| out_degree(p) == 0)
        .collect();
    match sinks.len() {
        0 => Pattern::MatchingPennies,
        2 => Pattern::Coordination,
        1 => {
            let sink = sinks[0];
            let source = CORNERS
                .into_iter()
                .find(|&p| out_degree(p) == 2)
                .expect("an acyclic 4-cycle orientation with one sink has one source");
            if crate::game::comparable(source, sink).is_some() {
                Pattern::SingleDominance
            } else {
                Pattern::DoubleDominance
            }
        }
        _ => unreachable!("a 4-cycle orientation has at most two sinks"),
    }
}

/// Patterns reachable by orienting the undirected edges of a `2 x 2` graph.
///
/// # Panics
/// If `graph` is not `2 x 2`.
pub fn classify_2x2(graph: &ResponseGraph) -> WeakFormSet {
    assert_eq!(
        graph.shape(),
        Shape::new(2, 2),
        "classify_2x2 needs a 2x2 graph"
    );
    let undirected = graph.undirected_edges();
    let mut set = WeakFormSet::empty();
    for mask in 0u32..(1 << undirected.len()) {
        set.insert(classify_oriented(|s, t| {
            match undirected
                .iter()
                .position(|&(a, b)| (a, b) == (s, t) || (a, b) == (t, s))
            {
                // bit set: keep a -> b; clear: keep b -> a
                Some(k) => {
                    let (a, b) = undirected[k];
                    if (mask >> k) & 1 == 1 {
                        s == a
                    } else {
                        s == b
                    }
                }
                None => graph.has_arc(s, t),
            }
        }));
    }
    set
}

/// One `2 x 2` subgame and its weak-form classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubgamePattern {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    pub forms: WeakFormSet,
}

/// Every choice of two rows and two columns, classified.
pub fn all_2x2_subgame_patterns(graph: &ResponseGraph) -> Vec<SubgamePattern> {
    let shape = graph.shape();
    let mut out = Vec::new();
    for r0 in 0..shape.rows {
        for r1 in r0 + 1..shape.rows {
            for c0 in 0..shape.cols {
                for c1 in c0 + 1..shape.cols {
                    let sub = graph
                        .restrict(&[r0, r1], &[c0, c1])
                        .expect("indices are in range and distinct");
                    out.push(SubgamePattern {
                        rows: [r0, r1],
                        cols: [c0, c1],
                        forms: classify_2x2(&sub),
                    });
                }
            }
        }
    }
    out
}
