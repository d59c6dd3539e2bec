//! Canonical forms of response graphs under strategy relabelling and
//! exchange of the players.
//!
//! # Encoding
//!
//! A canonical form is the byte string
//!
//! ```text
//! [rows, cols, packed...]
//! ```
//!
//! with `rows <= cols`. `packed` lists every unordered comparable pair
//! `(a, b)`, `a < b` in row-major order, sorted lexicographically, two bits
//! per pair: `01` for `a -> b` only, `10` for `b -> a` only, `11` for an
//! undirected edge. Pairs are packed most significant bits first, four per
//! byte, and the last byte is zero-padded. The canonical form is the
//! lexicographically smallest such string over all row permutations, column
//! permutations and (for square shapes) the player exchange. This layout is
//! the key of the enumeration catalog and must not change.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::game::{Profile, Shape};
use crate::graph::{OrientationError, ResponseGraph};

/// How the original graph maps onto its canonical representative: swap the
/// players first if `swap`, then send row `r` to `row_map[r]` and column `c`
/// to `col_map[c]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relabeling {
    pub swap: bool,
    pub row_map: Vec<usize>,
    pub col_map: Vec<usize>,
}

impl Relabeling {
    pub fn apply(&self, graph: &ResponseGraph) -> ResponseGraph {
        let oriented = if self.swap {
            graph.swap_players()
        } else {
            graph.clone()
        };
        oriented.permute(&self.row_map, &self.col_map)
    }

    /// Where a profile of the original graph ends up.
    pub fn map_profile(&self, p: Profile) -> Profile {
        let p = if self.swap { p.transposed() } else { p };
        Profile::new(self.row_map[p.row], self.col_map[p.col])
    }
}

/// Isomorphism-invariant encoding of a response graph.
///
/// Equality, ordering and hashing only look at the encoding; the
/// relabelling is one witness among possibly several.
#[derive(Clone)]
pub struct CanonicalForm {
    shape: Shape,
    code: Vec<u8>,
    relabeling: Relabeling,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("encoding is shorter than its header promises")]
    Truncated,
    #[error("encoding has {0} trailing bytes")]
    TrailingBytes(usize),
    #[error("shape {0} is not in canonical orientation (rows must not exceed cols)")]
    NotCanonicalShape(Shape),
    #[error("comparable pair {a},{b} has state 00 (no arc)")]
    EmptyPair { a: Profile, b: Profile },
    #[error("padding bits are not zero")]
    Padding,
    #[error("decoded graph is not a response graph: {0}")]
    Invalid(#[from] OrientationError),
    #[error("invalid hex: {0}")]
    Hex(String),
}

impl CanonicalForm {
    /// Canonical shape, with `rows <= cols`.
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn relabeling(&self) -> &Relabeling {
        &self.relabeling
    }

    /// The full byte encoding, header included.
    pub fn encoding(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + self.code.len());
        out.push(self.shape.rows as u8);
        out.push(self.shape.cols as u8);
        out.extend_from_slice(&self.code);
        out
    }

    /// Lower-case hex of [`encoding`](Self::encoding).
    pub fn to_hex(&self) -> String {
        hex::encode(self.encoding())
    }

    /// The canonical representative as a graph.
    pub fn graph(&self) -> ResponseGraph {
        decode(&self.encoding()).expect("canonical forms always decode")
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.code == other.code
    }
}

impl Eq for CanonicalForm {}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.shape.hash(state);
        self.code.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encoding().cmp(&other.encoding())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn pair_state(graph: &ResponseGraph, a: usize, b: usize) -> u8 {
    graph.has_arc_index(a, b) as u8 | (graph.has_arc_index(b, a) as u8) << 1
}

fn pack(states: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; states.len().div_ceil(4)];
    for (k, &s) in states.iter().enumerate() {
        out[k / 4] |= s << (6 - 2 * (k % 4));
    }
    out
}

/// Canonical pair list of a shape as node-index pairs.
fn index_pairs(shape: Shape) -> Vec<(usize, usize)> {
    shape
        .comparable_pairs()
        .into_iter()
        .map(|(a, b)| (shape.index(a), shape.index(b)))
        .collect()
}

/// Minimises the encoding over row and column permutations (and the player
/// exchange for square shapes).
pub fn canonical_form(graph: &ResponseGraph) -> CanonicalForm {
    let shape = graph.shape();
    let mut orientations = Vec::with_capacity(2);
    if shape.rows <= shape.cols {
        orientations.push((false, graph.clone()));
    }
    if shape.rows >= shape.cols {
        orientations.push((true, graph.swap_players()));
    }
    let target = orientations[0].1.shape();
    let pairs = index_pairs(target);
    let row_perms: Vec<Vec<usize>> = (0..target.rows).permutations(target.rows).collect();
    let col_perms: Vec<Vec<usize>> = (0..target.cols).permutations(target.cols).collect();

    let mut best: Option<(Vec<u8>, bool, usize, usize)> = None;
    let mut states = vec![0u8; pairs.len()];
    let mut pre = vec![0usize; target.node_count()];
    for (swap, oriented) in &orientations {
        for (ri, rp) in row_perms.iter().enumerate() {
            for (ci, cp) in col_perms.iter().enumerate() {
                // canonical (i, j) reads the oriented graph at (rp[i], cp[j])
                for i in 0..target.rows {
                    for j in 0..target.cols {
                        pre[i * target.cols + j] = rp[i] * target.cols + cp[j];
                    }
                }
                let mut ordering = if best.is_none() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                };
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    let s = pair_state(oriented, pre[a], pre[b]);
                    states[k] = s;
                    if ordering == Ordering::Equal {
                        ordering = s.cmp(&best.as_ref().unwrap().0[k]);
                        if ordering == Ordering::Greater {
                            break;
                        }
                    }
                }
                if ordering == Ordering::Less {
                    best = Some((states.clone(), *swap, ri, ci));
                }
            }
        }
    }
    let (states, swap, ri, ci) = best.expect("at least one group element");
    // invert "canonical i reads original rp[i]" into "original r goes to i"
    let invert = |perm: &[usize]| {
        let mut inv = vec![0; perm.len()];
        for (i, &r) in perm.iter().enumerate() {
            inv[r] = i;
        }
        inv
    };
    CanonicalForm {
        shape: target,
        code: pack(&states),
        relabeling: Relabeling {
            swap,
            row_map: invert(&row_perms[ri]),
            col_map: invert(&col_perms[ci]),
        },
    }
}

/// Equal canonical forms.
pub fn isomorphic(a: &ResponseGraph, b: &ResponseGraph) -> bool {
    a.node_count() == b.node_count() && canonical_form(a) == canonical_form(b)
}

/// Rebuilds the graph an encoding describes, validating it.
pub fn decode(bytes: &[u8]) -> Result<ResponseGraph, DecodeError> {
    let [rows, cols, packed @ ..] = bytes else {
        return Err(DecodeError::Truncated);
    };
    let shape = Shape::new(*rows as usize, *cols as usize);
    if shape.rows > shape.cols || shape.rows == 0 {
        return Err(DecodeError::NotCanonicalShape(shape));
    }
    let pairs = shape.comparable_pairs();
    let needed = pairs.len().div_ceil(4);
    match packed.len().cmp(&needed) {
        Ordering::Less => return Err(DecodeError::Truncated),
        Ordering::Greater => return Err(DecodeError::TrailingBytes(packed.len() - needed)),
        Ordering::Equal => {}
    }
    let state = |k: usize| (packed[k / 4] >> (6 - 2 * (k % 4))) & 0b11;
    for k in pairs.len()..needed * 4 {
        if state(k) != 0 {
            return Err(DecodeError::Padding);
        }
    }
    let mut arcs = Vec::new();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let s = state(k);
        if s == 0 {
            return Err(DecodeError::EmptyPair { a, b });
        }
        if s & 1 != 0 {
            arcs.push((a, b));
        }
        if s & 2 != 0 {
            arcs.push((b, a));
        }
    }
    Ok(ResponseGraph::from_arcs(shape, arcs)?)
}

pub fn decode_hex(text: &str) -> Result<ResponseGraph, DecodeError> {
    decode(&hex::decode(text).map_err(|e| DecodeError::Hex(e.to_string()))?)
}
