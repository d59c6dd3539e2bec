//! Exhaustive enumeration of generic response graphs up to isomorphism,
//! census statistics and brute-force checks of structural claims.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{is_near_subgame, is_subgame_set};
use crate::canonical::{canonical_form, decode, CanonicalForm};
use crate::classification::{classify_graph, is_nondominated, GraphClassification};
use crate::game::{comparable, Game, Player, Profile, Shape};
use crate::graph::ResponseGraph;
use crate::patterns::Pattern;
use crate::reconstruction::{reconstruct, RawGraph};

/// Largest number of candidate orientations `enumerate_generic` will visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("ShapeTooLarge: {shape} needs {candidates} candidates, budget is {budget}")]
    ShapeTooLarge {
        shape: Shape,
        candidates: String,
        budget: u64,
    },
    #[error("shape {0} has an empty side")]
    EmptyShape(Shape),
    #[error("NotFound: no class matches `{0}`")]
    NotFound(&'static str),
}

fn factorial(k: usize) -> Option<u64> {
    (1..=k as u64).try_fold(1u64, |acc, x| acc.checked_mul(x))
}

/// Orientations visited for `shape`: one total order per line, with the
/// first column's order fixed (any graph can be row-permuted into that form).
pub fn candidate_count(shape: Shape) -> Option<u64> {
    let rows = factorial(shape.rows)?.checked_pow(shape.cols.saturating_sub(1) as u32)?;
    let cols = factorial(shape.cols)?.checked_pow(shape.rows as u32)?;
    rows.checked_mul(cols)
}

fn check_shape(
    shape: Shape,
    candidates: Option<u64>,
    budget: u64,
) -> Result<u64, EnumerationError> {
    if shape.rows == 0 || shape.cols == 0 {
        return Err(EnumerationError::EmptyShape(shape));
    }
    match candidates {
        Some(c) if c <= budget => Ok(c),
        _ => Err(EnumerationError::ShapeTooLarge {
            shape,
            candidates: candidates.map_or_else(|| "more than 2^64".to_string(), |c| c.to_string()),
            budget,
        }),
    }
}

/// Graph from per-line rankings: `col_rank[c][r]` orders player one's rows
/// in column `c`, `row_rank[r][c]` orders player two's columns in row `r`.
fn graph_from_ranks(shape: Shape, col_rank: &[&[usize]], row_rank: &[&[usize]]) -> ResponseGraph {
    ResponseGraph::from_relation_unchecked(shape, |s, t| match comparable(s, t) {
        Some(Player::One) => col_rank[s.col][t.row] > col_rank[s.col][s.row],
        Some(Player::Two) => row_rank[s.row][t.col] > row_rank[s.row][s.col],
        None => false,
    })
}

fn merge(mut a: BTreeSet<CanonicalForm>, b: BTreeSet<CanonicalForm>) -> BTreeSet<CanonicalForm> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    a.extend(b);
    a
}

/// Every generic response graph of `shape` up to isomorphism, sorted by
/// canonical encoding.
pub fn enumerate_generic(shape: Shape) -> Result<Vec<CanonicalForm>, EnumerationError> {
    enumerate_generic_with_budget(shape, DEFAULT_BUDGET)
}

pub fn enumerate_generic_with_budget(
    shape: Shape,
    budget: u64,
) -> Result<Vec<CanonicalForm>, EnumerationError> {
    let count = check_shape(shape, candidate_count(shape), budget)?;
    let row_perms: Vec<Vec<usize>> = (0..shape.rows).permutations(shape.rows).collect();
    let col_perms: Vec<Vec<usize>> = (0..shape.cols).permutations(shape.cols).collect();
    let identity: Vec<usize> = (0..shape.rows).collect();
    let forms = (0..count)
        .into_par_iter()
        .fold(BTreeSet::new, |mut set, mut k| {
            let mut col_rank: Vec<&[usize]> = vec![&identity];
            for _ in 1..shape.cols {
                col_rank.push(&row_perms[(k % row_perms.len() as u64) as usize]);
                k /= row_perms.len() as u64;
            }
            let mut row_rank: Vec<&[usize]> = Vec::with_capacity(shape.rows);
            for _ in 0..shape.rows {
                row_rank.push(&col_perms[(k % col_perms.len() as u64) as usize]);
                k /= col_perms.len() as u64;
            }
            set.insert(canonical_form(&graph_from_ranks(
                shape, &col_rank, &row_rank,
            )));
            set
        })
        .reduce(BTreeSet::new, merge);
    Ok(forms.into_iter().collect())
}

/// `k`-th permutation of `0..len` in lexicographic order.
fn nth_permutation(len: usize, mut k: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..len).collect();
    let mut out = Vec::with_capacity(len);
    for i in (0..len).rev() {
        let f = factorial(i).expect("small");
        out.push(pool.remove((k / f) as usize));
        k %= f;
    }
    out
}

/// Canonical forms of all games with `u1` a permutation of `1..=n*m` and
/// `u2 = -u1`.
///
/// Every generic graph preference-equivalent to a zero-sum game arises this
/// way, so this is the set of generic preference-zero-sum classes, computed
/// without looking at reflections or cycles.
pub fn zero_sum_realizability_oracle(
    shape: Shape,
) -> Result<BTreeSet<CanonicalForm>, EnumerationError> {
    let n = shape.node_count();
    let count = check_shape(
        shape,
        if n <= 9 { factorial(n) } else { None },
        factorial(9).unwrap(),
    )?;
    Ok((0..count)
        .into_par_iter()
        .fold(BTreeSet::new, |mut set, k| {
            let perm = nth_permutation(n, k);
            let game = Game::from_fn(shape, |player, p| {
                let v = perm[shape.index(p)] as i64 + 1;
                if player == Player::One {
                    v
                } else {
                    -v
                }
            });
            set.insert(canonical_form(&ResponseGraph::from_game(&game)));
            set
        })
        .reduce(BTreeSet::new, merge))
}

/// One isomorphism class with its classification.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub form: CanonicalForm,
    pub graph: ResponseGraph,
    pub nondominated: bool,
    pub classification: GraphClassification,
}

impl ClassEntry {
    pub fn new(form: CanonicalForm) -> Self {
        let graph = form.graph();
        ClassEntry {
            nondominated: is_nondominated(&graph),
            classification: classify_graph(&graph),
            form,
            graph,
        }
    }

    pub fn category(&self) -> Category {
        match (
            self.classification.is_preference_zero_sum(),
            self.classification.is_preference_potential(),
        ) {
            (true, true) => Category::Both,
            (true, false) => Category::ZeroSumOnly,
            (false, true) => Category::PotentialOnly,
            (false, false) => Category::Neither,
        }
    }
}

/// Classifies every class, in parallel, keeping the input order.
pub fn classify_classes(forms: Vec<CanonicalForm>) -> Vec<ClassEntry> {
    forms.into_par_iter().map(ClassEntry::new).collect()
}

/// Enumerates and classifies.
pub fn catalog(shape: Shape) -> Result<Vec<ClassEntry>, EnumerationError> {
    Ok(classify_classes(enumerate_generic(shape)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    ZeroSumOnly,
    PotentialOnly,
    Both,
    Neither,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CategoryCounts {
    pub zero_sum_only: usize,
    pub potential_only: usize,
    pub both: usize,
    pub neither: usize,
}

impl CategoryCounts {
    fn add(&mut self, c: Category) {
        match c {
            Category::ZeroSumOnly => self.zero_sum_only += 1,
            Category::PotentialOnly => self.potential_only += 1,
            Category::Both => self.both += 1,
            Category::Neither => self.neither += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.zero_sum_only + self.potential_only + self.both + self.neither
    }

    /// Classes that are preference-zero-sum, alone or together with potential.
    pub fn zero_sum(&self) -> usize {
        self.zero_sum_only + self.both
    }

    pub fn potential(&self) -> usize {
        self.potential_only + self.both
    }
}

/// Aggregate statistics over the generic classes of one shape.
///
/// `categories` counts nondominated classes only; `all_categories` and the
/// histograms cover every class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub shape: Shape,
    pub classes: usize,
    pub nondominated: usize,
    pub categories: CategoryCounts,
    pub all_categories: CategoryCounts,
    pub dominance_solvable: usize,
    pub sink_histogram: BTreeMap<usize, usize>,
    pub pure_nash_histogram: BTreeMap<usize, usize>,
}

pub fn census_of(shape: Shape, entries: &[ClassEntry]) -> Census {
    let mut census = Census {
        shape,
        classes: entries.len(),
        nondominated: 0,
        categories: CategoryCounts::default(),
        all_categories: CategoryCounts::default(),
        dominance_solvable: 0,
        sink_histogram: BTreeMap::new(),
        pure_nash_histogram: BTreeMap::new(),
    };
    for e in entries {
        let c = &e.classification;
        census.all_categories.add(e.category());
        if e.nondominated {
            census.nondominated += 1;
            census.categories.add(e.category());
        }
        census.dominance_solvable += c.is_dominance_solvable() as usize;
        *census
            .sink_histogram
            .entry(c.sinks.sink_components.len())
            .or_insert(0) += 1;
        *census
            .pure_nash_histogram
            .entry(c.sinks.pure_nash.len())
            .or_insert(0) += 1;
    }
    census
}

pub fn census(shape: Shape) -> Result<Census, EnumerationError> {
    Ok(census_of(shape, &catalog(shape)?))
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, label: &str, all: usize, nd: usize| {
            writeln!(f, "{label:<22}{all:>10}{nd:>15}")
        };
        writeln!(f, "generic {} response graphs", self.shape)?;
        writeln!(f, "{:<22}{:>10}{:>15}", "", "all", "nondominated")?;
        row(f, "classes", self.classes, self.nondominated)?;
        let (a, n) = (&self.all_categories, &self.categories);
        row(f, "zero-sum only", a.zero_sum_only, n.zero_sum_only)?;
        row(f, "potential only", a.potential_only, n.potential_only)?;
        row(f, "both", a.both, n.both)?;
        row(f, "neither", a.neither, n.neither)?;
        writeln!(
            f,
            "{:<22}{:>10}",
            "dominance-solvable", self.dominance_solvable
        )?;
        let hist = |h: &BTreeMap<usize, usize>| h.iter().map(|(k, v)| format!("{k}:{v}")).join(" ");
        writeln!(f, "{:<22}{}", "sink components", hist(&self.sink_histogram))?;
        write!(f, "{:<22}{}", "pure Nash", hist(&self.pure_nash_histogram))
    }
}

/// Lengths of all simple directed cycles.
pub fn cycle_lengths(graph: &ResponseGraph) -> BTreeSet<usize> {
    let shape = graph.shape();
    let n = shape.node_count();
    let mut lengths = BTreeSet::new();
    let mut on_path = vec![false; n];
    fn dfs(
        graph: &ResponseGraph,
        start: usize,
        v: usize,
        depth: usize,
        on_path: &mut [bool],
        lengths: &mut BTreeSet<usize>,
    ) {
        let shape = graph.shape();
        for w in graph.successors(shape.profile(v)) {
            let w = shape.index(w);
            if w == start {
                lengths.insert(depth);
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                dfs(graph, start, w, depth + 1, on_path, lengths);
                on_path[w] = false;
            }
        }
    }
    for start in 0..n {
        on_path[start] = true;
        dfs(graph, start, start, 1, &mut on_path, &mut lengths);
        on_path[start] = false;
    }
    lengths
}

/// Result of checking structural claims over a corpus of encodings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub checked: usize,
    pub skipped_non_generic: usize,
    /// Entries that are not valid canonical encodings; these indicate a bad
    /// corpus, not a failed claim.
    pub invalid_inputs: Vec<InvalidInput>,
    pub counterexamples: Vec<Counterexample>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.invalid_inputs.is_empty() && self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvalidInput {
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub claim: &'static str,
    pub graph: String,
    pub detail: String,
}

/// Claims checked by [`check_claims`].
pub const CLAIMS: [&str; 7] = [
    "round_trip",
    "co_free_unique_near_subgame_sink",
    "survivors_in_weak_mp_or_co",
    "zero_sum_excludes_co",
    "potential_excludes_mp",
    "zero_sum_single_sink",
    "zero_sum_and_potential_solvable",
];

/// Names of the claims that fail for a generic graph.
pub fn check_claims(graph: &ResponseGraph, c: &GraphClassification) -> Vec<(&'static str, String)> {
    let mut failures = Vec::new();
    match reconstruct(&RawGraph::from_response_graph(graph)) {
        Ok(r) if canonical_form(&ResponseGraph::from_game(&r.game)) == canonical_form(graph) => {}
        Ok(_) => failures.push((CLAIMS[0], "rebuilt game has a different graph".to_string())),
        Err(e) => failures.push((CLAIMS[0], e.to_string())),
    }
    if !c.has_subgame(Pattern::Coordination) {
        let sinks = &c.sinks.sink_components;
        let all: Vec<Profile> = sinks.iter().flatten().copied().collect();
        if sinks.len() != 1 || !is_near_subgame(&all) {
            failures.push((CLAIMS[1], format!("{} sink components", sinks.len())));
        }
    }
    if !c.is_dominance_solvable() {
        for (s, subs) in &c.participation {
            if subs.is_empty() {
                failures.push((CLAIMS[2], format!("{s} is in no weak MP or CO subgame")));
            }
        }
    }
    let zs = c.is_preference_zero_sum();
    let pp = c.is_preference_potential();
    if zs && c.has_subgame(Pattern::Coordination) {
        failures.push((CLAIMS[3], String::new()));
    }
    if pp && c.has_subgame(Pattern::MatchingPennies) {
        failures.push((CLAIMS[4], String::new()));
    }
    if zs && (c.sinks.pure_nash.len() > 1 || c.sinks.sink_components.len() != 1) {
        failures.push((
            CLAIMS[5],
            format!(
                "{} sinks, {} pure Nash",
                c.sinks.sink_components.len(),
                c.sinks.pure_nash.len()
            ),
        ));
    }
    if zs && pp && !c.is_dominance_solvable() {
        failures.push((CLAIMS[6], String::new()));
    }
    failures
}

/// Decodes each entry, insists it is a generic graph in canonical form, and
/// checks every claim in [`CLAIMS`] on it.
pub fn verify_theorems(corpus: &[Vec<u8>]) -> TheoremReport {
    let outcomes: Vec<Result<Option<Vec<Counterexample>>, String>> = corpus
        .par_iter()
        .map(|bytes| {
            let graph = decode(bytes).map_err(|e| e.to_string())?;
            if canonical_form(&graph).encoding() != *bytes {
                return Err("encoding is not canonical".to_string());
            }
            if !graph.is_generic() {
                return Ok(None);
            }
            let hex = hex::encode(bytes);
            let failures = check_claims(&graph, &classify_graph(&graph));
            Ok(Some(
                failures
                    .into_iter()
                    .map(|(claim, detail)| Counterexample {
                        claim,
                        graph: hex.clone(),
                        detail,
                    })
                    .collect(),
            ))
        })
        .collect();
    let mut report = TheoremReport::default();
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Err(reason) => report.invalid_inputs.push(InvalidInput { index, reason }),
            Ok(None) => report.skipped_non_generic += 1,
            Ok(Some(found)) => {
                report.checked += 1;
                report.counterexamples.extend(found);
            }
        }
    }
    report
}

pub fn verify_forms(forms: &[CanonicalForm]) -> TheoremReport {
    verify_theorems(
        &forms
            .iter()
            .map(CanonicalForm::encoding)
            .collect::<Vec<_>>(),
    )
}

/// Matches of the structural queries over the nondominated classes of a
/// catalog.
#[derive(Debug, Clone, Default)]
pub struct NamedQueries {
    /// Has a 6-cycle but no 4-cycle.
    pub six_cycle_without_four_cycle: Vec<CanonicalForm>,
    /// No Coordination subgame, yet not preference-zero-sum.
    pub co_free_not_zero_sum: Vec<CanonicalForm>,
    /// Preference-zero-sum with a pure Nash equilibrium.
    pub zero_sum_with_pure_nash: Vec<CanonicalForm>,
    /// Preference-zero-sum, with a sink component that is a near-subgame
    /// but not a subgame.
    pub zero_sum_sink_not_subgame: Vec<CanonicalForm>,
}

pub fn named_queries(entries: &[ClassEntry]) -> NamedQueries {
    let mut q = NamedQueries::default();
    for e in entries.iter().filter(|e| e.nondominated) {
        let c = &e.classification;
        let lengths = cycle_lengths(&e.graph);
        if lengths.contains(&6) && !lengths.contains(&4) {
            q.six_cycle_without_four_cycle.push(e.form.clone());
        }
        if !c.has_subgame(Pattern::Coordination) && !c.is_preference_zero_sum() {
            q.co_free_not_zero_sum.push(e.form.clone());
        }
        if c.is_preference_zero_sum() {
            if !c.sinks.pure_nash.is_empty() {
                q.zero_sum_with_pure_nash.push(e.form.clone());
            }
            if let [sink] = c.sinks.sink_components.as_slice() {
                if !is_subgame_set(sink) && is_near_subgame(sink) {
                    q.zero_sum_sink_not_subgame.push(e.form.clone());
                }
            }
        }
    }
    q
}

/// Named `3 x 3` examples found by structural query.
pub fn find_named_graphs(
    entries: &[ClassEntry],
) -> Result<BTreeMap<&'static str, CanonicalForm>, EnumerationError> {
    let q = named_queries(entries);
    let first = |v: &[CanonicalForm], name: &'static str| {
        v.first().cloned().ok_or(EnumerationError::NotFound(name))
    };
    let mut out = BTreeMap::new();
    for form in &q.six_cycle_without_four_cycle {
        let g = form.graph();
        let sources = g
            .shape()
            .profiles()
            .filter(|&p| g.predecessors(p).next().is_none())
            .count();
        let sinks = g
            .shape()
            .profiles()
            .filter(|&p| g.successors(p).next().is_none())
            .count();
        if sources == 3 {
            out.insert("6-cycle-source", form.clone());
        } else if sinks == 3 {
            out.insert("6-cycle-sink", form.clone());
        }
    }
    for name in ["6-cycle-source", "6-cycle-sink"] {
        if !out.contains_key(name) {
            return Err(EnumerationError::NotFound(name));
        }
    }
    out.insert(
        "reflected-6-cycle",
        first(&q.co_free_not_zero_sum, "reflected-6-cycle")?,
    );
    out.insert(
        "inner-diamond",
        first(&q.zero_sum_with_pure_nash, "inner-diamond")?,
    );
    out.insert(
        "outer-diamond",
        first(&q.zero_sum_sink_not_subgame, "outer-diamond")?,
    );
    Ok(out)
}
