//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use respgraph::classification::{
    classify_graph, is_preference_zero_sum, is_strategically_potential, path_weight,
};
use respgraph::enumeration::{
    catalog, census_of, check_claims, cycle_lengths, enumerate_generic, named_queries,
    verify_forms, zero_sum_realizability_oracle, ClassEntry,
};
use respgraph::{Game, Player, Profile, Rational, ResponseGraph, Shape, WeightedResponseGraph};

/// Wall-clock limits, generous relative to a laptop in an optimised test
/// build.
const CENSUS_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_4X4_GAMES: usize = 1000;
const RANDOM_2X3_GAMES: usize = 500;
const CONSTRUCTED_2X3_POTENTIAL_GAMES: usize = 200;
const SEED: u64 = 0x5eed_0001;

struct Outcome {
    failures: usize,
}

impl Outcome {
    fn report(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} [{id}] {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failures += 1;
        }
    }
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn shape(rows: usize, cols: usize) -> Shape {
    Shape::new(rows, cols)
}

fn census_reproduction(out: &mut Outcome, three: &[ClassEntry], three_elapsed: Duration) {
    let start = Instant::now();
    let two = catalog(shape(2, 2)).unwrap();
    let c22 = census_of(shape(2, 2), &two);
    let c23 = census_of(shape(2, 3), &catalog(shape(2, 3)).unwrap());
    let c24 = census_of(shape(2, 4), &catalog(shape(2, 4)).unwrap());
    let c33 = census_of(shape(3, 3), three);
    let elapsed = start.elapsed() + three_elapsed;

    out.report(
        "1a",
        c22.classes == 4,
        format!("2x2 generic classes = {} (expected 4)", c22.classes),
    );
    out.report(
        "1b",
        c23.nondominated == 3,
        format!(
            "2x3 generic nondominated = {} (expected 3)",
            c23.nondominated
        ),
    );
    let k = &c24.categories;
    out.report(
        "1c",
        c24.nondominated == 9 && k.zero_sum() == 2 && k.potential() == 2 && k.neither == 5,
        format!(
            "2x4 nondominated = {}, zero-sum {}, potential {}, neither {} (expected 9/2/2/5)",
            c24.nondominated,
            k.zero_sum(),
            k.potential(),
            k.neither
        ),
    );
    let k = &c33.categories;
    out.report(
        "1d",
        c33.nondominated == 156 && k.zero_sum() == 25 && k.potential() == 30 && k.neither == 101 && k.both == 0,
        format!(
            "3x3 nondominated = {}, zero-sum {}, potential {}, neither {}, both {} (expected 156/25/30/101/0); all classes {}",
            c33.nondominated,
            k.zero_sum(),
            k.potential(),
            k.neither,
            k.both,
            c33.classes
        ),
    );
    out.report(
        "1e",
        elapsed <= CENSUS_LIMIT,
        format!("census runtime {:.2?} (limit {:?})", elapsed, CENSUS_LIMIT),
    );
}

fn named_graphs(out: &mut Outcome, three: &[ClassEntry]) {
    let q = named_queries(three);
    out.report(
        "2a",
        q.six_cycle_without_four_cycle.len() == 2,
        format!(
            "nondominated, 6-cycle without 4-cycle: {} classes (expected 2)",
            q.six_cycle_without_four_cycle.len()
        ),
    );
    out.report(
        "2b",
        q.co_free_not_zero_sum.len() == 1,
        format!(
            "nondominated, no CO subgame, not zero-sum: {} classes (expected 1)",
            q.co_free_not_zero_sum.len()
        ),
    );
    out.report(
        "2c",
        q.zero_sum_with_pure_nash.len() == 1,
        format!(
            "nondominated zero-sum with pure Nash: {} classes (expected 1)",
            q.zero_sum_with_pure_nash.len()
        ),
    );
    out.report(
        "2d",
        !q.zero_sum_sink_not_subgame.is_empty(),
        format!(
            "nondominated zero-sum, sink near-subgame but not subgame: {} classes (expected >= 1)",
            q.zero_sum_sink_not_subgame.len()
        ),
    );
}

fn oracle_equivalence(out: &mut Outcome, three: &[ClassEntry]) {
    for (id, s) in [
        ("3a", shape(2, 2)),
        ("3b", shape(2, 3)),
        ("3c", shape(3, 3)),
    ] {
        let start = Instant::now();
        let oracle = zero_sum_realizability_oracle(s).unwrap();
        let elapsed = start.elapsed();
        let filtered: BTreeSet<_> = if s == shape(3, 3) {
            three
                .iter()
                .filter(|e| e.classification.is_preference_zero_sum())
                .map(|e| e.form.clone())
                .collect()
        } else {
            enumerate_generic(s)
                .unwrap()
                .into_iter()
                .filter(|f| is_preference_zero_sum(&f.graph()).holds())
                .collect()
        };
        out.report(
            id,
            oracle == filtered && elapsed <= ORACLE_LIMIT,
            format!(
                "{s}: oracle {} classes, filtered enumeration {} classes, equal = {}, oracle time {:.2?}",
                oracle.len(),
                filtered.len(),
                oracle == filtered,
                elapsed
            ),
        );
    }
}

fn random_generic_game(rng: &mut ChaCha8Rng, s: Shape) -> Game<Rational> {
    let mut values = |_: ()| {
        let mut v: Vec<i64> = (1..=s.node_count() as i64).collect();
        v.shuffle(rng);
        v
    };
    let (u1, u2) = (values(()), values(()));
    Game::from_fn(s, |player, p| {
        r(if player == Player::One {
            u1[s.index(p)]
        } else {
            u2[s.index(p)]
        })
    })
}

fn theorem_suites(out: &mut Outcome, three: &[ClassEntry]) {
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    let mut invalid = 0;
    for s in [
        shape(1, 1),
        shape(1, 2),
        shape(1, 3),
        shape(2, 2),
        shape(2, 3),
    ] {
        let report = verify_forms(&enumerate_generic(s).unwrap());
        checked += report.checked;
        invalid += report.invalid_inputs.len();
        counterexamples.extend(report.counterexamples);
    }
    let forms: Vec<_> = three.iter().map(|e| e.form.clone()).collect();
    let report = verify_forms(&forms);
    checked += report.checked;
    invalid += report.invalid_inputs.len();
    counterexamples.extend(report.counterexamples);
    out.report(
        "4a",
        counterexamples.is_empty() && invalid == 0,
        format!(
            "all generic classes up to 3x3: {checked} checked, {} counterexamples, {invalid} invalid inputs{}",
            counterexamples.len(),
            counterexamples.first().map(|c| format!(" (first: {} on {})", c.claim, c.graph)).unwrap_or_default()
        ),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    for _ in 0..RANDOM_4X4_GAMES {
        let game = random_generic_game(&mut rng, shape(4, 4));
        let graph = ResponseGraph::from_game(&game);
        assert!(graph.is_generic());
        failures.extend(check_claims(&graph, &classify_graph(&graph)));
    }
    out.report(
        "4b",
        failures.is_empty(),
        format!(
            "{RANDOM_4X4_GAMES} random generic 4x4 games: {} failed claims{}",
            failures.len(),
            failures
                .first()
                .map(|f| format!(" (first: {})", f.0))
                .unwrap_or_default()
        ),
    );
}

/// Sum of `u_i(x_k) - u_i(x_{k+1})` straight from the payoff tables.
fn direct_weight(game: &Game<Rational>, path: &[Profile]) -> Rational {
    path.windows(2)
        .map(|w| {
            let player = if w[0].row != w[1].row {
                Player::One
            } else {
                Player::Two
            };
            game.payoff(player, w[0]) - game.payoff(player, w[1])
        })
        .sum()
}

fn simple_paths(s: Shape, from: Profile, to: Profile) -> Vec<Vec<Profile>> {
    fn go(s: Shape, path: &mut Vec<Profile>, to: Profile, found: &mut Vec<Vec<Profile>>) {
        let last = *path.last().unwrap();
        if last == to {
            found.push(path.clone());
            return;
        }
        for next in s.profiles() {
            let adjacent = (next.row == last.row) != (next.col == last.col);
            if adjacent && !path.contains(&next) {
                path.push(next);
                go(s, path, to, found);
                path.pop();
            }
        }
    }
    let mut found = Vec::new();
    go(s, &mut vec![from], to, &mut found);
    found
}

/// Brute-force path independence; also checks the library path weight on
/// every path visited.
fn path_independent(
    game: &Game<Rational>,
    paths: &[Vec<Vec<Profile>>],
    mismatches: &mut usize,
) -> bool {
    let weighted = WeightedResponseGraph::from_game(game);
    let mut independent = true;
    for group in paths {
        let weights: Vec<Rational> = group.iter().map(|p| direct_weight(game, p)).collect();
        for (p, w) in group.iter().zip(&weights) {
            if path_weight(&weighted, p).unwrap() != *w {
                *mismatches += 1;
            }
        }
        independent &= weights.windows(2).all(|w| w[0] == w[1]);
    }
    independent
}

fn potential_is_exact(game: &Game<Rational>, phi: &respgraph::PotentialFunction<Rational>) -> bool {
    let s = game.shape();
    s.profiles().all(|a| {
        s.profiles().all(|b| match respgraph::comparable(a, b) {
            Some(player) => {
                phi.value(b) - phi.value(a) == game.payoff(player, b) - game.payoff(player, a)
            }
            None => true,
        })
    })
}

fn all_pair_paths(s: Shape) -> Vec<Vec<Vec<Profile>>> {
    let mut out = Vec::new();
    for a in s.profiles() {
        for b in s.profiles() {
            if a < b {
                out.push(simple_paths(s, a, b));
            }
        }
    }
    out
}

fn strategic_checks(out: &mut Outcome) {
    let s22 = shape(2, 2);
    let paths = all_pair_paths(s22);
    let (mut agree, mut total, mut potentials, mut inexact, mut mismatches) = (0, 0, 0, 0, 0);
    for code in 0..5usize.pow(8) {
        let digit = |k: usize| (code / 5usize.pow(k as u32) % 5) as i64 - 2;
        let game = Game::from_fn(s22, |player, p| {
            r(digit(
                s22.index(p) + if player == Player::One { 0 } else { 4 },
            ))
        });
        let phi = is_strategically_potential(&WeightedResponseGraph::from_game(&game));
        let oracle = path_independent(&game, &paths, &mut mismatches);
        total += 1;
        agree += (oracle == phi.is_some()) as usize;
        if let Some(phi) = phi {
            potentials += 1;
            inexact += !potential_is_exact(&game, &phi) as usize;
        }
    }
    out.report(
        "5a",
        agree == total && inexact == 0 && mismatches == 0,
        format!(
            "2x2 payoffs in [-2, 2]: {agree}/{total} agree with brute-force path independence, \
             {potentials} potential, {inexact} inexact potentials, {mismatches} path-weight mismatches"
        ),
    );

    let s23 = shape(2, 3);
    let paths = all_pair_paths(s23);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x23);
    let (mut agree, mut total, mut potentials, mut inexact, mut mismatches) = (0, 0, 0, 0, 0);
    let mut games = Vec::new();
    for _ in 0..RANDOM_2X3_GAMES {
        games.push(Game::from_fn(s23, |_, _| r(rng.gen_range(-2..=2))));
    }
    for _ in 0..CONSTRUCTED_2X3_POTENTIAL_GAMES {
        // u1 = phi + f(col), u2 = phi + g(row), all parts in [-2, 2]
        let phi: Vec<i64> = (0..6).map(|_| rng.gen_range(-2..=2)).collect();
        let f: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let g: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..=2)).collect();
        games.push(Game::from_fn(s23, |player, p| {
            r(phi[s23.index(p)]
                + if player == Player::One {
                    f[p.col]
                } else {
                    g[p.row]
                })
        }));
    }
    for game in &games {
        let phi = is_strategically_potential(&WeightedResponseGraph::from_game(game));
        let oracle = path_independent(game, &paths, &mut mismatches);
        total += 1;
        agree += (oracle == phi.is_some()) as usize;
        if let Some(phi) = phi {
            potentials += 1;
            inexact += !potential_is_exact(game, &phi) as usize;
        }
    }
    out.report(
        "5b",
        agree == total && inexact == 0 && mismatches == 0 && potentials >= CONSTRUCTED_2X3_POTENTIAL_GAMES,
        format!(
            "2x3: {RANDOM_2X3_GAMES} random + {CONSTRUCTED_2X3_POTENTIAL_GAMES} constructed potential games: \
             {agree}/{total} agree, {potentials} potential, {inexact} inexact, {mismatches} path-weight mismatches"
        ),
    );
}

/// Simple directed cycle lengths by plain search, independent of the library.
fn oracle_cycle_lengths(graph: &ResponseGraph) -> BTreeSet<usize> {
    let s = graph.shape();
    let nodes: Vec<Profile> = s.profiles().collect();
    let mut lengths = BTreeSet::new();
    fn go(
        graph: &ResponseGraph,
        nodes: &[Profile],
        path: &mut Vec<usize>,
        lengths: &mut BTreeSet<usize>,
    ) {
        let (first, last) = (path[0], *path.last().unwrap());
        for next in 0..nodes.len() {
            if !graph.has_arc(nodes[last], nodes[next]) {
                continue;
            }
            if next == first {
                lengths.insert(path.len());
            } else if next > first && !path.contains(&next) {
                path.push(next);
                go(graph, nodes, path, lengths);
                path.pop();
            }
        }
    }
    for start in 0..nodes.len() {
        go(graph, &nodes, &mut vec![start], &mut lengths);
    }
    lengths
}

fn five_cycles(out: &mut Outcome, three: &[ClassEntry]) {
    let (mut with_five, mut counterexamples, mut disagreements) = (0, 0, 0);
    for e in three {
        let lengths = oracle_cycle_lengths(&e.graph);
        disagreements += (lengths != cycle_lengths(&e.graph)) as usize;
        if lengths.contains(&5) {
            with_five += 1;
            counterexamples += !lengths.contains(&4) as usize;
        }
    }
    out.report(
        "6",
        counterexamples == 0 && disagreements == 0,
        format!(
            "3x3: {with_five} classes with a 5-cycle, {counterexamples} without a 4-cycle; \
             {disagreements} cycle-length disagreements with the library"
        ),
    );
}

fn main() {
    let mut out = Outcome { failures: 0 };
    let start = Instant::now();
    let three = catalog(shape(3, 3)).unwrap();
    let three_elapsed = start.elapsed();

    census_reproduction(&mut out, &three, three_elapsed);
    named_graphs(&mut out, &three);
    oracle_equivalence(&mut out, &three);
    theorem_suites(&mut out, &three);
    strategic_checks(&mut out);
    five_cycles(&mut out, &three);

    if out.failures > 0 {
        eprintln!("{} acceptance criteria failed", out.failures);
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
