use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use respgraph::canonical::decode_hex;
use respgraph::classification::{is_preference_potential, is_preference_zero_sum};
use respgraph::enumeration::{
    catalog, census_of, enumerate_generic, find_named_graphs, ClassEntry,
};
use respgraph::patterns::all_2x2_subgame_patterns;
use respgraph::{canonical_form, isomorphic, Game, Pattern, Player, ResponseGraph, Shape};

fn shape(rows: usize, cols: usize) -> Shape {
    Shape::new(rows, cols)
}

/// All generic graphs of a shape, without any symmetry reduction.
fn all_generic(s: Shape) -> Vec<ResponseGraph> {
    let col_orders: Vec<Vec<usize>> = (0..s.rows).permutations(s.rows).collect();
    let row_orders: Vec<Vec<usize>> = (0..s.cols).permutations(s.cols).collect();
    let choices = std::iter::repeat_n(col_orders.iter(), s.cols)
        .multi_cartesian_product()
        .cartesian_product(
            std::iter::repeat_n(row_orders.iter(), s.rows).multi_cartesian_product(),
        );
    choices
        .map(|(cols, rows)| {
            let game = Game::from_fn(s, |player, p| match player {
                Player::One => cols[p.col][p.row] as i64,
                Player::Two => rows[p.row][p.col] as i64,
            });
            ResponseGraph::from_game(&game)
        })
        .collect()
}

fn adjacency(g: &ResponseGraph) -> Vec<Vec<bool>> {
    let s = g.shape();
    let ps: Vec<_> = s.profiles().collect();
    ps.iter()
        .map(|&a| ps.iter().map(|&b| g.has_arc(a, b)).collect())
        .collect()
}

/// Backtracking digraph isomorphism, blind to the grid.
fn digraph_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used[w] {
                continue;
            }
            let ok = (0..v).all(|u| a[u][v] == b[map[u]][w] && a[v][u] == b[w][map[u]]);
            if ok {
                used[w] = true;
                map.push(w);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// Sorted (out-degree, in-degree) pairs.
fn invariant(adj: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut d: Vec<_> = (0..n)
        .map(|v| {
            (
                (0..n).filter(|&w| adj[v][w]).count(),
                (0..n).filter(|&w| adj[w][v]).count(),
            )
        })
        .collect();
    d.sort_unstable();
    d
}

type Adjacency = Vec<Vec<bool>>;

fn oracle_class_count(s: Shape) -> usize {
    let mut reps: BTreeMap<Vec<(usize, usize)>, Vec<Adjacency>> = BTreeMap::new();
    for g in all_generic(s) {
        let adj = adjacency(&g);
        let bucket = reps.entry(invariant(&adj)).or_default();
        if !bucket.iter().any(|r| digraph_isomorphic(r, &adj)) {
            bucket.push(adj);
        }
    }
    reps.values().map(Vec::len).sum()
}

#[test]
fn class_counts_match_independent_deduplication() {
    for s in [
        shape(1, 1),
        shape(1, 3),
        shape(2, 2),
        shape(2, 3),
        shape(2, 4),
        shape(3, 3),
    ] {
        assert_eq!(
            enumerate_generic(s).unwrap().len(),
            oracle_class_count(s),
            "{s}"
        );
    }
}

#[test]
fn regression_class_totals() {
    let totals: Vec<usize> = [shape(2, 2), shape(2, 3), shape(2, 4), shape(3, 3)]
        .into_iter()
        .map(|s| enumerate_generic(s).unwrap().len())
        .collect();
    assert_eq!(totals, vec![4, 24, 198, 669]);
}

#[test]
fn every_generic_graph_has_its_class() {
    for s in [shape(2, 3), shape(3, 2)] {
        let classes: BTreeSet<_> = enumerate_generic(s).unwrap().into_iter().collect();
        for g in all_generic(s) {
            assert!(classes.contains(&canonical_form(&g)));
        }
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| enumerate_generic(shape(3, 3)).unwrap())
            .iter()
            .map(|f| f.encoding())
            .collect::<Vec<_>>()
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
}

/// Orbit key under row and column permutations only.
fn relabel_key(g: &ResponseGraph) -> Vec<bool> {
    let s = g.shape();
    (0..s.rows)
        .permutations(s.rows)
        .cartesian_product((0..s.cols).permutations(s.cols).collect::<Vec<_>>())
        .map(|(rp, cp)| adjacency(&g.permute(&rp, &cp)).concat())
        .min()
        .unwrap()
}

#[test]
fn reflection_dual_counting() {
    for s in [shape(2, 2), shape(2, 3), shape(2, 4), shape(3, 3)] {
        let mut classes: BTreeMap<Vec<bool>, ResponseGraph> = BTreeMap::new();
        for g in all_generic(s) {
            classes.entry(relabel_key(&g)).or_insert(g);
        }
        let reflected: BTreeSet<Vec<bool>> = classes
            .values()
            .map(|g| relabel_key(&g.reflect(Player::Two)))
            .collect();
        assert_eq!(
            reflected.len(),
            classes.len(),
            "reflection permutes the classes of {s}"
        );
        let potential = classes
            .values()
            .filter(|g| is_preference_potential(g).holds())
            .count();
        let zero_sum = classes
            .values()
            .filter(|g| is_preference_zero_sum(&g.reflect(Player::Two)).holds())
            .count();
        assert_eq!(potential, zero_sum, "{s}");
    }
}

#[test]
fn player_exchange_breaks_dual_counting_on_square_shapes() {
    // with the exchange folded into isomorphism, reflection in one player is
    // not a map on classes, and the counts differ at 3x3
    let count = |s: Shape| {
        let forms = enumerate_generic(s).unwrap();
        let potential = forms
            .iter()
            .filter(|f| is_preference_potential(&f.graph()).holds())
            .count();
        let zero_sum = forms
            .iter()
            .filter(|f| is_preference_zero_sum(&f.graph()).holds())
            .count();
        let images: BTreeSet<_> = forms
            .iter()
            .map(|f| canonical_form(&f.graph().reflect(Player::Two)))
            .collect();
        (forms.len(), images.len(), potential, zero_sum)
    };
    assert_eq!(count(shape(2, 3)), (24, 24, 17, 17));
    assert_eq!(count(shape(2, 4)), (198, 198, 106, 106));
    assert_eq!(count(shape(3, 3)), (669, 522, 280, 269));
}

fn nondominated(s: Shape) -> Vec<ClassEntry> {
    catalog(s)
        .unwrap()
        .into_iter()
        .filter(|e| e.nondominated)
        .collect()
}

fn subgame_counts(g: &ResponseGraph) -> BTreeMap<Pattern, usize> {
    let mut counts = BTreeMap::new();
    for sub in all_2x2_subgame_patterns(g) {
        *counts.entry(sub.forms.exact().unwrap()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn the_three_nondominated_2x3_graphs() {
    let entries = nondominated(shape(2, 3));
    let by_subgames: BTreeMap<Vec<(Pattern, usize)>, &ClassEntry> = entries
        .iter()
        .map(|e| (subgame_counts(&e.graph).into_iter().collect(), e))
        .collect();
    use Pattern::*;
    let mp = by_subgames[&vec![(MatchingPennies, 2), (SingleDominance, 1)]];
    let co = by_subgames[&vec![(Coordination, 2), (SingleDominance, 1)]];
    let mpco = by_subgames[&vec![
        (MatchingPennies, 1),
        (Coordination, 1),
        (SingleDominance, 1),
    ]];
    assert!(
        mp.classification.is_preference_zero_sum() && !mp.classification.is_preference_potential()
    );
    assert!(
        co.classification.is_preference_potential() && !co.classification.is_preference_zero_sum()
    );
    assert!(
        !mpco.classification.is_preference_potential()
            && !mpco.classification.is_preference_zero_sum()
    );
    assert!(isomorphic(&mp.graph.reflect(Player::Two), &co.graph));
    for e in [mp, co, mpco] {
        assert!(isomorphic(&e.graph.reverse(), &e.graph));
    }
    for p in [Player::One, Player::Two] {
        assert!(isomorphic(&mpco.graph.reflect(p), &mpco.graph));
    }
}

#[test]
fn named_3x3_graphs() {
    let entries = catalog(shape(3, 3)).unwrap();
    let named = find_named_graphs(&entries).unwrap();
    let g = |name: &str| named[name].graph();
    let (source, sink, reflected) = (
        g("6-cycle-source"),
        g("6-cycle-sink"),
        g("reflected-6-cycle"),
    );
    assert!(isomorphic(&source.reverse(), &sink));
    for p in [Player::One, Player::Two] {
        assert!(isomorphic(&source.reflect(p), &reflected));
        assert!(isomorphic(&sink.reflect(p), &reflected));
    }
    assert!(isomorphic(&reflected.reverse(), &reflected));
    for x in [&source, &sink] {
        assert!(!is_preference_potential(x).holds());
        assert!(all_2x2_subgame_patterns(x)
            .iter()
            .all(|s| !s.forms.is_exactly(Pattern::MatchingPennies)));
    }
    let (inner, outer) = (g("inner-diamond"), g("outer-diamond"));
    assert!(isomorphic(&inner.reverse(), &outer));
    for x in [&inner, &outer] {
        assert!(is_preference_zero_sum(x).holds());
        assert!(respgraph::scc(x).len() > 1, "not strongly connected");
    }
    // the named graphs are fixed points of the catalog encoding
    for form in named.values() {
        assert_eq!(decode_hex(&form.to_hex()).unwrap(), form.graph());
    }
}

#[test]
fn census_invariants() {
    for s in [shape(2, 2), shape(2, 3), shape(2, 4), shape(3, 3)] {
        let census = census_of(s, &catalog(s).unwrap());
        assert_eq!(census.categories.total(), census.nondominated);
        assert_eq!(census.all_categories.total(), census.classes);
        assert_eq!(census.categories.both, 0, "{s}");
        assert_eq!(
            census.sink_histogram.values().sum::<usize>(),
            census.classes
        );
        // every class that is both is dominance-solvable
        assert!(census.all_categories.both <= census.dominance_solvable);
    }
}
