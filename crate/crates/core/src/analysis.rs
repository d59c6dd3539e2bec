//! Strongly connected components, sink components and cycle witnesses.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::game::{Profile, Shape};
use crate::graph::ResponseGraph;

/// Strongly connected components with their condensation.
///
/// Components are numbered in increasing order of their smallest profile
/// (row-major), so the numbering does not depend on traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    shape: Shape,
    components: Vec<Vec<Profile>>,
    component_of: Vec<usize>,
    successors: Vec<Vec<usize>>,
    topological: Vec<usize>,
}

impl SccPartition {
    pub fn components(&self) -> &[Vec<Profile>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, p: Profile) -> usize {
        self.component_of[self.shape.index(p)]
    }

    /// Components directly reachable from `component` in the condensation.
    pub fn successors(&self, component: usize) -> &[usize] {
        &self.successors[component]
    }

    /// Component ids ordered so that every condensation arc goes forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topological
    }

    pub fn is_sink(&self, component: usize) -> bool {
        self.successors[component].is_empty()
    }
}

/// Tarjan's algorithm without recursion. Components come out in reverse
/// topological order (sinks first).
fn tarjan(graph: &ResponseGraph) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let shape = graph.shape();
    let n = shape.node_count();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            graph
                .successors(shape.profile(i))
                .map(|q| shape.index(q))
                .collect()
        })
        .collect();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = succ[v].get(top.1) {
                top.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(component);
            }
        }
    }
    out
}

pub fn scc(graph: &ResponseGraph) -> SccPartition {
    let shape = graph.shape();
    let n = shape.node_count();
    let mut raw = tarjan(graph);
    for c in &mut raw {
        c.sort_unstable();
    }
    // tarjan emits sinks first; reverse for sources first
    let emission: Vec<usize> = (0..raw.len()).rev().collect();
    let mut by_min: Vec<usize> = (0..raw.len()).collect();
    by_min.sort_by_key(|&c| raw[c][0]);
    let mut renumber = vec![0; raw.len()];
    for (new, &old) in by_min.iter().enumerate() {
        renumber[old] = new;
    }
    let mut component_of = vec![0; n];
    for (old, nodes) in raw.iter().enumerate() {
        for &v in nodes {
            component_of[v] = renumber[old];
        }
    }
    let components: Vec<Vec<Profile>> = by_min
        .iter()
        .map(|&old| raw[old].iter().map(|&v| shape.profile(v)).collect())
        .collect();
    let mut successors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); components.len()];
    for (from, to) in graph.arcs() {
        let (a, b) = (
            component_of[shape.index(from)],
            component_of[shape.index(to)],
        );
        if a != b {
            successors[a].insert(b);
        }
    }
    SccPartition {
        shape,
        components,
        component_of,
        successors: successors
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect(),
        topological: emission.into_iter().map(|old| renumber[old]).collect(),
    }
}

/// Sink components and pure Nash equilibria of a response graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SinkReport {
    pub sink_components: Vec<Vec<Profile>>,
    pub pure_nash: Vec<Profile>,
}

pub fn sink_components(graph: &ResponseGraph) -> SinkReport {
    let partition = scc(graph);
    let sink_components = (0..partition.len())
        .filter(|&c| partition.is_sink(c))
        .map(|c| partition.components()[c].clone())
        .collect();
    SinkReport {
        sink_components,
        pure_nash: pure_nash(graph),
    }
}

/// Profiles every comparable profile points to.
pub fn pure_nash(graph: &ResponseGraph) -> Vec<Profile> {
    graph
        .shape()
        .profiles()
        .filter(|&p| graph.neighbors(p).all(|q| graph.has_arc(q, p)))
        .collect()
}

/// For every pair `(s1, s2), (t1, t2)` in the set, `(s1, t2)` or `(t1, s2)`
/// is also in the set.
pub fn is_near_subgame(set: &[Profile]) -> bool {
    let members: BTreeSet<Profile> = set.iter().copied().collect();
    members.iter().all(|a| {
        members.iter().all(|b| {
            members.contains(&Profile::new(a.row, b.col))
                || members.contains(&Profile::new(b.row, a.col))
        })
    })
}

/// The set is a product `R x C` of row and column sets.
pub fn is_subgame_set(set: &[Profile]) -> bool {
    let members: BTreeSet<Profile> = set.iter().copied().collect();
    let rows: BTreeSet<usize> = members.iter().map(|p| p.row).collect();
    let cols: BTreeSet<usize> = members.iter().map(|p| p.col).collect();
    members.len() == rows.len() * cols.len()
}

/// A directed cycle `x1 -> x2 -> ... -> xk -> x1` (no repeated node).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle(pub Vec<Profile>);

impl Cycle {
    pub fn nodes(&self) -> &[Profile] {
        &self.0
    }

    /// Consecutive arcs, including the closing one.
    pub fn steps(&self) -> impl Iterator<Item = (Profile, Profile)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    /// All arcs exist in `graph` and no node repeats.
    pub fn is_valid_in(&self, graph: &ResponseGraph) -> bool {
        let distinct: BTreeSet<_> = self.0.iter().collect();
        self.0.len() >= 2
            && distinct.len() == self.0.len()
            && self
                .steps()
                .all(|(a, b)| crate::game::comparable(a, b).is_some() && graph.has_arc(a, b))
    }

    pub fn has_strict_arc(&self, graph: &ResponseGraph) -> bool {
        self.steps().any(|(a, b)| graph.is_strict(a, b))
    }
}

/// A cycle through at least one strict arc, if the graph has one.
///
/// Within a strongly connected component any strict arc `s -> t` closes into
/// a cycle with a path `t ~> s`, so this is a per-component search.
pub fn find_cycle_with_strict_arc(graph: &ResponseGraph) -> Option<Cycle> {
    let partition = scc(graph);
    for component in partition.components() {
        if component.len() < 2 {
            continue;
        }
        let members: BTreeSet<Profile> = component.iter().copied().collect();
        for &s in component {
            for t in graph.successors(s) {
                if members.contains(&t) && graph.is_strict(s, t) {
                    let back = shortest_path(graph, t, s, &members)
                        .expect("nodes of one component reach each other");
                    let mut nodes = vec![s];
                    nodes.extend_from_slice(&back[..back.len() - 1]);
                    return Some(Cycle(nodes));
                }
            }
        }
    }
    None
}

/// Breadth-first path `from ~> to` using only nodes in `within`.
pub(crate) fn shortest_path(
    graph: &ResponseGraph,
    from: Profile,
    to: Profile,
    within: &BTreeSet<Profile>,
) -> Option<Vec<Profile>> {
    let shape = graph.shape();
    let mut parent: Vec<Option<Profile>> = vec![None; shape.node_count()];
    let mut seen = vec![false; shape.node_count()];
    let mut queue = VecDeque::from([from]);
    seen[shape.index(from)] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while let Some(p) = parent[shape.index(cur)] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for w in graph.successors(v) {
            if within.contains(&w) && !std::mem::replace(&mut seen[shape.index(w)], true) {
                parent[shape.index(w)] = Some(v);
                queue.push_back(w);
            }
        }
    }
    None
}
