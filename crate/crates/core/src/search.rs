//! Bounded breadth-first search over single blowups and blowdowns, with
//! deduplication by canonical key.

use std::collections::{HashMap, VecDeque};

use crate::graph::WeightedGraph;
use crate::iso::canonical_key;
use crate::moves::{apply_move, BirationalSequence, Move};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: usize,
    pub max_nodes: usize,
    /// Outer blowups change the shape of circular graphs, so they can be
    /// switched off.
    pub outer: bool,
}

/// Every graph one move away from `g` within the vertex cap, together with
/// the resolved move. Parallel edges give the same result, so only one per
/// endpoint pair is blown up.
pub fn neighbours(g: &WeightedGraph, limits: &Limits) -> Vec<(Move, WeightedGraph)> {
    let mut out = Vec::new();
    let mut push = |m: Move| {
        let mut h = g.clone();
        if let Ok(resolved) = apply_move(&mut h, &m) {
            out.push((resolved, h));
        }
    };
    for v in g.contractible_vertices() {
        if g.degree(&v).unwrap_or(0) > 0 {
            push(Move::Blowdown {
                vertex: v,
                undo: None,
            });
        }
    }
    if g.len() < limits.max_vertices {
        let mut seen = std::collections::BTreeSet::new();
        let mut scratch = g.clone();
        let fresh = scratch.fresh_vertex_id();
        for (e, a, b) in g.edges() {
            if seen.insert((a.clone(), b.clone())) {
                push(Move::InnerBlowup {
                    edge: e.clone(),
                    new_vertex: fresh.clone(),
                    new_edges: None,
                });
            }
        }
        if limits.outer {
            for v in g.vertex_ids() {
                push(Move::OuterBlowup {
                    at: v.clone(),
                    new_vertex: fresh.clone(),
                    new_edge: None,
                });
            }
        }
    }
    out
}

/// Outcome of [`explore`].
pub struct Exploration {
    pub graphs: Vec<WeightedGraph>,
    /// True when the frontier emptied before any cap was hit.
    pub closed: bool,
}

/// All graphs reachable from `g` within the limits, `g` first, in BFS order.
pub fn explore(g: &WeightedGraph, limits: &Limits) -> Exploration {
    let mut seen: HashMap<String, ()> = HashMap::new();
    seen.insert(canonical_key(g), ());
    let mut graphs = vec![g.clone()];
    let mut queue = VecDeque::from([0usize]);
    let mut closed = true;
    while let Some(i) = queue.pop_front() {
        let cur = graphs[i].clone();
        if cur.len() + 1 > limits.max_vertices {
            closed = false;
        }
        for (_, h) in neighbours(&cur, limits) {
            let key = canonical_key(&h);
            if seen.contains_key(&key) {
                continue;
            }
            if graphs.len() >= limits.max_nodes {
                return Exploration {
                    graphs,
                    closed: false,
                };
            }
            seen.insert(key, ());
            graphs.push(h);
            queue.push_back(graphs.len() - 1);
        }
    }
    Exploration { graphs, closed }
}

/// Shortest sequence (in moves) from `g` to a graph satisfying `goal`.
pub fn find_sequence(
    g: &WeightedGraph,
    limits: &Limits,
    goal: impl Fn(&WeightedGraph) -> bool,
) -> Option<(BirationalSequence, WeightedGraph)> {
    let mut parent: Vec<Option<(usize, Move)>> = vec![None];
    let mut graphs = vec![g.clone()];
    let mut seen: HashMap<String, ()> = HashMap::from([(canonical_key(g), ())]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if goal(&graphs[i]) {
            let mut steps = Vec::new();
            let mut at = i;
            while let Some((p, m)) = parent[at].clone() {
                steps.push(m);
                at = p;
            }
            steps.reverse();
            return BirationalSequence::record(g, &steps).ok();
        }
        let cur = graphs[i].clone();
        for (m, h) in neighbours(&cur, limits) {
            let key = canonical_key(&h);
            if seen.contains_key(&key) {
                continue;
            }
            if graphs.len() >= limits.max_nodes {
                return None;
            }
            seen.insert(key, ());
            graphs.push(h);
            parent.push(Some((i, m)));
            queue.push_back(graphs.len() - 1);
        }
    }
    None
}
