//! Seeded generators for random graphs, blowup sequences and relatively
//! minimal diagrams. Everything is driven by a caller-supplied RNG so runs
//! are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{relatively_minimize, Diagram};
use crate::error::Result;
use crate::graph::{Vertex, WeightedGraph};
use crate::ids::VertexId;
use crate::minimality::{minimal_model, Policy};
use crate::moves::{invert, BirationalSequence, Contraction, Recorder};
use crate::validate::{validate, ValidateOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphShape {
    pub max_vertices: usize,
    pub min_weight: i64,
    pub max_weight: i64,
    pub max_loops: usize,
    pub max_multiplicity: usize,
    /// Chance in percent that a vertex is non-rational.
    pub non_rational_percent: u32,
}

impl Default for GraphShape {
    fn default() -> Self {
        Self {
            max_vertices: 8,
            min_weight: -5,
            max_weight: 5,
            max_loops: 2,
            max_multiplicity: 3,
            non_rational_percent: 0,
        }
    }
}

/// A connected random graph: a random spanning tree, extra edges up to the
/// multiplicity cap, and a few loops.
pub fn random_graph<R: Rng>(rng: &mut R, shape: &GraphShape) -> WeightedGraph {
    let n = rng.gen_range(1..=shape.max_vertices.max(1));
    let mut g = WeightedGraph::new();
    let mut ids = Vec::new();
    for _ in 0..n {
        let rational = rng.gen_range(0..100) >= shape.non_rational_percent;
        let w = rng.gen_range(shape.min_weight..=shape.max_weight);
        let v = g.add_fresh_vertex(w);
        if !rational {
            g = with_rational(g, &v, false);
        }
        ids.push(v);
    }
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_fresh_edge(ids[i].clone(), ids[j].clone())
            .expect("fresh edge");
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let (a, b) = (
            ids.choose(rng).expect("nonempty"),
            ids.choose(rng).expect("nonempty"),
        );
        if a != b && g.multiplicity(a, b) < shape.max_multiplicity {
            g.add_fresh_edge(a.clone(), b.clone()).expect("fresh edge");
        }
    }
    for _ in 0..rng.gen_range(0..=shape.max_loops) {
        let a = ids.choose(rng).expect("nonempty").clone();
        g.add_fresh_edge(a.clone(), a).expect("fresh edge");
    }
    g
}

fn with_rational(g: WeightedGraph, v: &VertexId, rational: bool) -> WeightedGraph {
    let mut h = WeightedGraph::new();
    for (id, d) in g.vertices() {
        let d = if id == v {
            Vertex {
                weight: d.weight,
                rational,
            }
        } else {
            *d
        };
        h.add_vertex(id.clone(), d).expect("copy");
    }
    for (e, a, b) in g.edges() {
        h.add_edge(e.clone(), a.clone(), b.clone()).expect("copy");
    }
    h
}

/// A random connected minimal graph (resampled until one is not contractible).
pub fn random_minimal_graph<R: Rng>(rng: &mut R, shape: &GraphShape) -> WeightedGraph {
    loop {
        let g = random_graph(rng, shape);
        if validate(&g, &ValidateOptions::default()).is_empty() {
            if let Ok((m, _)) = minimal_model(&g, &Policy::default()) {
                return m;
            }
        }
    }
}

/// `k` random blowups (inner, outer or on a loop, as the graph allows).
pub fn random_blowups<R: Rng>(
    rng: &mut R,
    g: &WeightedGraph,
    k: usize,
) -> Result<(BirationalSequence, WeightedGraph)> {
    let mut rec = Recorder::new(g);
    for _ in 0..k {
        let cur = rec.graph();
        let edges: Vec<_> = cur.edge_ids().cloned().collect();
        if !edges.is_empty() && rng.gen_bool(0.5) {
            let e = edges.choose(rng).expect("nonempty").clone();
            rec.inner_blowup(&e)?;
        } else {
            let vs: Vec<_> = cur.vertex_ids().cloned().collect();
            let v = vs.choose(rng).expect("nonempty").clone();
            rec.outer_blowup(&v)?;
        }
    }
    Ok(rec.finish())
}

/// Blows a minimal `g` up `k` times, contracts back to `g` on one side and
/// to a minimal model chosen by a shuffled priority on the other, then peels
/// the common (−1)-vertices.
pub fn random_diagram<R: Rng>(rng: &mut R, g: &WeightedGraph, k: usize) -> Result<Diagram> {
    let (seq, top) = random_blowups(rng, g, k)?;
    let p1 = Contraction::new(&top, invert(&seq)?)?;
    let mut ids: Vec<VertexId> = top.vertex_ids().cloned().collect();
    ids.shuffle(rng);
    let (_, p2) = minimal_model(&top, &Policy::Priority(ids))?;
    relatively_minimize(&Diagram::new(top, p1, p2)?)
}
