//! Blowups, blowdowns, relabelings, replayable sequences and contractions.
//!
//! Every move records the ids it creates or destroys, so a resolved sequence
//! can be replayed exactly and inverted without re-deriving any choice.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Subgraph, Vertex, WeightedGraph};
use crate::ids::{EdgeId, VertexId};
use crate::iso::canonical_key;

/// What a blowdown destroyed, i.e. the blowup that undoes it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Undo {
    Outer {
        neighbor: VertexId,
        edge: EdgeId,
    },
    /// `split[0]` joins the first stored endpoint of `merged_edge`.
    Inner {
        merged_edge: EdgeId,
        split: [EdgeId; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Move {
    InnerBlowup {
        edge: EdgeId,
        #[serde(rename = "new")]
        new_vertex: VertexId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        new_edges: Option<[EdgeId; 2]>,
    },
    OuterBlowup {
        at: VertexId,
        #[serde(rename = "new")]
        new_vertex: VertexId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        new_edge: Option<EdgeId>,
    },
    Blowdown {
        vertex: VertexId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        undo: Option<Undo>,
    },
    Relabel {
        map: BTreeMap<VertexId, VertexId>,
    },
}

impl Move {
    pub fn is_blowup(&self) -> bool {
        matches!(self, Move::InnerBlowup { .. } | Move::OuterBlowup { .. })
    }

    fn is_resolved(&self) -> bool {
        match self {
            Move::InnerBlowup { new_edges, .. } => new_edges.is_some(),
            Move::OuterBlowup { new_edge, .. } => new_edge.is_some(),
            Move::Blowdown { undo, .. } => undo.is_some(),
            Move::Relabel { .. } => true,
        }
    }

    /// The move undoing this one. Requires a resolved move.
    pub fn inverse(&self) -> Option<Move> {
        Some(match self {
            Move::InnerBlowup {
                edge,
                new_vertex,
                new_edges,
            } => Move::Blowdown {
                vertex: new_vertex.clone(),
                undo: Some(Undo::Inner {
                    merged_edge: edge.clone(),
                    split: new_edges.clone()?,
                }),
            },
            Move::OuterBlowup {
                at,
                new_vertex,
                new_edge,
            } => Move::Blowdown {
                vertex: new_vertex.clone(),
                undo: Some(Undo::Outer {
                    neighbor: at.clone(),
                    edge: new_edge.clone()?,
                }),
            },
            Move::Blowdown { vertex, undo } => match undo.as_ref()? {
                Undo::Outer { neighbor, edge } => Move::OuterBlowup {
                    at: neighbor.clone(),
                    new_vertex: vertex.clone(),
                    new_edge: Some(edge.clone()),
                },
                Undo::Inner { merged_edge, split } => Move::InnerBlowup {
                    edge: merged_edge.clone(),
                    new_vertex: vertex.clone(),
                    new_edges: Some(split.clone()),
                },
            },
            Move::Relabel { map } => Move::Relabel {
                map: map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            },
        })
    }
}

fn add_new_vertex(g: &mut WeightedGraph, id: &VertexId) -> Result<()> {
    g.add_vertex(id.clone(), Vertex::rational(-1))
}

fn edge_or_fresh(g: &mut WeightedGraph, given: Option<&EdgeId>) -> EdgeId {
    given.cloned().unwrap_or_else(|| g.fresh_edge_id())
}

/// Applies one move in place and returns it fully resolved.
pub fn apply_move(g: &mut WeightedGraph, m: &Move) -> Result<Move> {
    match m {
        Move::InnerBlowup {
            edge,
            new_vertex,
            new_edges,
        } => {
            let (a, b) = g
                .endpoints(edge)
                .map(|(a, b)| (a.clone(), b.clone()))
                .ok_or_else(|| Error::UnknownEdge(edge.clone()))?;
            if g.contains_vertex(new_vertex) {
                return Err(Error::DuplicateVertex(new_vertex.clone()));
            }
            g.remove_edge(edge)?;
            add_new_vertex(g, new_vertex)?;
            let e0 = edge_or_fresh(g, new_edges.as_ref().map(|p| &p[0]));
            g.add_edge(e0.clone(), a.clone(), new_vertex.clone())?;
            let e1 = edge_or_fresh(g, new_edges.as_ref().map(|p| &p[1]));
            g.add_edge(e1.clone(), new_vertex.clone(), b.clone())?;
            if a == b {
                g.add_weight(&a, -4)?;
            } else {
                g.add_weight(&a, -1)?;
                g.add_weight(&b, -1)?;
            }
            Ok(Move::InnerBlowup {
                edge: edge.clone(),
                new_vertex: new_vertex.clone(),
                new_edges: Some([e0, e1]),
            })
        }
        Move::OuterBlowup {
            at,
            new_vertex,
            new_edge,
        } => {
            if !g.contains_vertex(at) {
                return Err(Error::UnknownVertex(at.clone()));
            }
            add_new_vertex(g, new_vertex)?;
            let e = edge_or_fresh(g, new_edge.as_ref());
            g.add_edge(e.clone(), at.clone(), new_vertex.clone())?;
            g.add_weight(at, -1)?;
            Ok(Move::OuterBlowup {
                at: at.clone(),
                new_vertex: new_vertex.clone(),
                new_edge: Some(e),
            })
        }
        Move::Blowdown { vertex, undo } => {
            let merged = match undo {
                Some(Undo::Inner { merged_edge, .. }) => Some(merged_edge),
                _ => None,
            };
            let undo = blowdown_in_place(g, vertex, merged)?;
            Ok(Move::Blowdown {
                vertex: vertex.clone(),
                undo: Some(undo),
            })
        }
        Move::Relabel { map } => {
            let full: BTreeMap<VertexId, VertexId> = g
                .vertex_ids()
                .map(|v| (v.clone(), map.get(v).cloned().unwrap_or_else(|| v.clone())))
                .collect();
            if map.keys().any(|k| !g.contains_vertex(k)) {
                return Err(Error::BadRelabel(
                    "map names a vertex not in the graph".into(),
                ));
            }
            *g = g.relabel(&full)?;
            Ok(m.clone())
        }
    }
}

fn blowdown_in_place(g: &mut WeightedGraph, v: &VertexId, merged: Option<&EdgeId>) -> Result<Undo> {
    let fail = |reason: &str| Error::BlowdownPrecondition {
        vertex: v.clone(),
        reason: reason.into(),
    };
    let data = *g.vertex(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
    if !data.rational {
        return Err(fail("vertex is not rational"));
    }
    if data.weight != -1 {
        return Err(fail("weight is not -1"));
    }
    if g.loops_at(v) > 0 {
        return Err(fail("vertex carries a loop"));
    }
    let mut incident = g.incident_edges(v);
    match incident.len() {
        0 => Err(fail("vertex is isolated")),
        1 => {
            let e = incident.pop().expect("one edge");
            let (a, b) = g.endpoints(&e).expect("edge present");
            let u = if a == v { b.clone() } else { a.clone() };
            g.remove_vertex(v)?;
            g.add_weight(&u, 1)?;
            Ok(Undo::Outer {
                neighbor: u,
                edge: e,
            })
        }
        2 => {
            let other = |e: &EdgeId| {
                let (a, b) = g.endpoints(e).expect("edge present");
                if a == v {
                    b.clone()
                } else {
                    a.clone()
                }
            };
            let (mut e0, mut e1) = (incident[0].clone(), incident[1].clone());
            let (mut u, mut w) = (other(&e0), other(&e1));
            if w < u {
                std::mem::swap(&mut u, &mut w);
                std::mem::swap(&mut e0, &mut e1);
            }
            g.remove_vertex(v)?;
            let m = merged.cloned().unwrap_or_else(|| g.fresh_edge_id());
            g.add_edge(m.clone(), u.clone(), w.clone())?;
            if u == w {
                g.add_weight(&u, 4)?;
            } else {
                g.add_weight(&u, 1)?;
                g.add_weight(&w, 1)?;
            }
            Ok(Undo::Inner {
                merged_edge: m,
                split: [e0, e1],
            })
        }
        _ => Err(fail("degree is at least 3")),
    }
}

pub fn inner_blowup(g: &WeightedGraph, e: &EdgeId) -> Result<(WeightedGraph, VertexId)> {
    let mut h = g.clone();
    let n = h.fresh_vertex_id();
    apply_move(
        &mut h,
        &Move::InnerBlowup {
            edge: e.clone(),
            new_vertex: n.clone(),
            new_edges: None,
        },
    )?;
    Ok((h, n))
}

pub fn outer_blowup(g: &WeightedGraph, v: &VertexId) -> Result<(WeightedGraph, VertexId)> {
    let mut h = g.clone();
    let n = h.fresh_vertex_id();
    apply_move(
        &mut h,
        &Move::OuterBlowup {
            at: v.clone(),
            new_vertex: n.clone(),
            new_edge: None,
        },
    )?;
    Ok((h, n))
}

pub fn blowdown(g: &WeightedGraph, v: &VertexId) -> Result<WeightedGraph> {
    let mut h = g.clone();
    blowdown_in_place(&mut h, v, None)?;
    Ok(h)
}

/// An ordered list of moves together with the canonical key of the start
/// graph and of every intermediate graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirationalSequence {
    #[serde(rename = "start")]
    pub start_key: String,
    pub steps: Vec<Move>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fingerprints: Vec<String>,
}

impl BirationalSequence {
    pub fn empty(g: &WeightedGraph) -> Self {
        Self {
            start_key: canonical_key(g),
            steps: Vec::new(),
            fingerprints: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end_key(&self) -> &str {
        self.fingerprints.last().unwrap_or(&self.start_key)
    }

    /// Replays `steps` on `g`, producing a resolved sequence and the final graph.
    pub fn record(g: &WeightedGraph, steps: &[Move]) -> Result<(Self, WeightedGraph)> {
        let mut rec = Recorder::new(g);
        for (index, m) in steps.iter().enumerate() {
            rec.push(m).map_err(|e| Error::Step {
                index,
                source: Box::new(e),
            })?;
        }
        Ok(rec.finish())
    }

    /// Appends `other`, whose start must match this sequence's end.
    pub fn then(mut self, other: &BirationalSequence) -> Result<Self> {
        if other.start_key != self.end_key() {
            return Err(Error::KeyMismatch);
        }
        self.steps.extend(other.steps.iter().cloned());
        self.fingerprints.extend(other.fingerprints.iter().cloned());
        Ok(self)
    }
}

/// Builds a resolved sequence while applying moves to a working graph.
#[derive(Clone, Debug)]
pub struct Recorder {
    seq: BirationalSequence,
    graph: WeightedGraph,
}

impl Recorder {
    pub fn new(g: &WeightedGraph) -> Self {
        Self {
            seq: BirationalSequence::empty(g),
            graph: g.clone(),
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn push(&mut self, m: &Move) -> Result<Move> {
        let mut h = self.graph.clone();
        let resolved = apply_move(&mut h, m)?;
        self.graph = h;
        self.seq.steps.push(resolved.clone());
        self.seq.fingerprints.push(canonical_key(&self.graph));
        Ok(resolved)
    }

    pub fn inner_blowup(&mut self, e: &EdgeId) -> Result<VertexId> {
        let n = self.graph.fresh_vertex_id();
        self.push(&Move::InnerBlowup {
            edge: e.clone(),
            new_vertex: n.clone(),
            new_edges: None,
        })?;
        Ok(n)
    }

    pub fn outer_blowup(&mut self, v: &VertexId) -> Result<VertexId> {
        let n = self.graph.fresh_vertex_id();
        self.push(&Move::OuterBlowup {
            at: v.clone(),
            new_vertex: n.clone(),
            new_edge: None,
        })?;
        Ok(n)
    }

    pub fn blowdown(&mut self, v: &VertexId) -> Result<()> {
        self.push(&Move::Blowdown {
            vertex: v.clone(),
            undo: None,
        })
        .map(|_| ())
    }

    pub fn append(&mut self, seq: &BirationalSequence) -> Result<()> {
        if seq.start_key != canonical_key(&self.graph) {
            return Err(Error::KeyMismatch);
        }
        for m in &seq.steps {
            self.push(m)?;
        }
        Ok(())
    }

    pub fn finish(self) -> (BirationalSequence, WeightedGraph) {
        (self.seq, self.graph)
    }
}

/// Replays `seq` from `g`; returns every intermediate graph, `g` first.
pub fn apply(g: &WeightedGraph, seq: &BirationalSequence) -> Result<Vec<WeightedGraph>> {
    if canonical_key(g) != seq.start_key {
        return Err(Error::KeyMismatch);
    }
    let mut trace = vec![g.clone()];
    let mut cur = g.clone();
    for (index, m) in seq.steps.iter().enumerate() {
        apply_move(&mut cur, m).map_err(|e| Error::Step {
            index,
            source: Box::new(e),
        })?;
        if let Some(fp) = seq.fingerprints.get(index) {
            if *fp != canonical_key(&cur) {
                return Err(Error::FingerprintMismatch(index));
            }
        }
        trace.push(cur.clone());
    }
    Ok(trace)
}

/// The reverse sequence. Needs resolved steps and fingerprints, as produced
/// by [`Recorder`] or [`BirationalSequence::record`].
pub fn invert(seq: &BirationalSequence) -> Result<BirationalSequence> {
    if seq.fingerprints.len() != seq.steps.len() || !seq.steps.iter().all(Move::is_resolved) {
        return Err(Error::Invalid(
            "sequence is not resolved; replay it first".into(),
        ));
    }
    let steps = seq
        .steps
        .iter()
        .rev()
        .map(|m| m.inverse().expect("resolved"))
        .collect();
    let mut fingerprints: Vec<String> = seq.fingerprints.iter().rev().skip(1).cloned().collect();
    if !seq.steps.is_empty() {
        fingerprints.push(seq.start_key.clone());
    }
    Ok(BirationalSequence {
        start_key: seq.end_key().to_string(),
        steps,
        fingerprints,
    })
}

/// Where an elementary transformation blows up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Through {
    Edge(EdgeId),
    Outer,
}

/// Blowup next to an at-most-linear 0-vertex `v` followed by the blowdown of
/// `v`. The inner form lowers the neighbour across `through` by one and
/// raises the other neighbour by one; the outer form turns `[[0,c]]` into
/// `[[0,c+1]]`.
pub fn elementary_transformation(
    g: &WeightedGraph,
    v: &VertexId,
    through: &Through,
) -> Result<BirationalSequence> {
    let fail = |reason: &str| Error::ElementaryPrecondition {
        vertex: v.clone(),
        reason: reason.into(),
    };
    let data = *g.vertex(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
    let deg = g.degree(v)?;
    if !data.rational || data.weight != 0 {
        return Err(fail("not a rational 0-vertex"));
    }
    if deg > 2 || g.loops_at(v) > 0 {
        return Err(fail("vertex is not at most linear"));
    }
    let mut rec = Recorder::new(g);
    match through {
        Through::Edge(e) => {
            if g.neighbors(v).values().any(|&m| m > 1) {
                return Err(fail("vertex has a multiple edge"));
            }
            if !g.incident_edges(v).contains(e) {
                return Err(fail("edge is not incident"));
            }
            rec.inner_blowup(e)?;
        }
        Through::Outer => {
            if deg > 1 {
                return Err(fail("outer form needs a vertex of degree at most 1"));
            }
            rec.outer_blowup(v)?;
        }
    }
    rec.blowdown(v)?;
    Ok(rec.finish().0)
}

/// A blowdown-only sequence with the set of source vertices it removes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Contraction {
    pub source: WeightedGraph,
    pub seq: BirationalSequence,
    pub contracted: BTreeSet<VertexId>,
    #[serde(skip)]
    target: Option<WeightedGraph>,
}

impl PartialEq for Contraction {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.seq == other.seq && self.contracted == other.contracted
    }
}

impl Eq for Contraction {}

impl Contraction {
    pub fn identity(g: &WeightedGraph) -> Self {
        Self {
            source: g.clone(),
            seq: BirationalSequence::empty(g),
            contracted: BTreeSet::new(),
            target: Some(g.clone()),
        }
    }

    pub fn new(source: &WeightedGraph, seq: BirationalSequence) -> Result<Self> {
        if seq.steps.iter().any(Move::is_blowup) {
            return Err(Error::NotContraction);
        }
        let trace = apply(source, &seq)?;
        let resolved = if seq.steps.iter().all(Move::is_resolved)
            && seq.fingerprints.len() == seq.steps.len()
        {
            seq
        } else {
            BirationalSequence::record(source, &seq.steps)?.0
        };
        let mut origin: BTreeMap<VertexId, VertexId> = source
            .vertex_ids()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        let mut contracted = BTreeSet::new();
        for m in &resolved.steps {
            match m {
                Move::Blowdown { vertex, .. } => {
                    contracted.insert(origin.remove(vertex).expect("tracked vertex"));
                }
                Move::Relabel { map } => {
                    origin = origin
                        .into_iter()
                        .map(|(cur, src)| (map.get(&cur).cloned().unwrap_or(cur), src))
                        .collect();
                }
                _ => unreachable!("blowups rejected above"),
            }
        }
        let target = trace.into_iter().last();
        Ok(Self {
            source: source.clone(),
            seq: resolved,
            contracted,
            target,
        })
    }

    /// Contracts the listed vertices in order.
    pub fn from_blowdowns<'a>(
        source: &WeightedGraph,
        order: impl IntoIterator<Item = &'a VertexId>,
    ) -> Result<Self> {
        let mut rec = Recorder::new(source);
        for (index, v) in order.into_iter().enumerate() {
            rec.blowdown(v).map_err(|e| Error::Step {
                index,
                source: Box::new(e),
            })?;
        }
        Self::new(source, rec.finish().0)
    }

    pub fn target(&self) -> WeightedGraph {
        match &self.target {
            Some(t) => t.clone(),
            None => apply(&self.source, &self.seq)
                .expect("valid contraction")
                .pop()
                .expect("nonempty trace"),
        }
    }

    /// Vertices blown down, in order, as ids at the time of each blowdown.
    pub fn blowdown_order(&self) -> Vec<VertexId> {
        self.seq
            .steps
            .iter()
            .filter_map(|m| match m {
                Move::Blowdown { vertex, .. } => Some(vertex.clone()),
                _ => None,
            })
            .collect()
    }

    /// Source id to target id for every surviving vertex.
    pub fn vertex_map(&self) -> BTreeMap<VertexId, VertexId> {
        let mut cur: BTreeMap<VertexId, VertexId> = self
            .source
            .vertex_ids()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        for m in &self.seq.steps {
            if let Move::Relabel { map } = m {
                for img in cur.values_mut() {
                    if let Some(n) = map.get(img) {
                        *img = n.clone();
                    }
                }
            }
        }
        cur.retain(|src, _| !self.contracted.contains(src));
        cur
    }

    /// `self` followed by `next`, whose source must equal this target.
    pub fn compose(&self, next: &Contraction) -> Result<Contraction> {
        if next.source != self.target() {
            return Err(Error::NonComposable(0));
        }
        let seq = self.seq.clone().then(&next.seq)?;
        Contraction::new(&self.source, seq)
    }
}

/// The largest part of `p` that never contracts `v`: the steps before `v` is
/// blown down, then every later blowdown that is still valid, in order,
/// repeated until nothing more applies.
pub fn restrict_preserving(p: &Contraction, v: &VertexId) -> Result<Contraction> {
    if !p.source.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    if !p.contracted.contains(v) {
        return Ok(p.clone());
    }
    let mut rec = Recorder::new(&p.source);
    let mut current = v.clone();
    let mut rest: Vec<&Move> = Vec::new();
    let mut cut = false;
    for m in &p.seq.steps {
        if cut {
            rest.push(m);
            continue;
        }
        match m {
            Move::Blowdown { vertex, .. } if *vertex == current => cut = true,
            Move::Relabel { map } => {
                if let Some(n) = map.get(&current) {
                    current = n.clone();
                }
                rec.push(m)?;
            }
            _ => {
                rec.push(m)?;
            }
        }
    }
    let mut done = vec![false; rest.len()];
    loop {
        let mut progress = false;
        for (i, m) in rest.iter().enumerate() {
            if done[i] {
                continue;
            }
            if let Move::Blowdown { vertex, .. } = m {
                if *vertex != current && rec.blowdown(vertex).is_ok() {
                    done[i] = true;
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }
    Contraction::new(&p.source, rec.finish().0)
}

/// Inductive preimage of a subgraph of `p`'s target. An inner blowup of an
/// edge of the subgraph replaces that edge by the path through the new
/// vertex; outer blowups add nothing.
pub fn preimage_subgraph(p: &Contraction, sub: &Subgraph) -> Result<Subgraph> {
    sub.check_in(&p.target())?;
    let mut cur = sub.clone();
    for m in p.seq.steps.iter().rev() {
        match m {
            Move::Blowdown {
                vertex,
                undo: Some(Undo::Inner { merged_edge, split }),
            } => {
                if cur.edges.remove(merged_edge) {
                    cur.vertices.insert(vertex.clone());
                    cur.edges.extend(split.iter().cloned());
                }
            }
            Move::Blowdown { .. } => {}
            Move::Relabel { map } => {
                let back: BTreeMap<&VertexId, &VertexId> =
                    map.iter().map(|(a, b)| (b, a)).collect();
                cur.vertices = cur
                    .vertices
                    .into_iter()
                    .map(|x| back.get(&x).map_or(x.clone(), |y| (*y).clone()))
                    .collect();
            }
            _ => unreachable!("contractions hold no blowups"),
        }
    }
    Ok(cur)
}

/// Two contractions of the same graph are equivalent exactly when they
/// contract the same vertices.
pub fn are_equivalent_morphisms(p1: &Contraction, p2: &Contraction) -> Result<bool> {
    if p1.source != p2.source {
        return Err(Error::SourceMismatch);
    }
    Ok(p1.contracted == p2.contracted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::notation::parse;

    fn iso(g: &WeightedGraph, s: &str) -> bool {
        are_isomorphic(g, &parse(s).unwrap()).is_some()
    }

    fn e(s: &str) -> EdgeId {
        EdgeId::from(s)
    }

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    #[test]
    fn nodal_cubic_blowups() {
        let g = parse("((9))").unwrap();
        let (g1, n) = inner_blowup(&g, &e("e0")).unwrap();
        assert!(iso(&g1, "((5,-1))"));
        let edge = g1.incident_edges(&n)[0].clone();
        let (g2, _) = inner_blowup(&g1, &edge).unwrap();
        assert!(iso(&g2, "((4,-1,-2))"));
        let (g3, _) = inner_blowup(&parse("[[-2,-2]]").unwrap(), &e("e0")).unwrap();
        assert!(iso(&g3, "[[-3,-1,-3]]"));
    }

    #[test]
    fn outer_blowups() {
        let (g, n) = outer_blowup(&parse("[[0]]").unwrap(), &v("v0")).unwrap();
        assert!(iso(&g, "[[-1,-1]]"));
        let (g, _) = outer_blowup(&g, &n).unwrap();
        assert!(iso(&g, "[[-1,-2,-1]]"));
        let (g, n) = outer_blowup(&parse("((9))").unwrap(), &v("v0")).unwrap();
        assert_eq!(g.weight(&v("v0")).unwrap(), 8);
        assert_eq!(g.loops_at(&v("v0")), 1);
        assert_eq!(g.degree(&n).unwrap(), 1);
    }

    #[test]
    fn blowdowns() {
        assert!(iso(
            &blowdown(&parse("[[2,-1]]").unwrap(), &v("v1")).unwrap(),
            "[[3]]"
        ));
        assert!(iso(
            &blowdown(&parse("((0,-1))").unwrap(), &v("v1")).unwrap(),
            "((4))"
        ));
        assert!(matches!(
            blowdown(&parse("[[-1]]").unwrap(), &v("v0")),
            Err(Error::BlowdownPrecondition { .. })
        ));
        assert!(blowdown(&parse("[[-1*,0]]").unwrap(), &v("v0")).is_err());
        assert!(blowdown(&parse("((-1))").unwrap(), &v("v0")).is_err());
    }

    #[test]
    fn apply_and_invert() {
        let g = parse("((9))").unwrap();
        let mut rec = Recorder::new(&g);
        let n = rec.inner_blowup(&e("e0")).unwrap();
        let edge = rec.graph().incident_edges(&n)[0].clone();
        rec.inner_blowup(&edge).unwrap();
        let (seq, end) = rec.finish();
        let trace = apply(&g, &seq).unwrap();
        assert!(iso(trace.last().unwrap(), "((4,-1,-2))"));
        assert_eq!(
            apply(&g, &BirationalSequence::empty(&g)).unwrap(),
            vec![g.clone()]
        );
        assert!(matches!(
            apply(&parse("((8))").unwrap(), &seq),
            Err(Error::KeyMismatch)
        ));

        let back = invert(&seq).unwrap();
        let trace = apply(&end, &back).unwrap();
        assert_eq!(*trace.last().unwrap(), g);
        assert_eq!(invert(&back).unwrap(), seq);
    }

    #[test]
    fn outer_inverse_is_blowdown() {
        let g = parse("[[0]]").unwrap();
        let (seq, _) = BirationalSequence::record(
            &g,
            &[Move::OuterBlowup {
                at: v("v0"),
                new_vertex: v("x"),
                new_edge: None,
            }],
        )
        .unwrap();
        let inv = invert(&seq).unwrap();
        assert!(matches!(&inv.steps[..], [Move::Blowdown { vertex, .. }] if *vertex == v("x")));
    }

    #[test]
    fn minimal_json_steps() {
        let g = parse("((9))").unwrap();
        let text = format!(
            r#"{{"start":"{}","steps":[{{"op":"inner_blowup","edge":"e0","new":"n7"}},{{"op":"blowdown","vertex":"n7"}}]}}"#,
            canonical_key(&g)
        );
        let seq: BirationalSequence = serde_json::from_str(&text).unwrap();
        let trace = apply(&g, &seq).unwrap();
        assert!(iso(&trace[1], "((5,-1))"));
        assert!(iso(&trace[2], "((9))"));
    }

    #[test]
    fn elementary_transformations() {
        let end = |g: &WeightedGraph, s: &BirationalSequence| apply(g, s).unwrap().pop().unwrap();
        let g = parse("[[0,-2]]").unwrap();
        let s = elementary_transformation(&g, &v("v0"), &Through::Outer).unwrap();
        assert_eq!(s.len(), 2);
        assert!(iso(&end(&g, &s), "[[0,-1]]"));

        let g = parse("[[-2,0,-2]]").unwrap();
        let s = elementary_transformation(&g, &v("v1"), &Through::Edge(e("e0"))).unwrap();
        let h = end(&g, &s);
        assert!(iso(&h, "[[-3,0,-1]]"));
        // The left neighbour lost one, the right one gained one.
        assert_eq!(h.weight(&v("v0")).unwrap(), -3);
        assert_eq!(h.weight(&v("v2")).unwrap(), -1);

        let g = parse("((0,0))").unwrap();
        assert!(elementary_transformation(&g, &v("v0"), &Through::Edge(e("e0"))).is_err());
    }

    #[test]
    fn contractions() {
        let g = parse("[[-1,-2,-1]]").unwrap();
        let left = Contraction::from_blowdowns(&g, [&v("v0")]).unwrap();
        let right = Contraction::from_blowdowns(&g, [&v("v2")]).unwrap();
        assert!(!are_equivalent_morphisms(&left, &right).unwrap());
        assert!(are_equivalent_morphisms(&left, &left).unwrap());
        let both1 = Contraction::from_blowdowns(&g, [&v("v0"), &v("v2")]).unwrap();
        let both2 = Contraction::from_blowdowns(&g, [&v("v2"), &v("v0")]).unwrap();
        assert!(are_equivalent_morphisms(&both1, &both2).unwrap());
        let other = Contraction::identity(&parse("[[-1]]").unwrap());
        assert!(matches!(
            are_equivalent_morphisms(&left, &other),
            Err(Error::SourceMismatch)
        ));
    }

    #[test]
    fn restriction() {
        let g = parse("[[-1,-2,-1]]").unwrap();
        let p = Contraction::from_blowdowns(&g, [&v("v0")]).unwrap();
        assert_eq!(restrict_preserving(&p, &v("v2")).unwrap(), p);
        assert!(restrict_preserving(&p, &v("v0"))
            .unwrap()
            .contracted
            .is_empty());
    }

    #[test]
    fn preimages() {
        let g = parse("[[-2,-1,-2]]").unwrap();
        let p = Contraction::from_blowdowns(&g, [&v("v1")]).unwrap();
        let t = p.target();
        let edge = t.edges_between(&v("v0"), &v("v2"))[0].clone();
        let sub = Subgraph {
            vertices: [v("v0"), v("v2")].into(),
            edges: [edge].into(),
        };
        let pre = preimage_subgraph(&p, &sub).unwrap();
        assert_eq!(pre.vertices, [v("v0"), v("v1"), v("v2")].into());
        assert_eq!(pre.edges.len(), 2);
        let single = Subgraph {
            vertices: [v("v0")].into(),
            edges: BTreeSet::new(),
        };
        assert_eq!(preimage_subgraph(&p, &single).unwrap(), single);
        let id = Contraction::identity(&g);
        let all = Subgraph::induced(&g, g.vertex_ids().cloned());
        assert_eq!(preimage_subgraph(&id, &all).unwrap(), all);
    }
}
