//! The weighted multigraph value and its structural queries.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::{numeric_suffix, EdgeId, VertexId};

/// Vertex payload: integer weight and the rationality flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub weight: i64,
    pub rational: bool,
}

impl Vertex {
    pub fn rational(weight: i64) -> Self {
        Self {
            weight,
            rational: true,
        }
    }
}

/// A finite multigraph with loops, integer vertex weights and a rationality
/// flag per vertex.
///
/// Edges are stored with their endpoints ordered (`a <= b`); a loop has
/// `a == b`. The id counter only grows, so ids minted by [`fresh_vertex_id`]
/// and [`fresh_edge_id`] are never handed out twice by one lineage of values.
///
/// [`fresh_vertex_id`]: WeightedGraph::fresh_vertex_id
/// [`fresh_edge_id`]: WeightedGraph::fresh_edge_id
#[derive(Clone, Debug, Default)]
pub struct WeightedGraph {
    vertices: BTreeMap<VertexId, Vertex>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    next_id: u64,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for WeightedGraph {}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A subgraph given by explicit vertex and edge sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl Subgraph {
    /// The subgraph of `g` induced by `vertices`.
    pub fn induced(g: &WeightedGraph, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let edges = g
            .edges()
            .filter(|(_, a, b)| vertices.contains(*a) && vertices.contains(*b))
            .map(|(e, _, _)| e.clone())
            .collect();
        Self { vertices, edges }
    }

    pub fn check_in(&self, g: &WeightedGraph) -> Result<()> {
        for v in &self.vertices {
            if !g.contains_vertex(v) {
                return Err(Error::NotSubgraph(format!("vertex {v} not in graph")));
            }
        }
        for e in &self.edges {
            let (a, b) = g
                .endpoints(e)
                .ok_or_else(|| Error::NotSubgraph(format!("edge {e} not in graph")))?;
            if !self.vertices.contains(a) || !self.vertices.contains(b) {
                return Err(Error::NotSubgraph(format!(
                    "edge {e} has an endpoint outside"
                )));
            }
        }
        Ok(())
    }

    pub fn is_induced_in(&self, g: &WeightedGraph) -> bool {
        *self == Subgraph::induced(g, self.vertices.iter().cloned())
    }
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    fn bump_counter(&mut self, id: &str) {
        if let Some(n) = numeric_suffix(id) {
            self.next_id = self.next_id.max(n.saturating_add(1));
        }
    }

    pub fn add_vertex(&mut self, id: VertexId, vertex: Vertex) -> Result<()> {
        if self.vertices.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        self.bump_counter(id.as_str());
        self.vertices.insert(id, vertex);
        Ok(())
    }

    pub fn add_edge(&mut self, id: EdgeId, a: VertexId, b: VertexId) -> Result<()> {
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        for v in [&a, &b] {
            if !self.vertices.contains_key(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        self.bump_counter(id.as_str());
        self.edges.insert(id, ordered(a, b));
        Ok(())
    }

    pub fn fresh_vertex_id(&mut self) -> VertexId {
        loop {
            let id = VertexId::from(format!("n{}", self.next_id));
            self.next_id += 1;
            if !self.vertices.contains_key(&id) {
                return id;
            }
        }
    }

    pub fn fresh_edge_id(&mut self) -> EdgeId {
        loop {
            let id = EdgeId::from(format!("e{}", self.next_id));
            self.next_id += 1;
            if !self.edges.contains_key(&id) {
                return id;
            }
        }
    }

    /// Adds a rational vertex with a freshly minted id.
    pub fn add_fresh_vertex(&mut self, weight: i64) -> VertexId {
        let id = self.fresh_vertex_id();
        self.vertices.insert(id.clone(), Vertex::rational(weight));
        id
    }

    pub fn add_fresh_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId> {
        let id = self.fresh_edge_id();
        self.add_edge(id.clone(), a, b)?;
        Ok(id)
    }

    /// Removes a vertex together with its incident edges.
    pub fn remove_vertex(&mut self, v: &VertexId) -> Result<Vertex> {
        let data = self
            .vertices
            .remove(v)
            .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        self.edges.retain(|_, (a, b)| a != v && b != v);
        Ok(data)
    }

    pub fn remove_edge(&mut self, e: &EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges
            .remove(e)
            .ok_or_else(|| Error::UnknownEdge(e.clone()))
    }

    pub fn set_weight(&mut self, v: &VertexId, weight: i64) -> Result<()> {
        let slot = self
            .vertices
            .get_mut(v)
            .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
        slot.weight = weight;
        Ok(())
    }

    pub fn add_weight(&mut self, v: &VertexId, delta: i64) -> Result<()> {
        let w = self.weight(v)?;
        self.set_weight(v, w + delta)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains_key(v)
    }

    pub fn contains_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    pub fn vertex(&self, v: &VertexId) -> Option<&Vertex> {
        self.vertices.get(v)
    }

    pub fn weight(&self, v: &VertexId) -> Result<i64> {
        self.vertex(v)
            .map(|d| d.weight)
            .ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn is_rational(&self, v: &VertexId) -> Result<bool> {
        self.vertex(v)
            .map(|d| d.rational)
            .ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn endpoints(&self, e: &EdgeId) -> Option<(&VertexId, &VertexId)> {
        self.edges.get(e).map(|(a, b)| (a, b))
    }

    /// Vertices in natural id order.
    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices.keys()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&VertexId, &Vertex)> + '_ {
        self.vertices.iter()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.edges.keys()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &VertexId, &VertexId)> + '_ {
        self.edges.iter().map(|(e, (a, b))| (e, a, b))
    }

    pub fn total_weight(&self) -> i64 {
        self.vertices.values().map(|d| d.weight).sum()
    }

    /// Edge-endpoint incidences at `v`; a loop counts twice.
    pub fn degree(&self, v: &VertexId) -> Result<usize> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        Ok(self
            .edges
            .values()
            .map(|(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum())
    }

    fn degree_of(&self, v: &VertexId) -> usize {
        self.degree(v).unwrap_or(0)
    }

    pub fn loops_at(&self, v: &VertexId) -> usize {
        self.edges
            .values()
            .filter(|(a, b)| a == v && b == v)
            .count()
    }

    /// Number of edges joining two distinct vertices.
    pub fn multiplicity(&self, u: &VertexId, w: &VertexId) -> usize {
        let key = ordered(u.clone(), w.clone());
        self.edges.values().filter(|p| **p == key).count()
    }

    /// Neighbors of `v` other than `v` itself, with edge multiplicities.
    pub fn neighbors(&self, v: &VertexId) -> BTreeMap<VertexId, usize> {
        let mut out = BTreeMap::new();
        for (a, b) in self.edges.values() {
            if a == b {
                continue;
            }
            if a == v {
                *out.entry(b.clone()).or_insert(0) += 1;
            } else if b == v {
                *out.entry(a.clone()).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn incident_edges(&self, v: &VertexId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, (a, b))| a == v || b == v)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Edges joining `u` and `w` (loops at `u` when `u == w`).
    pub fn edges_between(&self, u: &VertexId, w: &VertexId) -> Vec<EdgeId> {
        let key = ordered(u.clone(), w.clone());
        self.edges
            .iter()
            .filter(|(_, p)| **p == key)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Non-rational vertices and vertices of degree at least 3.
    pub fn branching_set(&self) -> BTreeSet<VertexId> {
        self.vertices
            .iter()
            .filter(|(v, d)| !d.rational || self.degree_of(v) >= 3)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Rational vertices of degree exactly one.
    pub fn end_vertices(&self) -> BTreeSet<VertexId> {
        self.vertices
            .iter()
            .filter(|(v, d)| d.rational && self.degree_of(v) == 1)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Rational, degree at most two, and no incident loop.
    pub fn is_at_most_linear(&self, v: &VertexId) -> bool {
        match self.vertex(v) {
            Some(d) => d.rational && self.degree_of(v) <= 2 && self.loops_at(v) == 0,
            None => false,
        }
    }

    /// At most linear vertices of weight −1, in id order.
    pub fn contractible_vertices(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .filter(|(v, d)| d.weight == -1 && self.is_at_most_linear(v))
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn is_minimal(&self) -> bool {
        self.contractible_vertices().is_empty()
    }

    /// Connected components, each as a vertex set, ordered by smallest id.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
        for (a, b) in self.edges.values() {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v.clone());
                for w in adj.get(v).into_iter().flatten() {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let index: BTreeMap<&VertexId, usize> = self
            .vertices
            .keys()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut parts = n;
        for (a, b) in self.edges.values() {
            let (ra, rb) = (root(&mut parent, index[a]), root(&mut parent, index[b]));
            if ra != rb {
                parent[ra] = rb;
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Connected, loop-free, and exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len() && self.is_connected()
    }

    /// The subgraph induced on `keep`, as a graph value with the same ids.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> WeightedGraph {
        WeightedGraph {
            vertices: self
                .vertices
                .iter()
                .filter(|(v, _)| keep.contains(*v))
                .map(|(v, d)| (v.clone(), *d))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|(_, (a, b))| keep.contains(a) && keep.contains(b))
                .map(|(e, p)| (e.clone(), p.clone()))
                .collect(),
            next_id: self.next_id,
        }
    }

    /// The graph with `drop` and all incident edges deleted.
    pub fn without(&self, drop: &BTreeSet<VertexId>) -> WeightedGraph {
        let keep = self
            .vertices
            .keys()
            .filter(|v| !drop.contains(*v))
            .cloned()
            .collect();
        self.induced(&keep)
    }

    /// Renames vertices through a bijection defined on the whole vertex set.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<WeightedGraph> {
        let keys: BTreeSet<&VertexId> = map.keys().collect();
        let own: BTreeSet<&VertexId> = self.vertices.keys().collect();
        if keys != own {
            return Err(Error::BadRelabel(
                "map domain differs from the vertex set".into(),
            ));
        }
        let image: BTreeSet<&VertexId> = map.values().collect();
        if image.len() != map.len() {
            return Err(Error::BadRelabel("map is not injective".into()));
        }
        let mut out = WeightedGraph {
            next_id: self.next_id,
            ..Default::default()
        };
        for (v, d) in &self.vertices {
            out.add_vertex(map[v].clone(), *d)?;
        }
        for (e, (a, b)) in &self.edges {
            out.add_edge(e.clone(), map[a].clone(), map[b].clone())?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    #[test]
    fn degrees() {
        let g = parse("[[0]]").unwrap();
        assert_eq!(g.degree(&v("v0")).unwrap(), 0);
        let g = parse("((9))").unwrap();
        assert_eq!(g.degree(&v("v0")).unwrap(), 2);
        let g = parse("[[-1,-2,-1]]").unwrap();
        assert_eq!(g.degree(&v("v1")).unwrap(), 2);
        assert!(matches!(g.degree(&v("zz")), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn branching() {
        assert!(parse("[[-2,-3,-2]]").unwrap().branching_set().is_empty());
        let star = parse(
            r#"{"vertices":[{"id":"c","w":-2},{"id":"x","w":-2},{"id":"y","w":-2},{"id":"z","w":-2}],
                "edges":[["c","x"],["c","y"],["c","z"]]}"#,
        )
        .unwrap();
        assert_eq!(star.branching_set(), BTreeSet::from([v("c")]));
        let cubic = parse("[[9*]]").unwrap();
        assert_eq!(cubic.branching_set(), BTreeSet::from([v("v0")]));
    }

    #[test]
    fn ends() {
        assert_eq!(parse("[[-2,-3]]").unwrap().end_vertices().len(), 2);
        assert!(parse("((9))").unwrap().end_vertices().is_empty());
        let g = parse(r#"{"vertices":[{"id":"a","w":1,"rational":false},{"id":"b","w":-2}],"edges":[["a","b"]]}"#)
            .unwrap();
        assert_eq!(g.end_vertices(), BTreeSet::from([v("b")]));
    }

    #[test]
    fn minimality() {
        assert!(parse("((9))").unwrap().is_minimal());
        assert!(!parse("[[0,-1]]").unwrap().is_minimal());
        // The (−1)-vertex carries a loop, so it is not at most linear.
        let g = parse(
            r#"{"vertices":[{"id":"a","w":-1},{"id":"b","w":-2}],"edges":[["a","a"],["a","b"],["a","b"]]}"#,
        )
        .unwrap();
        assert_eq!(g.degree(&v("a")).unwrap(), 4);
        assert!(g.is_minimal());
    }

    #[test]
    fn fresh_ids_never_repeat() {
        let mut g = parse("[[0,0]]").unwrap();
        let a = g.add_fresh_vertex(-1);
        g.remove_vertex(&a).unwrap();
        let b = g.add_fresh_vertex(-1);
        assert_ne!(a, b);
    }

    #[test]
    fn relabel_round_trip() {
        let g = parse("[[1,2,3]]").unwrap();
        let map: BTreeMap<_, _> = g
            .vertex_ids()
            .map(|x| (x.clone(), v(&format!("x{}", x))))
            .collect();
        let h = g.relabel(&map).unwrap();
        let back: BTreeMap<_, _> = map.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        assert_eq!(h.relabel(&back).unwrap(), g);
        assert!(g.relabel(&BTreeMap::new()).is_err());
    }
}
