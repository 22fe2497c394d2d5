//! Triangulations of circular graphs: a disc triangulated with every vertex
//! on the boundary, where a vertex of degree `k` carries weight `1 - k`.
//! Ears are exactly the (−1)-vertices, so peeling them greedily either
//! reaches a single triangle or proves there is no triangulation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ids::VertexId;
use crate::notation::circular_order;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub boundary_order: Vec<VertexId>,
    pub triangles: Vec<[VertexId; 3]>,
    /// Pairs of triangle indices sharing a diagonal.
    pub incidence_tree: Vec<(usize, usize)>,
}

impl Triangulation {
    /// Degree of `v` in the complex: two boundary edges plus its diagonals.
    pub fn degree(&self, v: &VertexId) -> usize {
        let n = self.boundary_order.len();
        let mut nbrs = std::collections::BTreeSet::new();
        for t in self.triangles.iter().filter(|t| t.contains(v)) {
            nbrs.extend(t.iter().filter(|u| *u != v).cloned());
        }
        debug_assert!(n >= 3);
        nbrs.len()
    }

    /// Whether `g` carries the prescribed weights and the triangles form a tree.
    pub fn check(&self, g: &WeightedGraph) -> bool {
        let law = self
            .boundary_order
            .iter()
            .all(|v| g.weight(v).ok() == Some(1 - self.degree(v) as i64));
        let t = self.triangles.len();
        law && t + 2 == self.boundary_order.len()
            && self.incidence_tree.len() + 1 == t
            && tree_connected(t, &self.incidence_tree)
    }
}

fn tree_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    n == 0 || (0..n).all(|x| find(&mut parent, x) == find(&mut parent, 0))
}

pub fn triangulate_circular(g: &WeightedGraph) -> Result<Option<Triangulation>> {
    let order = circular_order(g).ok_or(Error::NotCircular)?;
    if g.vertices().any(|(_, d)| !d.rational) {
        return Err(Error::NotCircular);
    }
    if order.len() < 3 {
        return Ok(None);
    }
    let mut weight: BTreeMap<VertexId, i64> = order
        .iter()
        .map(|v| (v.clone(), g.weight(v).expect("present")))
        .collect();
    let mut ring = order.clone();
    let mut triangles = Vec::new();
    while ring.len() > 3 {
        let n = ring.len();
        let Some(i) = (0..n)
            .filter(|&i| weight[&ring[i]] == -1)
            .min_by(|&a, &b| ring[a].cmp(&ring[b]))
        else {
            return Ok(None);
        };
        let (a, b) = (ring[(i + n - 1) % n].clone(), ring[(i + 1) % n].clone());
        triangles.push([a.clone(), ring[i].clone(), b.clone()]);
        *weight.get_mut(&a).expect("ring vertex") += 1;
        *weight.get_mut(&b).expect("ring vertex") += 1;
        ring.remove(i);
    }
    if ring.iter().any(|v| weight[v] != -1) {
        return Ok(None);
    }
    triangles.push([ring[0].clone(), ring[1].clone(), ring[2].clone()]);
    let shares =
        |s: &[VertexId; 3], t: &[VertexId; 3]| s.iter().filter(|v| t.contains(v)).count() == 2;
    let mut incidence_tree = Vec::new();
    for i in 0..triangles.len() {
        for j in i + 1..triangles.len() {
            if shares(&triangles[i], &triangles[j]) {
                incidence_tree.push((i, j));
            }
        }
    }
    let t = Triangulation {
        boundary_order: order,
        triangles,
        incidence_tree,
    };
    Ok(t.check(g).then_some(t))
}
