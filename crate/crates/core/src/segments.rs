//! Segments (components of the graph with its branching vertices deleted)
//! and branches at a vertex.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Subgraph, WeightedGraph};
use crate::ids::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Linear,
    Circular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Extremal,
    Inner,
    Earring,
    /// The segment is a whole connected component (no attachment).
    WholeGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub vertices: Vec<VertexId>,
    pub shape: Shape,
    pub position: Position,
    pub attachment: usize,
    pub admissible: bool,
}

impl SegmentReport {
    /// A linear segment reaching a vertex of degree at most one. Isolated
    /// vertices count, so `[[a]]` is its own extremal segment.
    pub fn is_extremal_linear(&self) -> bool {
        self.shape == Shape::Linear
            && matches!(self.position, Position::Extremal | Position::WholeGraph)
    }

    pub fn is_earring(&self) -> bool {
        self.position == Position::Earring
    }

    pub fn as_graph(&self, g: &WeightedGraph) -> WeightedGraph {
        g.induced(&self.vertices.iter().cloned().collect())
    }
}

fn admissible(g: &WeightedGraph, vs: &[VertexId], shape: Shape) -> bool {
    let w = |v: &VertexId| g.weight(v).expect("segment vertex present");
    match shape {
        Shape::Linear => vs.iter().all(|v| w(v) <= -2),
        Shape::Circular => {
            vs.iter().all(|v| w(v) <= -2)
                || (vs.len() == 1 && g.loops_at(&vs[0]) == 1 && w(&vs[0]) <= 2)
        }
    }
}

pub fn segments(g: &WeightedGraph) -> Vec<SegmentReport> {
    let br = g.branching_set();
    let rest = g.without(&br);
    let mut out = Vec::new();
    for comp in rest.components() {
        let sub = rest.induced(&comp);
        let circular = sub.edge_count() >= sub.len();
        let shape = if circular {
            Shape::Circular
        } else {
            Shape::Linear
        };
        let attachment = comp
            .iter()
            .flat_map(|v| g.neighbors(v))
            .filter(|(u, _)| br.contains(u))
            .map(|(_, m)| m)
            .sum();
        let deg = |v: &VertexId| g.degree(v).expect("present");
        let vertices = if circular {
            crate::notation::circular_order(&sub).expect("circular segment is a cycle")
        } else {
            let mut order = crate::notation::linear_order(&sub).expect("linear segment is a path");
            // Read extremal segments from their tip.
            if deg(&order[0]) > 1 && deg(order.last().expect("nonempty")) <= 1 {
                order.reverse();
            }
            order
        };
        let position = if attachment == 0 {
            Position::WholeGraph
        } else if vertices.len() == 1
            && attachment == 2
            && g.weight(&vertices[0]).ok() == Some(0)
            && g.neighbors(&vertices[0]).len() == 1
        {
            Position::Earring
        } else if !circular && vertices.iter().any(|v| deg(v) <= 1) {
            Position::Extremal
        } else {
            Position::Inner
        };
        let admissible = admissible(g, &vertices, shape);
        out.push(SegmentReport {
            vertices,
            shape,
            position,
            attachment,
            admissible,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub branch: Subgraph,
    /// Number of edges linking the branch to the base vertex.
    pub links: usize,
    pub simple: bool,
}

pub fn branches_at(g: &WeightedGraph, v: &VertexId) -> Result<Vec<Branch>> {
    if !g.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    let around = g.neighbors(v);
    let rest = g.without(&BTreeSet::from([v.clone()]));
    let mut out = Vec::new();
    for comp in rest.components() {
        let links: usize = comp.iter().filter_map(|u| around.get(u)).sum();
        if links > 0 {
            out.push(Branch {
                branch: Subgraph::induced(g, comp),
                links,
                simple: links == 1,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    #[test]
    fn chain_is_one_segment() {
        let s = segments(&parse("[[-2,-3]]").unwrap());
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].shape, Shape::Linear);
        assert!(s[0].is_extremal_linear());
        assert!(s[0].admissible);
    }

    #[test]
    fn double_zero_cycle() {
        let s = segments(&parse("((0,0))").unwrap());
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].shape, Shape::Circular);
        assert!(!s[0].admissible);
        assert!(segments(&parse("((2))").unwrap())[0].admissible);
        assert!(!segments(&parse("((3))").unwrap())[0].admissible);
    }

    #[test]
    fn earring() {
        let g = parse(
            r#"{"vertices":[{"id":"u","w":-3},{"id":"v","w":0},{"id":"x","w":-2},{"id":"y","w":-2}],
                "edges":[["u","v"],["u","v"],["u","x"],["x","y"]]}"#,
        )
        .unwrap();
        let s = segments(&g);
        let ear = s.iter().find(|r| r.vertices == ["v".into()]).unwrap();
        assert_eq!(ear.position, Position::Earring);
        assert_eq!(ear.attachment, 2);
        let arm = s.iter().find(|r| r.vertices.len() == 2).unwrap();
        assert_eq!(arm.vertices, vec![VertexId::from("y"), VertexId::from("x")]);
        assert_eq!(arm.position, Position::Extremal);
    }

    #[test]
    fn branches() {
        let g = parse("[[-2,-1,-2]]").unwrap();
        let b = branches_at(&g, &"v1".into()).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|x| x.simple && x.branch.vertices.len() == 1));
        let g = parse("((0,0))").unwrap();
        let b = branches_at(&g, &"v0".into()).unwrap();
        assert_eq!(b.len(), 1);
        assert!(!b[0].simple);
    }
}
