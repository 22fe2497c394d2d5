//! Text formats: the JSON graph document and the bracket shorthand.
//!
//! JSON: `{"vertices":[{"id":"a","w":9,"rational":true}],"edges":[["a","a"]]}`.
//! Repeated pairs are parallel edges, `["a","a"]` is a loop, and `rational`
//! defaults to true.
//!
//! Shorthand: `[[w1,...,wn]]` is a chain, `((w1,...,wn))` a cycle (`((w))` is
//! one vertex with a loop, `((w1,w2))` two vertices joined by a double edge).
//! A trailing `*` marks a non-rational vertex. Shorthand vertices are named
//! `v0, v1, ...` and edges `e0, e1, ...` in reading order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::ids::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: VertexId,
    pub w: i64,
    #[serde(default = "default_rational")]
    pub rational: bool,
}

fn default_rational() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[VertexId; 2]>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new();
        for v in &self.vertices {
            g.add_vertex(
                v.id.clone(),
                Vertex {
                    weight: v.w,
                    rational: v.rational,
                },
            )?;
        }
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        for (i, [a, b]) in self.edges.iter().enumerate() {
            let e = EdgeId::from(format!("e{i}"));
            g.add_edge(e, a.clone(), b.clone())
                .map_err(|err| match err {
                    Error::UnknownVertex(v) => {
                        Error::Invalid(format!("edge {i} has dangling endpoint {v}"))
                    }
                    other => other,
                })?;
        }
        Ok(g)
    }
}

impl From<&WeightedGraph> for GraphJson {
    fn from(g: &WeightedGraph) -> Self {
        GraphJson {
            vertices: g
                .vertices()
                .map(|(id, d)| VertexJson {
                    id: id.clone(),
                    w: d.weight,
                    rational: d.rational,
                })
                .collect(),
            edges: g.edges().map(|(_, a, b)| [a.clone(), b.clone()]).collect(),
        }
    }
}

impl Serialize for WeightedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GraphJson::deserialize(d)?
            .to_graph()
            .map_err(serde::de::Error::custom)
    }
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse(text: &str) -> Result<WeightedGraph> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    if trimmed.starts_with('{') {
        let doc: GraphJson = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            pos: offset + e.column().saturating_sub(1),
            msg: e.to_string(),
        })?;
        return doc.to_graph();
    }
    parse_short(trimmed).map_err(|err| match err {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    })
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl Cursor<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |c| c.0)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|c| c.1.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn expect(&mut self, want: &str) -> Result<()> {
        self.skip_ws();
        for w in want.chars() {
            if self.peek() != Some(w) {
                return Err(self.error(format!("expected `{want}`")));
            }
            self.at += 1;
        }
        Ok(())
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg,
        }
    }

    fn weight(&mut self) -> Result<Vertex> {
        self.skip_ws();
        let mut negative = false;
        if matches!(self.peek(), Some('-') | Some('−')) {
            negative = true;
            self.at += 1;
        } else if self.peek() == Some('+') {
            self.at += 1;
        }
        let start = self.at;
        let mut value: i64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|x| x.checked_add(i64::from(d)))
                .ok_or_else(|| self.error("weight overflows".into()))?;
            self.at += 1;
        }
        if self.at == start {
            return Err(self.error("expected an integer weight".into()));
        }
        self.skip_ws();
        let rational = if self.peek() == Some('*') {
            self.at += 1;
            false
        } else {
            true
        };
        Ok(Vertex {
            weight: if negative { -value } else { value },
            rational,
        })
    }
}

fn parse_short(text: &str) -> Result<WeightedGraph> {
    let mut cur = Cursor {
        chars: text.char_indices().collect(),
        at: 0,
        src: text,
    };
    cur.skip_ws();
    let circular = match cur.peek() {
        Some('[') => false,
        Some('(') => true,
        _ => return Err(cur.error("expected `[[`, `((` or `{`".into())),
    };
    cur.expect(if circular { "((" } else { "[[" })?;
    let mut weights = vec![cur.weight()?];
    loop {
        cur.skip_ws();
        if cur.peek() == Some(',') {
            cur.at += 1;
            weights.push(cur.weight()?);
        } else {
            break;
        }
    }
    cur.expect(if circular { "))" } else { "]]" })?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.error("trailing input".into()));
    }

    let mut g = WeightedGraph::new();
    let ids: Vec<VertexId> = (0..weights.len())
        .map(|i| VertexId::from(format!("v{i}")))
        .collect();
    for (id, w) in ids.iter().zip(&weights) {
        g.add_vertex(id.clone(), *w)?;
    }
    let n = ids.len();
    let mut pairs = Vec::new();
    if circular {
        match n {
            1 => pairs.push((0, 0)),
            2 => pairs.extend([(0, 1), (0, 1)]),
            _ => pairs.extend((0..n).map(|i| (i, (i + 1) % n))),
        }
    } else {
        pairs.extend((1..n).map(|i| (i - 1, i)));
    }
    for (k, (i, j)) in pairs.into_iter().enumerate() {
        g.add_edge(
            EdgeId::from(format!("e{k}")),
            ids[i].clone(),
            ids[j].clone(),
        )?;
    }
    Ok(g)
}

/// Vertex order along a simple path, when the graph is one (loop- and
/// multi-edge-free, connected, degrees at most two, acyclic).
pub fn linear_order(g: &WeightedGraph) -> Option<Vec<VertexId>> {
    if g.is_empty() || !g.is_tree() {
        return None;
    }
    let mut ends = g.vertex_ids().filter(|v| g.degree(v).unwrap_or(0) <= 1);
    let start = ends.next()?.clone();
    if g.vertex_ids().any(|v| g.degree(v).unwrap_or(0) > 2) {
        return None;
    }
    walk(g, start)
}

/// Cyclic vertex order when the graph is a single cycle, a vertex with one
/// loop, or two vertices joined by a double edge.
pub fn circular_order(g: &WeightedGraph) -> Option<Vec<VertexId>> {
    if g.is_empty() || !g.is_connected() || g.edge_count() != g.len() {
        return None;
    }
    if g.vertex_ids().any(|v| g.degree(v).unwrap_or(0) != 2) {
        return None;
    }
    let start = g.vertex_ids().next()?.clone();
    match g.len() {
        1 | 2 => Some(g.vertex_ids().cloned().collect()),
        _ => walk(g, start),
    }
}

fn walk(g: &WeightedGraph, start: VertexId) -> Option<Vec<VertexId>> {
    let mut order = vec![start.clone()];
    let mut prev: Option<VertexId> = None;
    let mut cur = start.clone();
    loop {
        let next = g
            .neighbors(&cur)
            .into_keys()
            .find(|w| Some(w) != prev.as_ref() && !order.contains(w));
        match next {
            Some(w) => {
                prev = Some(cur);
                cur = w.clone();
                order.push(w);
            }
            None => break,
        }
    }
    (order.len() == g.len()).then_some(order)
}

fn weight_token(d: &Vertex) -> String {
    if d.rational {
        d.weight.to_string()
    } else {
        format!("{}*", d.weight)
    }
}

/// Shorthand rendering when the graph is a chain or a cycle.
pub fn format_short(g: &WeightedGraph) -> Option<String> {
    let render = |order: &[VertexId]| {
        order
            .iter()
            .map(|v| weight_token(g.vertex(v).expect("vertex present")))
            .collect::<Vec<_>>()
            .join(",")
    };
    if let Some(order) = linear_order(g) {
        return Some(format!("[[{}]]", render(&order)));
    }
    circular_order(g).map(|order| format!("(({}))", render(&order)))
}

pub fn format_json(g: &WeightedGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

/// Shorthand when available, JSON otherwise.
pub fn format(g: &WeightedGraph) -> String {
    format_short(g).unwrap_or_else(|| format_json(g))
}
