//! Triangular diagrams `Γ₁ ← Γ → Γ₂`: domination of a chain of contractions
//! and inverse contractions, relative minimization, and a checker for the
//! structural statements a relatively minimal diagram must satisfy.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ids::VertexId;
use crate::minimality::{contract_set, contract_set_renamed};
use crate::moves::{apply_move, invert, Contraction, Move};
use crate::segments::{branches_at, segments, Position, SegmentReport, Shape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub top: WeightedGraph,
    pub p1: Contraction,
    pub p2: Contraction,
}

impl Diagram {
    pub fn new(top: WeightedGraph, p1: Contraction, p2: Contraction) -> Result<Self> {
        if p1.source != top || p2.source != top {
            return Err(Error::SourceMismatch);
        }
        Ok(Self { top, p1, p2 })
    }

    /// (−1)-vertices of the top contracted on both sides.
    pub fn common_minus_one(&self) -> Vec<VertexId> {
        self.p1
            .contracted
            .intersection(&self.p2.contracted)
            .filter(|v| self.top.weight(v).ok() == Some(-1))
            .cloned()
            .collect()
    }

    pub fn is_relatively_minimal(&self) -> bool {
        self.common_minus_one().is_empty()
    }

    pub fn ends(&self) -> (WeightedGraph, WeightedGraph) {
        (self.p1.target(), self.p2.target())
    }
}

/// One arrow of a chain `Γ_0 ⇢ Γ_1 ⇢ …`: a contraction `Γ_i → Γ_{i+1}`, or a
/// contraction `Γ_{i+1} → Γ_i` read backwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Link {
    Forward(Contraction),
    Backward(Contraction),
}

impl Link {
    fn start(&self) -> WeightedGraph {
        match self {
            Link::Forward(p) => p.source.clone(),
            Link::Backward(q) => q.target(),
        }
    }
}

/// Same vertices and weights, same multiset of edge endpoints; edge ids may
/// differ.
fn same_shape(a: &WeightedGraph, b: &WeightedGraph) -> bool {
    let pairs = |g: &WeightedGraph| {
        let mut v: Vec<(VertexId, VertexId)> =
            g.edges().map(|(_, x, y)| (x.clone(), y.clone())).collect();
        v.sort();
        v
    };
    a.vertices().eq(b.vertices()) && pairs(a) == pairs(b)
}

/// A vertex of `set` that can be contracted last, landing exactly on the
/// inner blowup of the edge `[a, b]` of the contracted graph.
fn last_on_edge(
    top: &WeightedGraph,
    set: &BTreeSet<VertexId>,
    a: &VertexId,
    b: &VertexId,
) -> Option<VertexId> {
    let want: BTreeMap<VertexId, usize> = if a == b {
        BTreeMap::from([(a.clone(), 2)])
    } else {
        BTreeMap::from([(a.clone(), 1), (b.clone(), 1)])
    };
    set.iter().find_map(|x| {
        let mut rest = set.clone();
        rest.remove(x);
        let h = contract_set(top, &rest).ok()?.target();
        let d = h.vertex(x)?;
        (d.rational && d.weight == -1 && h.loops_at(x) == 0 && h.neighbors(x) == want)
            .then(|| x.clone())
    })
}

/// Builds a diagram dominating the chain. Blowups of the backward arrows are
/// transported onto the growing top graph; an inner blowup of an edge that
/// the top already subdivides reuses the subdividing vertex, every other
/// blowup adds a new vertex.
pub fn dominate(chain: &[Link]) -> Result<Diagram> {
    let first = chain
        .first()
        .ok_or_else(|| Error::Diagram("empty chain".into()))?;
    let start = first.start();
    let mut top = start.clone();
    let mut c1: BTreeSet<VertexId> = BTreeSet::new();
    let mut c2: BTreeSet<VertexId> = BTreeSet::new();
    let mut nu: BTreeMap<VertexId, VertexId> =
        start.vertex_ids().map(|v| (v.clone(), v.clone())).collect();
    let mut cur = start;

    for (i, link) in chain.iter().enumerate() {
        if !same_shape(&link.start(), &cur) {
            return Err(Error::NonComposable(i));
        }
        match link {
            Link::Forward(p) => {
                c2.extend(p.contracted.iter().map(|v| nu[v].clone()));
                nu = p
                    .vertex_map()
                    .into_iter()
                    .map(|(s, t)| (t, nu[&s].clone()))
                    .collect();
                cur = p.target();
            }
            Link::Backward(q) => {
                let mut g = q.target();
                for m in &invert(&q.seq)?.steps {
                    match m {
                        Move::InnerBlowup {
                            edge, new_vertex, ..
                        } => {
                            let (a, b) = g
                                .endpoints(edge)
                                .map(|(a, b)| (a.clone(), b.clone()))
                                .ok_or_else(|| Error::UnknownEdge(edge.clone()))?;
                            let (ta, tb) = (nu[&a].clone(), nu[&b].clone());
                            if let Some(x) = last_on_edge(&top, &c2, &ta, &tb) {
                                c2.remove(&x);
                                nu.insert(new_vertex.clone(), x);
                            } else {
                                let e = top.edges_between(&ta, &tb).into_iter().next().ok_or_else(
                                    || Error::Diagram(format!("no edge [{ta},{tb}] to transport")),
                                )?;
                                let y = top.fresh_vertex_id();
                                apply_move(
                                    &mut top,
                                    &Move::InnerBlowup {
                                        edge: e,
                                        new_vertex: y.clone(),
                                        new_edges: None,
                                    },
                                )?;
                                c1.insert(y.clone());
                                nu.insert(new_vertex.clone(), y);
                            }
                        }
                        Move::OuterBlowup { at, new_vertex, .. } => {
                            let y = top.fresh_vertex_id();
                            apply_move(
                                &mut top,
                                &Move::OuterBlowup {
                                    at: nu[at].clone(),
                                    new_vertex: y.clone(),
                                    new_edge: None,
                                },
                            )?;
                            c1.insert(y.clone());
                            nu.insert(new_vertex.clone(), y);
                        }
                        Move::Relabel { map } => {
                            nu = nu
                                .into_iter()
                                .map(|(s, t)| (map.get(&s).cloned().unwrap_or(s), t))
                                .collect();
                        }
                        Move::Blowdown { .. } => {
                            unreachable!("inverse of a contraction has no blowdowns")
                        }
                    }
                    apply_move(&mut g, m)?;
                }
                cur = q.source.clone();
            }
        }
    }
    let p1 = contract_set(&top, &c1)?;
    let rename: BTreeMap<VertexId, VertexId> =
        nu.iter().map(|(end, t)| (t.clone(), end.clone())).collect();
    let p2 = contract_set_renamed(&top, &c2, &rename)?;
    Diagram::new(top, p1, p2)
}

/// Blows down (−1)-vertices contracted on both sides until none is left.
/// Also returns the peeling contraction from the old top to the new one.
///
/// Minimal ends are not required: peeling is well defined without them, and
/// the two-leaf domination of `[[-1,1]]` is already relatively minimal.
pub fn relatively_minimize_traced(d: &Diagram) -> Result<(Diagram, Contraction)> {
    let r1 = d.p1.vertex_map();
    let r2 = d.p2.vertex_map();
    let mut peel = Contraction::identity(&d.top);
    let mut cur = d.clone();
    loop {
        let Some(v) = cur.common_minus_one().into_iter().next() else {
            return Ok((cur, peel));
        };
        let mut order = peel.blowdown_order();
        order.push(v);
        peel = Contraction::from_blowdowns(&d.top, &order)?;
        let top = peel.target();
        let c1 = &d.p1.contracted - &peel.contracted;
        let c2 = &d.p2.contracted - &peel.contracted;
        let p1 = contract_set_renamed(&top, &c1, &r1)?;
        let p2 = contract_set_renamed(&top, &c2, &r2)?;
        cur = Diagram::new(top, p1, p2)?;
    }
}

pub fn relatively_minimize(d: &Diagram) -> Result<Diagram> {
    relatively_minimize_traced(d).map(|(d, _)| d)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Clause {
    fn from(witnesses: Vec<String>) -> Self {
        Self {
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// A branching vertex of the top that both sides contract.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LostBranching {
    pub vertex: VertexId,
    pub degree: usize,
    pub branches: Vec<BTreeSet<VertexId>>,
    pub all_simple: bool,
    /// Branch contracted by the first side, and the one by the second.
    pub w1: Option<BTreeSet<VertexId>>,
    pub w2: Option<BTreeSet<VertexId>>,
    /// Segments of the two ends receiving the opposite branch.
    pub s1: Option<SegmentReport>,
    pub s2: Option<SegmentReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphLemmaReport {
    /// Branching vertices kept by both sides, as top ids.
    pub kept: BTreeSet<VertexId>,
    pub a: Clause,
    pub b: Clause,
    pub c: Clause,
    pub lost: Vec<LostBranching>,
}

impl GraphLemmaReport {
    pub fn pass(&self) -> bool {
        self.a.pass && self.b.pass && self.c.pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Circular,
    Extremal,
    Inner,
}

fn kind(s: &SegmentReport) -> Kind {
    match (s.shape, s.position) {
        (Shape::Circular, _) => Kind::Circular,
        (Shape::Linear, Position::Extremal | Position::WholeGraph) => Kind::Extremal,
        _ => Kind::Inner,
    }
}

fn image(map: &BTreeMap<VertexId, VertexId>, set: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    set.iter().filter_map(|v| map.get(v).cloned()).collect()
}

fn segment_containing<'a>(
    segs: &'a [SegmentReport],
    set: &BTreeSet<VertexId>,
) -> Option<&'a SegmentReport> {
    segs.iter()
        .find(|s| !set.is_empty() && set.iter().all(|v| s.vertices.contains(v)))
}

/// The branch at `v` that `p` contracts while `v` is still present.
fn contracted_before(
    p: &Contraction,
    v: &VertexId,
    sets: &[BTreeSet<VertexId>],
) -> Option<BTreeSet<VertexId>> {
    let order = p.blowdown_order();
    let at = order.iter().position(|u| u == v)?;
    let early: BTreeSet<&VertexId> = order[..at].iter().collect();
    sets.iter()
        .find(|s| s.iter().all(|u| early.contains(u)))
        .cloned()
}

pub fn check_graph_lemma(d: &Diagram) -> Result<GraphLemmaReport> {
    let (g1, g2) = d.ends();
    if !g1.is_minimal() || !g2.is_minimal() {
        return Err(Error::Diagram("ends are not minimal".into()));
    }
    if !d.is_relatively_minimal() {
        return Err(Error::Diagram("diagram is not relatively minimal".into()));
    }
    let top = &d.top;
    let m1 = d.p1.vertex_map();
    let m2 = d.p2.vertex_map();
    let back = |m: &BTreeMap<VertexId, VertexId>, set: BTreeSet<VertexId>| -> BTreeSet<VertexId> {
        m.iter()
            .filter(|(_, t)| set.contains(*t))
            .map(|(s, _)| s.clone())
            .collect()
    };
    let br = top.branching_set();
    let b1 = back(&m1, g1.branching_set());
    let b2 = back(&m2, g2.branching_set());

    let mut wa = Vec::new();
    let kept1: BTreeSet<VertexId> = br.iter().filter(|v| m1.contains_key(*v)).cloned().collect();
    let kept2: BTreeSet<VertexId> = br.iter().filter(|v| m2.contains_key(*v)).cloned().collect();
    if b1 != kept1 {
        wa.push(format!(
            "first end: branching {b1:?} but surviving top branching {kept1:?}"
        ));
    }
    if b2 != kept2 {
        wa.push(format!(
            "second end: branching {b2:?} but surviving top branching {kept2:?}"
        ));
    }
    if b1 != b2 {
        wa.push(format!("branching sets differ: {b1:?} vs {b2:?}"));
    }
    for v in b1.intersection(&b2) {
        let d0 = top.degree(v)?;
        let (d1, d2) = (g1.degree(&m1[v])?, g2.degree(&m2[v])?);
        if d0 != d1 || d0 != d2 {
            wa.push(format!("degree of {v} changes: {d0} -> {d1}, {d2}"));
        }
    }
    let kept = &b1 & &b2;

    let segs1 = segments(&g1);
    let segs2 = segments(&g2);
    let mut wb = Vec::new();
    let mut hit1 = vec![0usize; segs1.len()];
    let mut hit2 = vec![0usize; segs2.len()];
    for comp in top.without(&kept).components() {
        let find = |segs: &[SegmentReport], m: &BTreeMap<VertexId, VertexId>| {
            let img = image(m, &comp);
            segs.iter()
                .position(|s| s.vertices.iter().cloned().collect::<BTreeSet<_>>() == img)
        };
        match (find(&segs1, &m1), find(&segs2, &m2)) {
            (Some(i), Some(j)) => {
                hit1[i] += 1;
                hit2[j] += 1;
                if kind(&segs1[i]) != kind(&segs2[j]) {
                    wb.push(format!(
                        "component {comp:?} maps to segments of different kinds"
                    ));
                }
            }
            _ => wb.push(format!(
                "component {comp:?} does not map onto a segment on both sides"
            )),
        }
    }
    if hit1.iter().chain(&hit2).any(|&h| h != 1) {
        wb.push("segments are not in one-to-one correspondence".into());
    }

    let mut wc = Vec::new();
    let mut lost = Vec::new();
    for v in br.difference(&kept) {
        let branches = branches_at(top, v)?;
        let sets: Vec<BTreeSet<VertexId>> =
            branches.iter().map(|b| b.branch.vertices.clone()).collect();
        let all_simple = branches.iter().all(|b| b.simple);
        let w1 = contracted_before(&d.p1, v, &sets);
        let w2 = contracted_before(&d.p2, v, &sets);
        let s1 = w2
            .as_ref()
            .and_then(|w| segment_containing(&segs1, &image(&m1, w)).cloned());
        let s2 = w1
            .as_ref()
            .and_then(|w| segment_containing(&segs2, &image(&m2, w)).cloned());
        let entry = LostBranching {
            vertex: v.clone(),
            degree: top.degree(v)?,
            branches: sets,
            all_simple,
            w1,
            w2,
            s1,
            s2,
        };
        let bad_end = |s: &Option<SegmentReport>| {
            !s.as_ref()
                .is_some_and(|s| s.is_extremal_linear() && !s.admissible)
        };
        if !top.is_rational(v)? {
            wc.push(format!("{v} is not rational"));
        }
        if !(d.p1.contracted.contains(v) && d.p2.contracted.contains(v)) {
            wc.push(format!("{v} is not contracted on both sides"));
        }
        if entry.degree != 3 || entry.branches.len() != 3 || !entry.all_simple {
            wc.push(format!(
                "{v} does not have degree 3 with three simple branches"
            ));
        }
        if entry.w1.is_none() || entry.w2.is_none() || entry.w1 == entry.w2 {
            wc.push(format!("{v} lacks two distinct contracted branches"));
        }
        if bad_end(&entry.s1) || bad_end(&entry.s2) {
            wc.push(format!(
                "{v}: an end gains no non-admissible extremal linear segment"
            ));
        }
        lost.push(entry);
    }
    Ok(GraphLemmaReport {
        kept,
        a: Clause::from(wa),
        b: Clause::from(wb),
        c: Clause::from(wc),
        lost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::moves::are_equivalent_morphisms;
    use crate::notation::parse;

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn iso(g: &WeightedGraph, s: &str) -> bool {
        are_isomorphic(g, &parse(s).unwrap()).is_some()
    }

    pub(crate) fn branched_diagram() -> Diagram {
        let top = parse(
            r#"{"vertices":[{"id":"a","w":0},{"id":"v","w":-3},{"id":"v1","w":-1},{"id":"b1","w":-2},
                {"id":"v2","w":-1},{"id":"b2","w":-2}],
                "edges":[["a","v"],["v","v1"],["v1","b1"],["v","v2"],["v2","b2"]]}"#,
        )
        .unwrap();
        let p1 = Contraction::from_blowdowns(&top, [&v("v1"), &v("b1"), &v("v")]).unwrap();
        let p2 = Contraction::from_blowdowns(&top, [&v("v2"), &v("b2"), &v("v")]).unwrap();
        Diagram::new(top, p1, p2).unwrap()
    }

    #[test]
    fn non_linear_domination() {
        let d = branched_diagram();
        assert!(d.is_relatively_minimal());
        assert_eq!(relatively_minimize(&d).unwrap(), d);
        let r = check_graph_lemma(&d).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.kept.is_empty());
        assert_eq!(r.lost.len(), 1);
        let lost = &r.lost[0];
        assert_eq!(lost.vertex, v("v"));
        assert_eq!(lost.degree, 3);
        assert!(lost.all_simple);
        assert_eq!(lost.w1, Some([v("v1"), v("b1")].into()));
        assert_eq!(lost.w2, Some([v("v2"), v("b2")].into()));
    }

    #[test]
    fn lost_vertex_with_two_contracted_branches() {
        // p1 contracts two branches at n5, only n8 before n5 itself.
        let top = parse(
            r#"{"vertices":[{"id":"n0","w":-1},{"id":"n1","w":-2},{"id":"n5","w":-2},{"id":"n8","w":-1}],
                "edges":[["n0","n5"],["n1","n5"],["n5","n8"]]}"#,
        )
        .unwrap();
        let p1 = Contraction::from_blowdowns(&top, [&v("n8"), &v("n5"), &v("n1")]).unwrap();
        let p2 = Contraction::from_blowdowns(&top, [&v("n0"), &v("n5"), &v("n1")]).unwrap();
        let r = check_graph_lemma(&Diagram::new(top, p1, p2).unwrap()).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.lost[0].w1, Some([v("n8")].into()));
        assert_eq!(r.lost[0].w2, Some([v("n0")].into()));
    }

    #[test]
    fn single_contraction_chain() {
        let g = parse("[[-1,1]]").unwrap();
        let p = Contraction::from_blowdowns(&g, [&v("v0")]).unwrap();
        let d = dominate(&[Link::Forward(p.clone())]).unwrap();
        assert_eq!(d.top, g);
        assert!(are_equivalent_morphisms(&d.p2, &p).unwrap());
        assert!(d.p1.contracted.is_empty());
    }

    #[test]
    fn two_dominations_of_the_same_graphs() {
        let g = parse("[[-1,1]]").unwrap();
        let s1 = Contraction::from_blowdowns(&g, [&v("v0")]).unwrap();
        let d = dominate(&[Link::Forward(s1.clone()), Link::Backward(s1)]).unwrap();
        assert!(iso(&d.top, "[[-1,0,-1]]"));
        assert_eq!(d.p1.contracted.len(), 1);
        assert_eq!(d.p2.contracted.len(), 1);
        assert_ne!(d.p1.contracted, d.p2.contracted);
        assert_eq!(relatively_minimize(&d).unwrap(), d);
        let (a, b) = d.ends();
        assert!(iso(&a, "[[-1,1]]") && iso(&b, "[[-1,1]]"));
    }

    #[test]
    fn same_edge_is_identified() {
        let g = parse("[[-2,-1,-2]]").unwrap();
        let s = Contraction::from_blowdowns(&g, [&v("v1")]).unwrap();
        let d = dominate(&[Link::Forward(s.clone()), Link::Backward(s)]).unwrap();
        assert_eq!(d.top.len(), 3);
        assert!(d.p1.contracted.is_empty() && d.p2.contracted.is_empty());
    }

    #[test]
    fn peeling_common_vertex() {
        let g = parse("[[-1,1]]").unwrap();
        let p = Contraction::from_blowdowns(&g, [&v("v0")]).unwrap();
        let d = Diagram::new(g.clone(), p.clone(), p.clone()).unwrap();
        let (r, peel) = relatively_minimize_traced(&d).unwrap();
        assert!(iso(&r.top, "[[2]]"));
        assert!(r.p1.seq.is_empty() && r.p2.seq.is_empty());
        assert!(are_equivalent_morphisms(&peel.compose(&r.p1).unwrap(), &p).unwrap());
    }

    #[test]
    fn non_composable() {
        let g = parse("[[-1,1]]").unwrap();
        let p = Contraction::from_blowdowns(&g, [&v("v0")]).unwrap();
        assert!(matches!(
            dominate(&[Link::Forward(p.clone()), Link::Forward(p)]),
            Err(Error::NonComposable(1))
        ));
    }
}
