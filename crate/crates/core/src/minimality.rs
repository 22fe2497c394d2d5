//! Contractibility, minimal models, and the square completing two blowups.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ids::{EdgeId, VertexId};
use crate::moves::{blowdown, Contraction, Move, Recorder};
use crate::quad::{discriminant, is_negative_definite};
use crate::validate::{validate, ValidateOptions};

fn require_connected(g: &WeightedGraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Blows down at-most-linear (−1)-vertices until one loop-free (−1)-vertex
/// is left or nothing applies. Any such vertex may go first, so no
/// backtracking is needed.
pub fn is_contractible(g: &WeightedGraph) -> Result<bool> {
    require_connected(g)?;
    if g.len() > 1 && g.contractible_vertices().is_empty() {
        return Ok(false);
    }
    let mut cur = g.clone();
    loop {
        if cur.len() == 1 {
            let v = cur.vertex_ids().next().expect("one vertex");
            let d = cur.vertex(v).expect("present");
            return Ok(d.rational && d.weight == -1 && cur.edge_count() == 0);
        }
        let Some(v) = cur.contractible_vertices().into_iter().next() else {
            return Ok(false);
        };
        cur = blowdown(&cur, &v)?;
    }
}

/// Rational tree with negative definite form of discriminant 1.
///
/// Necessary for contractibility but not sufficient once the tree branches:
/// a unimodular negative definite tree need not contain a (−1)-vertex that
/// can be blown down (E8 has none at all). Decisions use [`is_contractible`].
pub fn is_contractible_numeric(g: &WeightedGraph) -> Result<bool> {
    require_connected(g)?;
    // A negative definite form has a negative diagonal.
    Ok(g.is_tree()
        && g.vertices().all(|(_, d)| d.rational && d.weight < 0)
        && is_negative_definite(g)
        && discriminant(g) == 1.into())
}

/// Which at-most-linear (−1)-vertex a contraction takes next.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    #[default]
    SmallestId,
    LargestId,
    /// First listed candidate; falls back to the smallest id.
    Priority(Vec<VertexId>),
}

impl Policy {
    fn pick(&self, candidates: &[VertexId]) -> Option<VertexId> {
        match self {
            Policy::SmallestId => candidates.first().cloned(),
            Policy::LargestId => candidates.last().cloned(),
            Policy::Priority(order) => order
                .iter()
                .find(|v| candidates.contains(v))
                .or_else(|| candidates.first())
                .cloned(),
        }
    }
}

/// Contracts at-most-linear (−1)-vertices until the graph is minimal.
pub fn minimal_model(g: &WeightedGraph, policy: &Policy) -> Result<(WeightedGraph, Contraction)> {
    let report = validate(g, &ValidateOptions::default());
    if !report.is_empty() {
        return Err(Error::Invalid(report.join("; ")));
    }
    let mut rec = Recorder::new(g);
    loop {
        let cur = rec.graph();
        let candidates: Vec<VertexId> = cur
            .contractible_vertices()
            .into_iter()
            .filter(|v| cur.degree(v).unwrap_or(0) > 0)
            .collect();
        let Some(v) = policy.pick(&candidates) else {
            break;
        };
        rec.blowdown(&v)?;
    }
    let (seq, end) = rec.finish();
    Ok((end, Contraction::new(g, seq)?))
}

/// Contracts exactly `set` (ids of `g`), always taking the smallest
/// available vertex. Fails when the set is not contractible in `g`.
pub fn contract_set(g: &WeightedGraph, set: &BTreeSet<VertexId>) -> Result<Contraction> {
    let mut rec = Recorder::new(g);
    let mut left = set.clone();
    while !left.is_empty() {
        let cur = rec.graph();
        let next = cur
            .contractible_vertices()
            .into_iter()
            .find(|v| left.contains(v));
        let Some(v) = next else {
            return Err(Error::Diagram(format!(
                "vertices {left:?} cannot be contracted"
            )));
        };
        rec.blowdown(&v)?;
        left.remove(&v);
    }
    Contraction::new(g, rec.finish().0)
}

/// [`contract_set`] followed by renaming survivors through `rename` (ids not
/// listed keep their name).
pub fn contract_set_renamed(
    g: &WeightedGraph,
    set: &BTreeSet<VertexId>,
    rename: &BTreeMap<VertexId, VertexId>,
) -> Result<Contraction> {
    let p = contract_set(g, set)?;
    let map: BTreeMap<VertexId, VertexId> = rename
        .iter()
        .filter(|(a, b)| a != b && !set.contains(*a))
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    if map.is_empty() {
        return Ok(p);
    }
    let mut rec = Recorder::new(g);
    rec.append(&p.seq)?;
    rec.push(&Move::Relabel { map })?;
    Contraction::new(g, rec.finish().0)
}

/// A blowup site: an edge for an inner blowup, a vertex for an outer one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    Inner(EdgeId),
    Outer(VertexId),
}

fn blow(rec: &mut Recorder, site: &Site) -> Result<VertexId> {
    match site {
        Site::Inner(e) => rec.inner_blowup(e),
        Site::Outer(v) => rec.outer_blowup(v),
    }
    .map_err(|e| Error::BadSite(e.to_string()))
}

/// Performs both blowups on `g0`. The returned `pa` contracts the vertex
/// created at `site_b` and `pb` the one created at `site_a`, so `pa` lands on
/// `g0` blown up at `site_a` alone. Two inner blowups of one edge are the
/// same blowup and give identities.
pub fn complete_square(
    g0: &WeightedGraph,
    site_a: &Site,
    site_b: &Site,
) -> Result<(WeightedGraph, Contraction, Contraction)> {
    let mut rec = Recorder::new(g0);
    let na = blow(&mut rec, site_a)?;
    if let (Site::Inner(a), Site::Inner(b)) = (site_a, site_b) {
        if a == b {
            let g = rec.graph().clone();
            return Ok((
                g.clone(),
                Contraction::identity(&g),
                Contraction::identity(&g),
            ));
        }
    }
    let nb = blow(&mut rec, site_b)?;
    let g = rec.graph().clone();
    let pa = Contraction::from_blowdowns(&g, [&nb])?;
    let pb = Contraction::from_blowdowns(&g, [&na])?;
    Ok((g, pa, pb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;
    use crate::notation::parse;

    fn iso(g: &WeightedGraph, s: &str) -> bool {
        are_isomorphic(g, &parse(s).unwrap()).is_some()
    }

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    #[test]
    fn contractibility_routes() {
        for (s, want) in [
            ("[[-1]]", true),
            ("[[-2,-1]]", true),
            ("[[0]]", false),
            ("[[-2,-2]]", false),
            ("((-1,-2))", false),
        ] {
            let g = parse(s).unwrap();
            assert_eq!(is_contractible(&g).unwrap(), want, "{s}");
            assert_eq!(is_contractible_numeric(&g).unwrap(), want, "{s}");
        }
        let two =
            parse(r#"{"vertices":[{"id":"a","w":-1},{"id":"b","w":-1}],"edges":[]}"#).unwrap();
        assert!(matches!(is_contractible(&two), Err(Error::Disconnected)));
    }

    #[test]
    fn numeric_route_is_only_necessary() {
        let star = parse(
            r#"{"vertices":[{"id":"c","w":-1},{"id":"a","w":-3},{"id":"b","w":-2},{"id":"x","w":-4},{"id":"y","w":-3}],
                "edges":[["c","a"],["a","b"],["c","x"],["c","y"]]}"#,
        )
        .unwrap();
        let e8 = parse(
            r#"{"vertices":[{"id":"a","w":-2},{"id":"b","w":-2},{"id":"c","w":-2},{"id":"d","w":-2},
                {"id":"e","w":-2},{"id":"f","w":-2},{"id":"g","w":-2},{"id":"h","w":-2}],
                "edges":[["a","b"],["b","c"],["c","d"],["d","e"],["e","f"],["f","g"],["c","h"]]}"#,
        )
        .unwrap();
        for g in [star, e8] {
            assert!(is_contractible_numeric(&g).unwrap());
            assert!(!is_contractible(&g).unwrap());
        }
    }

    #[test]
    fn minimal_models() {
        let g = parse("((9))").unwrap();
        let (m, p) = minimal_model(&g, &Policy::default()).unwrap();
        assert_eq!(m, g);
        assert!(p.seq.is_empty());

        let g = parse("[[-1,-1,-3]]").unwrap();
        let (m, _) = minimal_model(&g, &Policy::default()).unwrap();
        assert!(iso(&m, "[[0,-3]]"));
        let (m, _) = minimal_model(&g, &Policy::Priority(vec![v("v1")])).unwrap();
        assert!(iso(&m, "[[0,-2]]"));
        assert!(minimal_model(&parse("[[-1]]").unwrap(), &Policy::default()).is_err());
    }

    #[test]
    fn non_linear_domination_left_side() {
        let g = parse(
            r#"{"vertices":[{"id":"a","w":0},{"id":"v","w":-3},{"id":"v1","w":-1},{"id":"b1","w":-2},
                {"id":"v2","w":-1},{"id":"b2","w":-2}],
                "edges":[["a","v"],["v","v1"],["v1","b1"],["v","v2"],["v2","b2"]]}"#,
        )
        .unwrap();
        let p = Contraction::from_blowdowns(&g, [&v("v1"), &v("b1"), &v("v")]).unwrap();
        let t = p.target();
        assert!(iso(&t, "[[1,0,-2]]"));
        assert_eq!(t.weight(&v("a")).unwrap(), 1);
        assert_eq!(t.weight(&v("v2")).unwrap(), 0);
    }

    #[test]
    fn squares() {
        let g0 = parse("[[0]]").unwrap();
        let site = Site::Outer(v("v0"));
        let (g, pa, pb) = complete_square(&g0, &site, &site).unwrap();
        assert!(iso(&g, "[[-1,-2,-1]]"));
        assert!(iso(&pa.target(), "[[-1,-1]]"));
        assert!(iso(&pb.target(), "[[-1,-1]]"));

        let g0 = parse("[[-2,-2]]").unwrap();
        let e = Site::Inner("e0".into());
        let (g, pa, pb) = complete_square(&g0, &e, &e).unwrap();
        assert!(iso(&g, "[[-3,-1,-3]]"));
        assert!(pa.seq.is_empty() && pb.seq.is_empty());

        let (g1, _, _) = complete_square(&g0, &Site::Outer(v("v0")), &e).unwrap();
        let (g2, _, _) = complete_square(&g0, &e, &Site::Outer(v("v0"))).unwrap();
        assert!(are_isomorphic(&g1, &g2).is_some());
        assert!(complete_square(&g0, &Site::Outer(v("zz")), &e).is_err());
    }
}
