//! Built-in worked examples with their expected analyses.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use serde::Serialize;
use serde_json::{json, Value};

use wgraph::{
    are_isomorphic, check_graph_lemma, dominate, enumerate_minimal_models,
    has_unique_minimal_model, inertia, is_birationally_rigid, is_surface_rigid, parse,
    relatively_minimize, standard_form, triangulate_circular, Budget, Contraction, Diagram, Link,
    VertexId, WeightedGraph,
};

#[derive(Clone, Debug, Serialize)]
pub struct ExampleEntry {
    pub name: &'static str,
    pub graph: WeightedGraph,
    pub expected: BTreeMap<String, Value>,
    pub provenance: &'static str,
    /// Blowdown orders of the two sides, for entries about diagrams.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<[Vec<VertexId>; 2]>,
}

/// Analyses whose value is a graph, compared up to isomorphism.
const GRAPH_VALUED: [&str; 2] = ["standard_form", "dominate_top"];

fn entry(
    name: &'static str,
    graph: &str,
    expected: Value,
    provenance: &'static str,
) -> ExampleEntry {
    let expected = match expected {
        Value::Object(m) => m.into_iter().collect(),
        _ => unreachable!("expectations are objects"),
    };
    ExampleEntry {
        name,
        graph: parse(graph).expect("library graph parses"),
        expected,
        provenance,
        sides: None,
    }
}

fn ids(list: &[&str]) -> Vec<VertexId> {
    list.iter().map(|s| VertexId::from(*s)).collect()
}

pub fn entries() -> Vec<ExampleEntry> {
    let branched_top = r#"{"vertices":[{"id":"a","w":0},{"id":"v","w":-3},{"id":"v1","w":-1},{"id":"b1","w":-2},
        {"id":"v2","w":-1},{"id":"b2","w":-2}],"edges":[["a","v"],["v","v1"],["v1","b1"],["v","v2"],["v2","b2"]]}"#;
    vec![
        entry(
            "nodal_cubic",
            "((9))",
            json!({"surface_rigid": true, "birationally_rigid": false, "i_plus": 1, "i_zero": 0,
                   "standard_form": "((0,0,-2,-2,-2,-2,-3))"}),
            "boundary of the complement of a plane nodal cubic",
        ),
        entry(
            "line",
            "[[1]]",
            json!({"surface_rigid": false, "standard_form": "[[0,0]]"}),
            "complement of a line in the plane",
        ),
        entry(
            "conic",
            "[[4]]",
            json!({"surface_rigid": false, "standard_form": "[[0,0,-2,-2,-2]]"}),
            "complement of a smooth conic",
        ),
        entry(
            "two_lines",
            "[[1,1]]",
            json!({"surface_rigid": false}),
            "complement of two lines meeting once",
        ),
        entry(
            "three_lines",
            "((1,1,1))",
            json!({"surface_rigid": true}),
            "complement of three lines in general position",
        ),
        entry(
            "smooth_cubic",
            "[[9*]]",
            json!({"surface_rigid": true}),
            "complement of a smooth cubic, an elliptic curve",
        ),
        entry(
            "zero_vertex",
            "[[0]]",
            json!({"unique_minimal": true, "enumerate_classes": 1}),
            "a single 0-vertex is its own unique minimal model",
        ),
        entry(
            "zero_and_minus_two_cycle",
            "((0,-2))",
            json!({"unique_minimal": true, "enumerate_classes": 1}),
            "non-admissible cycle with a unique minimal model",
        ),
        entry(
            "zero_and_minus_two_chain",
            "[[0,-2]]",
            json!({"unique_minimal": false}),
            "chain whose 0-tip pumps into infinitely many models",
        ),
        entry(
            "triangulated_square",
            "((-2,-1,-2,-1))",
            json!({"triangles": 2}),
            "a square cut by one diagonal",
        ),
        entry(
            "two_zero_cycle",
            "((0,0))",
            json!({"triangles": null}),
            "the cycle every triangulated cycle blows down to",
        ),
        ExampleEntry {
            sides: Some([ids(&["v0"]), ids(&["v0"])]),
            ..entry(
                "two_point_domination",
                "[[-1,1]]",
                json!({"dominate_top": "[[-1,0,-1]]", "relatively_minimal": true}),
                "two contractions of [[-1,1]] to [[2]] at distinct centres",
            )
        },
        ExampleEntry {
            sides: Some([ids(&["v1", "b1", "v"]), ids(&["v2", "b2", "v"])]),
            ..entry(
                "non_linear_domination",
                branched_top,
                json!({"graph_lemma_pass": true, "lost_branching": ["v"]}),
                "a branched graph dominating two minimal chains",
            )
        },
    ]
}

fn sides(e: &ExampleEntry) -> Result<(Contraction, Contraction)> {
    let [a, b] = e
        .sides
        .as_ref()
        .ok_or_else(|| anyhow!("{} has no contractions", e.name))?;
    Ok((
        Contraction::from_blowdowns(&e.graph, a)?,
        Contraction::from_blowdowns(&e.graph, b)?,
    ))
}

/// Computes one named analysis of an entry.
pub fn analyse(e: &ExampleEntry, key: &str) -> Result<Value> {
    let g = &e.graph;
    Ok(match key {
        "surface_rigid" => json!(is_surface_rigid(g)?.surface_rigid),
        "birationally_rigid" => json!(is_birationally_rigid(g)?),
        "i_plus" => json!(inertia(g).plus),
        "i_zero" => json!(inertia(g).zero),
        "standard_form" => json!(wgraph::format(&standard_form(g)?.graph)),
        "unique_minimal" => json!(has_unique_minimal_model(g)?),
        "enumerate_classes" => json!(enumerate_minimal_models(g, &Budget::default())?
            .classes
            .len()),
        "triangles" => json!(triangulate_circular(g)?.map(|t| t.triangles.len())),
        "dominate_top" | "relatively_minimal" => {
            let (s, t) = sides(e)?;
            let d = dominate(&[Link::Forward(s), Link::Backward(t)])?;
            if key == "dominate_top" {
                json!(wgraph::format(&d.top))
            } else {
                json!(relatively_minimize(&d)? == d)
            }
        }
        "graph_lemma_pass" | "lost_branching" => {
            let (p1, p2) = sides(e)?;
            let r = check_graph_lemma(&Diagram::new(g.clone(), p1, p2)?)?;
            if key == "graph_lemma_pass" {
                json!(r.pass())
            } else {
                json!(r.lost.iter().map(|l| l.vertex.as_str()).collect::<Vec<_>>())
            }
        }
        other => bail!("unknown analysis {other}"),
    })
}

fn matches(key: &str, got: &Value, want: &Value) -> Result<bool> {
    if GRAPH_VALUED.contains(&key) {
        let (Some(a), Some(b)) = (got.as_str(), want.as_str()) else {
            return Ok(false);
        };
        return Ok(are_isomorphic(&parse(a)?, &parse(b)?).is_some());
    }
    Ok(got == want)
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub example: &'static str,
    pub analysis: String,
    pub expected: Value,
    pub got: Value,
}

/// Re-runs every expectation; errors count as mismatches.
pub fn verify() -> (usize, Vec<Mismatch>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in entries() {
        for (key, want) in &e.expected {
            checked += 1;
            let got = analyse(&e, key).unwrap_or_else(|err| json!({"error": err.to_string()}));
            if !matches(key, &got, want).unwrap_or(false) {
                bad.push(Mismatch {
                    example: e.name,
                    analysis: key.clone(),
                    expected: want.clone(),
                    got,
                });
            }
        }
    }
    (checked, bad)
}
