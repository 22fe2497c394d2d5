//! Arguments that name graphs, sequences, chains and diagrams.
//!
//! Every such argument is literal text, `@path`, or the path of an existing
//! file. Graphs embedded in documents may be shorthand strings or JSON objects.

use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use wgraph::moves::BirationalSequence;
use wgraph::{parse, Contraction, Diagram, Link, Move, Policy, VertexId, WeightedGraph};

pub fn read_arg(arg: &str) -> Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        return std::fs::read_to_string(path).with_context(|| format!("reading {path}"));
    }
    let looks_literal = arg.trim_start().starts_with(['[', '(', '{']);
    if !looks_literal && Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

pub fn graph(arg: &str) -> Result<WeightedGraph> {
    Ok(parse(read_arg(arg)?.trim())?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphDoc {
    Text(String),
    Object(WeightedGraph),
}

impl GraphDoc {
    fn into_graph(self) -> Result<WeightedGraph> {
        match self {
            GraphDoc::Text(s) => Ok(parse(&s)?),
            GraphDoc::Object(g) => Ok(g),
        }
    }
}

#[derive(Deserialize)]
struct ContractionDoc {
    source: GraphDoc,
    blowdowns: Vec<VertexId>,
}

impl ContractionDoc {
    fn build(self) -> Result<Contraction> {
        let g = self.source.into_graph()?;
        Ok(Contraction::from_blowdowns(&g, &self.blowdowns)?)
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum LinkDoc {
    Forward(ContractionDoc),
    Backward(ContractionDoc),
}

/// A chain: `[{"forward": {"source": G, "blowdowns": [..]}}, {"backward": ..}]`.
pub fn chain(arg: &str) -> Result<Vec<Link>> {
    let docs: Vec<LinkDoc> = serde_json::from_str(&read_arg(arg)?).context("chain document")?;
    docs.into_iter()
        .map(|d| {
            Ok(match d {
                LinkDoc::Forward(c) => Link::Forward(c.build()?),
                LinkDoc::Backward(c) => Link::Backward(c.build()?),
            })
        })
        .collect()
}

#[derive(Deserialize)]
struct DiagramDoc {
    top: GraphDoc,
    p1: Vec<VertexId>,
    p2: Vec<VertexId>,
}

/// `{"top": G, "p1": [..], "p2": [..]}` with blowdown orders for both sides.
pub fn diagram_doc(text: &str) -> Result<Diagram> {
    let doc: DiagramDoc = serde_json::from_str(text).context("diagram document")?;
    let top = doc.top.into_graph()?;
    let p1 = Contraction::from_blowdowns(&top, &doc.p1)?;
    let p2 = Contraction::from_blowdowns(&top, &doc.p2)?;
    Ok(Diagram::new(top, p1, p2)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SequenceDoc {
    Steps(Vec<Move>),
    Sequence(BirationalSequence),
}

/// Moves to replay on `g`: a bare list of moves or a recorded sequence.
pub fn steps(arg: &str) -> Result<Vec<Move>> {
    let doc: SequenceDoc = serde_json::from_str(&read_arg(arg)?).context("sequence document")?;
    Ok(match doc {
        SequenceDoc::Steps(s) => s,
        SequenceDoc::Sequence(s) => s.steps,
    })
}

/// `smallest`, `largest`, `random` (shuffled by the seed) or a comma list of ids.
pub fn policy(text: &str, g: &WeightedGraph, seed: u64) -> Result<Policy> {
    Ok(match text {
        "smallest" => Policy::SmallestId,
        "largest" => Policy::LargestId,
        "random" => {
            let mut ids: Vec<VertexId> = g.vertex_ids().cloned().collect();
            ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Policy::Priority(ids)
        }
        list => {
            let ids: Vec<VertexId> = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(VertexId::from)
                .collect();
            if ids.is_empty() {
                bail!("empty policy");
            }
            Policy::Priority(ids)
        }
    })
}
