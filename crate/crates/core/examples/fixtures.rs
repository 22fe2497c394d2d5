//! Regenerates the sequence fixtures used by the acceptance suite.
//!
//! `cargo run -p wgraph --example fixtures -- crates/core/tests/fixtures`

use std::path::{Path, PathBuf};

use wgraph::moves::{BirationalSequence, Recorder};
use wgraph::search::{find_sequence, Limits};
use wgraph::{are_isomorphic, parse, standard_form};

fn write(dir: &Path, name: &str, seq: &BirationalSequence) {
    let text = serde_json::to_string_pretty(seq).expect("serializable");
    std::fs::write(dir.join(name), text + "\n").expect("writable fixture directory");
}

fn main() {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "crates/core/tests/fixtures".into()),
    );
    std::fs::create_dir_all(&dir).expect("fixture directory");

    let cubic = parse("((9))").unwrap();
    let mut rec = Recorder::new(&cubic);
    let loop_edge = cubic.edge_ids().next().unwrap().clone();
    let first = rec.inner_blowup(&loop_edge).unwrap();
    let new_edge = rec.graph().incident_edges(&first)[0].clone();
    rec.inner_blowup(&new_edge).unwrap();
    let (head, mid) = rec.finish();
    let goal = parse("((0,0,-2,-2,-2,-2,-3))").unwrap();
    let limits = Limits {
        max_vertices: 8,
        max_nodes: 2_000_000,
        outer: false,
    };
    let (tail, _) = find_sequence(&mid, &limits, |h| {
        h.len() == goal.len() && are_isomorphic(h, &goal).is_some()
    })
    .expect("bounded search reaches the goal");
    write(&dir, "nodal_cubic.json", &head.then(&tail).unwrap());

    for a in 1..=5 {
        let g = parse(&format!("[[{a}]]")).unwrap();
        write(
            &dir,
            &format!("line_{a}.json"),
            &standard_form(&g).unwrap().reduction,
        );
    }
}
