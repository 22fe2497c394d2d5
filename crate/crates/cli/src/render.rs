//! DOT export. Weights label the vertices, non-rational vertices are boxes,
//! and at-most-linear (−1)-vertices are filled since blowdowns happen there.

use std::fmt::Write;

use wgraph::WeightedGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn dot(g: &WeightedGraph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for (v, d) in g.vertices() {
        let mut attrs = vec![
            format!("label={}", quote(&d.weight.to_string())),
            format!("tooltip={}", quote(v.as_str())),
        ];
        if !d.rational {
            attrs.push("shape=box".into());
        }
        if d.weight == -1 && g.is_at_most_linear(v) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=\"#f4c542\"".into());
        }
        writeln!(out, "  {} [{}];", quote(v.as_str()), attrs.join(", ")).expect("string write");
    }
    for (_, a, b) in g.edges() {
        writeln!(out, "  {} -- {};", quote(a.as_str()), quote(b.as_str())).expect("string write");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use wgraph::parse;

    #[test]
    fn styles() {
        let d = dot(&parse("[[-1,3*]]").unwrap());
        assert!(d.contains("\"v0\" [label=\"-1\", tooltip=\"v0\", style=filled"));
        assert!(d.contains("\"v1\" [label=\"3\", tooltip=\"v1\", shape=box]"));
        assert!(d.contains("\"v0\" -- \"v1\";"));
        let lp = dot(&parse("((-1))").unwrap());
        assert!(
            !lp.contains("filled"),
            "a vertex with a loop is not a blowdown site"
        );
        assert!(lp.contains("\"v0\" -- \"v0\";"));
    }
}
