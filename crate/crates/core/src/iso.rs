//! Isomorphism testing and canonical keys.
//!
//! Colour refinement on (weight, rationality, loops, degree) followed by
//! individualization/backtracking. The canonical code is the lexicographically
//! least encoding over all leaves of the search tree, so two graphs get equal
//! codes exactly when they are isomorphic. Twin vertices (same attributes,
//! same multiplicities to everything else) are swapped by an automorphism, so
//! only one per twin class is individualized.

use std::collections::BTreeMap;

use crate::graph::WeightedGraph;
use crate::ids::VertexId;

struct Dense {
    ids: Vec<VertexId>,
    attrs: Vec<(i64, bool, usize)>,
    mult: Vec<Vec<usize>>,
}

impl Dense {
    fn new(g: &WeightedGraph) -> Self {
        let ids: Vec<VertexId> = g.vertex_ids().cloned().collect();
        let index: BTreeMap<&VertexId, usize> =
            ids.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = ids.len();
        let mut mult = vec![vec![0; n]; n];
        let mut loops = vec![0; n];
        for (_, a, b) in g.edges() {
            let (i, j) = (index[a], index[b]);
            if i == j {
                loops[i] += 1;
            } else {
                mult[i][j] += 1;
                mult[j][i] += 1;
            }
        }
        let attrs = ids
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let d = g.vertex(v).expect("vertex present");
                (d.weight, d.rational, loops[i])
            })
            .collect();
        Dense { ids, attrs, mult }
    }

    fn degree(&self, i: usize) -> usize {
        self.mult[i].iter().sum::<usize>() + 2 * self.attrs[i].2
    }

    fn initial_colours(&self) -> Vec<usize> {
        let keys: Vec<_> = (0..self.ids.len())
            .map(|i| (self.attrs[i], self.degree(i)))
            .collect();
        rank(&keys)
    }

    fn refine(&self, mut colours: Vec<usize>) -> Vec<usize> {
        let n = colours.len();
        let mut classes = distinct(&colours);
        loop {
            let sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
                .map(|i| {
                    let mut around: Vec<(usize, usize)> = (0..n)
                        .filter(|&j| self.mult[i][j] > 0)
                        .map(|j| (colours[j], self.mult[i][j]))
                        .collect();
                    around.sort_unstable();
                    (colours[i], around)
                })
                .collect();
            colours = rank(&sigs);
            let now = distinct(&colours);
            if now == classes {
                return colours;
            }
            classes = now;
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        self.attrs[u] == self.attrs[v]
            && (0..self.ids.len()).all(|w| w == u || w == v || self.mult[u][w] == self.mult[v][w])
    }

    fn code(&self, order: &[usize]) -> Vec<i64> {
        let n = order.len();
        let mut code = Vec::with_capacity(1 + 3 * n + n * n / 2);
        code.push(n as i64);
        for &i in order {
            let (w, r, l) = self.attrs[i];
            code.extend([w, i64::from(r), l as i64]);
        }
        for a in 0..n {
            for b in a + 1..n {
                code.push(self.mult[order[a]][order[b]] as i64);
            }
        }
        code
    }

    fn search(&self, colours: Vec<usize>, best: &mut Option<(Vec<i64>, Vec<usize>)>) {
        let colours = self.refine(colours);
        let n = colours.len();
        let mut counts = vec![0usize; n];
        for &c in &colours {
            counts[c] += 1;
        }
        let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
            let mut order = vec![0; n];
            for (i, &c) in colours.iter().enumerate() {
                order[c] = i;
            }
            let code = self.code(&order);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order));
            }
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&i| colours[i] == cell).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let split = colours
                .iter()
                .enumerate()
                .map(|(i, &c)| 2 * c + usize::from(c == cell && i != v))
                .collect();
            self.search(split, best);
        }
    }

    fn canonical(&self) -> (Vec<i64>, Vec<usize>) {
        if self.ids.is_empty() {
            return (vec![0], Vec::new());
        }
        let mut best = None;
        self.search(self.initial_colours(), &mut best);
        best.expect("search visits at least one leaf")
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn distinct(colours: &[usize]) -> usize {
    colours.iter().max().map_or(0, |m| m + 1)
}

/// Vertices of `g` listed in canonical order, with the canonical code.
pub fn canonical_form(g: &WeightedGraph) -> (Vec<i64>, Vec<VertexId>) {
    let dense = Dense::new(g);
    let (code, order) = dense.canonical();
    (
        code,
        order.into_iter().map(|i| dense.ids[i].clone()).collect(),
    )
}

/// A readable string that is equal for two graphs exactly when they are
/// isomorphic.
pub fn canonical_key(g: &WeightedGraph) -> String {
    let (code, _) = canonical_form(g);
    let n = code[0] as usize;
    let mut key = format!("n{n}:");
    let verts: Vec<String> = code[1..1 + 3 * n]
        .chunks(3)
        .map(|c| {
            let mut s = c[0].to_string();
            if c[1] == 0 {
                s.push('*');
            }
            if c[2] > 0 {
                s.push_str(&format!("@{}", c[2]));
            }
            s
        })
        .collect();
    key.push_str(&verts.join(","));
    key.push('|');
    let adj: String = code[1 + 3 * n..]
        .iter()
        .map(|&m| char::from_digit(m.min(35) as u32, 36).expect("digit"))
        .collect();
    key.push_str(&adj);
    key
}

/// A weight-, rationality-, loop- and multiplicity-preserving bijection from
/// `g1` to `g2`, if one exists.
pub fn are_isomorphic(
    g1: &WeightedGraph,
    g2: &WeightedGraph,
) -> Option<BTreeMap<VertexId, VertexId>> {
    if g1.len() != g2.len() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let (c1, o1) = canonical_form(g1);
    let (c2, o2) = canonical_form(g2);
    (c1 == c2).then(|| o1.into_iter().zip(o2).collect())
}
