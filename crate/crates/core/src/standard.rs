//! Reduction of chains and cycles to standard form.
//!
//! Zeros are the working tool. An elementary transformation at a 0-vertex
//! shifts weight between its two neighbours, so a single zero between `p`
//! and `q` can empty `q` into `p`, and a pair of adjacent zeros can be moved
//! past any weight: `[[w,0,0]] ~ [[0,0,w]]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ids::{EdgeId, VertexId};
use crate::iso::are_isomorphic;
use crate::moves::{apply, BirationalSequence, Recorder};
use crate::notation::{circular_order, linear_order};
use crate::search::{find_sequence, Limits};
use crate::segments::Shape;

/// A standard graph together with the sequence reaching it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardForm {
    pub shape: Shape,
    /// Length of the zero run at the head.
    pub zeros: usize,
    /// Weights after the zero run, in reading order.
    pub tail: Vec<i64>,
    pub graph: WeightedGraph,
    pub reduction: BirationalSequence,
}

pub fn is_standard_linear(ws: &[i64]) -> bool {
    let h = ws.iter().take_while(|&&w| w == 0).count();
    if h == ws.len() {
        return true;
    }
    h % 2 == 0 && ws[h..].iter().all(|&w| w <= -2)
}

/// Whether the cyclic weight sequence is standard, and if so the rotation
/// that puts the zero run first.
pub fn standard_circular_rotation(ws: &[i64]) -> Option<usize> {
    let n = ws.len();
    let zeros = ws.iter().filter(|&&w| w == 0).count();
    if n == 0 {
        return None;
    }
    if zeros == n {
        return Some(0);
    }
    // ((1)) and ((2)) admit no blowup that ever leads back to a smaller
    // weight, so they are kept as their own normal form.
    if n == 1 && ws[0] <= 2 {
        return Some(0);
    }
    // Start of the zero run: a zero whose predecessor is nonzero.
    let start = (0..n).find(|&i| ws[i] == 0 && ws[(i + n - 1) % n] != 0);
    let rot = start.unwrap_or_else(|| (0..n).find(|&i| ws[i] != 0).expect("nonzero weight"));
    let r: Vec<i64> = (0..n).map(|i| ws[(rot + i) % n]).collect();
    let h = r.iter().take_while(|&&w| w == 0).count();
    if r[h..].contains(&0) {
        return None;
    }
    let tail = &r[h..];
    let ok = (h % 2 == 0 && tail.iter().all(|&w| w <= -2))
        || (tail.len() == 1 && tail[0] <= 0)
        || (h % 2 == 0 && tail == [-1, -1]);
    ok.then_some(rot)
}

struct Chain {
    rec: Recorder,
    order: Vec<VertexId>,
    circular: bool,
    budget: usize,
}

impl Chain {
    fn n(&self) -> usize {
        self.order.len()
    }

    fn at(&self, i: usize) -> usize {
        if self.circular {
            i % self.n()
        } else {
            i
        }
    }

    fn w(&self, i: usize) -> i64 {
        self.rec
            .graph()
            .weight(&self.order[self.at(i)])
            .expect("chain vertex")
    }

    fn weights(&self) -> Vec<i64> {
        (0..self.n()).map(|i| self.w(i)).collect()
    }

    fn tick(&mut self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Stalled("reduction step limit reached".into()));
        }
        self.budget -= 1;
        Ok(())
    }

    fn edge(&self, i: usize, j: usize) -> EdgeId {
        let (a, b) = (&self.order[self.at(i)], &self.order[self.at(j)]);
        self.rec.graph().edges_between(a, b)[0].clone()
    }

    /// Elementary transformation at the zero in slot `z`, blowing up the edge
    /// to slot `toward`: that neighbour drops by one, the other rises by one.
    fn et(&mut self, z: usize, toward: usize) -> Result<()> {
        self.tick()?;
        let z = self.at(z);
        let e = self.edge(z, toward);
        let n = self.rec.inner_blowup(&e)?;
        self.rec.blowdown(&self.order[z].clone())?;
        self.order[z] = n;
        Ok(())
    }

    /// Outer form at a zero of degree at most one: `[[0,c]]` becomes `[[0,c+1]]`.
    fn et_outer(&mut self, z: usize) -> Result<()> {
        self.tick()?;
        let v = self.order[z].clone();
        let n = self.rec.outer_blowup(&v)?;
        self.rec.blowdown(&v)?;
        self.order[z] = n;
        Ok(())
    }

    /// Empties slot `from` into slot `to` through the zero between them.
    fn transfer(&mut self, z: usize, from: usize, to: usize) -> Result<()> {
        let wf = self.w(from);
        for _ in 0..wf.abs() {
            self.et(z, if wf > 0 { from } else { to })?;
        }
        Ok(())
    }

    /// Inner blowup between adjacent slots `i` and `j = i+1` (cyclically);
    /// returns the slot of the new vertex.
    fn blow_edge(&mut self, i: usize) -> Result<usize> {
        self.tick()?;
        let n = self.n();
        let i = self.at(i);
        let j = if self.circular { (i + 1) % n } else { i + 1 };
        let e = self.edge(i, j);
        let v = self.rec.inner_blowup(&e)?;
        self.order.insert(i + 1, v);
        Ok(i + 1)
    }

    fn blowdown(&mut self, i: usize) -> Result<()> {
        self.tick()?;
        let i = self.at(i);
        self.rec.blowdown(&self.order[i].clone())?;
        self.order.remove(i);
        Ok(())
    }

    /// Pair of zeros at `p, p+1` with weight `w` at `p-1` becomes `0,0,w`.
    fn pair_left(&mut self, p: usize) -> Result<()> {
        let prev = if self.circular {
            p + self.n() - 1
        } else {
            p - 1
        };
        self.transfer(p, prev, p + 1)
    }

    /// Pair of zeros at `p, p+1` with weight `w` at `p+2` becomes `w,0,0`.
    fn pair_right(&mut self, p: usize) -> Result<()> {
        self.transfer(p + 1, p + 2, p)
    }

    /// Drives the weight in slot `j` down to 0 by inner blowups on its right
    /// edge (an outer blowup when `j` ends the chain). Leaves a (−1) right
    /// of `j` when the weight was positive.
    fn zero_rightward(&mut self, j: usize) -> Result<()> {
        let j = self.at(j);
        while self.w(j) > 0 {
            if !self.circular && j + 1 == self.n() {
                self.tick()?;
                let v = self.order[j].clone();
                let n = self.rec.outer_blowup(&v)?;
                self.order.push(n);
            } else {
                self.blow_edge(j)?;
            }
        }
        Ok(())
    }

    fn lead_zeros(&self) -> usize {
        (0..self.n()).take_while(|&i| self.w(i) == 0).count()
    }

    fn reduce_linear(&mut self) -> Result<()> {
        loop {
            let n = self.n();
            let h = self.lead_zeros();
            if h == n {
                return Ok(());
            }
            if h % 2 == 1 {
                // Park the pairs behind the first tail weight, then fix it at
                // the tip with elementary transformations.
                if h >= 3 {
                    let mut p = h - 2;
                    loop {
                        self.pair_right(p)?;
                        if p < 3 {
                            break;
                        }
                        p -= 2;
                    }
                }
                let t = self.w(1);
                for _ in 0..t.abs() {
                    if t < 0 {
                        self.et_outer(0)?;
                    } else {
                        self.et(0, 1)?;
                    }
                }
                continue;
            }
            let Some(j) = (h..n).find(|&i| self.w(i) >= -1) else {
                return Ok(());
            };
            if self.w(j) == -1 {
                self.blowdown(j)?;
                continue;
            }
            if j == h {
                // The head turns odd and is repaired next round.
                self.zero_rightward(j)?;
                continue;
            }
            let mut p = if self.w(j) == 0 && j + 1 == n {
                for _ in 0..-self.w(j - 1) {
                    self.et_outer(j)?;
                }
                j - 1
            } else {
                self.zero_rightward(j)?;
                self.transfer(j, j + 1, j - 1)?;
                j
            };
            while p > h {
                self.pair_left(p)?;
                p -= 1;
            }
        }
    }

    fn zero_runs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let ws = self.weights();
        let mut out = Vec::new();
        for s in 0..n {
            if ws[s] == 0 && ws[(s + n - 1) % n] != 0 {
                let len = (0..n).take_while(|&k| ws[(s + k) % n] == 0).count();
                out.push((s, len));
            }
        }
        out
    }

    fn reduce_circular(&mut self) -> Result<()> {
        loop {
            let n = self.n();
            let ws = self.weights();
            if standard_circular_rotation(&ws).is_some() {
                return Ok(());
            }
            if n <= 2 {
                self.blow_edge(0)?;
                continue;
            }
            let runs = self.zero_runs();
            // A (−1) whose neighbours are not zeros goes first; the last
            // blowdown to a 2-cycle is taken only when it lands on a
            // standard graph.
            let minus = (0..n).find(|&i| {
                ws[i] == -1 && ws[(i + 1) % n] != 0 && ws[(i + n - 1) % n] != 0 && {
                    if n >= 4 {
                        true
                    } else {
                        let rest: Vec<i64> = (1..3).map(|k| ws[(i + k) % n] + 1).collect();
                        standard_circular_rotation(&rest).is_some()
                    }
                }
            });
            if let Some(i) = minus {
                self.blowdown(i)?;
                continue;
            }
            if runs.is_empty() {
                // No zero yet: make one out of the largest weight.
                let j = (0..n)
                    .max_by_key(|&i| (ws[i], std::cmp::Reverse(i)))
                    .expect("nonempty");
                if ws[j] > 0 {
                    self.zero_rightward(j)?;
                    continue;
                }
                if ws[j] == -1 {
                    // Everything is ≤ −1 and the (−1)s cannot go down: split one
                    // off with a blowup next to it and fold the rest.
                    self.blow_edge(j)?;
                    continue;
                }
                return Err(Error::Stalled(format!(
                    "no progress on circular weights {ws:?}"
                )));
            }
            if let Some(&(s, len)) = runs.iter().find(|(_, len)| len % 2 == 1) {
                if len == n - 1 {
                    // ((0_l, w)) with w > 0.
                    let v = self.order[(s + len) % n].clone();
                    self.zero_toward(&v, true)?;
                    continue;
                }
                // Park the pairs past the next weight, then empty that weight
                // through the single zero left at `s`.
                if len >= 3 {
                    let mut p = s + len - 2;
                    loop {
                        self.pair_right(p)?;
                        if p < s + 3 {
                            break;
                        }
                        p -= 2;
                    }
                }
                let n = self.n();
                self.transfer(s, s + 1, s + n - 1)?;
                continue;
            }
            if runs.len() > 1 {
                // Move the first pair of the second run back onto the first.
                let (s0, l0) = runs[0];
                let (s1, _) = runs[1];
                let mut p = s1;
                let target = s0 + l0;
                let n = self.n();
                let mut steps = (s1 + n - target) % n;
                while steps > 0 {
                    self.pair_left(p)?;
                    p = (p + n - 1) % n;
                    steps -= 1;
                }
                continue;
            }
            let (s, len) = runs[0];
            let tail: Vec<usize> = (s + len..s + n).map(|i| i % n).collect();
            if let Some(&j) = tail.iter().find(|&&i| ws[i] == -1) {
                // A (−1) next to the zero run: move the run two places away
                // when the tail is long enough, otherwise blow it down and
                // repair the run.
                if tail.len() >= 3 {
                    for _ in 0..2 {
                        let (s, len) = self.zero_runs()[0];
                        if j == tail[0] {
                            self.shift_run_right(s, len)?;
                        } else {
                            self.shift_run_left(s, len)?;
                        }
                    }
                } else {
                    self.blowdown(j)?;
                }
                continue;
            }
            let Some(&j) = tail.iter().find(|&&i| ws[i] > 0) else {
                return Err(Error::Stalled(format!(
                    "no progress on circular weights {ws:?}"
                )));
            };
            let v = self.order[j].clone();
            let (l, r) = (ws[(j + n - 1) % n], ws[(j + 1) % n]);
            if l == 0 && r == 0 {
                // ((0_2k, w)) with w > 0: the first blowup eats a zero of the
                // run, the rest leave an even run behind.
                self.zero_toward(&v, true)?;
                continue;
            }
            // Blow up on the side away from the zeros, then empty the new
            // (−1) into the other side.
            let right = r != 0;
            self.zero_toward(&v, right)?;
            let n = self.n();
            let j = self.slot(&v);
            let (left, right_slot) = ((j + n - 1) % n, (j + 1) % n);
            if self.w(left) != 0 && self.w(right_slot) != 0 {
                if right {
                    self.transfer(j, right_slot, left)?;
                } else {
                    self.transfer(j, left, right_slot)?;
                }
            }
        }
    }

    fn slot(&self, v: &VertexId) -> usize {
        self.order
            .iter()
            .position(|x| x == v)
            .expect("tracked vertex")
    }

    /// Cyclic inner blowups next to `v` on one side until its weight is 0.
    fn zero_toward(&mut self, v: &VertexId, right: bool) -> Result<()> {
        while self.w(self.slot(v)) > 0 {
            let j = self.slot(v);
            let n = self.n();
            self.blow_edge(if right { j } else { j + n - 1 })?;
        }
        Ok(())
    }

    /// Moves the even zero run at `s..s+len` one place right.
    fn shift_run_right(&mut self, s: usize, len: usize) -> Result<()> {
        let mut p = s + len;
        while p >= s + 2 {
            p -= 2;
            self.pair_right(p)?;
        }
        Ok(())
    }

    /// Moves the even zero run at `s..s+len` one place left.
    fn shift_run_left(&mut self, s: usize, len: usize) -> Result<()> {
        let n = self.n();
        let mut p = s + n;
        while p < s + n + len {
            self.pair_left(p)?;
            p += 2;
        }
        Ok(())
    }

    /// Rotates (cyclic) or reverses the tail so the reported tail is the
    /// lexicographically smallest reading, moving the zero pairs as needed.
    fn orient(&mut self) -> Result<()> {
        if self.circular {
            return self.orient_circular();
        }
        let h = self.lead_zeros();
        let n = self.n();
        if h == n {
            return Ok(());
        }
        let tail = self.weights()[h..].to_vec();
        let mut rev = tail.clone();
        rev.reverse();
        if rev >= tail {
            return Ok(());
        }
        // Walk every pair to the far end, then read the chain backwards.
        for k in (0..h / 2).rev() {
            let mut p = 2 * k;
            while p + 2 < self.n() {
                self.pair_right(p)?;
                p += 1;
            }
        }
        self.order.reverse();
        Ok(())
    }

    fn orient_circular(&mut self) -> Result<()> {
        let ws = self.weights();
        let n = self.n();
        let rot = standard_circular_rotation(&ws).expect("standard");
        self.order.rotate_left(rot);
        let ws = self.weights();
        let h = ws.iter().take_while(|&&w| w == 0).count();
        if h == n {
            return Ok(());
        }
        let tail = ws[h..].to_vec();
        let m = tail.len();
        let mut best = (tail.clone(), 0usize, false);
        for r in 0..m {
            let mut t: Vec<i64> = (0..m).map(|i| tail[(r + i) % m]).collect();
            if t < best.0 {
                best = (t.clone(), r, false);
            }
            t.reverse();
            if t < best.0 {
                best = (t, r, true);
            }
        }
        let (_, r, reversed) = best;
        if h % 2 == 0 && r > 0 && m > 1 {
            // Move the pairs r places to the right, one pair at a time.
            for k in (0..h / 2).rev() {
                for p in 2 * k..2 * k + r {
                    self.pair_right(p)?;
                }
            }
            let rot = standard_circular_rotation(&self.weights()).expect("still standard");
            self.order.rotate_left(rot);
        }
        if reversed {
            // Reading the cycle backwards keeps the zero run in front.
            let h = self.lead_zeros();
            self.order[..h].reverse();
            self.order[h..].reverse();
        }
        Ok(())
    }
}

fn shape_of(g: &WeightedGraph) -> Result<(Shape, Vec<VertexId>)> {
    if g.vertices().any(|(_, d)| !d.rational) {
        return Err(Error::NotSegment(
            "segment vertices must be rational".into(),
        ));
    }
    if let Some(order) = linear_order(g) {
        return Ok((Shape::Linear, order));
    }
    if let Some(order) = circular_order(g) {
        return Ok((Shape::Circular, order));
    }
    Err(Error::NotSegment(
        "graph is neither a chain nor a cycle".into(),
    ))
}

const STEP_LIMIT: usize = 20_000;

/// Reduces a minimal chain or cycle to a standard graph. The reduction is
/// replayed and checked before it is returned.
pub fn standard_form(g: &WeightedGraph) -> Result<StandardForm> {
    let (shape, order) = shape_of(g)?;
    if !g.is_minimal() {
        return Err(Error::NotMinimal);
    }
    let mut ch = Chain {
        rec: Recorder::new(g),
        order,
        circular: shape == Shape::Circular,
        budget: STEP_LIMIT,
    };
    let reduced = match shape {
        Shape::Linear => ch.reduce_linear(),
        Shape::Circular => ch.reduce_circular(),
    }
    .and_then(|_| ch.orient());
    let (order, rec) = match reduced {
        Ok(()) => (ch.order, ch.rec),
        Err(Error::Stalled(_)) => search_fallback(g, shape)?,
        Err(e) => return Err(e),
    };
    finish(g, shape, order, rec)
}

/// Breadth-first search for a standard graph, used when the heuristic
/// reduction stalls.
fn search_fallback(g: &WeightedGraph, shape: Shape) -> Result<(Vec<VertexId>, Recorder)> {
    let limits = Limits {
        max_vertices: g.len() + 6,
        max_nodes: 200_000,
        outer: shape == Shape::Linear,
    };
    let goal = |h: &WeightedGraph| standard_reading(h, shape).is_some();
    let (seq, end) = find_sequence(g, &limits, goal).ok_or_else(|| {
        Error::Stalled(format!(
            "no standard form found for {}",
            crate::notation::format(g)
        ))
    })?;
    let mut rec = Recorder::new(g);
    rec.append(&seq)?;
    let order = standard_reading(&end, shape).expect("goal reached");
    let mut ch = Chain {
        rec,
        order,
        circular: shape == Shape::Circular,
        budget: STEP_LIMIT,
    };
    ch.orient()?;
    Ok((ch.order, ch.rec))
}

/// A reading of `h` in standard shape, zero run first.
fn standard_reading(h: &WeightedGraph, shape: Shape) -> Option<Vec<VertexId>> {
    let (s, order) = shape_of(h).ok()?;
    if s != shape {
        return None;
    }
    let ws: Vec<i64> = order
        .iter()
        .map(|v| h.weight(v).expect("present"))
        .collect();
    match shape {
        Shape::Linear => {
            if is_standard_linear(&ws) {
                Some(order)
            } else {
                let mut rev = order;
                rev.reverse();
                let ws: Vec<i64> = rev.iter().map(|v| h.weight(v).expect("present")).collect();
                is_standard_linear(&ws).then_some(rev)
            }
        }
        Shape::Circular => {
            let rot = standard_circular_rotation(&ws)?;
            let mut order = order;
            order.rotate_left(rot);
            Some(order)
        }
    }
}

fn finish(
    g: &WeightedGraph,
    shape: Shape,
    order: Vec<VertexId>,
    rec: Recorder,
) -> Result<StandardForm> {
    let (reduction, graph) = rec.finish();
    let end = apply(g, &reduction)?.pop().expect("trace has the start");
    debug_assert!(are_isomorphic(&end, &graph).is_some());
    let ws: Vec<i64> = order
        .iter()
        .map(|v| graph.weight(v))
        .collect::<Result<_>>()?;
    let zeros = ws.iter().take_while(|&&w| w == 0).count();
    let ok = match shape {
        Shape::Linear => is_standard_linear(&ws),
        Shape::Circular => standard_circular_rotation(&ws) == Some(0),
    };
    if !ok {
        return Err(Error::Stalled(format!(
            "reduction ended on non-standard weights {ws:?}"
        )));
    }
    Ok(StandardForm {
        shape,
        zeros,
        tail: ws[zeros..].to_vec(),
        graph,
        reduction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;
    use crate::quad::inertia;

    fn sf(s: &str) -> StandardForm {
        let g = parse(s).unwrap();
        let f = standard_form(&g).unwrap();
        let end = apply(&g, &f.reduction).unwrap().pop().unwrap();
        assert_eq!(end, f.graph);
        let (a, b) = (inertia(&g), inertia(&f.graph));
        assert_eq!((a.plus, a.zero), (b.plus, b.zero), "{s}");
        f
    }

    #[test]
    fn shapes() {
        assert!(is_standard_linear(&[0, 0, -2]));
        assert!(is_standard_linear(&[0, 0, 0]));
        assert!(!is_standard_linear(&[0, -2]));
        assert!(!is_standard_linear(&[-2, -1]));
        assert_eq!(standard_circular_rotation(&[-2, 0, 0]), Some(1));
        assert!(standard_circular_rotation(&[0, 0, 0, -1]).is_some());
        assert!(standard_circular_rotation(&[-1, -1]).is_some());
        assert!(standard_circular_rotation(&[0, -1, -1]).is_none());
        assert!(standard_circular_rotation(&[0, 0, -2, 0, 0, -3]).is_none());
        assert!(standard_circular_rotation(&[5]).is_none());
        assert!(standard_circular_rotation(&[3]).is_none());
        assert!(standard_circular_rotation(&[2]).is_some());
    }

    #[test]
    fn already_standard() {
        let f = sf("[[-2,-3]]");
        assert!(f.reduction.is_empty());
        assert_eq!((f.zeros, f.tail), (0, vec![-3, -2]));
    }

    #[test]
    fn linear_family() {
        for a in 1..=5 {
            let f = sf(&format!("[[{a}]]"));
            assert_eq!(f.zeros, 2);
            assert_eq!(f.tail, vec![-2; a as usize - 1]);
        }
        let f = sf("[[0,-2]]");
        assert_eq!((f.zeros, f.tail.len()), (2, 0));
    }

    #[test]
    fn nodal_cubic() {
        let f = sf("((9))");
        assert_eq!(f.zeros, 2);
        assert_eq!(f.tail, vec![-3, -2, -2, -2, -2]);
    }

    #[test]
    fn special_cycles() {
        assert_eq!(sf("((3))").tail, vec![-1, -1]);
        let f = sf("((4))");
        assert_eq!((f.zeros, f.tail), (1, vec![-1]));
    }

    #[test]
    fn small_sweep() {
        for n in 1..=3u32 {
            for code in 0..7i64.pow(n) {
                let ws: Vec<String> = (0..n)
                    .map(|k| (code / 7i64.pow(k) % 7 - 3).to_string())
                    .collect();
                for txt in [
                    format!("[[{}]]", ws.join(",")),
                    format!("(({}))", ws.join(",")),
                ] {
                    let g = parse(&txt).unwrap();
                    if g.is_minimal() {
                        sf(&txt);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_other_shapes() {
        let g = parse(
            r#"{"vertices":[{"id":"a","w":0},{"id":"b","w":0},{"id":"c","w":0},{"id":"d","w":0}],
            "edges":[["a","b"],["a","c"],["a","d"]]}"#,
        )
        .unwrap();
        assert!(matches!(standard_form(&g), Err(Error::NotSegment(_))));
    }
}
