//! Intersection matrix, discriminant and Sylvester inertia, all exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ids::VertexId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    pub order: Vec<VertexId>,
    pub entries: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

/// Loops contribute nothing; a vertex's self-intersection is its weight.
pub fn intersection_matrix(
    g: &WeightedGraph,
    order: Option<&[VertexId]>,
) -> Result<IntersectionMatrix> {
    let order: Vec<VertexId> = match order {
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != o.len() || !sorted.iter().eq(g.vertex_ids()) {
                return Err(Error::BadOrder);
            }
            o.to_vec()
        }
        None => g.vertex_ids().cloned().collect(),
    };
    let entries = order
        .iter()
        .map(|a| {
            order
                .iter()
                .map(|b| {
                    if a == b {
                        g.weight(a).expect("present")
                    } else {
                        g.multiplicity(a, b) as i64
                    }
                })
                .collect()
        })
        .collect();
    Ok(IntersectionMatrix { order, entries })
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

/// `det(-A)`, a birational invariant.
pub fn discriminant(g: &WeightedGraph) -> BigInt {
    let m = intersection_matrix(g, None).expect("default order");
    let neg: Vec<Vec<i64>> = m
        .entries
        .iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    determinant(&neg)
}

/// Inertia of a symmetric integer matrix by congruence diagonalization. A
/// block whose remaining diagonal is all zero but which has a nonzero entry
/// splits off a hyperbolic plane.
pub fn matrix_inertia(m: &[Vec<i64>]) -> Inertia {
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut live: Vec<usize> = (0..m.len()).collect();
    let mut out = Inertia::default();
    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let i = live.swap_remove(pos);
            let p = a[i][i].clone();
            if p.is_positive() {
                out.plus += 1;
            } else {
                out.minus += 1;
            }
            for &k in &live {
                let f = &a[k][i] / &p;
                for &l in &live {
                    let d = &f * &a[i][l];
                    a[k][l] -= d;
                }
            }
            continue;
        }
        let pair = live.iter().enumerate().find_map(|(x, &i)| {
            live[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.zero += live.len();
            break;
        };
        out.plus += 1;
        out.minus += 1;
        live.retain(|&k| k != i && k != j);
        let b = a[i][j].clone();
        for &k in &live {
            for &l in &live {
                let d = (&a[k][i] * &a[j][l] + &a[k][j] * &a[i][l]) / &b;
                a[k][l] -= d;
            }
        }
    }
    out
}

pub fn inertia(g: &WeightedGraph) -> Inertia {
    matrix_inertia(&intersection_matrix(g, None).expect("default order").entries)
}

pub fn is_negative_definite(g: &WeightedGraph) -> bool {
    let i = inertia(g);
    i.plus == 0 && i.zero == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    fn inr(s: &str) -> (usize, usize, usize) {
        let i = inertia(&parse(s).unwrap());
        (i.plus, i.minus, i.zero)
    }

    #[test]
    fn matrices() {
        let m = |s: &str| {
            intersection_matrix(&parse(s).unwrap(), None)
                .unwrap()
                .entries
        };
        assert_eq!(m("[[0,0]]"), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m("((9))"), vec![vec![9]]);
        assert_eq!(m("((0,0))"), vec![vec![0, 2], vec![2, 0]]);
        let g = parse("[[1,2]]").unwrap();
        assert!(matches!(
            intersection_matrix(&g, Some(&["v0".into()])),
            Err(Error::BadOrder)
        ));
        let swapped = intersection_matrix(&g, Some(&["v1".into(), "v0".into()])).unwrap();
        assert_eq!(swapped.entries, vec![vec![2, 1], vec![1, 1]]);
    }

    #[test]
    fn discriminants() {
        let d = |s: &str| discriminant(&parse(s).unwrap());
        assert_eq!(d("[[-1]]"), 1.into());
        assert_eq!(d("[[-2,-1]]"), 1.into());
        assert_eq!(d("[[-2,-2]]"), 3.into());
        assert_eq!(d("[[0,0]]"), (-1).into());
    }

    #[test]
    fn inertias() {
        assert_eq!(inr("[[0]]"), (0, 0, 1));
        assert_eq!(inr("((9))"), (1, 0, 0));
        assert_eq!(inr("[[0,0]]"), (1, 1, 0));
        assert_eq!(inr("[[0,0,0]]"), (1, 1, 1));
        assert!(is_negative_definite(&parse("[[-2,-2]]").unwrap()));
        assert!(!is_negative_definite(&parse("[[0]]").unwrap()));
        assert!(!is_negative_definite(&parse("((9))").unwrap()));
    }
}
