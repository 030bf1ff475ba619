//! The graded cobracket and the iterated-cobracket word problem.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{GraphElement, GraphTerm};
use crate::labels::{degrees, Label};
use crate::lincomb::Tensor;
use crate::rational::{one, Rational};
use crate::shapes::perm::koszul_parity;

fn unshuffle(first: &[usize], second: &[usize]) -> Vec<usize> {
    let mut perm = vec![0; first.len() + second.len()];
    for (pos, v) in first.iter().chain(second).enumerate() {
        perm[*v] = pos;
    }
    perm
}

/// Cobracket of one canonical term: for every edge, source side ⊗ target
/// side minus the Koszul-signed swap.
pub fn cobracket_term(t: &GraphTerm) -> Tensor<GraphTerm> {
    let mut out = Tensor::new();
    let degs = degrees(t.labels());
    for e in 0..t.graph().edge_count() {
        let cut = t.graph().cut_edge(e).expect("edge index in range");
        let w1: Vec<Label> = cut.source_vertices.iter().map(|v| t.labels()[*v]).collect();
        let w2: Vec<Label> = cut.target_vertices.iter().map(|v| t.labels()[*v]).collect();
        let (Some((t1, n1)), Some((t2, n2))) =
            (GraphTerm::canonical(&cut.source, &w1), GraphTerm::canonical(&cut.target, &w2))
        else {
            continue;
        };
        let k1 = koszul_parity(&unshuffle(&cut.source_vertices, &cut.target_vertices), &degs);
        let k2 = koszul_parity(&unshuffle(&cut.target_vertices, &cut.source_vertices), &degs);
        let inner = n1 ^ n2;
        out.add_term(vec![t1.clone(), t2.clone()], if k1 ^ inner { -one() } else { one() });
        out.add_term(vec![t2, t1], if k2 ^ inner { one() } else { -one() });
    }
    out
}

pub fn cobracket(g: &GraphElement) -> Tensor<GraphTerm> {
    let mut out = Tensor::new();
    for (t, c) in g.terms() {
        out += &cobracket_term(t).scaled(c);
    }
    out
}

/// Applies the cobracket `k` times, each time to the leftmost factor.
pub fn iterated_cobracket(g: &GraphElement, k: usize) -> Tensor<GraphTerm> {
    let mut current: Tensor<GraphTerm> = g.terms().map(|(t, c)| (vec![t.clone()], c.clone())).collect();
    let mut cache: BTreeMap<GraphTerm, Tensor<GraphTerm>> = BTreeMap::new();
    for _ in 0..k {
        let mut next = Tensor::new();
        for (factors, c) in current.terms() {
            let head = &factors[0];
            let split = cache.entry(head.clone()).or_insert_with(|| cobracket_term(head));
            for (pair, d) in split.terms() {
                let mut f = pair.clone();
                f.extend_from_slice(&factors[1..]);
                next.add_term(f, c * d);
            }
        }
        current = next;
    }
    current
}

/// Outcome of the word problem in 𝔼.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    Zero,
    /// A surviving elementary tensor of the iterated cobracket.
    NonZero { tensor: Vec<GraphTerm>, coefficient: Rational },
}

impl ZeroTest {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroTest::Zero)
    }
}

/// Decides whether `g` vanishes in 𝔼: each weight-`n` part vanishes iff its
/// `(n−1)`-fold iterated cobracket does.
pub fn is_zero_in_e(g: &GraphElement) -> ZeroTest {
    for (n, part) in g.by_weight() {
        let it = iterated_cobracket(&part, n - 1);
        if let Some((tensor, coefficient)) = it.first() {
            return ZeroTest::NonZero { tensor: tensor.clone(), coefficient: coefficient.clone() };
        }
    }
    ZeroTest::Zero
}
