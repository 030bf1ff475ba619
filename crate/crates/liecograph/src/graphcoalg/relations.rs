//! Generating relations of 𝔼 inside 𝔾, for test suites and examples.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{GraphCoalgError, GraphElement};
use crate::labels::{degrees, Label};
use crate::rational::{one, Rational};
use crate::shapes::perm::{koszul_parity, permute};
use crate::shapes::{enumerate_graphs, validate_graph, SGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    ArrowReversing,
    Arnold,
    HarrisonShuffle,
    ReverseAll,
    Cyclic,
}

impl RelationKind {
    pub const ALL: [RelationKind; 5] = [
        RelationKind::ArrowReversing,
        RelationKind::Arnold,
        RelationKind::HarrisonShuffle,
        RelationKind::ReverseAll,
        RelationKind::Cyclic,
    ];
}

fn signed(odd: bool) -> Rational {
    if odd {
        -one()
    } else {
        one()
    }
}

/// The word obtained by moving letter `i` to position `perm[i]`, with its
/// Koszul sign.
fn moved_word(labels: &[Label], perm: &[usize]) -> GraphElement {
    let word = permute(labels, perm);
    GraphElement::from_graph(&SGraph::long(word.len()), &word, signed(koszul_parity(perm, &degrees(labels))))
        .expect("long graph matches word length")
}

/// All nonzero relations of the given kind on the label tuple `labels`,
/// deduplicated.
pub fn relation_generators(kind: RelationKind, labels: &[Label]) -> Result<Vec<GraphElement>, GraphCoalgError> {
    let n = labels.len();
    let mut out: Vec<GraphElement> = Vec::new();
    match kind {
        RelationKind::ArrowReversing => {
            for g in enumerate_graphs(n)? {
                for e in 0..g.edge_count() {
                    let mut r = GraphElement::from_graph(&g, labels, one())?;
                    r.add_graph(&g.reverse_edges(&[e]), labels, one())?;
                    out.push(r);
                }
            }
        }
        RelationKind::Arnold => {
            for g in enumerate_graphs(n)? {
                let edges: Vec<(usize, usize)> = g.edges().collect();
                for (i, &(a, b)) in edges.iter().enumerate() {
                    for (j, &(b2, c)) in edges.iter().enumerate() {
                        if b2 != b || i == j {
                            continue;
                        }
                        let rest: Vec<(usize, usize)> =
                            edges.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, e)| *e).collect();
                        let mut r = GraphElement::zero();
                        for pair in [[(a, b), (b, c)], [(b, c), (c, a)], [(a, b), (c, a)]] {
                            let mut es = rest.clone();
                            es.extend_from_slice(&pair);
                            r.add_graph(&validate_graph(n, &es)?, labels, one())?;
                        }
                        out.push(r);
                    }
                }
            }
        }
        RelationKind::HarrisonShuffle => {
            for p in 1..n {
                let mut r = GraphElement::zero();
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize != p {
                        continue;
                    }
                    let first: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    let second: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
                    let perm: Vec<usize> = first.into_iter().chain(second).collect();
                    r = &r + &moved_word(labels, &perm);
                }
                out.push(r);
            }
        }
        RelationKind::ReverseAll => {
            let perm: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
            let sign = signed(n % 2 == 0);
            let r = &moved_word(labels, &(0..n).collect::<Vec<_>>()) - &moved_word(labels, &perm).scaled(&sign);
            out.push(r);
        }
        RelationKind::Cyclic => {
            let mut r = GraphElement::zero();
            for k in 0..n {
                let perm: Vec<usize> = (0..n).map(|i| (i + n - k) % n).collect();
                r = &r + &moved_word(labels, &perm);
            }
            out.push(r);
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|r| !r.is_zero() && seen.insert(r.as_lincomb().clone()));
    Ok(out)
}
