//! The cofree graph coalgebra 𝔾(W) and its Lie coalgebra quotient 𝔼(W).
//!
//! A term is a graph together with one label per vertex. Relabelling the
//! vertices by σ moves the labels along and costs the Koszul sign of σ on the
//! label degrees, so every term is stored in a canonical representative.

mod bar;
mod cobracket;
mod relations;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use crate::labels::{degrees, total_degree, GeneratorTable, Label};
use crate::lincomb::LinComb;
use crate::rational::{one, Rational};
use crate::shapes::perm::{koszul_parity, permutations};
use crate::shapes::{SGraph, ShapeError};

pub use bar::{graphify, to_bar_basis, BarWord, EBasis};
pub use cobracket::{cobracket, cobracket_term, iterated_cobracket, is_zero_in_e, ZeroTest};
pub use relations::{relation_generators, RelationKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphCoalgError {
    #[error("graph has weight {weight} but {labels} labels were given")]
    ArityMismatch { weight: usize, labels: usize },
    #[error("weight {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// A graph with a label on each vertex, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphTerm {
    graph: SGraph,
    labels: Vec<Label>,
}

impl GraphTerm {
    /// Canonical representative of `(graph, labels)` and the sign relating
    /// them, or `None` when the term equals its own negative.
    ///
    /// Labels are sorted first; the graph is then minimised over relabellings
    /// that permute equal labels among themselves.
    pub fn canonical(graph: &SGraph, labels: &[Label]) -> Option<(GraphTerm, bool)> {
        let n = labels.len();
        debug_assert_eq!(n, graph.weight());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|i| labels[*i]);
        let mut sigma = alloc::vec![0; n];
        for (pos, i) in order.iter().enumerate() {
            sigma[*i] = pos;
        }
        let negative = koszul_parity(&sigma, &degrees(labels));
        let sorted: Vec<Label> = order.iter().map(|i| labels[*i]).collect();
        let base = graph.relabel(&sigma);

        let blocks = equal_blocks(&sorted);
        if blocks.iter().all(|(lo, hi)| hi - lo == 1) {
            return Some((GraphTerm { graph: base, labels: sorted }, negative));
        }
        let degs = degrees(&sorted);
        let mut best: Option<(SGraph, bool)> = None;
        for h in block_permutations(&blocks, n) {
            let g = base.relabel(&h);
            let odd = koszul_parity(&h, &degs);
            if odd && g == base {
                return None;
            }
            if best.as_ref().is_none_or(|(b, _)| g < *b) {
                best = Some((g, odd));
            }
        }
        let (g, odd) = best.expect("identity is a block permutation");
        Some((GraphTerm { graph: g, labels: sorted }, negative ^ odd))
    }

    pub fn graph(&self) -> &SGraph {
        &self.graph
    }

    /// Labels by vertex.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn weight(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self) -> i32 {
        total_degree(&self.labels)
    }

    /// The singleton graph with one label.
    pub fn point(label: Label) -> GraphTerm {
        GraphTerm { graph: SGraph::point(), labels: alloc::vec![label] }
    }

    /// `G[n; a->b, …](x,y,…)` with names from `table`.
    pub fn display(&self, table: &GeneratorTable) -> String {
        let names: Vec<String> = self.labels.iter().map(|l| table.name(*l)).collect();
        alloc::format!("{}({})", self.graph, names.join(","))
    }
}

/// Maximal runs of equal labels as half-open ranges.
fn equal_blocks(sorted: &[Label]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut lo = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] != sorted[lo] {
            out.push((lo, i));
            lo = i;
        }
    }
    out
}

/// All permutations of `0..n` preserving each block.
fn block_permutations(blocks: &[(usize, usize)], n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = alloc::vec![(0..n).collect()];
    for (lo, hi) in blocks {
        if hi - lo < 2 {
            continue;
        }
        let local = permutations(hi - lo);
        let mut next = Vec::with_capacity(out.len() * local.len());
        for p in &out {
            for q in &local {
                let mut r = p.clone();
                for (k, target) in q.iter().enumerate() {
                    r[lo + k] = lo + target;
                }
                next.push(r);
            }
        }
        out = next;
    }
    out
}

/// An element of 𝔾(W): a rational combination of canonical graph terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphElement(LinComb<GraphTerm>);

impl GraphElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coefficient · (graph, labels)`, canonicalised.
    pub fn from_graph(graph: &SGraph, labels: &[Label], coefficient: Rational) -> Result<Self, GraphCoalgError> {
        let mut out = Self::zero();
        out.add_graph(graph, labels, coefficient)?;
        Ok(out)
    }

    pub fn add_graph(&mut self, graph: &SGraph, labels: &[Label], coefficient: Rational) -> Result<(), GraphCoalgError> {
        if graph.weight() != labels.len() {
            return Err(GraphCoalgError::ArityMismatch { weight: graph.weight(), labels: labels.len() });
        }
        if let Some((term, negative)) = GraphTerm::canonical(graph, labels) {
            self.0.add_term(term, if negative { -coefficient } else { coefficient });
        }
        Ok(())
    }

    /// Adds an already canonical term.
    pub fn add_term(&mut self, term: GraphTerm, coefficient: Rational) {
        self.0.add_term(term, coefficient);
    }

    pub fn term(term: GraphTerm) -> Self {
        GraphElement(LinComb::single(term, one()))
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&GraphTerm, &Rational)> {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scaled(&self, by: &Rational) -> Self {
        GraphElement(self.0.scaled(by))
    }

    pub fn as_lincomb(&self) -> &LinComb<GraphTerm> {
        &self.0
    }

    /// Splits by label multiset; each part is multihomogeneous.
    pub fn components(&self) -> BTreeMap<Vec<Label>, GraphElement> {
        let mut out: BTreeMap<Vec<Label>, GraphElement> = BTreeMap::new();
        for (t, c) in self.0.terms() {
            // canonical terms already carry sorted labels
            out.entry(t.labels.clone()).or_default().0.add_term(t.clone(), c.clone());
        }
        out
    }

    /// Splits by weight.
    pub fn by_weight(&self) -> BTreeMap<usize, GraphElement> {
        let mut out: BTreeMap<usize, GraphElement> = BTreeMap::new();
        for (t, c) in self.0.terms() {
            out.entry(t.weight()).or_default().0.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn display(&self, table: &GeneratorTable) -> String {
        display_terms(self.terms().map(|(t, c)| (t.display(table), c.clone())))
    }
}

/// Formats `c₁·x₁ + c₂·x₂ …` with unit coefficients elided.
pub fn display_terms(terms: impl Iterator<Item = (String, Rational)>) -> String {
    use num_traits::{One, Signed};
    let mut s = String::new();
    for (i, (x, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !mag.is_one() {
            s.push_str(&alloc::format!("{}*", mag));
        }
        s.push_str(&x);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl Add for &GraphElement {
    type Output = GraphElement;
    fn add(self, rhs: &GraphElement) -> GraphElement {
        GraphElement(&self.0 + &rhs.0)
    }
}

impl Sub for &GraphElement {
    type Output = GraphElement;
    fn sub(self, rhs: &GraphElement) -> GraphElement {
        GraphElement(&self.0 - &rhs.0)
    }
}

impl Neg for &GraphElement {
    type Output = GraphElement;
    fn neg(self) -> GraphElement {
        GraphElement(-&self.0)
    }
}
