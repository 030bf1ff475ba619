//! Bar words, graphification, and coordinates over the bar basis of 𝔼.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Zero;

use super::{GraphCoalgError, GraphElement};
use crate::labels::{total_degree, GeneratorTable, Label};
use crate::liealg::{TreeTerm, LIE_CAP};
use crate::linalg::{LinearSolver, SparseVec};
use crate::lincomb::LinComb;
use crate::pairing::{term_pair, GeneratorPairing};
use crate::shapes::SGraph;

/// `w₁|w₂|…|wₙ`: the long graph `1 → 2 → … → n` labelled in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord(pub Vec<Label>);

impl BarWord {
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i32 {
        total_degree(&self.0)
    }

    pub fn to_element(&self) -> GraphElement {
        GraphElement::from_graph(&SGraph::long(self.0.len()), &self.0, crate::rational::one())
            .expect("a long graph has one vertex per letter")
    }

    pub fn display(&self, table: &GeneratorTable) -> String {
        let names: Vec<String> = self.0.iter().map(|l| table.name(*l)).collect();
        names.join("|")
    }
}

/// Sends each bar word to its long graph.
pub fn graphify(words: &LinComb<BarWord>) -> GraphElement {
    let mut out = GraphElement::zero();
    for (w, c) in words.terms() {
        out = &out + &w.to_element().scaled(c);
    }
    out
}

struct Component {
    trees: Vec<TreeTerm>,
    basis: Vec<BarWord>,
    solver: LinearSolver,
}

fn pairing_vector(g: &GraphElement, trees: &[TreeTerm]) -> SparseVec {
    let dual = GeneratorPairing::Kronecker;
    trees
        .iter()
        .enumerate()
        .filter_map(|(j, t)| {
            let mut total = crate::rational::zero();
            for (x, c) in g.terms() {
                let p = term_pair(x, t, &dual);
                if !p.is_zero() {
                    total += p * c;
                }
            }
            (!total.is_zero()).then_some((j, total))
        })
        .collect()
}

impl Component {
    fn new(multiset: &[Label]) -> Self {
        let words = crate::liealg::normal::arrangements(multiset);
        let trees: Vec<TreeTerm> = words.iter().map(|w| TreeTerm::left_comb(w)).collect();
        let mut solver = LinearSolver::new(trees.len(), words.len());
        let mut basis = Vec::new();
        // words are in lexicographic order, so those led by the least label
        // are offered first
        for w in words {
            let word = BarWord(w);
            if solver.push(&pairing_vector(&word.to_element(), &trees)).is_some() {
                basis.push(word);
            }
        }
        Component { trees, basis, solver }
    }
}

/// Bar bases of 𝔼, one per label multiset, computed on demand.
///
/// A class in 𝔼 is determined by its pairings with left combs. The basis is
/// the lexicographically first independent set of bar words, which on
/// distinct labels is exactly the words led by the least label.
#[derive(Default)]
pub struct EBasis {
    components: BTreeMap<Vec<Label>, Component>,
}

impl EBasis {
    pub fn new() -> Self {
        Self::default()
    }

    fn component(&mut self, multiset: &[Label]) -> Result<&Component, GraphCoalgError> {
        if multiset.len() > LIE_CAP {
            return Err(GraphCoalgError::CapExceeded { requested: multiset.len(), cap: LIE_CAP });
        }
        let mut key = multiset.to_vec();
        key.sort();
        Ok(self.components.entry(key.clone()).or_insert_with(|| Component::new(&key)))
    }

    pub fn basis(&mut self, multiset: &[Label]) -> Result<Vec<BarWord>, GraphCoalgError> {
        Ok(self.component(multiset)?.basis.clone())
    }

    /// Coordinates of the class of `g` over the bar basis.
    pub fn coordinates(&mut self, g: &GraphElement) -> Result<LinComb<BarWord>, GraphCoalgError> {
        let mut out = LinComb::new();
        for (key, part) in g.components() {
            let comp = self.component(&key)?;
            let coords = comp.solver.solve(&pairing_vector(&part, &comp.trees)).expect("bar words span 𝔼");
            for (i, c) in coords {
                out.add_term(comp.basis[i].clone(), c);
            }
        }
        Ok(out)
    }
}

/// Coordinates of `g` over the bar basis, with a fresh cache.
pub fn to_bar_basis(g: &GraphElement) -> Result<LinComb<BarWord>, GraphCoalgError> {
    EBasis::new().coordinates(g)
}
