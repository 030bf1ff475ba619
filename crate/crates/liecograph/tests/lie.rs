//! Free Lie algebra normal forms against the tensor-algebra oracle.

use std::collections::BTreeSet;

use liecograph::graphcoalg::{GraphElement, GraphTerm};
use liecograph::labels::Label;
use liecograph::liealg::{lie_to_trees, tensor_expand, tensor_expand_tree, LieBasis, TreeElement, TreeTerm};
use liecograph::linalg::{Echelon, SparseVec};
use liecograph::pairing::{element_pair, GeneratorPairing};
use liecograph::rational::one;
use liecograph::shapes::{enumerate_graphs, tree_shapes};

fn tuples(gens: &[Label], n: usize) -> Vec<Vec<Label>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| gens.iter().map(move |g| [t.clone(), vec![*g]].concat())).collect();
    }
    out
}

fn build(gaps: &[u8], lo: usize, hi: usize, w: &[Label]) -> TreeTerm {
    if hi - lo == 1 {
        return TreeTerm::leaf(w[lo]);
    }
    let root = (lo..hi - 1).min_by_key(|g| gaps[*g]).unwrap();
    TreeTerm::graft(&build(gaps, lo, root + 1, w), &build(gaps, root + 1, hi, w))
}

fn trees_on(word: &[Label]) -> Vec<TreeTerm> {
    tree_shapes(word.len()).iter().map(|g| build(g, 0, word.len(), word)).collect()
}

fn elements(gens: &[Label], n: usize) -> Vec<TreeElement> {
    let mut out = Vec::new();
    for w in tuples(gens, n) {
        let ts = trees_on(&w);
        for (i, t) in ts.iter().enumerate() {
            let x = TreeElement::from_term(t.clone(), one());
            out.push(x.clone());
            for u in &ts[i + 1..] {
                let y = TreeElement::from_term(u.clone(), one());
                out.push(&x + &y);
                out.push(&x - &y);
            }
        }
    }
    out
}

#[test]
fn normal_form_vanishes_exactly_when_expansion_does() {
    let gens = [Label::new(0, 2), Label::new(1, 1)];
    let mut basis = LieBasis::new();
    for n in 1..=4 {
        for t in elements(&gens, n) {
            let nf = basis.normal_form(&t).unwrap();
            let expansion = tensor_expand_tree(&t).unwrap();
            assert_eq!(nf.is_zero(), expansion.is_zero(), "{t:?}");
            assert_eq!(tensor_expand(&nf).unwrap(), expansion);
        }
    }
}

#[test]
fn pairing_only_sees_the_lie_class() {
    let gens = [Label::new(0, 2), Label::new(1, 1)];
    let mut basis = LieBasis::new();
    for n in 2..=4 {
        let mut graphs: BTreeSet<GraphTerm> = BTreeSet::new();
        for w in tuples(&gens, n) {
            for g in enumerate_graphs(n).unwrap() {
                if let Some((t, _)) = GraphTerm::canonical(&g, &w) {
                    graphs.insert(t);
                }
            }
        }
        for t in elements(&gens, n) {
            let nf = lie_to_trees(&basis.normal_form(&t).unwrap());
            for g in &graphs {
                let g = GraphElement::term(g.clone());
                let d = GeneratorPairing::Kronecker;
                assert_eq!(element_pair(&g, &t, &d), element_pair(&g, &nf, &d));
            }
        }
    }
}

#[test]
fn free_lie_dimension_on_distinct_letters() {
    for n in 1..=6u32 {
        let letters: Vec<Label> = (0..n).map(|i| Label::new(i, 2)).collect();
        let mut words = BTreeSet::new();
        for p in liecograph::shapes::perm::permutations(n as usize) {
            words.insert(p.iter().map(|i| letters[*i]).collect::<Vec<_>>());
        }
        let index: Vec<Vec<Label>> = words.into_iter().collect();
        let mut ech = Echelon::new(index.len());
        // every bracket on the letters, read through the tensor algebra
        for w in &index {
            for t in trees_on(w) {
                let e = tensor_expand_tree(&TreeElement::from_term(t, one())).unwrap();
                let v: SparseVec = e.terms().map(|(k, c)| (index.binary_search(k).unwrap(), c.clone())).collect();
                ech.insert(v);
            }
        }
        assert_eq!(ech.rank(), (1..n as usize).product::<usize>());
    }
}

