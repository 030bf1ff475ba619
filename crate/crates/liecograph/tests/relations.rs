//! Relation suites, the three-way word problem, and co-algebra identities.

use std::collections::BTreeSet;

use liecograph::graphcoalg::{
    cobracket, is_zero_in_e, relation_generators, to_bar_basis, EBasis, GraphElement, GraphTerm, RelationKind,
};
use liecograph::labels::Label;
use liecograph::liealg::{TreeElement, TreeTerm};
use liecograph::lincomb::Tensor;
use liecograph::pairing::{element_pair, tensor_pair, term_pair, GeneratorPairing};
use liecograph::rational::{int, one};
use liecograph::shapes::{enumerate_graphs, tree_shapes, Nested};
use num_traits::Zero;

fn tuples(gens: &[Label], n: usize) -> Vec<Vec<Label>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| gens.iter().map(move |g| [t.clone(), vec![*g]].concat())).collect();
    }
    out
}

/// Every tree term whose labels rearrange `labels`.
fn all_trees(labels: &[Label]) -> Vec<TreeTerm> {
    let mut arrangements: BTreeSet<Vec<Label>> = BTreeSet::new();
    for p in liecograph::shapes::perm::permutations(labels.len()) {
        arrangements.insert(p.iter().map(|i| labels[*i]).collect());
    }
    let mut out = Vec::new();
    for gaps in tree_shapes(labels.len()) {
        let nested = nested_of(&gaps, 0, labels.len());
        for w in &arrangements {
            out.push(build(&nested, w));
        }
    }
    out
}

fn nested_of(gaps: &[u8], lo: usize, hi: usize) -> Nested {
    if hi - lo == 1 {
        return Nested::Leaf(lo);
    }
    let root = (lo..hi - 1).min_by_key(|g| gaps[*g]).unwrap();
    Nested::node(nested_of(gaps, lo, root + 1), nested_of(gaps, root + 1, hi))
}

fn build(n: &Nested, w: &[Label]) -> TreeTerm {
    match n {
        Nested::Leaf(i) => TreeTerm::leaf(w[*i]),
        Nested::Node(l, r) => TreeTerm::graft(&build(l, w), &build(r, w)),
    }
}

fn pairs_to_zero(g: &GraphElement, labels: &[Label]) -> bool {
    all_trees(labels).iter().all(|t| {
        element_pair(g, &TreeElement::from_term(t.clone(), one()), &GeneratorPairing::Kronecker).is_zero()
    })
}

fn tables() -> Vec<Vec<Label>> {
    vec![vec![Label::new(0, 2), Label::new(1, 2)], vec![Label::new(0, 2), Label::new(1, 1)]]
}

#[test]
fn relations_vanish_in_e() {
    for gens in tables() {
        for n in 2..=4 {
            for labels in tuples(&gens, n) {
                for kind in RelationKind::ALL {
                    for r in relation_generators(kind, &labels).unwrap() {
                        assert!(is_zero_in_e(&r).is_zero(), "{kind:?} {labels:?} {r:?}");
                        assert!(pairs_to_zero(&r, &labels), "{kind:?} {labels:?} pairing");
                    }
                }
            }
        }
    }
}

/// Canonical basis terms of 𝔾 at weight `n` on a multiset of labels.
fn basis_terms(labels: &[Label]) -> Vec<GraphTerm> {
    let mut out = BTreeSet::new();
    for g in enumerate_graphs(labels.len()).unwrap() {
        if let Some((t, _)) = GraphTerm::canonical(&g, labels) {
            out.insert(t);
        }
    }
    out.into_iter().collect()
}

#[test]
fn word_problem_three_way_agreement() {
    let gens = [Label::new(0, 2), Label::new(1, 2)];
    let mut basis = EBasis::new();
    for n in 1..=4 {
        let mut multisets = BTreeSet::new();
        for t in tuples(&gens, n) {
            let mut m = t.clone();
            m.sort();
            multisets.insert(m);
        }
        for m in multisets {
            let terms = basis_terms(&m);
            let mut elements: Vec<GraphElement> = terms.iter().map(|t| GraphElement::term(t.clone())).collect();
            for (i, x) in terms.iter().enumerate() {
                for y in &terms[i + 1..] {
                    let (x, y) = (GraphElement::term(x.clone()), GraphElement::term(y.clone()));
                    elements.push(&x + &y);
                    elements.push(&x - &y);
                }
            }
            for g in elements {
                let by_cobracket = is_zero_in_e(&g).is_zero();
                let by_coordinates = basis.coordinates(&g).unwrap().is_zero();
                let by_pairing = pairs_to_zero(&g, &m);
                assert_eq!(by_cobracket, by_coordinates, "{g:?}");
                assert_eq!(by_cobracket, by_pairing, "{g:?}");
            }
        }
    }
}

#[test]
fn bar_basis_dimension_is_factorial() {
    let mut basis = EBasis::new();
    for n in 1..=6u32 {
        let labels: Vec<Label> = (0..n).map(|i| Label::new(i, 2)).collect();
        let expected: usize = (1..n as usize).product();
        assert_eq!(basis.basis(&labels).unwrap().len(), expected);
        assert!(basis.basis(&labels).unwrap().iter().all(|w| w.0[0] == labels[0]));
    }
}

/// Swaps the two factors of every term with the Koszul sign.
fn twist(x: &Tensor<GraphTerm>) -> Tensor<GraphTerm> {
    x.terms()
        .map(|(f, c)| {
            let s = if f[0].degree() * f[1].degree() % 2 == 0 { c.clone() } else { -c.clone() };
            (vec![f[1].clone(), f[0].clone()], s)
        })
        .collect()
}

#[test]
fn cobracket_is_anti_cocommutative_and_adjoint_to_grafting() {
    for gens in tables() {
        for n in 2..=4 {
            for labels in tuples(&gens, n) {
                let mut m = labels.clone();
                m.sort();
                for t in basis_terms(&m) {
                    let g = GraphElement::term(t);
                    let cb = cobracket(&g);
                    assert!((&cb + &twist(&cb)).is_zero());
                    // ⟨g, t₁·t₂⟩ = ⟨]g[, t₁⊗t₂⟩ for every split of the labels
                    for k in 1..n {
                        for t1 in all_trees(&labels[..k]) {
                            for t2 in all_trees(&labels[k..]) {
                                let prod = TreeTerm::graft(&t1, &t2);
                                let lhs = term_pair(g.terms().next().unwrap().0, &prod, &GeneratorPairing::Kronecker);
                                let rhs = tensor_pair(
                                    &cb,
                                    &Tensor::single(vec![t1.clone(), t2.clone()], int(1)),
                                    &GeneratorPairing::Kronecker,
                                );
                                assert_eq!(lhs, rhs, "{g:?} {t1:?} {t2:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn relations_form_a_coideal() {
    let gens = [Label::new(0, 2), Label::new(1, 2), Label::new(2, 1)];
    for n in 2..=4 {
        for labels in tuples(&gens, n) {
            for kind in [RelationKind::ArrowReversing, RelationKind::Arnold] {
                for r in relation_generators(kind, &labels).unwrap() {
                    // pair ]r[ against every product of Lie brackets: vanishing
                    // means ]r[ dies in 𝔼 ⊗ 𝔼
                    let cb = cobracket(&r);
                    for k in 1..n {
                        for part in split_labels(&labels, k) {
                            for t1 in all_trees(&part.0) {
                                for t2 in all_trees(&part.1) {
                                    let y = Tensor::single(vec![t1.clone(), t2.clone()], int(1));
                                    assert!(tensor_pair(&cb, &y, &GeneratorPairing::Kronecker).is_zero());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

fn split_labels(labels: &[Label], k: usize) -> Vec<(Vec<Label>, Vec<Label>)> {
    let n = labels.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            let a: Vec<Label> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| labels[i]).collect();
            let b: Vec<Label> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| labels[i]).collect();
            out.insert((a, b));
        }
    }
    out.into_iter().collect()
}

#[test]
fn bar_coordinates_reconstruct_the_class() {
    let gens = [Label::new(0, 2), Label::new(1, 1), Label::new(2, 3)];
    let mut basis = EBasis::new();
    for n in 2..=4 {
        for labels in tuples(&gens, n) {
            let mut m = labels.clone();
            m.sort();
            for t in basis_terms(&m) {
                let g = GraphElement::term(t);
                let coords = basis.coordinates(&g).unwrap();
                let back = liecograph::graphcoalg::graphify(&coords);
                assert!(is_zero_in_e(&(&g - &back)).is_zero(), "{g:?}");
                assert_eq!(to_bar_basis(&back).unwrap(), coords);
            }
        }
    }
}


fn rotate(x: &Tensor<GraphTerm>) -> Tensor<GraphTerm> {
    x.terms()
        .map(|(f, c)| {
            let odd = f[2].degree() * (f[0].degree() + f[1].degree()) % 2 != 0;
            (vec![f[2].clone(), f[0].clone(), f[1].clone()], if odd { -c.clone() } else { c.clone() })
        })
        .collect()
}

#[test]
fn co_jacobi_holds_in_e() {
    let mut witnessed = false;
    for gens in tables() {
        for n in 3..=4 {
            for labels in tuples(&gens, n) {
                let mut m = labels.clone();
                m.sort();
                for t in basis_terms(&m) {
                    let twice = liecograph::graphcoalg::iterated_cobracket(&GraphElement::term(t), 2);
                    let once = rotate(&twice);
                    let sum = &(&twice + &once) + &rotate(&once);
                    for k1 in 1..n - 1 {
                        for k2 in 1..n - k1 {
                            for (a, rest) in split_labels(&labels, k1) {
                                for (b, c) in split_labels(&rest, k2) {
                                    for t1 in all_trees(&a) {
                                        for t2 in all_trees(&b) {
                                            for t3 in all_trees(&c) {
                                                let y = Tensor::single(vec![t1.clone(), t2.clone(), t3], int(1));
                                                assert!(tensor_pair(&sum, &y, &GeneratorPairing::Kronecker).is_zero());
                                                witnessed |= !tensor_pair(&twice, &y, &GeneratorPairing::Kronecker).is_zero();
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(witnessed, "the double cobracket pairs nontrivially somewhere");
}
