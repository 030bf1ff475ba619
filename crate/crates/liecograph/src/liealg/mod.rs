//! Free non-associative algebras on planar trees and their Lie quotients.
//!
//! A tree term stores its shape with leaves in planar order together with the
//! labels read left to right, so the product of two terms is grafting with
//! concatenated labels and needs no sign.

pub(crate) mod normal;

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use crate::labels::{total_degree, GeneratorTable, Label};
use crate::lincomb::LinComb;
use crate::rational::{one, Rational};
use crate::shapes::{Nested, PlanarTree};

pub use normal::{lie_normal_form, lie_to_trees, tensor_expand, tensor_expand_tree, LieBasis, LieElement, LieWord, LIE_CAP};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("weight {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

/// A planar binary tree with graded labels on its leaves, in planar order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeTerm {
    shape: PlanarTree,
    labels: Vec<Label>,
}

impl TreeTerm {
    pub fn leaf(label: Label) -> Self {
        TreeTerm { shape: PlanarTree::leaf(), labels: alloc::vec![label] }
    }

    pub fn graft(left: &TreeTerm, right: &TreeTerm) -> TreeTerm {
        let mut labels = left.labels.clone();
        labels.extend_from_slice(&right.labels);
        TreeTerm { shape: PlanarTree::graft(&left.shape, &right.shape), labels }
    }

    /// The left comb `[[…[w₁,w₂],…],wₙ]`.
    pub fn left_comb(labels: &[Label]) -> TreeTerm {
        let order: Vec<usize> = (0..labels.len()).collect();
        TreeTerm { shape: PlanarTree::left_comb(&order), labels: labels.to_vec() }
    }

    /// Shape whose leaves are numbered in planar order.
    pub fn shape(&self) -> &PlanarTree {
        &self.shape
    }

    /// Labels in planar order; label `i` sits on leaf `i`.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn weight(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self) -> i32 {
        total_degree(&self.labels)
    }

    /// Splits a term of weight at least 2 at its root.
    pub fn split(&self) -> Option<(TreeTerm, TreeTerm)> {
        match self.shape.to_nested() {
            Nested::Leaf(_) => None,
            Nested::Node(l, r) => Some((self.build(&l), self.build(&r))),
        }
    }

    fn build(&self, n: &Nested) -> TreeTerm {
        match n {
            Nested::Leaf(i) => TreeTerm::leaf(self.labels[*i]),
            Nested::Node(l, r) => TreeTerm::graft(&self.build(l), &self.build(r)),
        }
    }

    /// Bracket notation such as `[[a,b],c]`.
    pub fn to_bracket_string(&self, table: &GeneratorTable) -> String {
        fn go(n: &Nested, labels: &[Label], table: &GeneratorTable, out: &mut String) {
            match n {
                Nested::Leaf(i) => out.push_str(&table.name(labels[*i])),
                Nested::Node(l, r) => {
                    out.push('[');
                    go(l, labels, table, out);
                    out.push(',');
                    go(r, labels, table, out);
                    out.push(']');
                }
            }
        }
        let mut s = String::new();
        go(&self.shape.to_nested(), &self.labels, table, &mut s);
        s
    }
}

/// An element of the free non-associative algebra on labelled leaves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeElement(LinComb<TreeTerm>);

impl TreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn leaf(label: Label) -> Self {
        TreeElement(LinComb::single(TreeTerm::leaf(label), one()))
    }

    pub fn from_term(term: TreeTerm, coefficient: Rational) -> Self {
        TreeElement(LinComb::single(term, coefficient))
    }

    pub fn add_term(&mut self, term: TreeTerm, coefficient: Rational) {
        self.0.add_term(term, coefficient);
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&TreeTerm, &Rational)> {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scaled(&self, by: &Rational) -> Self {
        TreeElement(self.0.scaled(by))
    }

    pub fn as_lincomb(&self) -> &LinComb<TreeTerm> {
        &self.0
    }

    /// Grafts every pair of terms at a new root, `self` on the left.
    pub fn product(&self, other: &TreeElement) -> TreeElement {
        let mut out = LinComb::new();
        for (x, a) in self.0.terms() {
            for (y, b) in other.0.terms() {
                out.add_term(TreeTerm::graft(x, y), a * b);
            }
        }
        TreeElement(out)
    }

    /// The graded commutator `xy − (−1)^{|x||y|} yx`, computed termwise.
    pub fn commutator(&self, other: &TreeElement) -> TreeElement {
        let mut out = LinComb::new();
        for (x, a) in self.0.terms() {
            for (y, b) in other.0.terms() {
                let c = a * b;
                out.add_term(TreeTerm::graft(x, y), c.clone());
                let s = if x.degree() * y.degree() % 2 == 0 { -c } else { c };
                out.add_term(TreeTerm::graft(y, x), s);
            }
        }
        TreeElement(out)
    }
}

impl Add for &TreeElement {
    type Output = TreeElement;
    fn add(self, rhs: &TreeElement) -> TreeElement {
        TreeElement(&self.0 + &rhs.0)
    }
}

impl Sub for &TreeElement {
    type Output = TreeElement;
    fn sub(self, rhs: &TreeElement) -> TreeElement {
        TreeElement(&self.0 - &rhs.0)
    }
}

impl Neg for &TreeElement {
    type Output = TreeElement;
    fn neg(self) -> TreeElement {
        TreeElement(-&self.0)
    }
}

impl FromIterator<(TreeTerm, Rational)> for TreeElement {
    fn from_iter<I: IntoIterator<Item = (TreeTerm, Rational)>>(iter: I) -> Self {
        TreeElement(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn l(id: u32, degree: i32) -> Label {
        Label::new(id, degree)
    }

    fn leaf(x: Label) -> TreeElement {
        TreeElement::leaf(x)
    }

    fn word(ls: &[Label]) -> LieWord {
        LieWord(ls.to_vec())
    }

    #[test]
    fn products_graft() {
        let (a, b, c) = (l(0, 2), l(1, 2), l(2, 2));
        let ab = leaf(a).product(&leaf(b));
        let (t, _) = ab.terms().next().unwrap();
        assert_eq!(t.labels(), &[a, b]);
        let abc = ab.product(&leaf(c));
        let (t, _) = abc.terms().next().unwrap();
        assert!(t.shape().is_left_comb());
        let a_bc = leaf(a).product(&leaf(b).product(&leaf(c)));
        assert_ne!(abc, a_bc);
    }

    #[test]
    fn normal_form_examples() {
        let (a, b, c) = (l(0, 2), l(1, 2), l(2, 2));
        let ba = leaf(b).product(&leaf(a));
        assert_eq!(lie_normal_form(&ba).unwrap(), LieElement::single(word(&[a, b]), int(-1)));

        let t = leaf(a).product(&leaf(b).product(&leaf(c)));
        let nf = lie_normal_form(&t).unwrap();
        let expected: LieElement = [(word(&[a, b, c]), int(1)), (word(&[a, c, b]), int(-1))].into_iter().collect();
        assert_eq!(nf, expected);

        let even = l(0, 2);
        assert!(lie_normal_form(&leaf(even).product(&leaf(even))).unwrap().is_zero());
        let odd = l(0, 1);
        assert!(!lie_normal_form(&leaf(odd).product(&leaf(odd))).unwrap().is_zero());
    }

    #[test]
    fn tensor_expansion_examples() {
        let (a, b, c) = (l(0, 2), l(1, 2), l(2, 2));
        let e = tensor_expand(&LieElement::single(word(&[a, b]), int(1))).unwrap();
        let expected: LinComb<Vec<Label>> = [(vec![a, b], int(1)), (vec![b, a], int(-1))].into_iter().collect();
        assert_eq!(e, expected);

        let e = tensor_expand(&LieElement::single(word(&[a, b, c]), int(1))).unwrap();
        let expected: LinComb<Vec<Label>> = [
            (vec![a, b, c], int(1)),
            (vec![b, a, c], int(-1)),
            (vec![c, a, b], int(-1)),
            (vec![c, b, a], int(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(e, expected);

        let v = l(0, 1);
        let e = tensor_expand(&LieElement::single(word(&[v, v]), int(1))).unwrap();
        assert_eq!(e, LinComb::single(vec![v, v], int(2)));
    }

    #[test]
    fn distinct_labels_give_factorial_dimension() {
        let mut basis = LieBasis::new();
        for n in 1..=5u32 {
            let labels: Vec<Label> = (0..n).map(|i| l(i, 2)).collect();
            let expected: usize = (1..n as usize).product();
            assert_eq!(basis.basis(&labels).unwrap().len(), expected);
        }
    }
}
