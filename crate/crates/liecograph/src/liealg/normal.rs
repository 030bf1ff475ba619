//! Left-comb normal forms in the free Lie algebra.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::Zero;

use super::{LieError, TreeElement, TreeTerm};
use crate::labels::{total_degree, Label};
use crate::linalg::{LinearSolver, SparseVec};
use crate::lincomb::LinComb;
use crate::rational::one;
use crate::shapes::perm::next_permutation;

/// Largest weight accepted by the normal form.
pub const LIE_CAP: usize = 8;

/// The left comb `[[…[w₁,w₂],…],wₙ]`, stored as its label sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieWord(pub Vec<Label>);

impl LieWord {
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i32 {
        total_degree(&self.0)
    }

    pub fn to_tree(&self) -> TreeTerm {
        TreeTerm::left_comb(&self.0)
    }
}

/// Coordinates of a Lie element over basis left combs.
pub type LieElement = LinComb<LieWord>;

fn odd_product(a: i32, b: i32) -> bool {
    a % 2 != 0 && b % 2 != 0
}

/// Rewrites `[L, v]` into left combs, for `L` a combination of left combs.
fn comb_with(left: &LinComb<LieWord>, v: &TreeTerm) -> LinComb<LieWord> {
    match v.split() {
        None => left
            .terms()
            .map(|(w, c)| {
                let mut w = w.0.clone();
                w.push(v.labels()[0]);
                (LieWord(w), c.clone())
            })
            .collect(),
        Some((v1, v2)) => {
            // [x,[y,z]] = [[x,y],z] − (−1)^{|y||z|} [[x,z],y]
            let first = comb_with(&comb_with(left, &v1), &v2);
            let second = comb_with(&comb_with(left, &v2), &v1);
            if odd_product(v1.degree(), v2.degree()) {
                &first + &second
            } else {
                &first - &second
            }
        }
    }
}

/// Left combs whose innermost leaf carries the least label of the term.
fn combs_of_term(t: &TreeTerm) -> LinComb<LieWord> {
    let Some((u, v)) = t.split() else {
        return LinComb::single(LieWord(t.labels().to_vec()), one());
    };
    let least = *t.labels().iter().min().expect("non-empty");
    if u.labels().contains(&least) {
        comb_with(&combs_of_term(&u), &v)
    } else {
        // [u,v] = −(−1)^{|u||v|} [v,u]
        let swapped = comb_with(&combs_of_term(&v), &u);
        if odd_product(u.degree(), v.degree()) {
            swapped
        } else {
            -&swapped
        }
    }
}

/// Expands a left comb as iterated graded commutators in the tensor algebra.
fn expand_word(w: &[Label]) -> LinComb<Vec<Label>> {
    let mut acc: LinComb<Vec<Label>> = LinComb::single(alloc::vec![w[0]], one());
    let mut deg = w[0].degree;
    for x in &w[1..] {
        let odd = odd_product(deg, x.degree);
        let mut next = LinComb::new();
        for (word, c) in acc.terms() {
            let mut right = word.clone();
            right.push(*x);
            next.add_term(right, c.clone());
            let mut left = alloc::vec![*x];
            left.extend_from_slice(word);
            next.add_term(left, if odd { c.clone() } else { -c.clone() });
        }
        acc = next;
        deg += x.degree;
    }
    acc
}

fn expand_tree(t: &TreeTerm) -> LinComb<Vec<Label>> {
    let Some((u, v)) = t.split() else {
        return LinComb::single(t.labels().to_vec(), one());
    };
    let (eu, ev) = (expand_tree(&u), expand_tree(&v));
    let odd = odd_product(u.degree(), v.degree());
    let mut out = LinComb::new();
    for (x, a) in eu.terms() {
        for (y, b) in ev.terms() {
            let c = a * b;
            let mut xy = x.clone();
            xy.extend_from_slice(y);
            out.add_term(xy, c.clone());
            let mut yx = y.clone();
            yx.extend_from_slice(x);
            out.add_term(yx, if odd { c } else { -c });
        }
    }
    out
}

/// Expands basis left combs into the tensor algebra.
pub fn tensor_expand(l: &LieElement) -> Result<LinComb<Vec<Label>>, LieError> {
    let mut out = LinComb::new();
    for (w, c) in l.terms() {
        check_cap(w.weight())?;
        out += &expand_word(&w.0).scaled(c);
    }
    Ok(out)
}

/// Reads every tree as an iterated bracket and expands it.
pub fn tensor_expand_tree(t: &TreeElement) -> Result<LinComb<Vec<Label>>, LieError> {
    let mut out = LinComb::new();
    for (term, c) in t.terms() {
        check_cap(term.weight())?;
        out += &expand_tree(term).scaled(c);
    }
    Ok(out)
}

fn check_cap(n: usize) -> Result<(), LieError> {
    if n > LIE_CAP {
        return Err(LieError::CapExceeded { requested: n, cap: LIE_CAP });
    }
    Ok(())
}

/// Distinct arrangements of a multiset, in lexicographic order.
pub(crate) fn arrangements(multiset: &[Label]) -> Vec<Vec<Label>> {
    let mut cur = multiset.to_vec();
    cur.sort();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

struct Component {
    word_index: BTreeMap<Vec<Label>, usize>,
    basis: Vec<LieWord>,
    solver: LinearSolver,
}

impl Component {
    fn new(multiset: &[Label]) -> Self {
        let all = arrangements(multiset);
        let word_index: BTreeMap<Vec<Label>, usize> = all.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let least = all[0][0];
        let candidates: Vec<&Vec<Label>> = all.iter().filter(|w| w[0] == least).collect();
        let mut solver = LinearSolver::new(word_index.len(), candidates.len());
        let mut basis = Vec::new();
        for w in candidates {
            let v = to_vec(&word_index, &expand_word(w));
            if solver.push(&v).is_some() {
                basis.push(LieWord(w.clone()));
            }
        }
        Component { word_index, basis, solver }
    }
}

fn to_vec(index: &BTreeMap<Vec<Label>, usize>, x: &LinComb<Vec<Label>>) -> SparseVec {
    x.terms().map(|(w, c)| (index[w], c.clone())).collect()
}

/// Per-component left-comb bases, selected by independence of tensor
/// expansions so that coordinates are unique even with repeated labels.
#[derive(Default)]
pub struct LieBasis {
    components: BTreeMap<Vec<Label>, Component>,
}

impl LieBasis {
    pub fn new() -> Self {
        Self::default()
    }

    fn component(&mut self, multiset: Vec<Label>) -> &Component {
        self.components.entry(multiset.clone()).or_insert_with(|| Component::new(&multiset))
    }

    /// Basis left combs of the component with the given label multiset.
    pub fn basis(&mut self, multiset: &[Label]) -> Result<Vec<LieWord>, LieError> {
        check_cap(multiset.len())?;
        let mut m = multiset.to_vec();
        m.sort();
        Ok(self.component(m).basis.clone())
    }

    pub fn normal_form(&mut self, t: &TreeElement) -> Result<LieElement, LieError> {
        let mut by_component: BTreeMap<Vec<Label>, LinComb<LieWord>> = BTreeMap::new();
        for (term, c) in t.terms() {
            check_cap(term.weight())?;
            let mut key = term.labels().to_vec();
            key.sort();
            *by_component.entry(key).or_default() += &combs_of_term(term).scaled(c);
        }
        let mut out = LieElement::new();
        for (key, combs) in by_component {
            let comp = self.component(key);
            let mut expansion = LinComb::new();
            for (w, c) in combs.terms() {
                expansion += &expand_word(&w.0).scaled(c);
            }
            let coords = comp.solver.solve(&to_vec(&comp.word_index, &expansion)).expect("left combs span");
            for (i, c) in coords {
                if !c.is_zero() {
                    out.add_term(comp.basis[i].clone(), c);
                }
            }
        }
        Ok(out)
    }
}

/// Normal form over basis left combs with the least label innermost.
pub fn lie_normal_form(t: &TreeElement) -> Result<LieElement, LieError> {
    LieBasis::new().normal_form(t)
}

/// Left combs as a tree element, for pairing and re-expansion.
pub fn lie_to_trees(l: &LieElement) -> TreeElement {
    l.terms().map(|(w, c)| (w.to_tree(), c.clone())).collect()
}

