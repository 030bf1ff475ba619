//! The Harrison complex: bar words on `s⁻¹Ā` modulo shuffle products, with
//! the associative bar differential. Shares no code with the graph side
//! beyond the algebra itself, so it serves as an oracle for ℰ(A).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::graphs::{fill_differentials, label_multisets, require_simply_connected, SlotAlgebra};
use super::{complete_through, DgComplexBundle, DgcaPresentation, FunctorError, FunctorKind};
use crate::graphcoalg::BarWord;
use crate::labels::{degrees, Label};
use crate::lincomb::LinComb;
use crate::linalg::{BasedSpace, BigradedComplex, Caps, Echelon, SparseVec};
use crate::rational::one;
use crate::shapes::perm::{koszul_parity, next_permutation};

/// All shuffles of `u` and `v` with their Koszul signs.
fn shuffle(u: &[Label], v: &[Label]) -> LinComb<Vec<Label>> {
    let (p, n) = (u.len(), u.len() + v.len());
    let word: Vec<Label> = u.iter().chain(v).copied().collect();
    let degs = degrees(&word);
    let mut out = LinComb::new();
    // positions of the letters of u, as a 0/1 mask in lexicographic order
    let mut mask: Vec<u8> = (0..n).map(|i| u8::from(i >= p)).collect();
    loop {
        let mut perm = alloc::vec![0; n];
        let (mut i, mut j) = (0, p);
        for (pos, m) in mask.iter().enumerate() {
            if *m == 0 {
                perm[i] = pos;
                i += 1;
            } else {
                perm[j] = pos;
                j += 1;
            }
        }
        let mut target = alloc::vec![word[0]; n];
        for (k, pos) in perm.iter().enumerate() {
            target[*pos] = word[k];
        }
        out.add_term(target, if koszul_parity(&perm, &degs) { -one() } else { one() });
        if !next_permutation(&mut mask) {
            break;
        }
    }
    out
}

/// Arrangements of a multiset in lexicographic order.
fn arrangements(multiset: &[Label]) -> Vec<Vec<Label>> {
    let mut w = multiset.to_vec();
    w.sort();
    let mut out = alloc::vec![w.clone()];
    while next_permutation(&mut w) {
        out.push(w.clone());
    }
    out
}

struct Quotient {
    words: Vec<Vec<Label>>,
    index: BTreeMap<Vec<Label>, usize>,
    shuffles: Echelon,
}

impl Quotient {
    fn new(multiset: &[Label]) -> Self {
        let words = arrangements(multiset);
        let index: BTreeMap<Vec<Label>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut shuffles = Echelon::new(words.len());
        for w in &words {
            for k in 1..w.len() {
                let s: SparseVec = shuffle(&w[..k], &w[k..]).terms().map(|(x, c)| (index[x], c.clone())).collect();
                shuffles.insert(s);
            }
        }
        Quotient { words, index, shuffles }
    }

    /// Words whose columns carry no pivot: a basis of the quotient.
    fn basis(&self) -> Vec<BarWord> {
        let pivots: alloc::collections::BTreeSet<usize> = self.shuffles.pivot_columns().collect();
        (0..self.words.len()).filter(|i| !pivots.contains(i)).map(|i| BarWord(self.words[i].clone())).collect()
    }

    fn reduce(&self, x: &LinComb<Vec<Label>>) -> LinComb<BarWord> {
        let v: SparseVec = x.terms().map(|(w, c)| (self.index[w], c.clone())).collect();
        self.shuffles.reduce(v).into_iter().map(|(i, c)| (BarWord(self.words[i].clone()), c)).collect()
    }
}

struct Model<'a> {
    slots: &'a SlotAlgebra,
    quotients: BTreeMap<Vec<Label>, Quotient>,
}

impl Model<'_> {
    fn reduce(&mut self, x: &LinComb<Vec<Label>>) -> LinComb<BarWord> {
        let mut parts: BTreeMap<Vec<Label>, LinComb<Vec<Label>>> = BTreeMap::new();
        for (w, c) in x.terms() {
            let mut key = w.clone();
            key.sort();
            parts.entry(key).or_default().add_term(w.clone(), c.clone());
        }
        let mut out = LinComb::new();
        for (key, part) in parts {
            let q = self.quotients.entry(key.clone()).or_insert_with(|| Quotient::new(&key));
            out += &q.reduce(&part);
        }
        out
    }

    /// `Σᵢ (−1)^{Pᵢ + |aᵢ|} …|s⁻¹(aᵢaᵢ₊₁)|…` with `Pᵢ` the degree before slot `i`.
    fn d_bar(&self, w: &[Label]) -> LinComb<Vec<Label>> {
        let mut out = LinComb::new();
        let mut passed = 0;
        for i in 0..w.len().saturating_sub(1) {
            if let Some((m, c)) = self.slots.merge(w[i], w[i + 1]) {
                let mut word = w[..i].to_vec();
                word.push(m);
                word.extend_from_slice(&w[i + 2..]);
                out.add_term(word, if passed % 2 != 0 { -c } else { c });
            }
            passed += w[i].degree;
        }
        out
    }

    fn d_internal(&self, w: &[Label]) -> LinComb<Vec<Label>> {
        let mut out = LinComb::new();
        let mut passed = 0;
        for (i, a) in w.iter().enumerate() {
            for (b, c) in self.slots.d_label(*a) {
                let mut word = w.to_vec();
                word[i] = b;
                out.add_term(word, if passed % 2 != 0 { -c } else { c });
            }
            passed += a.degree;
        }
        out
    }
}

/// The Harrison complex of `a`, truncated like ℰ(A), on quotient-basis words.
pub fn harrison_shuffle_model(a: &DgcaPresentation) -> Result<DgComplexBundle<BarWord>, FunctorError> {
    require_simply_connected(a)?;
    let t = a.truncation();
    let slots = SlotAlgebra::for_truncation(a);
    let complete = complete_through(t, a.min_generator_degree().map(|d| d - 1));
    let caps = Caps { max_weight: t.max_weight as u32, max_degree: t.max_degree, complete_through: complete };
    let mut complex = BigradedComplex::new(1, -1, caps);
    let mut model = Model { slots: &slots, quotients: BTreeMap::new() };
    for (at, multisets) in label_multisets(&slots.labels(), t.max_weight, t.max_degree) {
        let mut words = Vec::new();
        for m in multisets {
            let q = model.quotients.entry(m.clone()).or_insert_with(|| Quotient::new(&m));
            words.extend(q.basis());
        }
        if !words.is_empty() {
            complex.insert_piece(at, BasedSpace::new(words)?);
        }
    }
    let model = core::cell::RefCell::new(model);
    fill_differentials(
        &mut complex,
        |w| {
            let x = model.borrow().d_internal(&w.0);
            Ok(model.borrow_mut().reduce(&x))
        },
        |w| {
            let x = model.borrow().d_bar(&w.0);
            Ok(model.borrow_mut().reduce(&x))
        },
    )?;
    Ok(DgComplexBundle { kind: FunctorKind::Harrison, complex, slot_names: slots.names(), truncation: t })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_letter_shuffles() {
        let a = Label::new(0, 1);
        let b = Label::new(1, 1);
        let s = shuffle(&[a], &[b]);
        assert_eq!(s.coefficient(&alloc::vec![a, b]), one());
        assert_eq!(s.coefficient(&alloc::vec![b, a]), -one());
        let c = Label::new(2, 2);
        let s = shuffle(&[a], &[c]);
        assert_eq!(s.coefficient(&alloc::vec![c, a]), one());
    }

    #[test]
    fn weight_two_quotient_is_words_modulo_symmetric_pairs() {
        let a = Label::new(0, 2);
        let b = Label::new(1, 2);
        let q = Quotient::new(&[a, b]);
        assert_eq!(q.basis().len(), 1);
        let q = Quotient::new(&[a, a]);
        assert_eq!(q.basis().len(), 0);
        let odd = Label::new(2, 1);
        let q = Quotient::new(&[odd, odd]);
        assert_eq!(q.basis().len(), 1);
    }
}
