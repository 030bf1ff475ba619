//! ℒ(C): the free Lie algebra on `s⁻¹C̄` with the twisting differential,
//! and finite Lie algebras with differential as inputs to 𝒞.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::graphs::{fill_differentials, label_multisets};
use super::{complete_through, DgComplexBundle, DgccPresentation, FunctorError, FunctorKind, Truncation};
use crate::labels::Label;
use crate::liealg::{LieBasis, LieElement, LieWord, TreeElement, TreeTerm};
use crate::lincomb::LinComb;
use crate::linalg::{BasedSpace, BigradedComplex, Caps};
use crate::rational::{frac, sign};

/// Applies a map on generators to a left comb as a derivation of the bracket.
fn comb_derivation(w: &LieWord, on_generator: &dyn Fn(Label) -> TreeElement) -> TreeElement {
    let mut out = TreeElement::zero();
    let mut passed = 0;
    for i in 0..w.0.len() {
        let image = on_generator(w.0[i]);
        if !image.is_zero() {
            let mut acc = if i == 0 { image.clone() } else { TreeElement::leaf(w.0[0]) };
            for k in 1..w.0.len() {
                let next = if k == i { image.clone() } else { TreeElement::leaf(w.0[k]) };
                acc = acc.product(&next);
            }
            out = &out + &acc.scaled(&sign(passed as i64));
        }
        passed += w.0[i].degree;
    }
    out
}

/// ℒ(C) truncated by weight and degree, on basis left combs.
pub fn build_l(c: &DgccPresentation, t: Truncation) -> Result<DgComplexBundle<LieWord>, FunctorError> {
    if let Some(b) = c.basis().iter().find(|b| b.degree < 2) {
        return Err(FunctorError::NotSimplyConnected { name: b.name.clone(), degree: b.degree });
    }
    let labels: Vec<Label> = c.basis().iter().enumerate().map(|(i, b)| Label::new(i as u32, b.degree - 1)).collect();
    let min = labels.iter().map(|l| l.degree).min();
    let caps = Caps { max_weight: t.max_weight as u32, max_degree: t.max_degree, complete_through: complete_through(t, min) };
    let mut complex = BigradedComplex::new(-1, 1, caps);
    let basis = RefCell::new(LieBasis::new());
    for (at, multisets) in label_multisets(&labels, t.max_weight, t.max_degree) {
        let mut words = Vec::new();
        for m in multisets {
            words.extend(basis.borrow_mut().basis(&m)?);
        }
        if !words.is_empty() {
            complex.insert_piece(at, BasedSpace::new(words)?);
        }
    }
    let half = frac(1, 2);
    let internal = |v: Label| -> TreeElement {
        c.differential_of(v.id as usize)
            .terms()
            .map(|(j, x)| (TreeTerm::leaf(labels[*j]), -x))
            .collect()
    };
    let twisting = |v: Label| -> TreeElement {
        c.coproduct_of(v.id as usize)
            .terms()
            .map(|((a, b), x)| {
                let s = sign(c.basis()[*a].degree as i64) * &half * x;
                (TreeTerm::graft(&TreeTerm::leaf(labels[*a]), &TreeTerm::leaf(labels[*b])), s)
            })
            .collect()
    };
    fill_differentials(
        &mut complex,
        |w| Ok(basis.borrow_mut().normal_form(&comb_derivation(w, &internal))?),
        |w| Ok(basis.borrow_mut().normal_form(&comb_derivation(w, &twisting))?),
    )?;
    let slot_names = c.basis().iter().map(|b| format!("s⁻¹{}", b.name)).collect();
    Ok(DgComplexBundle { kind: FunctorKind::LOfC, complex, slot_names, truncation: t })
}

/// A finite Lie algebra with differential in chain degrees: brackets of
/// basis elements and a differential of degree −1.
#[derive(Clone, Debug)]
pub struct DgLieAlgebra {
    names: Vec<String>,
    degrees: Vec<i32>,
    brackets: BTreeMap<(u32, u32), LinComb<u32>>,
    differential: Vec<LinComb<u32>>,
}

impl DgLieAlgebra {
    /// Validates degrees, graded antisymmetry, the graded Jacobi identity,
    /// the derivation rule and `d² = 0`.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i32>,
        brackets: BTreeMap<(u32, u32), LinComb<u32>>,
        differential: Vec<LinComb<u32>>,
    ) -> Result<Self, FunctorError> {
        let l = DgLieAlgebra { names, degrees, brackets, differential };
        l.validate()?;
        Ok(l)
    }

    fn validate(&self) -> Result<(), FunctorError> {
        let n = self.degrees.len() as u32;
        let bad = |what: &str| Err(FunctorError::InvalidInput(what.into()));
        if self.names.len() != n as usize || self.differential.len() != n as usize {
            return bad("structure constants do not match the basis");
        }
        let deg = |i: u32| self.degrees[i as usize];
        for ((a, b), v) in &self.brackets {
            if *a >= n || *b >= n || v.keys().any(|k| *k >= n || deg(*k) != deg(*a) + deg(*b)) {
                return bad("bracket has the wrong degree or leaves the basis");
            }
        }
        for i in 0..n {
            if self.differential[i as usize].keys().any(|k| *k >= n || deg(*k) != deg(i) - 1) {
                return bad("differential is not of degree −1");
            }
            if !self.d(&self.differential[i as usize]).is_zero() {
                return bad("d² ≠ 0");
            }
        }
        let single = |i: u32| LinComb::single(i, crate::rational::one());
        for x in 0..n {
            for y in 0..n {
                let swapped = self.bracket(y, x).scaled(&-sign((deg(x) * deg(y)) as i64));
                if self.bracket(x, y) != swapped {
                    return bad("bracket is not graded antisymmetric");
                }
                // d[x,y] = [dx,y] + (−1)^{|x|}[x,dy]
                let lhs = self.d(&self.bracket(x, y));
                let rhs = &self.bracket_elements(&self.d(&single(x)), &single(y))
                    + &self.bracket_elements(&single(x), &self.d(&single(y))).scaled(&sign(deg(x) as i64));
                if lhs != rhs {
                    return bad("d is not a derivation");
                }
                for z in 0..n {
                    // [x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]
                    let lhs = self.bracket_elements(&single(x), &self.bracket(y, z));
                    let rhs = &self.bracket_elements(&self.bracket(x, y), &single(z))
                        + &self
                            .bracket_elements(&single(y), &self.bracket(x, z))
                            .scaled(&sign((deg(x) * deg(y)) as i64));
                    if lhs != rhs {
                        return bad("bracket fails the Jacobi identity");
                    }
                }
            }
        }
        Ok(())
    }

    /// The truncation of ℒ(C) by weight, read off a bundle that holds every
    /// element of weight at most its weight cap.
    pub fn from_free(l: &DgComplexBundle<LieWord>) -> Result<Self, FunctorError> {
        let w = l.truncation.max_weight;
        let top_generator = l.keys().iter().filter(|(b, _)| b.weight == 1).map(|(b, _)| b.degree).max().unwrap_or(0);
        if l.truncation.max_degree < w as i32 * top_generator {
            return Err(FunctorError::InvalidInput(format!(
                "the bundle is cut in degree; rebuild with max degree at least {}",
                w as i32 * top_generator
            )));
        }
        let keys = l.keys();
        let index: BTreeMap<LieWord, u32> = keys.iter().enumerate().map(|(i, (_, k))| (k.clone(), i as u32)).collect();
        let mut basis = LieBasis::new();
        let mut brackets = BTreeMap::new();
        for (i, (_, x)) in keys.iter().enumerate() {
            for (j, (_, y)) in keys.iter().enumerate() {
                if x.weight() + y.weight() > w {
                    continue;
                }
                let t = TreeElement::from_term(TreeTerm::graft(&x.to_tree(), &y.to_tree()), crate::rational::one());
                let nf: LieElement = basis.normal_form(&t)?;
                if !nf.is_zero() {
                    let v: LinComb<u32> = nf.terms().map(|(k, c)| (index[k], c.clone())).collect();
                    brackets.insert((i as u32, j as u32), v);
                }
            }
        }
        let differential = super::words::total_differential(l, &keys, &index);
        let names = keys.iter().map(|(_, k)| bracket_name(&k.to_tree(), &l.slot_names)).collect();
        let degrees = keys.iter().map(|(b, _)| b.degree).collect();
        Ok(DgLieAlgebra { names, degrees, brackets, differential })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self, a: u32, b: u32) -> LinComb<u32> {
        self.brackets.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn bracket_elements(&self, x: &LinComb<u32>, y: &LinComb<u32>) -> LinComb<u32> {
        let mut out = LinComb::new();
        for (a, c) in x.terms() {
            for (b, e) in y.terms() {
                out += &self.bracket(*a, *b).scaled(&(c * e));
            }
        }
        out
    }

    pub fn differential_of(&self, i: u32) -> &LinComb<u32> {
        &self.differential[i as usize]
    }

    pub fn d(&self, x: &LinComb<u32>) -> LinComb<u32> {
        let mut out = LinComb::new();
        for (i, c) in x.terms() {
            out += &self.differential[*i as usize].scaled(c);
        }
        out
    }
}

fn bracket_name(t: &TreeTerm, names: &[String]) -> String {
    match t.split() {
        None => names.get(t.labels()[0].id as usize).cloned().unwrap_or_default(),
        Some((l, r)) => format!("[{},{}]", bracket_name(&l, names), bracket_name(&r, names)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{Cogenerator, DgcaBuilder};
    use crate::linalg::Bidegree;
    use crate::rational::one;

    #[test]
    fn sphere_homology_dual_has_one_odd_generator() {
        let c = DgccPresentation::new(
            alloc::vec![Cogenerator { name: "x".into(), degree: 2 }],
            alloc::vec![LinComb::new()],
            alloc::vec![LinComb::new()],
        )
        .unwrap();
        let l = build_l(&c, Truncation::new(4, 6)).unwrap();
        let dims: Vec<(i32, usize)> = (1..=3).map(|d| (d, (1..=4).map(|w| l.complex.dim(Bidegree::new(w, d))).sum())).collect();
        assert_eq!(dims, [(1, 1), (2, 1), (3, 0)]);
    }

    #[test]
    fn cp2_twisting_differential_hits_the_square() {
        let a = DgcaBuilder::new().generator("x", 2).relation("x", 3).build(Truncation::new(3, 6)).unwrap();
        let c = DgccPresentation::dual_of(&a, 6).unwrap();
        let l = build_l(&c, Truncation::new(3, 6)).unwrap();
        // s⁻¹y in bidegree (1, 3) maps to ½[v,v] in (2, 2)
        let h = l.complex.horizontal(Bidegree::new(1, 3));
        assert_eq!(h.nnz(), 1);
        let v = Label::new(c.index_of("x").unwrap() as u32, 1);
        let target = l.complex.piece(Bidegree::new(2, 2)).unwrap();
        let row = target.index_of(&LieWord(alloc::vec![v, v])).unwrap();
        assert_eq!(h.get(row, 0), frac(1, 2) * one());
    }
}
