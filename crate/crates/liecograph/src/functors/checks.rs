//! Duality between ℰ(A) and ℒ(C) through the configuration pairing, and
//! the twisting-function identity for maps 𝒢(A) → A.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Zero;

use super::graphs::SlotAlgebra;
use super::{
    build_e, build_l, DgComplexBundle, DgcaPresentation, DgccPresentation, FunctorError, Polynomial,
};
use crate::graphcoalg::{cobracket_term, graphify, BarWord, GraphTerm};
use crate::liealg::{lie_to_trees, LieWord};
use crate::lincomb::LinComb;
use crate::linalg::{Bidegree, SparseMatrix};
use crate::pairing::{element_pair, GeneratorPairing};
use crate::rational::{frac, one, sign, Rational};

/// Which differential an adjointness block concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Vertical,
    Horizontal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualityViolation {
    /// The pieces of ℰ(A) and ℒ(C) at this bidegree differ in dimension or
    /// pair degenerately.
    Degenerate { at: Bidegree, e_dim: usize, l_dim: usize, rank: usize },
    /// `⟨d x, y⟩ ≠ ε⟨x, d y⟩` for the block's sign `ε`, at basis pair `(x, y)`.
    NotAdjoint { part: Part, source: Bidegree, x: BarWord, y: LieWord },
}

/// Outcome of [`check_duality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    /// Bidegrees whose pairing matrix was checked, with its size.
    pub invertible: BTreeMap<Bidegree, usize>,
    /// `ε` per (part, source bidegree of the ℰ differential), for blocks where
    /// both sides are nonzero.
    pub signs: BTreeMap<(Part, Bidegree), i8>,
    pub violations: Vec<DualityViolation>,
}

impl DualityReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reorders `c` to match the monomial order of `a`, after checking that its
/// structure constants are the transposes of those of `a`.
fn aligned_dual(a: &DgcaPresentation, c: &DgccPresentation, max_degree: i32) -> Result<DgccPresentation, FunctorError> {
    let expected = DgccPresentation::dual_of(a, max_degree)?;
    let mut order = Vec::new();
    for b in expected.basis() {
        let i = c
            .index_of(&b.name)
            .ok_or_else(|| FunctorError::NotDual(format!("no basis element dual to `{}`", b.name)))?;
        if c.basis()[i].degree != b.degree {
            return Err(FunctorError::NotDual(format!("`{}` has the wrong degree", b.name)));
        }
        order.push(i);
    }
    if let Some(extra) = c.basis().iter().find(|b| b.degree <= max_degree && expected.index_of(&b.name).is_none()) {
        return Err(FunctorError::NotDual(format!("`{}` has no dual monomial", extra.name)));
    }
    let closed: Vec<usize> = order.clone();
    let given = c.reindexed(&closed)?;
    for (i, b) in expected.basis().iter().enumerate() {
        if given.coproduct_of(i) != expected.coproduct_of(i) {
            return Err(FunctorError::NotDual(format!("coproduct of `{}` is not the transposed product", b.name)));
        }
        if given.differential_of(i) != expected.differential_of(i) {
            return Err(FunctorError::NotDual(format!("differential of `{}` is not the transposed one", b.name)));
        }
    }
    Ok(given)
}

fn pairing_block(e: &[BarWord], l: &[LieWord]) -> SparseMatrix {
    let mut entries = Vec::new();
    for (i, x) in e.iter().enumerate() {
        let g = graphify(&LinComb::single(x.clone(), one()));
        for (j, y) in l.iter().enumerate() {
            let t = lie_to_trees(&LinComb::single(y.clone(), one()));
            let v = element_pair(&g, &t, &GeneratorPairing::Kronecker);
            if !v.is_zero() {
                entries.push((i, j, v));
            }
        }
    }
    SparseMatrix::from_entries(e.len(), l.len(), entries).expect("entries in range")
}

/// Checks that ℰ(A) and ℒ(C) are dual through the configuration pairing on
/// every bidegree inside `a`'s truncation: pairing matrices are invertible
/// and each differential is adjoint to the other up to one sign per block.
pub fn check_duality(a: &DgcaPresentation, c: &DgccPresentation) -> Result<DualityReport, FunctorError> {
    let t = a.truncation();
    let c = aligned_dual(a, c, t.max_degree + 2)?;
    let e = build_e(a)?;
    let l = build_l(&c, t)?;
    let mut report = DualityReport { invertible: BTreeMap::new(), signs: BTreeMap::new(), violations: Vec::new() };
    let mut blocks: BTreeMap<Bidegree, SparseMatrix> = BTreeMap::new();
    let mut at_all: Vec<Bidegree> = e.complex.pieces().map(|(b, _)| *b).collect();
    at_all.extend(l.complex.pieces().map(|(b, _)| *b));
    at_all.sort();
    at_all.dedup();
    for at in at_all {
        let ek = e.complex.piece(at).map(|p| p.keys().to_vec()).unwrap_or_default();
        let lk = l.complex.piece(at).map(|p| p.keys().to_vec()).unwrap_or_default();
        let p = pairing_block(&ek, &lk);
        let rank = p.rank();
        if ek.len() != lk.len() || rank != ek.len() {
            report.violations.push(DualityViolation::Degenerate { at, e_dim: ek.len(), l_dim: lk.len(), rank });
        } else {
            report.invertible.insert(at, rank);
        }
        blocks.insert(at, p);
    }
    let pieces: Vec<Bidegree> = e.complex.pieces().map(|(b, _)| *b).collect();
    for source in pieces {
        for part in [Part::Vertical, Part::Horizontal] {
            let (target, de) = match part {
                Part::Vertical => (e.complex.vertical_target(source), e.complex.vertical(source)),
                Part::Horizontal => (e.complex.horizontal_target(source), e.complex.horizontal(source)),
            };
            if e.complex.piece(target).is_none() || l.complex.piece(target).is_none() {
                continue;
            }
            // the ℒ differential out of `target` lands back in `source`
            let dl = match part {
                Part::Vertical => l.complex.vertical(target),
                Part::Horizontal => l.complex.horizontal(target),
            };
            let lhs = de.transpose().mul(&blocks[&target])?;
            let rhs = blocks[&source].mul(&dl)?;
            let mut epsilon: Option<Rational> = None;
            for (i, j, v) in lhs.entries().chain(rhs.entries()) {
                let (x, y) = (lhs.get(i, j), rhs.get(i, j));
                let fits = match &epsilon {
                    None if !x.is_zero() && !y.is_zero() => {
                        epsilon = Some(&x / &y);
                        x == &y * epsilon.as_ref().unwrap() && epsilon.as_ref().is_some_and(|e| e == &one() || e == &-one())
                    }
                    None => x.is_zero() && y.is_zero(),
                    Some(eps) => x == &y * eps,
                };
                let _ = v;
                if !fits {
                    let x_key = e.complex.piece(source).unwrap().keys()[i].clone();
                    let y_key = l.complex.piece(target).unwrap().keys()[j].clone();
                    report.violations.push(DualityViolation::NotAdjoint { part, source, x: x_key, y: y_key });
                    break;
                }
            }
            if let Some(eps) = epsilon {
                report.signs.insert((part, source), if eps == one() { 1 } else { -1 });
            }
        }
    }
    Ok(report)
}

/// A map from 𝒢(A) to A given on basis terms; absent terms map to zero.
pub type TwistingFunction = BTreeMap<GraphTerm, Polynomial>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistingOutcome {
    Holds,
    /// The first basis term on which the identity fails, and the defect.
    Fails { element: GraphTerm, defect: Polynomial },
}

impl TwistingOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, TwistingOutcome::Holds)
    }
}

/// The adjunct of the identity of 𝒢(A): `s⁻¹a ↦ −a` on single vertices and
/// zero on larger graphs.
pub fn canonical_twisting(g: &DgComplexBundle<GraphTerm>, a: &DgcaPresentation) -> TwistingFunction {
    let slots = SlotAlgebra::for_truncation(a);
    g.keys()
        .into_iter()
        .filter(|(b, _)| b.weight == 1)
        .map(|(_, t)| {
            let m = slots.monomial(t.labels()[0]).clone();
            (t, Polynomial::single(m, -one()))
        })
        .collect()
}

/// Evaluates `d_A τ + τ d_G − ½ μ_A(((−1)^{|·|}τ)⊗τ)]·[` on every basis term
/// of `g`, with `|·|` the degree in 𝒢(A) of the first tensor factor.
///
/// `τ` must raise the degree of 𝒢(A) by one.
pub fn check_twisting(
    tau: &TwistingFunction,
    g: &DgComplexBundle<GraphTerm>,
    a: &DgcaPresentation,
) -> Result<TwistingOutcome, FunctorError> {
    for (t, p) in tau {
        for (m, _) in p.terms() {
            if a.degree(m) != t.degree() + 1 {
                return Err(FunctorError::DegreeMismatch {
                    element: String::from("τ"),
                    expected: t.degree() + 1,
                    found: a.degree(m),
                });
            }
        }
    }
    let slots = SlotAlgebra::for_truncation(a);
    let apply = |x: &LinComb<GraphTerm>| -> Polynomial {
        let mut out = Polynomial::new();
        for (t, c) in x.terms() {
            if let Some(p) = tau.get(t) {
                out += &p.scaled(c);
            }
        }
        out
    };
    let half = frac(1, 2);
    let top = g.truncation.max_degree;
    for (at, t) in g.keys() {
        if at.degree >= top {
            continue;
        }
        let single = LinComb::single(t.clone(), one());
        let mut defect = a.d(&apply(&single));
        defect += &apply(slots.differential(&t).as_lincomb());
        for (pair, c) in cobracket_term(&t).terms() {
            let left = apply(&LinComb::single(pair[0].clone(), one()));
            let right = apply(&LinComb::single(pair[1].clone(), one()));
            let s = sign(pair[0].degree() as i64) * &half * c;
            defect += &a.mul(&left, &right).scaled(&-s);
        }
        if !defect.is_zero() {
            return Ok(TwistingOutcome::Fails { element: t, defect });
        }
    }
    Ok(TwistingOutcome::Holds)
}
