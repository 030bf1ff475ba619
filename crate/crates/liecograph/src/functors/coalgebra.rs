//! Presented cocommutative chain coalgebras, given on a finite basis of the
//! reduced part by structure constants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{DgcaPresentation, FunctorError};
use crate::lincomb::LinComb;
use crate::rational::sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cogenerator {
    pub name: String,
    pub degree: i32,
}

/// `(C, Δ̄, d)`: a basis of the reduced coalgebra, the reduced coproduct
/// `Δ̄c = Σ cᵢⱼ·bᵢ⊗bⱼ` and a differential of degree −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgccPresentation {
    basis: Vec<Cogenerator>,
    coproduct: Vec<LinComb<(usize, usize)>>,
    differential: Vec<LinComb<usize>>,
}

type Triple = LinComb<(usize, usize, usize)>;

impl DgccPresentation {
    /// Validates degrees, coassociativity, graded cocommutativity, `d² = 0`
    /// and the coderivation rule.
    pub fn new(
        basis: Vec<Cogenerator>,
        coproduct: Vec<LinComb<(usize, usize)>>,
        differential: Vec<LinComb<usize>>,
    ) -> Result<Self, FunctorError> {
        let n = basis.len();
        if coproduct.len() != n || differential.len() != n {
            return Err(FunctorError::InvalidPresentation("structure constants do not match the basis".into()));
        }
        let c = DgccPresentation { basis, coproduct, differential };
        c.validate()?;
        Ok(c)
    }

    fn bad(&self, what: &str, i: usize) -> FunctorError {
        FunctorError::InvalidPresentation(format!("{what} fails on `{}`", self.basis[i].name))
    }

    fn validate(&self) -> Result<(), FunctorError> {
        let n = self.basis.len();
        let mut names = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            if b.degree < 1 {
                return Err(FunctorError::InvalidPresentation(format!(
                    "`{}` has degree {}; the reduced part lives in positive degrees",
                    b.name, b.degree
                )));
            }
            if names.insert(b.name.clone(), i).is_some() {
                return Err(FunctorError::InvalidPresentation(format!("`{}` declared twice", b.name)));
            }
        }
        let deg = |i: usize| self.basis[i].degree;
        for i in 0..n {
            let inside = |k: &usize| *k < n;
            if self.coproduct[i].keys().any(|(a, b)| !inside(a) || !inside(b))
                || self.differential[i].keys().any(|a| !inside(a))
            {
                return Err(self.bad("index range", i));
            }
            if self.coproduct[i].keys().any(|(a, b)| deg(*a) + deg(*b) != deg(i)) {
                return Err(self.bad("degree of the coproduct", i));
            }
            if self.differential[i].keys().any(|a| deg(*a) != deg(i) - 1) {
                return Err(self.bad("degree of the differential", i));
            }
            let swapped: LinComb<(usize, usize)> = self.coproduct[i]
                .terms()
                .map(|((a, b), c)| ((*b, *a), c * sign((deg(*a) * deg(*b)) as i64)))
                .collect();
            if swapped != self.coproduct[i] {
                return Err(self.bad("cocommutativity", i));
            }
            let mut left = Triple::new();
            let mut right = Triple::new();
            for ((a, b), c) in self.coproduct[i].terms() {
                for ((x, y), e) in self.coproduct[*a].terms() {
                    left.add_term((*x, *y, *b), c * e);
                }
                for ((x, y), e) in self.coproduct[*b].terms() {
                    right.add_term((*a, *x, *y), c * e);
                }
            }
            if left != right {
                return Err(self.bad("coassociativity", i));
            }
            if !self.d(&self.differential[i]).is_zero() {
                return Err(self.bad("d² = 0", i));
            }
            let mut lhs = LinComb::new();
            for (j, c) in self.differential[i].terms() {
                lhs += &self.coproduct[*j].scaled(c);
            }
            if lhs != self.d_tensor(&self.coproduct[i]) {
                return Err(self.bad("the coderivation rule", i));
            }
        }
        Ok(())
    }

    pub fn d(&self, x: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::new();
        for (i, c) in x.terms() {
            out += &self.differential[*i].scaled(c);
        }
        out
    }

    /// `(d⊗1 + 1⊗d)` with the Koszul sign on the second factor.
    pub fn d_tensor(&self, x: &LinComb<(usize, usize)>) -> LinComb<(usize, usize)> {
        let mut out = LinComb::new();
        for ((a, b), c) in x.terms() {
            for (da, e) in self.differential[*a].terms() {
                out.add_term((*da, *b), c * e);
            }
            let s = sign(self.basis[*a].degree as i64);
            for (db, e) in self.differential[*b].terms() {
                out.add_term((*a, *db), c * e * &s);
            }
        }
        out
    }

    /// The linear dual of `a` in degrees `1..=max_degree`, on the basis dual
    /// to the monomials: the coefficient of `x⊗y` in `Δ̄c` is that of `c` in
    /// `x·y`, and the coefficient of `x` in `dc` is that of `c` in `dx`.
    pub fn dual_of(a: &DgcaPresentation, max_degree: i32) -> Result<Self, FunctorError> {
        let monomials = a.monomials(max_degree);
        let index: BTreeMap<_, _> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let n = monomials.len();
        let basis: Vec<Cogenerator> =
            monomials.iter().map(|m| Cogenerator { name: a.monomial_name(m), degree: a.degree(m) }).collect();
        let mut coproduct = alloc::vec![LinComb::new(); n];
        let mut differential = alloc::vec![LinComb::new(); n];
        for (i, x) in monomials.iter().enumerate() {
            for (j, y) in monomials.iter().enumerate() {
                if let Some((xy, negative)) = a.multiply(x, y) {
                    if let Some(k) = index.get(&xy) {
                        coproduct[*k].add_term((i, j), if negative { -crate::rational::one() } else { crate::rational::one() });
                    }
                }
            }
            for (m, c) in a.d_monomial(x).terms() {
                if let Some(k) = index.get(m) {
                    differential[*k].add_term(i, c.clone());
                }
            }
        }
        DgccPresentation::new(basis, coproduct, differential)
    }

    pub fn basis(&self) -> &[Cogenerator] {
        &self.basis
    }

    pub fn coproduct_of(&self, i: usize) -> &LinComb<(usize, usize)> {
        &self.coproduct[i]
    }

    pub fn differential_of(&self, i: usize) -> &LinComb<usize> {
        &self.differential[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// The sub-coalgebra spanned by the basis elements listed in `order`,
    /// renumbered in that order.
    pub(crate) fn reindexed(&self, order: &[usize]) -> Result<Self, FunctorError> {
        let mut position = alloc::vec![usize::MAX; self.basis.len()];
        for (p, i) in order.iter().enumerate() {
            position[*i] = p;
        }
        let keep = |i: &usize| position[*i] != usize::MAX;
        let basis = order.iter().map(|i| self.basis[*i].clone()).collect();
        let coproduct = order
            .iter()
            .map(|i| {
                let cp = &self.coproduct[*i];
                if cp.keys().any(|(a, b)| !keep(a) || !keep(b)) {
                    return Err(FunctorError::InvalidInput("selection is not closed under Δ̄".into()));
                }
                Ok(cp.terms().map(|((a, b), c)| ((position[*a], position[*b]), c.clone())).collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let differential = order
            .iter()
            .map(|i| self.differential[*i].terms().filter(|(a, _)| keep(a)).map(|(a, c)| (position[*a], c.clone())).collect())
            .collect();
        DgccPresentation::new(basis, coproduct, differential)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{DgcaBuilder, Truncation};
    use crate::rational::one;

    #[test]
    fn dual_of_cp2() {
        let a = DgcaBuilder::new().generator("x", 2).relation("x", 3).build(Truncation::new(3, 8)).unwrap();
        let c = DgccPresentation::dual_of(&a, 8).unwrap();
        let y = c.index_of("x^2").unwrap();
        let x = c.index_of("x").unwrap();
        assert_eq!(c.coproduct_of(y), &LinComb::single((x, x), one()));
    }

    #[test]
    fn corrupted_sign_breaks_cocommutativity() {
        let basis = alloc::vec![
            Cogenerator { name: "u".into(), degree: 3 },
            Cogenerator { name: "v".into(), degree: 3 },
            Cogenerator { name: "w".into(), degree: 6 },
        ];
        let mut cp = alloc::vec![LinComb::new(); 3];
        cp[2].add_term((0, 1), one());
        cp[2].add_term((1, 0), one());
        let err = DgccPresentation::new(basis, cp, alloc::vec![LinComb::new(); 3]);
        assert!(matches!(err, Err(FunctorError::InvalidPresentation(_))));
    }
}
