//! Finite rational linear combinations of ordered keys.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Neg, Sub};
use num_traits::Zero;

use crate::rational::Rational;

/// A formal sum `Σ cₖ·k` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coefficient: Rational) -> Self {
        let mut out = Self::new();
        out.add_term(key, coefficient);
        out
    }

    pub fn add_term(&mut self, key: K, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, Rational)> {
        self.terms.into_iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coefficient(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, by: &Rational) -> Self {
        if by.is_zero() {
            return Self::new();
        }
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * by)).collect() }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    /// The first nonzero term, if any.
    pub fn first(&self) -> Option<(&K, &Rational)> {
        self.terms.iter().next()
    }

    pub fn to_vec(&self) -> Vec<(K, Rational)> {
        self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, c) in rhs.terms() {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        LinComb { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }
}

/// Elementary tensors `x₁ ⊗ … ⊗ x_k` with rational coefficients.
pub type Tensor<K> = LinComb<Vec<K>>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn cancellation_removes_terms() {
        let mut x = LinComb::single("a", int(2));
        x.add_term("a", int(-2));
        assert!(x.is_zero());
        let y: LinComb<&str> = [("a", int(1)), ("b", int(3))].into_iter().collect();
        let z = &y - &y.scaled(&int(1));
        assert!(z.is_zero());
        assert_eq!((&y + &y).coefficient(&"b"), int(6));
    }
}
