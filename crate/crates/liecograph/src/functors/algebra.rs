//! Presented commutative cochain algebras: free graded-commutative algebras
//! on finitely many generators, modulo monomial relations `gᵏ = 0`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{FunctorError, Truncation};
use crate::lincomb::LinComb;
use crate::rational::{one, Rational};

/// A monomial `∏ gᵢ^{eᵢ}` in generator order, stored as its exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit(generators: usize) -> Self {
        Monomial(vec![0; generators])
    }

    pub fn generator(generators: usize, index: usize) -> Self {
        let mut e = vec![0; generators];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }
}

pub type Polynomial = LinComb<Monomial>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

/// A commutative cochain algebra `(A, μ, d)` given by generators, monomial
/// relations and the differential on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgcaPresentation {
    generators: Vec<Generator>,
    /// Least power killed by a relation, per generator.
    relations: Vec<Option<u32>>,
    differentials: Vec<Polynomial>,
    truncation: Truncation,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Collects generators, relations and differentials before validation.
#[derive(Clone, Debug, Default)]
pub struct DgcaBuilder {
    generators: Vec<Generator>,
    relations: Vec<(String, u32)>,
    differentials: Vec<(String, Vec<(Rational, Vec<(String, u32)>)>)>,
}

impl DgcaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(mut self, name: &str, degree: i32) -> Self {
        self.generators.push(Generator { name: name.into(), degree });
        self
    }

    /// `name^power = 0`.
    pub fn relation(mut self, name: &str, power: u32) -> Self {
        self.relations.push((name.into(), power));
        self
    }

    /// `d name = Σ c · ∏ gⱼ^{eⱼ}`, each product written in the given order.
    pub fn differential(mut self, name: &str, terms: &[(Rational, &[(&str, u32)])]) -> Self {
        let terms = terms
            .iter()
            .map(|(c, factors)| (c.clone(), factors.iter().map(|(g, e)| (String::from(*g), *e)).collect()))
            .collect();
        self.differentials.push((name.into(), terms));
        self
    }

    pub fn build(self, truncation: Truncation) -> Result<DgcaPresentation, FunctorError> {
        let mut a = DgcaPresentation::bare(self.generators, truncation)?;
        for (name, power) in self.relations {
            a.set_relation(&name, power)?;
        }
        for (name, terms) in self.differentials {
            let mut p = Polynomial::new();
            for (c, factors) in terms {
                let mut m = a.unit_polynomial();
                for (g, e) in factors {
                    let i = a.index_of(&g)?;
                    for _ in 0..e {
                        m = a.mul(&m, &a.generator_polynomial(i));
                    }
                }
                p += &m.scaled(&c);
            }
            a.set_differential(&name, p)?;
        }
        a.validate()?;
        Ok(a)
    }
}

impl DgcaPresentation {
    /// Generators with no relations and zero differential; not yet validated.
    pub(crate) fn bare(generators: Vec<Generator>, truncation: Truncation) -> Result<Self, FunctorError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_name(&g.name) {
                return Err(FunctorError::InvalidPresentation(format!("bad generator name `{}`", g.name)));
            }
            if !seen.insert(g.name.clone()) {
                return Err(FunctorError::InvalidPresentation(format!("generator `{}` declared twice", g.name)));
            }
            if g.degree < 1 {
                return Err(FunctorError::InvalidPresentation(format!(
                    "generator `{}` has degree {}; degrees must be at least 1",
                    g.name, g.degree
                )));
            }
        }
        let n = generators.len();
        Ok(DgcaPresentation {
            generators,
            relations: vec![None; n],
            differentials: vec![Polynomial::new(); n],
            truncation,
        })
    }

    pub(crate) fn set_relation(&mut self, name: &str, power: u32) -> Result<(), FunctorError> {
        let i = self.index_of(name)?;
        if power < 2 {
            return Err(FunctorError::InvalidPresentation(format!("relation {name}^{power} = 0 kills a generator")));
        }
        let slot = &mut self.relations[i];
        *slot = Some(slot.map_or(power, |p| p.min(power)));
        Ok(())
    }

    pub(crate) fn set_differential(&mut self, name: &str, p: Polynomial) -> Result<(), FunctorError> {
        let i = self.index_of(name)?;
        if !self.differentials[i].is_zero() {
            return Err(FunctorError::InvalidPresentation(format!("differential of `{name}` given twice")));
        }
        self.differentials[i] = p;
        Ok(())
    }

    /// Checks degrees, `d² = 0` and that `d` preserves the relation ideal.
    pub(crate) fn validate(&self) -> Result<(), FunctorError> {
        for (i, g) in self.generators.iter().enumerate() {
            for (m, _) in self.differentials[i].terms() {
                if self.degree(m) != g.degree + 1 {
                    return Err(FunctorError::InvalidPresentation(format!(
                        "d{} contains {} of degree {}, expected {}",
                        g.name,
                        self.monomial_name(m),
                        self.degree(m),
                        g.degree + 1
                    )));
                }
            }
            if !self.d(&self.differentials[i]).is_zero() {
                return Err(FunctorError::InvalidPresentation(format!("d² ≠ 0 on `{}`", g.name)));
            }
            if let Some(k) = self.relations[i] {
                // d(gᵏ) = k·gᵏ⁻¹·dg for even g; odd g already squares to zero
                if g.degree % 2 == 0 {
                    let mut power = self.unit_polynomial();
                    for _ in 0..k - 1 {
                        power = self.mul(&power, &self.generator_polynomial(i));
                    }
                    if !self.mul(&power, &self.differentials[i]).is_zero() {
                        return Err(FunctorError::InvalidPresentation(format!(
                            "d does not preserve the relation {}^{k} = 0",
                            g.name
                        )));
                    }
                }
            }
        }
        for m in self.monomials(self.truncation.max_degree + 2) {
            let dm = self.d_monomial(&m);
            if !self.d(&dm).is_zero() {
                return Err(FunctorError::InvalidPresentation(format!("d² ≠ 0 on {}", self.monomial_name(&m))));
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// The least power of generator `i` set to zero by a relation.
    pub fn relation(&self, i: usize) -> Option<u32> {
        self.relations[i]
    }

    pub fn differential_of(&self, i: usize) -> &Polynomial {
        &self.differentials[i]
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: Truncation) -> Self {
        DgcaPresentation { truncation, ..self.clone() }
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differentials.iter().all(|p| p.is_zero())
    }

    pub fn index_of(&self, name: &str) -> Result<usize, FunctorError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| FunctorError::InvalidPresentation(format!("unknown generator `{name}`")))
    }

    pub fn unit_polynomial(&self) -> Polynomial {
        Polynomial::single(Monomial::unit(self.generators.len()), one())
    }

    pub fn generator_polynomial(&self, i: usize) -> Polynomial {
        Polynomial::single(Monomial::generator(self.generators.len(), i), one())
    }

    pub fn degree(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(&self.generators).map(|(e, g)| *e as i32 * g.degree).sum()
    }

    /// Zero in the quotient: an odd generator repeats or a relation applies.
    pub fn is_zero_monomial(&self, m: &Monomial) -> bool {
        m.0.iter().enumerate().any(|(i, e)| {
            (self.generators[i].degree % 2 != 0 && *e > 1) || self.relations[i].is_some_and(|k| *e >= k)
        })
    }

    /// `m·n` in normal order, with the sign of moving `n`'s generators past
    /// the later generators of `m`; `None` if the product vanishes.
    pub fn multiply(&self, m: &Monomial, n: &Monomial) -> Option<(Monomial, bool)> {
        let e: Vec<u32> = m.0.iter().zip(&n.0).map(|(a, b)| a + b).collect();
        let product = Monomial(e);
        if self.is_zero_monomial(&product) {
            return None;
        }
        let mut odd_later = 0u32;
        let mut negative = false;
        for j in (0..self.generators.len()).rev() {
            let odd = self.generators[j].degree % 2 != 0;
            if odd && n.0[j] % 2 == 1 && odd_later % 2 == 1 {
                negative = !negative;
            }
            if odd {
                odd_later += m.0[j];
            }
        }
        Some((product, negative))
    }

    pub fn mul(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::new();
        for (m, a) in p.terms() {
            for (n, b) in q.terms() {
                if let Some((mn, negative)) = self.multiply(m, n) {
                    let c = a * b;
                    out.add_term(mn, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// The Leibniz extension of `d` to a monomial.
    pub fn d_monomial(&self, m: &Monomial) -> Polynomial {
        let k = self.generators.len();
        let mut out = Polynomial::new();
        let mut prefix_degree = 0;
        for i in 0..k {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            if !self.differentials[i].is_zero() {
                let mut prefix = m.0.clone();
                prefix[i + 1..].iter_mut().for_each(|x| *x = 0);
                prefix[i] = e - 1;
                let mut suffix = m.0.clone();
                suffix[..=i].iter_mut().for_each(|x| *x = 0);
                let left = Polynomial::single(Monomial(prefix), one());
                let right = Polynomial::single(Monomial(suffix), one());
                // gᵉ⁻¹ commutes with dg when g is even, and e = 1 when g is odd
                let term = self.mul(&self.mul(&left, &self.differentials[i]), &right);
                let mut c = Rational::from_integer(e.into());
                if prefix_degree % 2 != 0 {
                    c = -c;
                }
                out += &term.scaled(&c);
            }
            prefix_degree += e as i32 * self.generators[i].degree;
        }
        out
    }

    pub fn d(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::new();
        for (m, c) in p.terms() {
            out += &self.d_monomial(m).scaled(c);
        }
        out
    }

    /// Nonzero monomials of degree `1..=max_degree`, by degree then exponents.
    pub fn monomials(&self, max_degree: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.generators.len()];
        self.extend_monomials(0, 0, max_degree, &mut current, &mut out);
        out.retain(|m| !m.is_unit());
        out.sort_by_key(|m| (self.degree(m), m.clone()));
        out
    }

    fn extend_monomials(&self, i: usize, degree: i32, max: i32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        let g = &self.generators[i];
        let mut e = 0u32;
        loop {
            let m = Monomial({
                let mut v = vec![0; self.generators.len()];
                v[i] = e;
                v
            });
            if degree + e as i32 * g.degree > max || (e > 0 && self.is_zero_monomial(&m)) {
                break;
            }
            current[i] = e;
            self.extend_monomials(i + 1, degree + e as i32 * g.degree, max, current, out);
            e += 1;
        }
        current[i] = 0;
    }

    /// Dimensions of the augmentation ideal in degrees `1..=max_degree`.
    pub fn dimensions(&self, max_degree: i32) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for m in self.monomials(max_degree) {
            *out.entry(self.degree(&m)).or_insert(0) += 1;
        }
        out
    }

    /// `x^2*y`, or `1` for the unit.
    pub fn monomial_name(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                let name = &self.generators[i].name;
                if *e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// The lowest generator degree, if any.
    pub fn min_generator_degree(&self) -> Option<i32> {
        self.generators.iter().map(|g| g.degree).min()
    }
}
