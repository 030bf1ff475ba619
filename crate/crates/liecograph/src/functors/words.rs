//! Free graded-commutative words on a graded basis, shared by 𝒜̂ (on `sG`)
//! and 𝒞 (on `sL`).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::graphs::fill_differentials;
use super::lie::DgLieAlgebra;
use super::{complete_through, DgComplexBundle, FunctorError, FunctorKind, Truncation};
use crate::graphcoalg::{cobracket, BarWord, EBasis, GraphElement, GraphTerm};
use crate::lincomb::LinComb;
use crate::linalg::{BasedSpace, Bidegree, BigradedComplex, Caps};
use crate::rational::{frac, sign};
use crate::shapes::perm::koszul_parity;

/// A product of generators, listed in non-decreasing index order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymWord(pub Vec<u32>);

impl SymWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Degrees of the generators of a free graded-commutative algebra.
#[derive(Clone, Debug)]
pub(crate) struct SymAlgebra {
    degrees: Vec<i32>,
}

impl SymAlgebra {
    /// Sorts a product of generators, returning the Koszul sign, or `None`
    /// when an odd generator repeats.
    pub(crate) fn normalise(&self, seq: &[u32]) -> Option<(SymWord, bool)> {
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by_key(|i| seq[*i]);
        let mut perm = alloc::vec![0; seq.len()];
        for (pos, i) in order.iter().enumerate() {
            perm[*i] = pos;
        }
        let sorted: Vec<u32> = order.iter().map(|i| seq[*i]).collect();
        if sorted.windows(2).any(|p| p[0] == p[1] && self.degrees[p[0] as usize] % 2 != 0) {
            return None;
        }
        let degs: Vec<i32> = seq.iter().map(|g| self.degrees[*g as usize]).collect();
        Some((SymWord(sorted), koszul_parity(&perm, &degs)))
    }

    /// Words of length `1..=max_len` and degree at most `max_degree`.
    pub(crate) fn words(&self, max_len: usize, max_degree: i32) -> BTreeMap<Bidegree, Vec<SymWord>> {
        fn extend(
            alg: &SymAlgebra,
            from: usize,
            current: &mut Vec<u32>,
            degree: i32,
            max_len: usize,
            max_degree: i32,
            out: &mut BTreeMap<Bidegree, Vec<SymWord>>,
        ) {
            if !current.is_empty() {
                out.entry(Bidegree::new(current.len() as i32, degree)).or_default().push(SymWord(current.clone()));
            }
            if current.len() == max_len {
                return;
            }
            for g in from..alg.degrees.len() {
                let d = alg.degrees[g];
                if degree + d > max_degree || d < 1 {
                    continue;
                }
                if d % 2 != 0 && current.last() == Some(&(g as u32)) {
                    continue;
                }
                current.push(g as u32);
                extend(alg, g, current, degree + d, max_len, max_degree, out);
                current.pop();
            }
        }
        let mut out = BTreeMap::new();
        extend(self, 0, &mut Vec::new(), 0, max_len, max_degree, &mut out);
        out
    }

    /// Extends a map on generators to words as a derivation.
    pub(crate) fn derivation(&self, w: &SymWord, on_generator: &dyn Fn(u32) -> LinComb<SymWord>) -> LinComb<SymWord> {
        let mut out = LinComb::new();
        let mut passed = 0;
        for (i, g) in w.0.iter().enumerate() {
            for (image, c) in on_generator(*g).terms() {
                let mut seq = w.0[..i].to_vec();
                seq.extend_from_slice(&image.0);
                seq.extend_from_slice(&w.0[i + 1..]);
                if let Some((word, negative)) = self.normalise(&seq) {
                    let odd = negative ^ (passed % 2 != 0);
                    out.add_term(word, if odd { -c.clone() } else { c.clone() });
                }
            }
            passed += self.degrees[*g as usize];
        }
        out
    }
}

/// A Lie coalgebra with differential in cochain degrees, known through
/// `max_degree`: a basis, the cobracket `]gᵢ[ = Σ c·gⱼ⊗gₖ` and a
/// differential of degree +1, whose values out of the top degree are not
/// recorded.
#[derive(Clone, Debug)]
pub struct DgLieCoalgebra {
    names: Vec<String>,
    degrees: Vec<i32>,
    cobracket: Vec<LinComb<(u32, u32)>>,
    differential: Vec<LinComb<u32>>,
    max_degree: i32,
    /// Degrees in which the basis holds every element.
    complete_through: i32,
}

impl DgLieCoalgebra {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i32>,
        cobracket: Vec<LinComb<(u32, u32)>>,
        differential: Vec<LinComb<u32>>,
        max_degree: i32,
        complete_through: i32,
    ) -> Result<Self, FunctorError> {
        let n = degrees.len();
        if names.len() != n || cobracket.len() != n || differential.len() != n {
            return Err(FunctorError::InvalidInput("structure constants do not match the basis".into()));
        }
        for i in 0..n {
            let bad = |what: &str| FunctorError::InvalidInput(format!("{what} on `{}`", names[i]));
            if cobracket[i].keys().any(|(a, b)| *a as usize >= n || *b as usize >= n) {
                return Err(bad("cobracket leaves the basis"));
            }
            if cobracket[i].keys().any(|(a, b)| degrees[*a as usize] + degrees[*b as usize] != degrees[i]) {
                return Err(bad("cobracket changes degree"));
            }
            if differential[i].keys().any(|a| *a as usize >= n || degrees[*a as usize] != degrees[i] + 1) {
                return Err(bad("differential is not of degree +1"));
            }
            if degrees[i] > max_degree {
                return Err(bad("degree above the stated maximum"));
            }
        }
        Ok(DgLieCoalgebra { names, degrees, cobracket, differential, max_degree, complete_through })
    }

    /// The underlying Lie coalgebra of ℰ(A) with its total differential.
    pub fn from_e(e: &DgComplexBundle<BarWord>) -> Result<Self, FunctorError> {
        let keys = e.keys();
        let index: BTreeMap<BarWord, u32> = keys.iter().enumerate().map(|(i, (_, w))| (w.clone(), i as u32)).collect();
        let mut basis = EBasis::new();
        let mut cobrackets = Vec::with_capacity(keys.len());
        for (_, w) in &keys {
            let split = cobracket(&w.to_element());
            let mut out = LinComb::new();
            for (pair, c) in split.terms() {
                let left = basis.coordinates(&GraphElement::term(pair[0].clone()))?;
                let right = basis.coordinates(&GraphElement::term(pair[1].clone()))?;
                for (x, a) in left.terms() {
                    for (y, b) in right.terms() {
                        out.add_term((index[x], index[y]), c * a * b);
                    }
                }
            }
            cobrackets.push(out);
        }
        let differential = total_differential(e, &keys, &index);
        let names = keys.iter().map(|(_, w)| w.0.iter().map(|l| e.slot_name(l.id)).collect::<Vec<_>>().join("|")).collect();
        let degrees = keys.iter().map(|(b, _)| b.degree).collect();
        let caps = e.complex.caps();
        DgLieCoalgebra::new(names, degrees, cobrackets, differential, caps.max_degree, caps.complete_through)
    }

    /// The graph coalgebra 𝒢(A) with its total differential.
    pub fn from_g(g: &DgComplexBundle<GraphTerm>) -> Result<Self, FunctorError> {
        let keys = g.keys();
        let index: BTreeMap<GraphTerm, u32> = keys.iter().enumerate().map(|(i, (_, t))| (t.clone(), i as u32)).collect();
        let cobrackets = keys
            .iter()
            .map(|(_, t)| {
                crate::graphcoalg::cobracket_term(t)
                    .terms()
                    .map(|(pair, c)| ((index[&pair[0]], index[&pair[1]]), c.clone()))
                    .collect()
            })
            .collect();
        let differential = total_differential(g, &keys, &index);
        let names = keys
            .iter()
            .map(|(_, t)| {
                let labels: Vec<String> = t.labels().iter().map(|l| g.slot_name(l.id)).collect();
                format!("{}({})", t.graph(), labels.join(","))
            })
            .collect();
        let degrees = keys.iter().map(|(b, _)| b.degree).collect();
        let caps = g.complex.caps();
        DgLieCoalgebra::new(names, degrees, cobrackets, differential, caps.max_degree, caps.complete_through)
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

    pub fn cobracket_of(&self, i: u32) -> &LinComb<(u32, u32)> {
        &self.cobracket[i as usize]
    }

    pub fn differential_of(&self, i: u32) -> &LinComb<u32> {
        &self.differential[i as usize]
    }
}

pub(crate) fn total_differential<K: Ord + Clone>(
    bundle: &DgComplexBundle<K>,
    keys: &[(Bidegree, K)],
    index: &BTreeMap<K, u32>,
) -> Vec<LinComb<u32>> {
    let c = &bundle.complex;
    let mut out = alloc::vec![LinComb::new(); keys.len()];
    for (at, piece) in c.pieces() {
        for (target, m) in [(c.vertical_target(*at), c.vertical(*at)), (c.horizontal_target(*at), c.horizontal(*at))] {
            let Some(tp) = c.piece(target) else { continue };
            for (r, col, v) in m.entries() {
                if let (Some(src), Some(dst)) = (index.get(&piece.keys()[col]), index.get(&tp.keys()[r])) {
                    out[*src as usize].add_term(*dst, v.clone());
                }
            }
        }
    }
    out
}

/// 𝒜̂(G): words in `sG`, `|sg| = |g| + 1`, with the internal differential
/// `d(sg) = −s d_G g` and `d(sg) = ½ Σ c (−1)^{|g₁|} sg₁·sg₂` from the cobracket.
///
/// Words are built through degree `min(t.max_degree, g.max_degree + 1)`, so
/// every differential out of a built word that lands inside the truncation
/// only involves recorded structure.
pub fn build_a_hat(g: &DgLieCoalgebra, t: Truncation) -> Result<DgComplexBundle<SymWord>, FunctorError> {
    let t = Truncation::new(t.max_weight, t.max_degree.min(g.max_degree + 1));
    let alg = SymAlgebra { degrees: g.degrees.iter().map(|d| d + 1).collect() };
    if alg.degrees.iter().any(|d| *d < 1) {
        return Err(FunctorError::InvalidInput("suspended generators must have positive degree".into()));
    }
    let min = alg.degrees.iter().copied().min();
    let complete = complete_through(t, min).min(g.complete_through + 1);
    let caps = Caps { max_weight: t.max_weight as u32, max_degree: t.max_degree, complete_through: complete };
    let mut complex = BigradedComplex::new(1, 1, caps);
    for (at, words) in alg.words(t.max_weight, t.max_degree) {
        complex.insert_piece(at, BasedSpace::new(words)?);
    }
    let half = frac(1, 2);
    let internal = |i: u32| -> LinComb<SymWord> {
        g.differential[i as usize].terms().map(|(j, c)| (SymWord(alloc::vec![*j]), -c)).collect()
    };
    let split = |i: u32| -> LinComb<SymWord> {
        let mut out = LinComb::new();
        for ((j, k), c) in g.cobracket[i as usize].terms() {
            if let Some((w, negative)) = alg.normalise(&[*j, *k]) {
                let s = sign(g.degrees[*j as usize] as i64) * &half * c;
                out.add_term(w, if negative { -s } else { s });
            }
        }
        out
    };
    fill_differentials(&mut complex, |w| Ok(alg.derivation(w, &internal)), |w| Ok(alg.derivation(w, &split)))?;
    Ok(DgComplexBundle { kind: FunctorKind::AOfE, complex, slot_names: g.names.clone(), truncation: t })
}

/// 𝒞(L): words in `sL`, `|sv| = |v| + 1`, with `d(sv) = −s d_L v` and
/// `d(sv₁⋯svₙ) = Σ_{i<j} (−1)^{nᵢⱼ + |vᵢ|} s[vᵢ,vⱼ]·sv₁⋯ (i, j omitted) ⋯svₙ`.
pub fn build_c(l: &DgLieAlgebra, t: Truncation) -> Result<DgComplexBundle<SymWord>, FunctorError> {
    let alg = SymAlgebra { degrees: l.degrees().iter().map(|d| d + 1).collect() };
    if alg.degrees.iter().any(|d| *d < 1) {
        return Err(FunctorError::InvalidInput("suspended generators must have positive degree".into()));
    }
    let min = alg.degrees.iter().copied().min();
    let caps = Caps { max_weight: t.max_weight as u32, max_degree: t.max_degree, complete_through: complete_through(t, min) };
    let mut complex = BigradedComplex::new(-1, -1, caps);
    for (at, words) in alg.words(t.max_weight, t.max_degree) {
        complex.insert_piece(at, BasedSpace::new(words)?);
    }
    let internal = |i: u32| -> LinComb<SymWord> {
        l.differential_of(i).terms().map(|(j, c)| (SymWord(alloc::vec![*j]), -c)).collect()
    };
    let bracket = |w: &SymWord| -> LinComb<SymWord> {
        let mut out = LinComb::new();
        let n = w.len();
        let degs: Vec<i32> = w.0.iter().map(|g| alg.degrees[*g as usize]).collect();
        for i in 0..n {
            for j in i + 1..n {
                let vi = w.0[i];
                let vj = w.0[j];
                let mut perm = alloc::vec![0; n];
                perm[i] = 0;
                perm[j] = 1;
                let mut next = 2;
                for (k, p) in perm.iter_mut().enumerate() {
                    if k != i && k != j {
                        *p = next;
                        next += 1;
                    }
                }
                let odd = koszul_parity(&perm, &degs) ^ (l.degrees()[vi as usize] % 2 != 0);
                let rest: Vec<u32> = (0..n).filter(|k| *k != i && *k != j).map(|k| w.0[k]).collect();
                for (v, c) in l.bracket(vi, vj).terms() {
                    let mut seq = alloc::vec![*v];
                    seq.extend_from_slice(&rest);
                    if let Some((word, negative)) = alg.normalise(&seq) {
                        let flip = odd ^ negative;
                        out.add_term(word, if flip { -c.clone() } else { c.clone() });
                    }
                }
            }
        }
        out
    };
    fill_differentials(&mut complex, |w| Ok(alg.derivation(w, &internal)), |w| Ok(bracket(w)))?;
    Ok(DgComplexBundle { kind: FunctorKind::COfL, complex, slot_names: l.names().to_vec(), truncation: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn long_three() -> DgLieCoalgebra {
        // the suspended long graph a|b|c of three even-degree slots and its
        // two cuts, with the cobracket of 𝔾 written out by hand
        let names = ["a", "b", "c", "a|b", "b|c", "a|b|c"].iter().map(|s| String::from(*s)).collect();
        let degrees = alloc::vec![2, 2, 2, 4, 4, 6];
        let mut cob = alloc::vec![LinComb::new(); 6];
        cob[3].add_term((0, 1), int(1));
        cob[3].add_term((1, 0), int(-1));
        cob[4].add_term((1, 2), int(1));
        cob[4].add_term((2, 1), int(-1));
        cob[5].add_term((3, 2), int(1));
        cob[5].add_term((2, 3), int(-1));
        cob[5].add_term((0, 4), int(1));
        cob[5].add_term((4, 0), int(-1));
        DgLieCoalgebra::new(names, degrees, cob, alloc::vec![LinComb::new(); 6], 8, 8).unwrap()
    }

    #[test]
    fn three_vertex_cobracket_squares_to_zero() {
        let g = long_three();
        let a = build_a_hat(&g, Truncation::new(3, 12)).unwrap();
        // d(s(a|b|c)) = s(a|b)·sc + sa·s(b|c), up to the normalisation of ½
        let top = Bidegree::new(1, 7);
        let h = a.complex.horizontal(top);
        assert_eq!(h.nnz(), 2);
        assert!(a.complex.check_identities().is_ok());
    }

    #[test]
    fn weight_one_input_has_no_structure_differential() {
        let g = DgLieCoalgebra::new(
            alloc::vec!["x".into()],
            alloc::vec![1],
            alloc::vec![LinComb::new()],
            alloc::vec![LinComb::new()],
            4,
            4,
        )
        .unwrap();
        let a = build_a_hat(&g, Truncation::new(3, 8)).unwrap();
        for (at, _) in a.complex.pieces() {
            assert!(a.complex.horizontal(*at).is_zero());
        }
    }
}
