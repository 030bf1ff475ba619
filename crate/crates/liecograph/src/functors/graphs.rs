//! 𝒢(A) and ℰ(A): graphs and bar words labelled by the desuspended
//! augmentation ideal, with edge contraction and the internal differential.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{complete_through, DgComplexBundle, DgcaPresentation, FunctorError, FunctorKind, Monomial};
use crate::graphcoalg::{graphify, BarWord, EBasis, GraphElement, GraphTerm};
use crate::labels::{degrees, Label};
use crate::lincomb::LinComb;
use crate::linalg::{BasedSpace, Bidegree, BigradedComplex, Caps, SparseMatrix};
use crate::rational::{one, Rational};
use crate::shapes::perm::{koszul_parity, permute};
use crate::shapes::{enumerate_graphs, SGraph};

/// `s⁻¹Ā` as a set of labels: label `i` is the `i`-th monomial of `A`, in
/// degree one less than the monomial.
#[derive(Clone, Debug)]
pub struct SlotAlgebra {
    algebra: DgcaPresentation,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, u32>,
}

impl SlotAlgebra {
    /// Labels for all monomials of degree at most `max_degree`.
    pub fn new(algebra: &DgcaPresentation, max_degree: i32) -> Self {
        let monomials = algebra.monomials(max_degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        SlotAlgebra { algebra: algebra.clone(), monomials, index }
    }

    /// Labels covering every term of total degree `max_degree` and the
    /// images of the differentials out of them.
    pub fn for_truncation(algebra: &DgcaPresentation) -> Self {
        Self::new(algebra, algebra.truncation().max_degree + 2)
    }

    pub fn algebra(&self) -> &DgcaPresentation {
        &self.algebra
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.monomials.len()).map(|i| self.label(i as u32)).collect()
    }

    pub fn label(&self, id: u32) -> Label {
        Label::new(id, self.algebra.degree(&self.monomials[id as usize]) - 1)
    }

    pub fn label_of(&self, m: &Monomial) -> Option<Label> {
        self.index.get(m).map(|id| self.label(*id))
    }

    pub fn monomial(&self, label: Label) -> &Monomial {
        &self.monomials[label.id as usize]
    }

    pub fn names(&self) -> Vec<String> {
        self.monomials.iter().map(|m| self.algebra.monomial_name(m)).collect()
    }

    /// Contracting an edge from a vertex labelled `a` to one labelled `b`
    /// gives `(−1)^{|a|} s⁻¹(ab)`, with `|a|` the degree in `A`.
    pub fn merge(&self, a: Label, b: Label) -> Option<(Label, Rational)> {
        let (ab, negative) = self.algebra.multiply(self.monomial(a), self.monomial(b))?;
        let label = self.label_of(&ab).expect("labels cover every product inside the truncation");
        let odd = negative ^ ((a.degree + 1) % 2 != 0);
        Some((label, if odd { -one() } else { one() }))
    }

    /// `−s⁻¹ d a`.
    pub fn d_label(&self, a: Label) -> Vec<(Label, Rational)> {
        self.algebra
            .d_monomial(self.monomial(a))
            .terms()
            .map(|(m, c)| (self.label_of(m).expect("labels cover every differential inside the truncation"), -c))
            .collect()
    }

    /// Sum over edges of the contraction of that edge.
    pub fn d_mu(&self, t: &GraphTerm) -> GraphElement {
        let mut out = GraphElement::zero();
        let n = t.weight();
        let degs = degrees(t.labels());
        for (u, v) in t.graph().edges() {
            // bring the edge to 0 → 1, keeping the other vertices in order
            let mut sigma = vec![0; n];
            sigma[u] = 0;
            sigma[v] = 1;
            let mut next = 2;
            for (w, s) in sigma.iter_mut().enumerate() {
                if w != u && w != v {
                    *s = next;
                    next += 1;
                }
            }
            let moved = t.graph().relabel(&sigma);
            let labels = permute(t.labels(), &sigma);
            let Some((merged, c)) = self.merge(labels[0], labels[1]) else { continue };
            let index = moved.edges().position(|e| e == (0, 1)).expect("edge was moved to 0 → 1");
            let contracted = moved.contract_edge(index).expect("edge index in range");
            let mut new_labels = vec![merged];
            new_labels.extend_from_slice(&labels[2..]);
            let c = if koszul_parity(&sigma, &degs) { -c } else { c };
            out.add_graph(&contracted.graph, &new_labels, c).expect("contraction keeps one label per vertex");
        }
        out
    }

    /// `−s⁻¹d_A` on each label in turn, with the Koszul sign of passing the
    /// labels before it.
    pub fn d_internal(&self, t: &GraphTerm) -> GraphElement {
        let mut out = GraphElement::zero();
        let mut passed = 0;
        for (i, a) in t.labels().iter().enumerate() {
            for (b, c) in self.d_label(*a) {
                let mut labels = t.labels().to_vec();
                labels[i] = b;
                let c = if passed % 2 != 0 { -c } else { c };
                out.add_graph(t.graph(), &labels, c).expect("same graph");
            }
            passed += a.degree;
        }
        out
    }

    pub fn differential(&self, t: &GraphTerm) -> GraphElement {
        &self.d_mu(t) + &self.d_internal(t)
    }

    pub fn d_mu_element(&self, g: &GraphElement) -> GraphElement {
        g.terms().fold(GraphElement::zero(), |acc, (t, c)| &acc + &self.d_mu(t).scaled(c))
    }

    pub fn d_internal_element(&self, g: &GraphElement) -> GraphElement {
        g.terms().fold(GraphElement::zero(), |acc, (t, c)| &acc + &self.d_internal(t).scaled(c))
    }
}

/// Sorted label multisets of size `1..=max_len` and total degree at most
/// `max_degree`, grouped by (size, degree).
pub(crate) fn label_multisets(labels: &[Label], max_len: usize, max_degree: i32) -> BTreeMap<Bidegree, Vec<Vec<Label>>> {
    fn extend(
        labels: &[Label],
        from: usize,
        current: &mut Vec<Label>,
        degree: i32,
        max_len: usize,
        max_degree: i32,
        out: &mut BTreeMap<Bidegree, Vec<Vec<Label>>>,
    ) {
        if !current.is_empty() {
            out.entry(Bidegree::new(current.len() as i32, degree)).or_default().push(current.clone());
        }
        if current.len() == max_len {
            return;
        }
        for i in from..labels.len() {
            let l = labels[i];
            if degree + l.degree > max_degree || l.degree < 1 {
                continue;
            }
            current.push(l);
            extend(labels, i, current, degree + l.degree, max_len, max_degree, out);
            current.pop();
        }
    }
    let mut out = BTreeMap::new();
    extend(labels, 0, &mut Vec::new(), 0, max_len, max_degree, &mut out);
    out
}

pub(crate) fn require_simply_connected(a: &DgcaPresentation) -> Result<(), FunctorError> {
    match a.generators().iter().find(|g| g.degree < 2) {
        Some(g) => Err(FunctorError::NotSimplyConnected { name: g.name.clone(), degree: g.degree }),
        None => Ok(()),
    }
}

fn caps_for(a: &DgcaPresentation) -> Caps {
    let t = a.truncation();
    let complete = complete_through(t, a.min_generator_degree().map(|d| d - 1));
    Caps { max_weight: t.max_weight as u32, max_degree: t.max_degree, complete_through: complete }
}

/// Fills in the vertical and horizontal maps of `complex`, given the two
/// differentials on a basis key as combinations of keys.
pub(crate) fn fill_differentials<K: Ord + Clone>(
    complex: &mut BigradedComplex<K>,
    mut vertical: impl FnMut(&K) -> Result<LinComb<K>, FunctorError>,
    mut horizontal: impl FnMut(&K) -> Result<LinComb<K>, FunctorError>,
) -> Result<(), FunctorError> {
    let sources: Vec<(Bidegree, Vec<K>)> = complex.pieces().map(|(b, p)| (*b, p.keys().to_vec())).collect();
    for (at, keys) in sources {
        for is_vertical in [true, false] {
            let target = if is_vertical { complex.vertical_target(at) } else { complex.horizontal_target(at) };
            let Some(space) = complex.piece(target).cloned() else { continue };
            let mut entries = Vec::new();
            for (col, key) in keys.iter().enumerate() {
                let image = if is_vertical { vertical(key)? } else { horizontal(key)? };
                for (k, c) in image.terms() {
                    let row = space.index_of(k).ok_or_else(|| {
                        FunctorError::InvalidInput("a differential leaves the truncated basis".into())
                    })?;
                    entries.push((row, col, c.clone()));
                }
            }
            let m = SparseMatrix::from_entries(space.dim(), keys.len(), entries)?;
            if is_vertical {
                complex.set_vertical(at, m)?;
            } else {
                complex.set_horizontal(at, m)?;
            }
        }
    }
    Ok(())
}

/// 𝒢(A) truncated by the presentation's caps, on canonical graph terms.
pub fn build_g(a: &DgcaPresentation) -> Result<DgComplexBundle<GraphTerm>, FunctorError> {
    require_simply_connected(a)?;
    let t = a.truncation();
    let slots = SlotAlgebra::for_truncation(a);
    let mut complex = BigradedComplex::new(1, -1, caps_for(a));
    let mut graphs: BTreeMap<usize, Vec<SGraph>> = BTreeMap::new();
    for (at, multisets) in label_multisets(&slots.labels(), t.max_weight, t.max_degree) {
        let n = at.weight as usize;
        if !graphs.contains_key(&n) {
            graphs.insert(n, enumerate_graphs(n)?);
        }
        let mut terms = BTreeSet::new();
        for labels in multisets {
            for g in &graphs[&n] {
                if let Some((term, _)) = GraphTerm::canonical(g, &labels) {
                    terms.insert(term);
                }
            }
        }
        if !terms.is_empty() {
            complex.insert_piece(at, BasedSpace::new(terms.into_iter().collect())?);
        }
    }
    fill_differentials(
        &mut complex,
        |k| Ok(slots.d_internal(k).as_lincomb().clone()),
        |k| Ok(slots.d_mu(k).as_lincomb().clone()),
    )?;
    Ok(DgComplexBundle { kind: FunctorKind::GOfA, complex, slot_names: slots.names(), truncation: t })
}

/// ℰ(A) on bar-basis coordinates: each basis word is turned into its long
/// graph, differentiated in 𝒢(A), and read back in the bar basis.
pub fn build_e(a: &DgcaPresentation) -> Result<DgComplexBundle<BarWord>, FunctorError> {
    require_simply_connected(a)?;
    let t = a.truncation();
    let slots = SlotAlgebra::for_truncation(a);
    let mut basis = EBasis::new();
    let mut complex = BigradedComplex::new(1, -1, caps_for(a));
    for (at, multisets) in label_multisets(&slots.labels(), t.max_weight, t.max_degree) {
        let mut words = Vec::new();
        for labels in multisets {
            words.extend(basis.basis(&labels)?);
        }
        if !words.is_empty() {
            complex.insert_piece(at, BasedSpace::new(words)?);
        }
    }
    let mut vertical_basis = EBasis::new();
    fill_differentials(
        &mut complex,
        |w| {
            let g = graphify(&LinComb::single(w.clone(), one()));
            Ok(vertical_basis.coordinates(&slots.d_internal_element(&g))?)
        },
        |w| {
            let g = graphify(&LinComb::single(w.clone(), one()));
            Ok(basis.coordinates(&slots.d_mu_element(&g))?)
        },
    )?;
    Ok(DgComplexBundle { kind: FunctorKind::EOfA, complex, slot_names: slots.names(), truncation: t })
}
