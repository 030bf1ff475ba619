//! The configuration pairing between graphs and planar trees.
//!
//! Each edge of a graph is sent to the nadir of the path joining its two
//! endpoints in the tree. The pairing is zero unless this map hits every
//! internal vertex, in which case it is the product over edges of `+1` when
//! the source leaf lies left of the target leaf and `-1` otherwise.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use num_traits::Zero;

use crate::graphcoalg::{GraphElement, GraphTerm};
use crate::labels::{degrees, Label};
use crate::liealg::{TreeElement, TreeTerm};
use crate::linalg::{certified_rank, IntegerRows, RankCertificate, SparseMatrix};
use crate::lincomb::Tensor;
use crate::rational::{int, one, Rational};
use crate::shapes::perm::{koszul_parity, permutations};
use crate::shapes::{enumerate_graphs_with_cap, enumerate_trees_with_cap, PlanarTree, SGraph, ShapeError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("graph has weight {graph} but the tree has {tree} leaves")]
    WeightMismatch { graph: usize, tree: usize },
    #[error("generators {coalgebra:?} and {algebra:?} of different degree are paired")]
    MalformedDual { coalgebra: Label, algebra: Label },
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// The edge-to-nadir assignment of a graph into a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaMap {
    /// Internal vertex (gap index) hit by each edge.
    pub assignment: Vec<usize>,
    pub signs: Vec<i8>,
    pub surjective: bool,
}

impl BetaMap {
    pub fn value(&self) -> i64 {
        if !self.surjective {
            return 0;
        }
        self.signs.iter().map(|s| *s as i64).product()
    }
}

pub fn beta_map(g: &SGraph, t: &PlanarTree) -> Result<BetaMap, PairingError> {
    if g.weight() != t.weight() {
        return Err(PairingError::WeightMismatch { graph: g.weight(), tree: t.weight() });
    }
    let pos = t.positions();
    let mut hit = vec![false; t.weight().saturating_sub(1)];
    let mut assignment = Vec::with_capacity(g.edge_count());
    let mut signs = Vec::with_capacity(g.edge_count());
    for (a, b) in g.edges() {
        let nadir = t.nadir_of_positions(pos[a], pos[b]);
        hit[nadir] = true;
        assignment.push(nadir);
        signs.push(if pos[a] < pos[b] { 1 } else { -1 });
    }
    Ok(BetaMap { assignment, signs, surjective: hit.iter().all(|h| *h) })
}

/// `⟨G, T⟩ ∈ {−1, 0, 1}`.
pub fn shape_pair(g: &SGraph, t: &PlanarTree) -> Result<i64, PairingError> {
    Ok(beta_map(g, t)?.value())
}

/// Nadir and orientation of every ordered pair of leaf labels of one tree.
///
/// `code[a·n + b]` holds the nadir gap in its low bits and the sign in bit 7.
#[derive(Clone, Debug)]
pub struct TreeTable {
    n: usize,
    code: Vec<u8>,
}

impl TreeTable {
    pub fn new(t: &PlanarTree) -> Self {
        let n = t.weight();
        let pos = t.positions();
        let mut code = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let gap = t.nadir_of_positions(pos[a], pos[b]) as u8;
                    code[a * n + b] = gap | if pos[a] < pos[b] { 0 } else { 0x80 };
                }
            }
        }
        TreeTable { n, code }
    }

    /// Pairing with the graph whose edges are given.
    pub fn pair(&self, edges: impl Iterator<Item = (usize, usize)>) -> i64 {
        let mut mask = 0u32;
        let mut neg = 0u8;
        for (a, b) in edges {
            let c = self.code[a * self.n + b];
            mask |= 1 << (c & 0x7f);
            neg ^= c >> 7;
        }
        let full = (1u32 << (self.n - 1)) - 1;
        match (mask == full, neg) {
            (false, _) => 0,
            (true, 0) => 1,
            (true, _) => -1,
        }
    }
}

/// A bilinear pairing between coalgebra and algebra generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorPairing {
    /// Each label pairs to 1 with itself and to 0 with every other label.
    Kronecker,
    Table(BTreeMap<(Label, Label), Rational>),
}

impl GeneratorPairing {
    pub fn table(entries: impl IntoIterator<Item = ((Label, Label), Rational)>) -> Result<Self, PairingError> {
        let mut map = BTreeMap::new();
        for ((w, v), c) in entries {
            if c.is_zero() {
                continue;
            }
            if w.degree != v.degree {
                return Err(PairingError::MalformedDual { coalgebra: w, algebra: v });
            }
            map.insert((w, v), c);
        }
        Ok(GeneratorPairing::Table(map))
    }

    pub fn pair(&self, w: Label, v: Label) -> Rational {
        match self {
            GeneratorPairing::Kronecker => {
                if w == v {
                    one()
                } else {
                    Rational::zero()
                }
            }
            GeneratorPairing::Table(map) => map.get(&(w, v)).cloned().unwrap_or_else(Rational::zero),
        }
    }
}

/// `⟨(G, w), (T, v)⟩ = Σ_σ ⟨σG, T⟩ · ε(σ, w) · ∏ᵢ ⟨wᵢ, v_{σ(i)}⟩`.
pub fn term_pair(g: &GraphTerm, t: &TreeTerm, dual: &GeneratorPairing) -> Rational {
    let n = g.weight();
    if n != t.weight() {
        return Rational::zero();
    }
    let table = TreeTable::new(t.shape());
    let edges: Vec<(usize, usize)> = g.graph().edges().collect();
    let degs = degrees(g.labels());
    // candidate targets for each vertex, with their generator pairings
    let options: Vec<Vec<(usize, Rational)>> = g
        .labels()
        .iter()
        .map(|w| {
            t.labels()
                .iter()
                .enumerate()
                .map(|(j, v)| (j, dual.pair(*w, *v)))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
        .collect();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut total = Rational::zero();
    fn search(
        i: usize,
        coef: Rational,
        options: &[Vec<(usize, Rational)>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        finish: &mut dyn FnMut(&[usize], Rational),
    ) {
        if i == options.len() {
            finish(sigma, coef);
            return;
        }
        for (j, c) in &options[i] {
            if used[*j] {
                continue;
            }
            used[*j] = true;
            sigma[i] = *j;
            search(i + 1, &coef * c, options, sigma, used, finish);
            used[*j] = false;
        }
    }
    let mut finish = |sigma: &[usize], coef: Rational| {
        let value = table.pair(edges.iter().map(|(a, b)| (sigma[*a], sigma[*b])));
        if value != 0 {
            let odd = koszul_parity(sigma, &degs) ^ (value < 0);
            total += if odd { -coef } else { coef };
        }
    };
    search(0, one(), &options, &mut sigma, &mut used, &mut finish);
    total
}

/// Bilinear extension of [`term_pair`]; terms of different weight pair to 0.
pub fn element_pair(g: &GraphElement, t: &TreeElement, dual: &GeneratorPairing) -> Rational {
    let mut total = Rational::zero();
    for (x, a) in g.terms() {
        for (y, b) in t.terms() {
            if x.weight() == y.weight() {
                let p = term_pair(x, y, dual);
                if !p.is_zero() {
                    total += p * a * b;
                }
            }
        }
    }
    total
}

/// Factorwise pairing of tensors.
pub fn tensor_pair(x: &Tensor<GraphTerm>, y: &Tensor<TreeTerm>, dual: &GeneratorPairing) -> Rational {
    let mut total = Rational::zero();
    for (xs, a) in x.terms() {
        for (ys, b) in y.terms() {
            if xs.len() != ys.len() {
                continue;
            }
            let mut p = a * b;
            for (u, v) in xs.iter().zip(ys) {
                if p.is_zero() {
                    break;
                }
                p *= term_pair(u, v, dual);
            }
            total += p;
        }
    }
    total
}

/// The matrix of pairings between all graphs and all trees of one weight.
///
/// Entries are produced on demand from per-tree tables, so the largest
/// weights never need the whole matrix in memory.
pub struct PairingMatrix {
    weight: usize,
    rows: Vec<SGraph>,
    cols: Vec<PlanarTree>,
    codes: Vec<u8>,
    certificate: OnceCell<RankCertificate>,
}

impl PairingMatrix {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn row_basis(&self) -> &[SGraph] {
        &self.rows
    }

    pub fn col_basis(&self) -> &[PlanarTree] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        let mut out = [0i64; 1];
        self.fill_range(row, col..col + 1, &mut out);
        out[0]
    }

    fn fill_range(&self, row: usize, cols: core::ops::Range<usize>, out: &mut [i64]) {
        let n = self.weight;
        let nn = n * n;
        let idx: Vec<usize> = self.rows[row].edges().map(|(a, b)| a * n + b).collect();
        let full = (1u32 << (n - 1)) - 1;
        for (slot, t) in out.iter_mut().zip(cols) {
            let code = &self.codes[t * nn..(t + 1) * nn];
            let mut mask = 0u32;
            let mut neg = 0u8;
            for i in &idx {
                let c = code[*i];
                mask |= 1 << (c & 0x7f);
                neg ^= c >> 7;
            }
            *slot = if mask != full {
                0
            } else if neg == 0 {
                1
            } else {
                -1
            };
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut buf = vec![0i64; self.cols.len()];
        let mut m = SparseMatrix::zeros(self.rows.len(), self.cols.len());
        for r in 0..self.rows.len() {
            self.fill_row(r, &mut buf);
            for (c, x) in buf.iter().enumerate() {
                if *x != 0 {
                    m.set(r, c, int(*x)).expect("in bounds");
                }
            }
        }
        m
    }

    /// Exact rank, certified over ℚ and cached.
    pub fn rank(&self) -> usize {
        self.certificate().rank
    }

    pub fn certificate(&self) -> &RankCertificate {
        self.certificate.get_or_init(|| certified_rank(self))
    }
}

impl IntegerRows for PairingMatrix {
    fn row_count(&self) -> usize {
        self.rows.len()
    }

    fn col_count(&self) -> usize {
        self.cols.len()
    }

    fn fill_row(&self, r: usize, out: &mut [i64]) {
        if self.weight == 1 {
            out[0] = 1;
            return;
        }
        self.fill_range(r, 0..self.cols.len(), out);
    }
}

pub fn pairing_matrix(n: usize) -> Result<PairingMatrix, ShapeError> {
    pairing_matrix_with_cap(n, crate::shapes::DEFAULT_ENUMERATION_CAP)
}

pub fn pairing_matrix_with_cap(n: usize, cap: usize) -> Result<PairingMatrix, ShapeError> {
    let rows = enumerate_graphs_with_cap(n, cap)?;
    let cols = enumerate_trees_with_cap(n, cap)?;
    let mut codes = Vec::with_capacity(cols.len() * n * n);
    for t in &cols {
        codes.extend_from_slice(&TreeTable::new(t).code);
    }
    Ok(PairingMatrix { weight: n, rows, cols, codes, certificate: OnceCell::new() })
}

/// Pairings between long graphs `0 → j₂ → … → jₙ` and left combs
/// `[[…[0, i₂]…], iₙ]`, both indexed by the lexicographic order of the
/// tail permutations.
pub fn long_tall_submatrix(n: usize) -> Result<SparseMatrix, ShapeError> {
    let cap = crate::shapes::DEFAULT_ENUMERATION_CAP;
    if n > cap {
        return Err(ShapeError::CapExceeded { requested: n, cap });
    }
    let orders = long_tall_orders(n);
    let tables: Vec<TreeTable> = orders.iter().map(|o| TreeTable::new(&PlanarTree::left_comb(o))).collect();
    let mut m = SparseMatrix::zeros(orders.len(), orders.len());
    for (r, o) in orders.iter().enumerate() {
        let g = SGraph::path(o);
        for (c, t) in tables.iter().enumerate() {
            let v = t.pair(g.edges());
            if v != 0 {
                m.set(r, c, int(v)).expect("in bounds");
            }
        }
    }
    Ok(m)
}

/// Label orders starting at 0, in lexicographic order.
pub fn long_tall_orders(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    permutations(n - 1)
        .into_iter()
        .map(|p| core::iter::once(0).chain(p.into_iter().map(|x| x + 1)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{validate_graph, Nested};

    fn tree(n: &Nested) -> PlanarTree {
        PlanarTree::from_nested(n).unwrap()
    }

    fn leaf(x: usize) -> Nested {
        Nested::Leaf(x)
    }

    fn l(id: u32, degree: i32) -> Label {
        Label::new(id, degree)
    }

    #[test]
    fn shape_pairing_examples() {
        let long = SGraph::long(3);
        let t = tree(&Nested::node(Nested::node(leaf(1), leaf(0)), leaf(2)));
        assert_eq!(shape_pair(&long, &t), Ok(-1));
        let t = tree(&Nested::node(Nested::node(leaf(0), leaf(2)), leaf(1)));
        assert_eq!(shape_pair(&long, &t), Ok(0));
        for n in 1..=6 {
            let order: Vec<usize> = (0..n).collect();
            assert_eq!(shape_pair(&SGraph::long(n), &PlanarTree::left_comb(&order)), Ok(1));
        }
        assert!(matches!(shape_pair(&long, &PlanarTree::leaf()), Err(PairingError::WeightMismatch { .. })));
    }

    #[test]
    fn beta_map_records_nadirs() {
        let star = validate_graph(3, &[(0, 1), (2, 1)]).unwrap();
        let t = PlanarTree::left_comb(&[0, 1, 2]);
        let beta = beta_map(&star, &t).unwrap();
        assert!(beta.surjective);
        assert_eq!(beta.signs, vec![1, -1]);
        for (e, (a, b)) in star.edges().enumerate() {
            let pos = t.positions();
            assert_eq!(beta.assignment[e], t.nadir_of_positions(pos[a], pos[b]));
        }
    }

    #[test]
    fn table_agrees_with_beta_map() {
        for t in enumerate_trees_with_cap(4, 4).unwrap() {
            let table = TreeTable::new(&t);
            for g in enumerate_graphs_with_cap(4, 4).unwrap() {
                assert_eq!(table.pair(g.edges()), shape_pair(&g, &t).unwrap());
            }
        }
    }

    #[test]
    fn element_pairing_examples() {
        let (a, b) = (l(0, 2), l(1, 2));
        let g = GraphElement::from_graph(&SGraph::long(3), &[a, a, b], one()).unwrap();
        let t = TreeElement::leaf(a).product(&TreeElement::leaf(b)).product(&TreeElement::leaf(a));
        assert_eq!(element_pair(&g, &t, &GeneratorPairing::Kronecker), int(-1));

        let ab = GraphElement::from_graph(&SGraph::long(2), &[a, b], one()).unwrap();
        let bracket = TreeElement::leaf(a).product(&TreeElement::leaf(b));
        assert_eq!(element_pair(&ab, &bracket, &GeneratorPairing::Kronecker), int(1));
        assert_eq!(element_pair(&ab, &t, &GeneratorPairing::Kronecker), int(0));
    }

    #[test]
    fn malformed_dual_is_rejected() {
        let r = GeneratorPairing::table([((l(0, 2), l(0, 3)), int(1))]);
        assert!(matches!(r, Err(PairingError::MalformedDual { .. })));
    }

    #[test]
    fn small_pairing_ranks() {
        let m2 = pairing_matrix(2).unwrap();
        assert_eq!((m2.row_basis().len(), m2.col_basis().len()), (2, 2));
        assert_eq!(m2.rank(), 1);
        let m3 = pairing_matrix(3).unwrap();
        assert_eq!(m3.to_sparse().rank(), 2);
        assert_eq!(m3.rank(), 2);
        let m4 = pairing_matrix(4).unwrap();
        assert_eq!((m4.row_basis().len(), m4.col_basis().len()), (128, 120));
        assert_eq!(m4.to_sparse().rank(), 6);
        assert_eq!(m4.rank(), 6);
    }

    #[test]
    fn long_tall_examples() {
        assert_eq!(long_tall_submatrix(2).unwrap(), SparseMatrix::identity(1));
        let m3 = long_tall_submatrix(3).unwrap();
        assert_eq!((m3.get(0, 0), m3.get(1, 1)), (int(1), int(1)));
        assert_eq!(long_tall_submatrix(4).unwrap().rank(), 6);
    }
}
