//! Bigraded complexes with exact homology and spectral sequence pages.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::sparse::{Echelon, SparseMatrix, SparseVec};
use super::{ComplexError, LinalgError};

/// A (weight, degree) index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub weight: i32,
    pub degree: i32,
}

impl Bidegree {
    pub fn new(weight: i32, degree: i32) -> Self {
        Bidegree { weight, degree }
    }
}

/// A finite based vector space with a deterministic basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedSpace<K> {
    basis: Vec<K>,
}

impl<K: Ord + Clone> BasedSpace<K> {
    /// Sorts the keys; rejects duplicates.
    pub fn new(mut basis: Vec<K>) -> Result<Self, LinalgError> {
        basis.sort();
        if basis.windows(2).any(|w| w[0] == w[1]) {
            return Err(LinalgError::DuplicateBasisKey);
        }
        Ok(BasedSpace { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn keys(&self) -> &[K] {
        &self.basis
    }

    pub fn index_of(&self, key: &K) -> Option<usize> {
        self.basis.binary_search(key).ok()
    }
}

/// Truncation metadata carried by every complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_weight: u32,
    pub max_degree: i32,
    /// Every degree `d <= complete_through` has all of its pieces present.
    pub complete_through: i32,
}

/// A bigraded complex `C(w, d)` with two anticommuting differentials.
///
/// The vertical differential maps `(w, d)` to `(w, d + step)` and the
/// horizontal one maps `(w, d)` to `(w + weight_step, d + step)`, where
/// `step` is `+1` for cochain complexes and `-1` for chain complexes.
#[derive(Clone, Debug)]
pub struct BigradedComplex<K> {
    pieces: BTreeMap<Bidegree, BasedSpace<K>>,
    vertical: BTreeMap<Bidegree, SparseMatrix>,
    horizontal: BTreeMap<Bidegree, SparseMatrix>,
    step: i32,
    weight_step: i32,
    caps: Caps,
}

/// The first failing entry of a bicomplex identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub source: Bidegree,
    pub row: usize,
    pub col: usize,
}

/// Dimensions of `E_0, E_1, …` at each bidegree of a guaranteed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPages {
    pub pages: Vec<BTreeMap<Bidegree, usize>>,
    pub complete_through: i32,
}

impl SpectralPages {
    /// Total dimension of the last computed page in degree `d`.
    pub fn last_page_total(&self, d: i32) -> usize {
        self.pages
            .last()
            .map(|p| p.iter().filter(|(b, _)| b.degree == d).map(|(_, n)| *n).sum())
            .unwrap_or(0)
    }
}

impl<K: Ord + Clone> BigradedComplex<K> {
    pub fn new(step: i32, weight_step: i32, caps: Caps) -> Self {
        assert!(step == 1 || step == -1, "degree step must be ±1");
        assert!(weight_step == 1 || weight_step == -1, "weight step must be ±1");
        BigradedComplex {
            pieces: BTreeMap::new(),
            vertical: BTreeMap::new(),
            horizontal: BTreeMap::new(),
            step,
            weight_step,
            caps,
        }
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn step(&self) -> i32 {
        self.step
    }

    pub fn weight_step(&self) -> i32 {
        self.weight_step
    }

    pub fn insert_piece(&mut self, at: Bidegree, space: BasedSpace<K>) {
        self.pieces.insert(at, space);
    }

    pub fn piece(&self, at: Bidegree) -> Option<&BasedSpace<K>> {
        self.pieces.get(&at)
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Bidegree, &BasedSpace<K>)> {
        self.pieces.iter()
    }

    pub fn dim(&self, at: Bidegree) -> usize {
        self.pieces.get(&at).map_or(0, |p| p.dim())
    }

    pub fn vertical_target(&self, at: Bidegree) -> Bidegree {
        Bidegree::new(at.weight, at.degree + self.step)
    }

    pub fn horizontal_target(&self, at: Bidegree) -> Bidegree {
        Bidegree::new(at.weight + self.weight_step, at.degree + self.step)
    }

    fn check_shape(&self, src: Bidegree, dst: Bidegree, m: &SparseMatrix) -> Result<(), LinalgError> {
        let (rows, cols) = (self.dim(dst), self.dim(src));
        if m.rows() != rows || m.cols() != cols {
            return Err(LinalgError::DimensionMismatch { left: (rows, cols), right: (m.rows(), m.cols()) });
        }
        Ok(())
    }

    /// Sets the vertical map out of `src`, as a (target dim × source dim) matrix.
    pub fn set_vertical(&mut self, src: Bidegree, m: SparseMatrix) -> Result<(), LinalgError> {
        self.check_shape(src, self.vertical_target(src), &m)?;
        if !m.is_zero() {
            self.vertical.insert(src, m);
        }
        Ok(())
    }

    pub fn set_horizontal(&mut self, src: Bidegree, m: SparseMatrix) -> Result<(), LinalgError> {
        self.check_shape(src, self.horizontal_target(src), &m)?;
        if !m.is_zero() {
            self.horizontal.insert(src, m);
        }
        Ok(())
    }

    pub fn vertical(&self, src: Bidegree) -> SparseMatrix {
        self.vertical
            .get(&src)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(self.vertical_target(src)), self.dim(src)))
    }

    pub fn horizontal(&self, src: Bidegree) -> SparseMatrix {
        self.horizontal
            .get(&src)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(self.horizontal_target(src)), self.dim(src)))
    }

    /// Checks `d_v² = 0`, `d_h² = 0` and `d_v d_h + d_h d_v = 0` on every piece.
    pub fn check_identities(&self) -> Result<(), IdentityViolation> {
        let first_nonzero = |m: &SparseMatrix| m.entries().next().map(|(r, c, _)| (r, c));
        for src in self.pieces.keys() {
            let v = self.vertical(*src);
            let h = self.horizontal(*src);
            let vt = self.vertical_target(*src);
            let ht = self.horizontal_target(*src);
            let checks = [
                ("d_vertical^2", self.vertical(vt).mul(&v)),
                ("d_horizontal^2", self.horizontal(ht).mul(&h)),
                (
                    "d_vertical d_horizontal + d_horizontal d_vertical",
                    self.vertical(ht)
                        .mul(&h)
                        .and_then(|a| self.horizontal(vt).mul(&v).and_then(|b| a.add(&b))),
                ),
            ];
            for (identity, product) in checks {
                let product = product.expect("piece dimensions are consistent");
                if let Some((row, col)) = first_nonzero(&product) {
                    return Err(IdentityViolation { identity, source: *src, row, col });
                }
            }
        }
        Ok(())
    }

    fn weights_in_degree(&self, d: i32) -> Vec<(i32, usize)> {
        self.pieces
            .iter()
            .filter(|(b, _)| b.degree == d)
            .map(|(b, p)| (b.weight, p.dim()))
            .collect()
    }

    /// Block layout of the total space in degree `d`: (weight, offset, dim).
    fn layout(&self, d: i32) -> Vec<(i32, usize, usize)> {
        let mut offset = 0;
        self.weights_in_degree(d)
            .into_iter()
            .map(|(w, n)| {
                let out = (w, offset, n);
                offset += n;
                out
            })
            .collect()
    }

    /// The total differential out of degree `d`.
    pub fn total_differential(&self, d: i32) -> SparseMatrix {
        let src = self.layout(d);
        let dst = self.layout(d + self.step);
        let rows = dst.iter().map(|b| b.2).sum();
        let cols = src.iter().map(|b| b.2).sum();
        let offset_of = |w: i32| dst.iter().find(|b| b.0 == w).map(|b| b.1);
        let mut entries = Vec::new();
        for (w, off, _) in &src {
            let at = Bidegree::new(*w, d);
            for (m, tw) in [(self.vertical.get(&at), *w), (self.horizontal.get(&at), w + self.weight_step)] {
                if let (Some(m), Some(toff)) = (m, offset_of(tw)) {
                    entries.extend(m.entries().map(|(r, c, v)| (r + toff, c + off, v.clone())));
                }
            }
        }
        SparseMatrix::from_entries(rows, cols, entries).expect("blocks fit the layout")
    }

    fn require_complete(&self, lo: i32, hi: i32) -> Result<(), ComplexError> {
        let top = if self.step > 0 { hi + 1 } else { hi + 1 };
        if top > self.caps.complete_through || lo > hi {
            return Err(ComplexError::CapTooSmall {
                requested: top,
                complete_through: self.caps.complete_through,
            });
        }
        Ok(())
    }

    /// Dimension of the total homology in each degree of `[lo, hi]`.
    pub fn total_homology(&self, lo: i32, hi: i32) -> Result<BTreeMap<i32, usize>, ComplexError> {
        self.require_complete(lo, hi)?;
        Ok((lo..=hi)
            .map(|d| {
                let n: usize = self.weights_in_degree(d).iter().map(|x| x.1).sum();
                let out = self.total_differential(d).rank();
                let inc = self.total_differential(d - self.step).rank();
                (d, n - out - inc)
            })
            .collect())
    }

    fn filtration(&self, weight: i32) -> i32 {
        self.weight_step * weight
    }

    /// `{x ∈ F^p C^d : dx ∈ F^{p+r}}`, as vectors in the total space of degree `d`.
    fn z_space(&self, d: i32, p: i32, r: i32) -> Vec<SparseVec> {
        let src = self.layout(d);
        let dst = self.layout(d + self.step);
        let cols: Vec<usize> = src
            .iter()
            .filter(|b| self.filtration(b.0) >= p)
            .flat_map(|b| b.1..b.1 + b.2)
            .collect();
        if cols.is_empty() {
            return Vec::new();
        }
        let rows: Vec<usize> = dst
            .iter()
            .filter(|b| self.filtration(b.0) < p + r)
            .flat_map(|b| b.1..b.1 + b.2)
            .collect();
        let dm = self.total_differential(d);
        let sub = dm.submatrix(&rows, &cols);
        sub.kernel()
            .into_iter()
            .map(|v| v.into_iter().map(|(i, x)| (cols[i], x)).collect())
            .collect()
    }

    fn page_dim(&self, d: i32, p: i32, r: i32) -> usize {
        let z = self.z_space(d, p, r);
        if z.is_empty() {
            return 0;
        }
        let n: usize = self.layout(d).iter().map(|b| b.2).sum();
        let mut span = Echelon::new(n);
        for v in self.z_space(d, p + 1, r - 1) {
            span.insert(v);
        }
        let prev = d - self.step;
        let dm = self.total_differential(prev);
        for v in self.z_space(prev, p - r + 1, r - 1) {
            span.insert(dm.apply(&v));
        }
        let mut full = span.clone();
        let before = full.rank();
        let mut added = 0;
        for v in z {
            if full.insert(v) {
                added += 1;
            }
        }
        debug_assert!(full.rank() == before + added);
        added
    }

    /// Pages `E_0 … E_max_page` of the spectral sequence of the weight filtration,
    /// reported at every bidegree whose degree is guaranteed complete.
    pub fn spectral_pages(&self, max_page: usize) -> Result<SpectralPages, ComplexError> {
        let top = self.caps.complete_through - 1;
        let degrees: Vec<i32> = {
            let mut ds: Vec<i32> = self.pieces.keys().map(|b| b.degree).filter(|d| *d <= top).collect();
            ds.dedup();
            ds.sort();
            ds.dedup();
            ds
        };
        if degrees.is_empty() && self.pieces.keys().any(|b| b.degree > top) {
            return Err(ComplexError::CapTooSmall { requested: top + 1, complete_through: self.caps.complete_through });
        }
        let mut pages = Vec::with_capacity(max_page + 1);
        for r in 0..=max_page {
            let mut page = BTreeMap::new();
            for (at, space) in self.pieces.iter().filter(|(b, _)| b.degree <= top) {
                let dim = if r == 0 {
                    space.dim()
                } else {
                    self.page_dim(at.degree, self.filtration(at.weight), r as i32)
                };
                page.insert(*at, dim);
            }
            pages.push(page);
        }
        Ok(SpectralPages { pages, complete_through: top })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    fn caps(through: i32) -> Caps {
        Caps { max_weight: 4, max_degree: through, complete_through: through }
    }

    #[test]
    fn zero_differentials() {
        let mut c: BigradedComplex<u32> = BigradedComplex::new(1, -1, caps(5));
        c.insert_piece(Bidegree::new(1, 2), BasedSpace::new(vec![0]).unwrap());
        c.insert_piece(Bidegree::new(1, 3), BasedSpace::new(vec![0]).unwrap());
        let h = c.total_homology(2, 3).unwrap();
        assert_eq!(h[&2], 1);
        assert_eq!(h[&3], 1);
        let pages = c.spectral_pages(3).unwrap();
        for page in &pages.pages {
            assert_eq!(page, &pages.pages[0]);
        }
    }

    #[test]
    fn isomorphism_kills_homology() {
        let mut c: BigradedComplex<u32> = BigradedComplex::new(1, -1, caps(5));
        c.insert_piece(Bidegree::new(1, 2), BasedSpace::new(vec![0]).unwrap());
        c.insert_piece(Bidegree::new(1, 3), BasedSpace::new(vec![0]).unwrap());
        c.set_vertical(Bidegree::new(1, 2), SparseMatrix::from_entries(1, 1, [(0, 0, int(1))]).unwrap())
            .unwrap();
        let h = c.total_homology(2, 3).unwrap();
        assert_eq!(h[&2], 0);
        assert_eq!(h[&3], 0);
        assert!(c.check_identities().is_ok());
    }

    #[test]
    fn cap_too_small_is_refused() {
        let c: BigradedComplex<u32> = BigradedComplex::new(1, -1, caps(3));
        assert!(matches!(c.total_homology(2, 3), Err(ComplexError::CapTooSmall { .. })));
    }

    #[test]
    fn horizontal_differential_is_seen_on_page_one() {
        // ℚ in (2,1) maps isomorphically to ℚ in (1,2) by d_h
        let mut c: BigradedComplex<u32> = BigradedComplex::new(1, -1, caps(6));
        c.insert_piece(Bidegree::new(2, 1), BasedSpace::new(vec![0]).unwrap());
        c.insert_piece(Bidegree::new(1, 2), BasedSpace::new(vec![0]).unwrap());
        c.set_horizontal(Bidegree::new(2, 1), SparseMatrix::from_entries(1, 1, [(0, 0, int(1))]).unwrap())
            .unwrap();
        let pages = c.spectral_pages(2).unwrap();
        assert_eq!(pages.pages[1][&Bidegree::new(2, 1)], 1);
        assert_eq!(pages.pages[2][&Bidegree::new(2, 1)], 0);
        assert_eq!(pages.pages[2][&Bidegree::new(1, 2)], 0);
        assert_eq!(c.total_homology(1, 2).unwrap().values().sum::<usize>(), 0);
    }

    #[test]
    fn broken_square_is_reported() {
        let mut c: BigradedComplex<u32> = BigradedComplex::new(1, -1, caps(6));
        for d in 1..=3 {
            c.insert_piece(Bidegree::new(1, d), BasedSpace::new(vec![0]).unwrap());
        }
        let one = SparseMatrix::from_entries(1, 1, [(0, 0, int(1))]).unwrap();
        c.set_vertical(Bidegree::new(1, 1), one.clone()).unwrap();
        c.set_vertical(Bidegree::new(1, 2), one).unwrap();
        let err = c.check_identities().unwrap_err();
        assert_eq!(err.identity, "d_vertical^2");
    }
}
