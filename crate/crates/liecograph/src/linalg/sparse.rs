//! Sparse matrices over ℚ with exact elimination.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::LinalgError;
use crate::rational::Rational;

/// A sparse vector: column index to nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Adds `scale * src` into `dst`, dropping entries that cancel.
pub fn axpy(dst: &mut SparseVec, scale: &Rational, src: &SparseVec) {
    if scale.is_zero() {
        return;
    }
    for (col, value) in src {
        let delta = scale * value;
        let remove = match dst.get_mut(col) {
            Some(entry) => {
                *entry += delta;
                entry.is_zero()
            }
            None => {
                if !delta.is_zero() {
                    dst.insert(*col, delta);
                }
                false
            }
        };
        if remove {
            dst.remove(col);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: (0..rows).map(|_| SparseVec::new()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rational::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples. Repeated positions are summed.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_to(r, c, v)?;
        }
        Ok(m)
    }

    /// Builds a matrix whose rows are the given sparse vectors.
    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for row in &rows {
            if let Some((&c, _)) = row.iter().next_back() {
                if c >= cols {
                    return Err(LinalgError::IndexOutOfBounds { row: 0, col: c });
                }
            }
        }
        let data: Vec<SparseVec> = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows: data.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data
            .get(r)
            .and_then(|row| row.get(&c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Rational) -> Result<(), LinalgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinalgError::IndexOutOfBounds { row: r, col: c });
        }
        let mut single = SparseVec::new();
        single.insert(c, v);
        axpy(&mut self.data[r], &Rational::one(), &single);
        Ok(())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) -> Result<(), LinalgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinalgError::IndexOutOfBounds { row: r, col: c });
        }
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
        Ok(())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (dst, src) in out.data.iter_mut().zip(&other.data) {
            axpy(dst, &Rational::one(), src);
        }
        Ok(out)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, v) in row {
                    axpy(&mut acc, v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// `self * x` for a column vector `x`.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            for (c, v) in x {
                if let Some(m) = row.get(c) {
                    acc += m * v;
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    /// Restriction to the given rows and columns, reindexed in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_index: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let data = rows
            .iter()
            .map(|r| {
                self.data[*r]
                    .iter()
                    .filter_map(|(c, v)| col_index.get(c).map(|i| (*i, v.clone())))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for row in &self.data {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    /// Rank computed after permuting columns by `order`, so pivots are chosen
    /// in a different sequence. Agrees with [`SparseMatrix::rank`].
    pub fn rank_with_column_order(&self, order: &[usize]) -> usize {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), order).rank()
    }

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new(self.cols);
        for row in &self.data {
            ech.insert(row.clone());
        }
        let rref = ech.reduced();
        let free = (0..self.cols).filter(|c| !rref.contains_key(c));
        free.map(|f| {
            let mut v = SparseVec::new();
            v.insert(f, Rational::one());
            for (p, row) in &rref {
                if let Some(x) = row.get(&f) {
                    v.insert(*p, -x.clone());
                }
            }
            v
        })
        .collect()
    }

    /// Basis of the column space, as vectors indexed by row.
    pub fn image(&self) -> Vec<SparseVec> {
        let t = self.transpose();
        let mut ech = Echelon::new(self.rows);
        for row in &t.data {
            ech.insert(row.clone());
        }
        ech.into_basis()
    }
}

/// An incrementally built row echelon basis of a subspace of ℚ^dim.
///
/// Every stored row has leading entry 1 in its pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, pivots: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `v` modulo the current span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let next = v
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let coef = -v[&c].clone();
            axpy(&mut v, &coef, &self.pivots[&c]);
            cursor = c + 1;
        }
        v
    }

    /// Inserts `v`; returns true if it was independent of the current span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&lead, lead_val)) = r.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        let row = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Fully reduced rows keyed by pivot column.
    pub fn reduced(&self) -> BTreeMap<usize, SparseVec> {
        let mut out: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let later: Vec<usize> = r
                .keys()
                .copied()
                .filter(|c| *c != *p && out.contains_key(c))
                .collect();
            for c in later {
                let coef = -r.get(&c).cloned().unwrap_or_else(Rational::zero);
                axpy(&mut r, &coef, &out[&c]);
            }
            out.insert(*p, r);
        }
        out
    }

    pub fn into_basis(self) -> Vec<SparseVec> {
        self.pivots.into_values().collect()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }

    /// Expresses `v` in terms of the fully reduced basis, keyed by pivot
    /// column. Returns `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<BTreeMap<usize, Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.pivots
                .keys()
                .filter_map(|p| v.get(p).map(|x| (*p, x.clone())))
                .collect(),
        )
    }
}

/// Solves `v = Σ cₖ bₖ` against a growing list of independent vectors `bₖ`.
///
/// Each stored row is `bₖ` augmented by a tag column, so reducing `v`
/// against the echelon form leaves `-c` in the tag columns.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    dim: usize,
    capacity: usize,
    len: usize,
    echelon: Echelon,
}

impl LinearSolver {
    /// `capacity` bounds the number of vectors that will be pushed.
    pub fn new(dim: usize, capacity: usize) -> Self {
        LinearSolver { dim, capacity, len: 0, echelon: Echelon::new(dim + capacity) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Adds `v` if it is independent of the vectors already held; returns
    /// its index, or `None` if it was dependent.
    pub fn push(&mut self, v: &SparseVec) -> Option<usize> {
        assert!(self.len < self.capacity, "solver capacity exceeded");
        if self.echelon.reduce(v.clone()).range(..self.dim).next().is_none() {
            return None;
        }
        let mut tagged = v.clone();
        tagged.insert(self.dim + self.len, Rational::one());
        self.echelon.insert(tagged);
        self.len += 1;
        Some(self.len - 1)
    }

    /// Coefficients `c` with `v = Σ cₖ bₖ`, or `None` outside the span.
    pub fn solve(&self, v: &SparseVec) -> Option<BTreeMap<usize, Rational>> {
        let r = self.echelon.reduce(v.clone());
        if r.range(..self.dim).next().is_some() {
            return None;
        }
        Some(r.into_iter().map(|(c, x)| (c - self.dim, -x)).collect())
    }
}

#[cfg(test)]
mod tests {

    #[test]
    fn solver_recovers_coefficients() {
        let b0: SparseVec = [(0, int(1)), (1, int(1))].into_iter().collect();
        let b1: SparseVec = [(1, int(1)), (2, int(2))].into_iter().collect();
        let mut s = LinearSolver::new(3, 3);
        assert_eq!(s.push(&b0), Some(0));
        assert_eq!(s.push(&b1), Some(1));
        let sum: SparseVec = [(0, int(1)), (1, int(2)), (2, int(2))].into_iter().collect();
        assert_eq!(s.push(&sum), None);
        let v: SparseVec = [(0, int(3)), (1, int(1)), (2, int(-4))].into_iter().collect();
        let c = s.solve(&v).unwrap();
        assert_eq!(c.get(&0), Some(&int(3)));
        assert_eq!(c.get(&1), Some(&int(-2)));
        assert!(s.solve(&[(2, int(1))].into_iter().collect()).is_none());
    }
    use super::*;
    use crate::rational::int;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, v)| (r, c, int(*v)))
        });
        SparseMatrix::from_entries(rows.len(), cols, entries).unwrap()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(SparseMatrix::identity(2).rank(), 2);
    }

    #[test]
    fn zero_rank() {
        let z = SparseMatrix::zeros(3, 5);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 5);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = dense(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).is_empty());
        }
        assert_eq!(m.image().len(), 2);
    }

    #[test]
    fn pivot_order_does_not_change_rank() {
        let m = dense(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 2]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_with_column_order(&[2, 1, 0]), 2);
    }

    #[test]
    fn coordinates_in_reduced_basis() {
        let mut e = Echelon::new(3);
        e.insert([(0, int(1)), (1, int(1))].into_iter().collect());
        e.insert([(1, int(1)), (2, int(1))].into_iter().collect());
        let v: SparseVec = [(0, int(2)), (1, int(5)), (2, int(3))].into_iter().collect();
        let coords = e.coordinates(&v).unwrap();
        assert_eq!(coords, [(0, int(2)), (1, int(5))].into_iter().collect());
        let outside: SparseVec = [(0, int(1))].into_iter().collect();
        assert!(e.coordinates(&outside).is_none());
    }
}
