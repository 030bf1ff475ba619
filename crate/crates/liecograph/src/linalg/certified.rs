//! Exact rank of large integer matrices.
//!
//! A candidate set of pivot rows and columns is found by elimination modulo a
//! prime. The rank is then certified over ℚ: the pivot block `B` is inverted
//! exactly and every row is checked to equal its projection
//! `M[i,C] · B⁻¹ · M[R,:]`, which forces the Schur complement to vanish.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::sparse::{Echelon, SparseVec};
use crate::rational::Rational;

/// Row access to an integer matrix too large to store densely.
pub trait IntegerRows {
    fn row_count(&self) -> usize;
    fn col_count(&self) -> usize;
    /// Writes row `r` into `out`, which has length `col_count()`.
    fn fill_row(&self, r: usize, out: &mut [i64]);
}

/// Result of [`certified_rank`]: the exact rank and an invertible pivot block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

const PRIME: u64 = (1 << 61) - 1;

fn mod_p(x: i64) -> u64 {
    x.rem_euclid(PRIME as i64) as u64
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

struct ModularBasis {
    cols: usize,
    probe: Vec<u64>,
    pivot_cols: Vec<usize>,
    rows: Vec<Vec<u64>>,
    probe_values: Vec<u64>,
}

impl ModularBasis {
    fn new(cols: usize) -> Self {
        // deterministic pseudo-random probe vector
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let probe = (0..cols)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state % PRIME
            })
            .collect();
        ModularBasis { cols, probe, pivot_cols: Vec::new(), rows: Vec::new(), probe_values: Vec::new() }
    }

    fn dot_probe(&self, row: &[u64]) -> u64 {
        row.iter()
            .zip(&self.probe)
            .fold(0u64, |acc, (a, b)| (acc + mul_mod(*a, *b)) % PRIME)
    }

    /// Tries to add `row`; returns true if it is independent modulo p.
    fn offer(&mut self, row: &[i64]) -> bool {
        let reduced_row: Vec<u64> = row.iter().map(|x| mod_p(*x)).collect();
        // with the basis in reduced form, the residual is row - Σ row[p]·P_p
        let mut probe = self.dot_probe(&reduced_row);
        for (k, p) in self.pivot_cols.iter().enumerate() {
            let c = reduced_row[*p];
            if c != 0 {
                probe = (probe + PRIME - mul_mod(c, self.probe_values[k])) % PRIME;
            }
        }
        if probe == 0 {
            return false;
        }
        let mut residual = reduced_row.clone();
        for (k, p) in self.pivot_cols.iter().enumerate() {
            let c = reduced_row[*p];
            if c != 0 {
                for (x, y) in residual.iter_mut().zip(&self.rows[k]) {
                    if *y != 0 {
                        *x = (*x + PRIME - mul_mod(c, *y)) % PRIME;
                    }
                }
            }
        }
        let Some(lead) = residual.iter().position(|x| *x != 0) else {
            return false;
        };
        let inv = inv_mod(residual[lead]);
        for x in residual.iter_mut() {
            *x = mul_mod(*x, inv);
        }
        for k in 0..self.rows.len() {
            let c = self.rows[k][lead];
            if c != 0 {
                let (head, tail) = (&mut self.rows[k], &residual);
                for (x, y) in head.iter_mut().zip(tail) {
                    if *y != 0 {
                        *x = (*x + PRIME - mul_mod(c, *y)) % PRIME;
                    }
                }
                self.probe_values[k] = self.dot_probe(&self.rows[k]);
            }
        }
        self.probe_values.push(self.dot_probe(&residual));
        self.rows.push(residual);
        self.pivot_cols.push(lead);
        debug_assert_eq!(self.rows[0].len(), self.cols);
        true
    }
}

/// Exact inverse of a square rational matrix, or `None` if singular.
pub fn invert(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &scale;
        }
        for x in inv[col].iter_mut() {
            *x *= &scale;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let a = &m[col][c] * &f;
                    m[r][c] -= a;
                    let b = &inv[col][c] * &f;
                    inv[r][c] -= b;
                }
            }
        }
    }
    Some(inv)
}

/// Integer matrix `scale · B⁻¹` with the least positive `scale`.
fn integral_inverse(inv: &[Vec<Rational>]) -> (BigInt, Vec<Vec<BigInt>>) {
    let mut scale = BigInt::one();
    for row in inv {
        for x in row {
            scale = scale.lcm(x.denom());
        }
    }
    let adj = inv
        .iter()
        .map(|row| row.iter().map(|x| (x * Rational::from_integer(scale.clone())).to_integer()).collect())
        .collect();
    (scale, adj)
}

fn check_row_small(
    row: &[i64],
    pivot_cols: &[usize],
    adj: &[Vec<i128>],
    scale: i128,
    pivot_rows: &[Vec<(usize, i64)>],
    acc: &mut [i128],
) -> Option<bool> {
    let r = pivot_cols.len();
    let mut y = vec![0i128; r];
    for (k, p) in pivot_cols.iter().enumerate() {
        let c = row[*p] as i128;
        if c != 0 {
            for j in 0..r {
                y[j] = y[j].checked_add(c.checked_mul(adj[k][j])?)?;
            }
        }
    }
    acc.iter_mut().for_each(|x| *x = 0);
    for (j, yj) in y.iter().enumerate() {
        if *yj != 0 {
            for (c, v) in &pivot_rows[j] {
                acc[*c] = acc[*c].checked_add(yj.checked_mul(*v as i128)?)?;
            }
        }
    }
    for (c, x) in row.iter().enumerate() {
        if (*x as i128).checked_mul(scale)? != acc[c] {
            return Some(false);
        }
    }
    Some(true)
}

fn check_row_big(
    row: &[i64],
    pivot_cols: &[usize],
    adj: &[Vec<BigInt>],
    scale: &BigInt,
    pivot_rows: &[Vec<(usize, i64)>],
) -> bool {
    let r = pivot_cols.len();
    let mut y = vec![BigInt::zero(); r];
    for (k, p) in pivot_cols.iter().enumerate() {
        let c = BigInt::from(row[*p]);
        if !c.is_zero() {
            for j in 0..r {
                y[j] += &c * &adj[k][j];
            }
        }
    }
    let mut acc = vec![BigInt::zero(); row.len()];
    for (j, yj) in y.iter().enumerate() {
        if !yj.is_zero() {
            for (c, v) in &pivot_rows[j] {
                acc[*c] += yj * BigInt::from(*v);
            }
        }
    }
    row.iter().zip(&acc).all(|(x, a)| BigInt::from(*x) * scale == *a)
}

fn exact_fallback(m: &impl IntegerRows) -> RankCertificate {
    let cols = m.col_count();
    let mut ech = Echelon::new(cols);
    let mut buf = vec![0i64; cols];
    let mut pivot_rows = Vec::new();
    for r in 0..m.row_count() {
        m.fill_row(r, &mut buf);
        let v: SparseVec = buf
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(c, x)| (c, Rational::from_integer(BigInt::from(*x))))
            .collect();
        if ech.insert(v) {
            pivot_rows.push(r);
        }
    }
    let pivot_cols = ech.pivot_columns().collect();
    RankCertificate { rank: pivot_rows.len(), pivot_rows, pivot_cols }
}

/// Exact ℚ-rank of an integer matrix given by rows.
pub fn certified_rank(m: &impl IntegerRows) -> RankCertificate {
    let (rows, cols) = (m.row_count(), m.col_count());
    let mut basis = ModularBasis::new(cols);
    let mut buf = vec![0i64; cols];
    let mut pivot_rows = Vec::new();
    for r in 0..rows {
        m.fill_row(r, &mut buf);
        if basis.offer(&buf) {
            pivot_rows.push(r);
        }
    }
    let pivot_cols = basis.pivot_cols.clone();
    let rank = pivot_rows.len();
    if rank == 0 {
        // the probe vector is nonzero modulo p on any nonzero row with high
        // probability; confirm directly
        for r in 0..rows {
            m.fill_row(r, &mut buf);
            if buf.iter().any(|x| *x != 0) {
                return exact_fallback(m);
            }
        }
        return RankCertificate { rank: 0, pivot_rows, pivot_cols };
    }

    let mut stored: Vec<Vec<(usize, i64)>> = Vec::with_capacity(rank);
    let mut block = Vec::with_capacity(rank);
    for r in &pivot_rows {
        m.fill_row(*r, &mut buf);
        stored.push(buf.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c, *x)).collect());
        block.push(pivot_cols.iter().map(|c| Rational::from_integer(BigInt::from(buf[*c]))).collect());
    }
    let Some(inv) = invert(block) else {
        return exact_fallback(m);
    };
    let (scale, adj) = integral_inverse(&inv);
    let small: Option<(i128, Vec<Vec<i128>>)> = scale.to_i128().and_then(|s| {
        let rows: Option<Vec<Vec<i128>>> = adj
            .iter()
            .map(|row| row.iter().map(|x| x.to_i128().filter(|v| v.abs() < (1i128 << 80))).collect())
            .collect();
        rows.map(|r| (s, r))
    });
    let mut acc = vec![0i128; cols];
    for r in 0..rows {
        m.fill_row(r, &mut buf);
        let ok = match &small {
            Some((s, a)) => match check_row_small(&buf, &pivot_cols, a, *s, &stored, &mut acc) {
                Some(ok) => ok,
                None => check_row_big(&buf, &pivot_cols, &adj, &scale, &stored),
            },
            None => check_row_big(&buf, &pivot_cols, &adj, &scale, &stored),
        };
        if !ok {
            return exact_fallback(m);
        }
    }
    debug_assert!(!scale.is_negative());
    RankCertificate { rank, pivot_rows, pivot_cols }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Dense(Vec<Vec<i64>>);

    impl IntegerRows for Dense {
        fn row_count(&self) -> usize {
            self.0.len()
        }
        fn col_count(&self) -> usize {
            self.0.first().map_or(0, |r| r.len())
        }
        fn fill_row(&self, r: usize, out: &mut [i64]) {
            out.copy_from_slice(&self.0[r]);
        }
    }

    #[test]
    fn small_ranks() {
        let m = Dense(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(certified_rank(&m).rank, 2);
        let z = Dense(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(certified_rank(&z).rank, 0);
        let id = Dense(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(certified_rank(&id).rank, 2);
    }

    #[test]
    fn inverse_round_trip() {
        let m: Vec<Vec<Rational>> = [[2, 1], [1, 1]]
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(BigInt::from(*x))).collect())
            .collect();
        let inv = invert(m).unwrap();
        assert_eq!(inv[0][0], Rational::from_integer(BigInt::from(1)));
        assert_eq!(inv[0][1], Rational::from_integer(BigInt::from(-1)));
    }
}
