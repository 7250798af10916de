//! Dense matrices over the rationals with Gaussian elimination.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::laurent::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        QMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if !a.is_zero() {
                    acc += a * other.get(k, c);
                }
            }
            acc
        })
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(r, k) * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of the right kernel, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                        .collect()
                })
                .collect();
        }
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space (a subset of the columns).
    pub fn column_basis(&self) -> Vec<Vec<Rational>> {
        if self.rows == 0 {
            return Vec::new();
        }
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }
}

/// Whether every vector of `vs` lies in the span of `basis` (vectors of length `dim`).
pub fn in_span(dim: usize, basis: &[Vec<Rational>], vs: &[Vec<Rational>]) -> bool {
    if vs.is_empty() {
        return true;
    }
    let b = QMatrix::from_columns(dim, basis);
    let mut all = basis.to_vec();
    all.extend_from_slice(vs);
    QMatrix::from_columns(dim, &all).rank() == b.rank()
}

/// Solve for `c` with `v = c * w + (span of basis)`, assuming `w` is outside
/// the span. Returns `None` when no such scalar exists.
pub fn scalar_modulo(
    dim: usize,
    basis: &[Vec<Rational>],
    w: &[Vec<Rational>],
    v: &[Vec<Rational>],
) -> Option<Rational> {
    // Unknowns: c, then coefficients on each basis vector, for each stacked block.
    debug_assert_eq!(w.len(), v.len());
    let blocks = w.len();
    let unknowns = 1 + basis.len() * blocks;
    let rows = dim * blocks;
    let mut a = QMatrix::zeros(rows, unknowns + 1);
    for blk in 0..blocks {
        for r in 0..dim {
            let row = blk * dim + r;
            a.set(row, 0, w[blk][r].clone());
            for (j, b) in basis.iter().enumerate() {
                a.set(row, 1 + blk * basis.len() + j, b[r].clone());
            }
            a.set(row, unknowns, v[blk][r].clone());
        }
    }
    let (red, pivots) = a.rref();
    if pivots.contains(&unknowns) {
        return None;
    }
    // c is the first unknown; it must be a pivot (w outside the span).
    if pivots.first() != Some(&0) {
        return None;
    }
    // Free variables set to zero: c is read from the first row.
    Some(red.get(0, unknowns).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;

    fn m(rows: usize, cols: usize, v: &[i64]) -> QMatrix {
        QMatrix::from_fn(rows, cols, |r, c| int(v[r * cols + c]))
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(QMatrix::zeros(0, 3).rank(), 0);
        assert_eq!(QMatrix::zeros(0, 3).kernel().len(), 3);
        assert_eq!(QMatrix::zeros(2, 0).kernel().len(), 0);
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![int(1), int(0)]];
        assert!(in_span(2, &basis, &[vec![int(5), int(0)]]));
        assert!(!in_span(2, &basis, &[vec![int(0), int(1)]]));
    }

    #[test]
    fn scalar_solve() {
        let basis = vec![vec![int(1), int(0)]];
        let w = vec![vec![int(0), int(1)]];
        let v = vec![vec![int(7), int(3)]];
        assert_eq!(scalar_modulo(2, &basis, &w, &v), Some(int(3)));
    }
}
