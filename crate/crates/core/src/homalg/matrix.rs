use alloc::vec::Vec;
use core::fmt;

use crate::laurent::{LaurentPoly, Rational, TorusPoint};
use crate::qmat::QMatrix;

/// Matrix with Laurent-polynomial entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    num_vars: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(num_vars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            num_vars,
            entries: (0..rows * cols).map(|_| LaurentPoly::zero(num_vars)).collect(),
        }
    }

    pub fn identity(num_vars: usize, n: usize) -> Self {
        Self::scalar(n, &LaurentPoly::one(num_vars))
    }

    /// `f` times the identity of size `n`.
    pub fn scalar(n: usize, f: &LaurentPoly) -> Self {
        let mut m = Self::zeros(f.num_vars(), n, n);
        for i in 0..n {
            m.set(i, i, f.clone());
        }
        m
    }

    pub fn from_fn(num_vars: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.num_vars(), num_vars, "entry variable count mismatch");
                entries.push(e);
            }
        }
        PolyMatrix {
            rows,
            cols,
            num_vars,
            entries,
        }
    }

    /// Build from row vectors; all entries must share `num_vars`.
    pub fn from_rows(num_vars: usize, rows: Vec<Vec<LaurentPoly>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        let entries: Vec<LaurentPoly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.num_vars() != num_vars) {
            return None;
        }
        Some(PolyMatrix {
            rows: r,
            cols: c,
            num_vars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        assert_eq!(v.num_vars(), self.num_vars);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[LaurentPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        PolyMatrix::from_fn(self.num_vars, self.rows, other.cols, |r, c| {
            let mut acc = LaurentPoly::zero(self.num_vars);
            for k in 0..self.cols {
                let a = self.get(r, k);
                let b = other.get(k, c);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        PolyMatrix::from_fn(self.num_vars, self.rows, self.cols, |r, c| {
            self.get(r, c) + other.get(r, c)
        })
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        PolyMatrix::from_fn(self.num_vars, self.rows, self.cols, |r, c| {
            self.get(r, c) - other.get(r, c)
        })
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.num_vars, self.rows, self.cols, |r, c| -self.get(r, c))
    }

    pub fn scale(&self, f: &LaurentPoly) -> PolyMatrix {
        PolyMatrix::from_fn(self.num_vars, self.rows, self.cols, |r, c| self.get(r, c) * f)
    }

    pub fn scale_rational(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix::from_fn(self.num_vars, self.rows, self.cols, |r, k| self.get(r, k).scale(c))
    }

    /// 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        assert_eq!(a.rows, b.rows, "block row mismatch");
        assert_eq!(c.rows, d.rows, "block row mismatch");
        assert_eq!(a.cols, c.cols, "block column mismatch");
        assert_eq!(b.cols, d.cols, "block column mismatch");
        let nv = a.num_vars;
        PolyMatrix::from_fn(nv, a.rows + c.rows, a.cols + b.cols, |r, k| {
            let (top, left) = (r < a.rows, k < a.cols);
            match (top, left) {
                (true, true) => a.get(r, k).clone(),
                (true, false) => b.get(r, k - a.cols).clone(),
                (false, true) => c.get(r - a.rows, k).clone(),
                (false, false) => d.get(r - a.rows, k - a.cols).clone(),
            }
        })
    }

    /// `[a; b]`, stacking rows.
    pub fn vstack(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let nv = a.num_vars;
        PolyMatrix::block(
            a,
            &PolyMatrix::zeros(nv, a.rows, 0),
            b,
            &PolyMatrix::zeros(nv, b.rows, 0),
        )
    }

    /// `[a, b]`, joining columns.
    pub fn hstack(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let nv = a.num_vars;
        PolyMatrix::block(
            a,
            b,
            &PolyMatrix::zeros(nv, 0, a.cols),
            &PolyMatrix::zeros(nv, 0, b.cols),
        )
    }

    /// Block-diagonal `[[a, 0], [0, b]]`.
    pub fn diag(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let nv = a.num_vars;
        PolyMatrix::block(
            a,
            &PolyMatrix::zeros(nv, a.rows, b.cols),
            &PolyMatrix::zeros(nv, b.rows, a.cols),
            b,
        )
    }

    /// Assemble from a grid of blocks; `f(r, c)` returns the block at block-row
    /// `r` and block-column `c`, or `None` for zero.
    pub fn from_blocks(
        num_vars: usize,
        row_sizes: &[usize],
        col_sizes: &[usize],
        mut f: impl FnMut(usize, usize) -> Option<PolyMatrix>,
    ) -> PolyMatrix {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut m = PolyMatrix::zeros(num_vars, rows, cols);
        let mut r0 = 0;
        for (br, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bc, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = f(br, bc) {
                    assert_eq!(b.shape(), (rs, cs), "block ({}, {}) has wrong shape", br, bc);
                    for r in 0..rs {
                        for c in 0..cs {
                            m.set(r0 + r, c0 + c, b.get(r, c).clone());
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        m
    }

    /// Sub-matrix of rows `r0..r1` and columns `c0..c1`.
    pub fn slice(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> PolyMatrix {
        PolyMatrix::from_fn(self.num_vars, r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn evaluate(&self, p: &TorusPoint) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).evaluate(p))
    }

    /// The common diagonal entry if this is `f` times an identity matrix.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(LaurentPoly::zero(self.num_vars));
        }
        let f = self.get(0, 0).clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                let ok = if r == c { *e == f } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(f)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_and_slice() {
        let nv = 1;
        let y = LaurentPoly::var(nv, 0);
        let a = PolyMatrix::scalar(1, &y);
        let z = PolyMatrix::zeros(nv, 1, 2);
        let zt = PolyMatrix::zeros(nv, 2, 1);
        let i2 = PolyMatrix::identity(nv, 2);
        let b = PolyMatrix::block(&a, &z, &zt, &i2);
        assert_eq!(b.shape(), (3, 3));
        assert_eq!(b.slice(1, 3, 1, 3), i2);
        assert_eq!(b.slice(0, 1, 0, 1).as_scalar(), Some(y));
        assert_eq!(b.as_scalar(), None);
    }

    #[test]
    fn product_of_scalars() {
        let nv = 2;
        let s = LaurentPoly::pants_section(nv);
        let u = LaurentPoly::var(nv, 1).unit_inverse().unwrap();
        let m = PolyMatrix::scalar(2, &s).mul(&PolyMatrix::scalar(2, &u));
        assert_eq!(m.as_scalar(), Some(&s * &u));
    }
}
