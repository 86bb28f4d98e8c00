use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use super::{FieldCtx, FieldElem};

/// Square matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<FieldElem>,
}

impl Matrix {
    pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        let mut entries = vec![ctx.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = ctx.one();
        }
        Matrix { n, entries }
    }

    /// Panics unless `rows` is square and nonempty.
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        let n = rows.len();
        assert!(
            n > 0 && rows.iter().all(|r| r.len() == n),
            "matrix must be square"
        );
        Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(diag: Vec<FieldElem>) -> Self {
        let n = diag.len();
        let ctx = Arc::clone(diag[0].ctx());
        let mut m = Matrix::identity(&ctx, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// Ones on the anti-diagonal.
    pub fn anti_identity(ctx: &Arc<FieldCtx>, n: usize) -> Self {
        let mut entries = vec![ctx.zero(); n * n];
        for i in 0..n {
            entries[i * n + (n - 1 - i)] = ctx.one();
        }
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.entries[0].ctx()
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElem]> {
        self.entries.chunks(self.n)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.n);
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(self.ctx().zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Matrix { n, entries }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, e)| {
            if k / self.n == k % self.n {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.ctx(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Entries as integer encodings, row by row.
    pub fn to_int_rows(&self) -> Vec<Vec<u64>> {
        self.rows()
            .map(|r| r.iter().map(FieldElem::to_int).collect())
            .collect()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let ctx = Arc::clone(self.ctx());
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ctx.zero();
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                entries.push(acc);
            }
        }
        Matrix { n, entries }
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_int_rows()).finish()
    }
}
