use std::sync::Arc;

use super::{FieldCtx, FieldElem};

/// A subspace of GF(p^m) viewed as a vector space over GF(p).
///
/// Stored as a reduced row echelon basis of coefficient vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    ctx: Arc<FieldCtx>,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The GF(p)-span of `elems`; for p = 2 this is the F2-span.
    pub fn span<'a>(ctx: &Arc<FieldCtx>, elems: impl IntoIterator<Item = &'a FieldElem>) -> Self {
        let mut s = Subspace {
            ctx: Arc::clone(ctx),
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ctx.m()
    }

    /// Number of elements, `p^dim`.
    pub fn size(&self) -> u64 {
        (self.ctx.p() as u64).pow(self.dim() as u32)
    }

    fn inv_mod(&self, c: u8) -> u8 {
        let p = self.ctx.p();
        (1..p as u8)
            .find(|&x| (x as u32 * c as u32) % p == 1)
            .expect("nonzero")
    }

    fn reduce(&self, v: &mut [u8]) {
        let p = self.ctx.p();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let f = v[piv] as u32;
            if f == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = ((*x as u32 + p * p - f * r as u32) % p) as u8;
            }
        }
    }

    /// Adds `e` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, e: &FieldElem) -> bool {
        let p = self.ctx.p();
        let mut v = e.coeffs().to_vec();
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = self.inv_mod(v[piv]) as u32;
        for x in v.iter_mut() {
            *x = ((*x as u32 * inv) % p) as u8;
        }
        for row in self.rows.iter_mut() {
            let f = row[piv] as u32;
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = ((*x as u32 + p * p - f * r as u32) % p) as u8;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    pub fn contains(&self, e: &FieldElem) -> bool {
        let mut v = e.coeffs().to_vec();
        self.reduce(&mut v);
        v.iter().all(|&c| c == 0)
    }
}
