//! PSL₂(q) on the projective line and ²G₂(3) ≅ PSL₂(8) ⋊ ⟨φ⟩.

use std::sync::Arc;

use thiserror::Error;

use crate::ffield::{FieldCtx, FieldElem, FieldError, Matrix, SUPPORTED_PRIMES};
use crate::permgrp::{GroupError, Perm, PermGroup};
use crate::projective::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unsupported q = {0}; need a power of 2, 3 or 5 that is at most 32")]
    UnsupportedQ(u64),
    #[error("constructed group has order {found}, expected {expected}")]
    OrderMismatch { expected: u64, found: u64 },
}

/// `q(q²−1)/gcd(2, q−1)`.
pub fn psl2_order(q: u64) -> u64 {
    let d = if q % 2 == 1 { 2 } else { 1 };
    q * (q * q - 1) / d
}

fn prime_power(q: u64) -> Option<(u32, usize)> {
    SUPPORTED_PRIMES.iter().find_map(|&p| {
        let mut m = 0;
        let mut v = q;
        while v > 1 && v.is_multiple_of(p as u64) {
            v /= p as u64;
            m += 1;
        }
        (v == 1 && m > 0).then_some((p, m))
    })
}

/// PSL₂(q) acting on the q+1 points of the projective line.
#[derive(Debug, Clone)]
pub struct Psl2 {
    field: Arc<FieldCtx>,
    line: PointSet,
    group: PermGroup,
}

pub fn build_psl2(q: u64) -> Result<Psl2, ReeError> {
    let (p, m) = prime_power(q)
        .filter(|_| q <= 32)
        .ok_or(ReeError::UnsupportedQ(q))?;
    let field = FieldCtx::new(p, m, None)?;
    let line = PointSet::projective_line(&field);
    let mut mats = Vec::new();
    for x in field.prime_basis() {
        mats.push(upper(&x));
        mats.push(lower(&x));
    }
    let zeta = field.primitive_element();
    mats.push(torus(&zeta)?);
    let perms = mats
        .iter()
        .map(|m| line.perm_of(m).expect("SL2 acts on the line"));
    let group = PermGroup::new(line.len(), perms)?;
    let expected = psl2_order(q);
    if group.order() != expected {
        return Err(ReeError::OrderMismatch {
            expected,
            found: group.order(),
        });
    }
    Ok(Psl2 { field, line, group })
}

fn upper(x: &FieldElem) -> Matrix {
    let f = x.ctx();
    Matrix::from_rows(vec![vec![f.one(), x.clone()], vec![f.zero(), f.one()]])
}

fn lower(x: &FieldElem) -> Matrix {
    let f = x.ctx();
    Matrix::from_rows(vec![vec![f.one(), f.zero()], vec![x.clone(), f.one()]])
}

fn torus(alpha: &FieldElem) -> Result<Matrix, FieldError> {
    Ok(Matrix::diagonal(vec![alpha.clone(), alpha.inv()?]))
}

impl Psl2 {
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn line(&self) -> &PointSet {
        &self.line
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Image of a 2x2 matrix of determinant 1.
    pub fn perm(&self, m: &Matrix) -> Perm {
        self.line
            .perm_of(m)
            .expect("invertible matrices act on the line")
    }

    /// `(1 x; 0 1)`.
    pub fn upper_unipotent(&self, x: &FieldElem) -> Perm {
        self.perm(&upper(x))
    }

    /// `diag(α, α⁻¹)`.
    pub fn diagonal(&self, alpha: &FieldElem) -> Result<Perm, ReeError> {
        Ok(self.perm(&torus(alpha)?))
    }

    /// Upper triangular subgroup `{(α x; 0 α⁻¹)}`, the stabilizer of `(1,0)`.
    pub fn upper_borel(&self) -> PermGroup {
        let mut gens: Vec<Perm> = self
            .field
            .prime_basis()
            .iter()
            .map(|x| self.upper_unipotent(x))
            .collect();
        gens.push(
            self.diagonal(&self.field.primitive_element())
                .expect("nonzero"),
        );
        PermGroup::new(self.line.len(), gens).expect("degree matches")
    }
}

/// ²G₂(3) realized as PΓL₂(8) on 9 points, with distinguished elements.
#[derive(Debug, Clone)]
pub struct Ree23 {
    psl: Psl2,
    phi: Perm,
    group: PermGroup,
}

/// `|²G₂(3)| = q³(q−1)(q³+1)` at q = 3.
pub const REE_G2_3_ORDER: u64 = 1512;

pub fn build_2g2_3() -> Result<Ree23, ReeError> {
    let psl = build_psl2(8)?;
    let phi = psl
        .line
        .induced(|v| v.iter().map(|x| x * x).collect())
        .expect("Frobenius permutes the line");
    let mut gens = psl.group.generators().to_vec();
    gens.push(phi.clone());
    let group = PermGroup::new(psl.line.len(), gens)?;
    if group.order() != REE_G2_3_ORDER {
        return Err(ReeError::OrderMismatch {
            expected: REE_G2_3_ORDER,
            found: group.order(),
        });
    }
    Ok(Ree23 { psl, phi, group })
}

impl Ree23 {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn psl2(&self) -> &Psl2 {
        &self.psl
    }

    /// The field automorphism `x -> x²` acting on P¹(GF(8)); order 3.
    pub fn phi(&self) -> &Perm {
        &self.phi
    }

    /// The unipotent `(1 1; 0 1)`.
    pub fn unipotent_one(&self) -> Perm {
        self.psl.upper_unipotent(&self.psl.field.one())
    }

    /// `B₁`, order 56.
    pub fn borel_b1(&self) -> PermGroup {
        self.psl.upper_borel()
    }

    /// `M = B₁ ⋊ ⟨φ⟩`, order 168.
    pub fn borel_m(&self) -> PermGroup {
        let mut gens = self.borel_b1().generators().to_vec();
        gens.push(self.phi.clone());
        PermGroup::new(self.group.degree(), gens).expect("degree matches")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl2_orders() {
        for (q, order) in [(2, 6), (3, 12), (4, 60), (5, 60), (8, 504), (9, 360)] {
            let g = build_psl2(q).unwrap();
            assert_eq!(g.group().order(), order, "q = {q}");
            assert_eq!(g.group().degree() as u64, q + 1);
        }
        assert_eq!(build_psl2(7).unwrap_err(), ReeError::UnsupportedQ(7));
        assert_eq!(build_psl2(6).unwrap_err(), ReeError::UnsupportedQ(6));
        assert_eq!(build_psl2(64).unwrap_err(), ReeError::UnsupportedQ(64));
    }

    #[test]
    fn ree_structure() {
        let r = build_2g2_3().unwrap();
        assert_eq!(r.group().order(), 1512);
        assert_eq!(r.phi().order(), 3);
        assert!(!r.psl2().group().contains(r.phi()));
        assert_eq!(r.borel_b1().order(), 56);
        assert_eq!(r.borel_m().order(), 168);
        assert_eq!(r.unipotent_one().order(), 2);
    }
}
