//! The Suzuki groups ²B₂(q), q = 2^(2h+1), as 4x4 matrices preserving the
//! anti-diagonal form, acting on the q²+1 points of the orbit of <e₄>.

use std::sync::Arc;

use thiserror::Error;

use crate::ffield::{FieldCtx, FieldElem, FieldError, Matrix};
use crate::permgrp::{GroupError, Perm, PermGroup};
use crate::projective::PointSet;

/// Largest supported `h`; at `h = 2` the group has order 32537600.
pub const MAX_H: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuzukiError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("h = {0} exceeds the supported maximum {MAX_H}")]
    HTooLarge(usize),
    #[error("constructed group has order {found}, expected {expected}")]
    OrderMismatch { expected: u64, found: u64 },
    #[error("orbit of <e4> has {found} points, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("matrix does not act on the point set")]
    NotInGroup,
}

/// `U(a, b)`, lower unitriangular.
pub fn u_elem(a: &FieldElem, b: &FieldElem) -> Result<Matrix, FieldError> {
    let ctx = a.ctx();
    let (zero, one) = (ctx.zero(), ctx.one());
    let da = a.delta()?;
    let db = b.delta()?;
    let a_da = a * &da;
    Ok(Matrix::from_rows(vec![
        vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
        vec![a.clone(), one.clone(), zero.clone(), zero.clone()],
        vec![&a_da + b, da, one.clone(), zero],
        vec![&(&(a * &a_da) + &(a * b)) + &db, b.clone(), a.clone(), one],
    ]))
}

/// `t_k = diag(ξ₁, ξ₂, ξ₂⁻¹, ξ₁⁻¹)` with `δ(ξ₁) = kδ(k)`, `δ(ξ₂) = k`.
pub fn t_elem(k: &FieldElem) -> Result<Matrix, FieldError> {
    let xi1 = k.phi()?.delta_inv()?;
    let xi2 = k.delta_inv()?;
    Ok(Matrix::diagonal(vec![
        xi1.clone(),
        xi2.clone(),
        xi2.inv()?,
        xi1.inv()?,
    ]))
}

/// The anti-diagonal form matrix `J`, also the Weyl representative.
pub fn w0_elem(ctx: &Arc<FieldCtx>) -> Matrix {
    Matrix::anti_identity(ctx, 4)
}

/// `Mᵀ J M == J`.
pub fn preserves_form(m: &Matrix) -> bool {
    let j = w0_elem(m.ctx());
    &(&m.transpose() * &j) * m == j
}

/// `q²(q−1)(q²+1)`.
pub fn sz_order(q: u64) -> u64 {
    q * q * (q - 1) * (q * q + 1)
}

/// ²B₂(q) with its matrix generators and permutation model.
#[derive(Debug, Clone)]
pub struct SzContext {
    h: usize,
    field: Arc<FieldCtx>,
    zeta: FieldElem,
    labels: Vec<String>,
    matrices: Vec<Matrix>,
    points: PointSet,
    group: PermGroup,
}

/// Builds ²B₂(2^(2h+1)) and checks its order and degree.
pub fn build_sz(h: usize) -> Result<SzContext, SuzukiError> {
    if h > MAX_H {
        return Err(SuzukiError::HTooLarge(h));
    }
    let field = FieldCtx::suzuki(h)?;
    let zeta = field.primitive_element();
    let zero = field.zero();
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    for a in field.prime_basis() {
        labels.push(format!("U({},0)", a.to_int()));
        matrices.push(u_elem(&a, &zero)?);
    }
    for b in field.prime_basis() {
        labels.push(format!("U(0,{})", b.to_int()));
        matrices.push(u_elem(&zero, &b)?);
    }
    labels.push(format!("t_{}", zeta.to_int()));
    matrices.push(t_elem(&zeta)?);
    labels.push("J".to_string());
    matrices.push(w0_elem(&field));

    let q = field.q();
    let e4 = vec![zero.clone(), zero.clone(), zero, field.one()];
    let points = PointSet::orbit(&e4, &matrices);
    let expected_degree = (q * q + 1) as usize;
    if points.len() != expected_degree {
        return Err(SuzukiError::DegreeMismatch {
            expected: expected_degree,
            found: points.len(),
        });
    }
    let perms = matrices
        .iter()
        .map(|m| points.perm_of(m).ok_or(SuzukiError::NotInGroup))
        .collect::<Result<Vec<_>, _>>()?;
    let group = PermGroup::new(points.len(), perms)?;
    let expected = sz_order(q);
    if group.order() != expected {
        return Err(SuzukiError::OrderMismatch {
            expected,
            found: group.order(),
        });
    }
    Ok(SzContext {
        h,
        field,
        zeta,
        labels,
        matrices,
        points,
        group,
    })
}

impl SzContext {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// The primitive element used for the torus generator.
    pub fn zeta(&self) -> &FieldElem {
        &self.zeta
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn generator_matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn perm(&self, m: &Matrix) -> Result<Perm, SuzukiError> {
        self.points.perm_of(m).ok_or(SuzukiError::NotInGroup)
    }

    pub fn elem(&self, v: u64) -> Result<FieldElem, SuzukiError> {
        Ok(self.field.from_int(v)?)
    }

    pub fn u_perm(&self, a: &FieldElem, b: &FieldElem) -> Result<Perm, SuzukiError> {
        self.perm(&u_elem(a, b)?)
    }

    pub fn t_perm(&self, k: &FieldElem) -> Result<Perm, SuzukiError> {
        self.perm(&t_elem(k)?)
    }

    pub fn j_perm(&self) -> Perm {
        self.perm(&w0_elem(&self.field)).expect("J is a generator")
    }

    fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::new(self.group.degree(), gens).expect("degree matches")
    }

    fn basis_perms(&self, f: impl Fn(&FieldElem) -> Result<Perm, SuzukiError>) -> Vec<Perm> {
        self.field
            .prime_basis()
            .iter()
            .map(|x| f(x).expect("valid element"))
            .collect()
    }

    /// `Z(U⁻) = {U(0,b)}`, elementary abelian of order q.
    pub fn center_of_unipotent(&self) -> PermGroup {
        let zero = self.field.zero();
        self.subgroup(self.basis_perms(|b| self.u_perm(&zero, b)))
    }

    /// `U⁻ = {U(a,b)}`, order q².
    pub fn unipotent(&self) -> PermGroup {
        let zero = self.field.zero();
        let mut gens = self.basis_perms(|a| self.u_perm(a, &zero));
        gens.extend(self.basis_perms(|b| self.u_perm(&zero, b)));
        self.subgroup(gens)
    }

    /// Split torus generator `t_ζ`.
    pub fn torus_generator(&self) -> Perm {
        self.t_perm(&self.zeta).expect("zeta is nonzero")
    }

    /// `B⁻ = T ⋉ U⁻`, order q²(q−1): the stabilizer of point 0.
    pub fn lower_borel(&self) -> PermGroup {
        let mut gens = vec![self.torus_generator()];
        gens.extend(self.unipotent().generators().iter().cloned());
        self.subgroup(gens)
    }

    /// `T·Z(U⁻)`, order q(q−1).
    pub fn subgroup_t_zu(&self) -> PermGroup {
        let mut gens = vec![self.torus_generator()];
        gens.extend(self.center_of_unipotent().generators().iter().cloned());
        self.subgroup(gens)
    }
}

/// ²B₂(2) in its affine model: `y -> a y + x` on GF(5), order 20.
pub fn sz2_affine_model() -> PermGroup {
    let scale = Perm::from_images((0..5).map(|y| (2 * y) % 5).collect()).expect("bijection");
    let shift = Perm::from_images((0..5).map(|y| (y + 1) % 5).collect()).expect("bijection");
    PermGroup::new(5, [scale, shift]).expect("degree 5")
}
