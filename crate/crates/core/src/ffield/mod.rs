//! Exact arithmetic in GF(p^m), p in {2, 3, 5}, in a polynomial basis.
//!
//! Elements are coefficient vectors over the prime field, little-endian in
//! powers of the generator `t` (a root of the context modulus). For odd
//! degree `m = 2h + 1` and `p` in {2, 3} the context additionally exposes
//! the twisted Frobenius `delta(x) = x^(p^(h+1))`, whose square is the
//! ordinary Frobenius `x -> x^p`.

mod matrix;
mod span;

pub use matrix::Matrix;
pub use span::Subspace;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Primes the field layer is prepared to handle.
pub const SUPPORTED_PRIMES: [u32; 3] = [2, 3, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported characteristic {0}; expected one of 2, 3, 5")]
    UnsupportedPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{m} is too large")]
    TooLarge { p: u32, m: usize },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    MalformedModulus { expected: usize, p: u32 },
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u8>),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("GF({p}^{m}) carries no square root of Frobenius (need p in {{2,3}} and odd m)")]
    NotDeltaEnabled { p: u32, m: usize },
    #[error("phi is only defined on nonzero elements")]
    PhiOfZero,
    #[error("integer {value} does not encode an element of GF({q})")]
    OutOfRange { value: u64, q: u64 },
}

/// Field parameters: characteristic, degree and the defining modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldCtx {
    p: u32,
    m: usize,
    /// Little-endian coefficients, length `m + 1`, leading coefficient 1.
    modulus: Vec<u8>,
    q: u64,
}

impl FieldCtx {
    /// Builds GF(p^m). Without an explicit modulus the smallest monic
    /// irreducible polynomial of degree `m` is chosen, ordering candidates by
    /// their integer encoding `sum c_i p^i`.
    pub fn new(p: u32, m: usize, modulus: Option<&[u8]>) -> Result<Arc<Self>, FieldError> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(FieldError::UnsupportedPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(m as u32)
            .filter(|&q| q <= 1 << 32)
            .ok_or(FieldError::TooLarge { p, m })?;
        let modulus = match modulus {
            Some(given) => {
                if given.len() != m + 1 || given[m] != 1 || given.iter().any(|&c| c as u32 >= p) {
                    return Err(FieldError::MalformedModulus { expected: m, p });
                }
                if !poly::is_irreducible(given, p) {
                    return Err(FieldError::ReducibleModulus(given.to_vec()));
                }
                given.to_vec()
            }
            None => poly::smallest_irreducible(p, m),
        };
        Ok(Arc::new(FieldCtx { p, m, modulus, q }))
    }

    /// Convenience for GF(2^(2h+1)), the fields carrying the Suzuki twist.
    pub fn suzuki(h: usize) -> Result<Arc<Self>, FieldError> {
        Self::new(2, 2 * h + 1, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// `h` with `m = 2h + 1` when the context admits `delta`.
    pub fn delta_half(&self) -> Option<usize> {
        (matches!(self.p, 2 | 3) && self.m % 2 == 1).then_some(self.m / 2)
    }

    pub fn is_delta_enabled(&self) -> bool {
        self.delta_half().is_some()
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        FieldElem {
            ctx: Arc::clone(self),
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        self.from_prime(1)
    }

    /// The class of the integer `c` in the prime subfield.
    pub fn from_prime(self: &Arc<Self>, c: u32) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = (c % self.p) as u8;
        e
    }

    /// The polynomial generator `t`.
    pub fn generator(self: &Arc<Self>) -> FieldElem {
        let mut coeffs = vec![0; self.m];
        if self.m == 1 {
            // In the prime field t is the root of the linear modulus t + c.
            coeffs[0] = ((self.p - self.modulus[0] as u32) % self.p) as u8;
        } else {
            coeffs[1] = 1;
        }
        FieldElem {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// Decodes `sum c_i p^i`.
    pub fn from_int(self: &Arc<Self>, value: u64) -> Result<FieldElem, FieldError> {
        if value >= self.q {
            return Err(FieldError::OutOfRange { value, q: self.q });
        }
        let mut coeffs = vec![0; self.m];
        let mut v = value;
        for c in coeffs.iter_mut() {
            *c = (v % self.p as u64) as u8;
            v /= self.p as u64;
        }
        Ok(FieldElem {
            ctx: Arc::clone(self),
            coeffs,
        })
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u8]) -> Result<FieldElem, FieldError> {
        if coeffs.len() > self.m {
            return Err(FieldError::MalformedModulus {
                expected: self.m,
                p: self.p,
            });
        }
        let mut c = vec![0; self.m];
        for (dst, &src) in c.iter_mut().zip(coeffs) {
            *dst = (src as u32 % self.p) as u8;
        }
        Ok(FieldElem {
            ctx: Arc::clone(self),
            coeffs: c,
        })
    }

    /// All `q` elements in increasing integer encoding.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |v| self.from_int(v).expect("in range"))
    }

    /// Nonzero elements in increasing integer encoding.
    pub fn units(self: &Arc<Self>) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.q).map(move |v| self.from_int(v).expect("in range"))
    }

    /// `t^0, ..., t^(m-1)`: a basis over the prime field.
    pub fn prime_basis(self: &Arc<Self>) -> Vec<FieldElem> {
        (0..self.m)
            .map(|i| {
                let mut coeffs = vec![0; self.m];
                coeffs[i] = 1;
                FieldElem {
                    ctx: Arc::clone(self),
                    coeffs,
                }
            })
            .collect()
    }

    /// Smallest (by integer encoding) generator of the multiplicative group.
    pub fn primitive_element(self: &Arc<Self>) -> FieldElem {
        let n = self.q - 1;
        let primes = prime_factors(n);
        self.units()
            .find(|x| primes.iter().all(|&r| !x.pow(n / r).is_one()))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {}",
            self.p,
            self.m,
            poly::display(&self.modulus)
        )
    }
}

/// An element of a [`FieldCtx`].
#[derive(Clone)]
pub struct FieldElem {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<u8>,
}

impl FieldElem {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn to_int(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.ctx.p as u64 + c as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &FieldElem) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<u8>) -> FieldElem {
        FieldElem {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same_field(other)?;
        let p = self.ctx.p as u8;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn checked_sub(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same_field(other)?;
        let p = self.ctx.p;
        let m = self.ctx.m;
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a as u32 * b as u32;
            }
        }
        let mut prod: Vec<u8> = prod.into_iter().map(|c| (c % p) as u8).collect();
        poly::reduce_in_place(&mut prod, &self.ctx.modulus, p);
        prod.resize(m, 0);
        Ok(self.with_coeffs(prod))
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(self.ctx.q - 2))
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Signed exponent, negative powers through the inverse.
    pub fn powi(&self, e: i64) -> Result<FieldElem, FieldError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// The Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.ctx.p as u64)
    }

    fn frobenius_iter(&self, times: usize) -> FieldElem {
        (0..times).fold(self.clone(), |x, _| x.frobenius())
    }

    /// `x^(p^(h+1))`, the square root of Frobenius on GF(p^(2h+1)).
    pub fn delta(&self) -> Result<FieldElem, FieldError> {
        let h = self.delta_h()?;
        Ok(self.frobenius_iter(h + 1))
    }

    /// `x^(p^h)`; inverse to [`FieldElem::delta`].
    pub fn delta_inv(&self) -> Result<FieldElem, FieldError> {
        let h = self.delta_h()?;
        Ok(self.frobenius_iter(h))
    }

    /// `k * delta(k)`, a bijection of the unit group.
    pub fn phi(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::PhiOfZero);
        }
        Ok(self * &self.delta()?)
    }

    fn delta_h(&self) -> Result<usize, FieldError> {
        self.ctx.delta_half().ok_or(FieldError::NotDeltaEnabled {
            p: self.ctx.p,
            m: self.ctx.m,
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let n = self.ctx.q - 1;
        let mut order = n;
        for r in prime_factors(n) {
            while order.is_multiple_of(r) && self.pow(order / r).is_one() {
                order /= r;
            }
        }
        Some(order)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_field(other).is_ok()
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly::display(&self.coeffs))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_int())
    }
}

impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.to_int())
    }
}

/// Serialized form of a field context header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub p: u32,
    pub m: usize,
    pub modulus: Vec<u8>,
}

impl From<&FieldCtx> for FieldHeader {
    fn from(ctx: &FieldCtx) -> Self {
        FieldHeader {
            p: ctx.p,
            m: ctx.m,
            modulus: ctx.modulus.clone(),
        }
    }
}

// Operators panic on mixed contexts; use the `checked_*` methods to recover.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.ctx.p as u8;
        self.with_coeffs(self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomials over GF(p) as little-endian `u8` coefficient vectors.
mod poly {
    pub(super) fn degree(a: &[u8]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    fn inv_mod_p(c: u8, p: u32) -> u8 {
        (1..p as u8)
            .find(|&x| (x as u32 * c as u32) % p == 1)
            .expect("nonzero residue")
    }

    /// Replaces `a` by its remainder modulo `modulus` (any nonzero polynomial).
    pub(super) fn reduce_in_place(a: &mut Vec<u8>, modulus: &[u8], p: u32) {
        let dm = degree(modulus).expect("nonzero modulus");
        let lead_inv = inv_mod_p(modulus[dm], p) as u32;
        while let Some(da) = degree(a) {
            if da < dm {
                break;
            }
            let factor = (a[da] as u32 * lead_inv) % p;
            let shift = da - dm;
            for (i, &mc) in modulus.iter().enumerate() {
                let sub = (factor * mc as u32) % p;
                a[i + shift] = ((a[i + shift] as u32 + p - sub) % p) as u8;
            }
        }
        a.truncate(dm.max(1));
    }

    /// Monic polynomial of degree `deg` whose lower coefficients encode `low`.
    fn monic_from_index(low: u64, deg: usize, p: u32) -> Vec<u8> {
        let mut out = vec![0u8; deg + 1];
        let mut v = low;
        for c in out.iter_mut().take(deg) {
            *c = (v % p as u64) as u8;
            v /= p as u64;
        }
        out[deg] = 1;
        out
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub(super) fn is_irreducible(f: &[u8], p: u32) -> bool {
        let Some(n) = degree(f) else { return false };
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let g = monic_from_index(low, d, p);
                let mut r = f.to_vec();
                reduce_in_place(&mut r, &g, p);
                if degree(&r).is_none() {
                    return false;
                }
            }
        }
        true
    }

    pub(super) fn smallest_irreducible(p: u32, m: usize) -> Vec<u8> {
        let count = (p as u64).pow(m as u32);
        (0..count)
            .map(|low| monic_from_index(low, m, p))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }

    pub(super) fn display(a: &[u8]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coef = if c == 1 && i > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match i {
                    0 => c.to_string(),
                    1 => format!("{coef}t"),
                    _ => format!("{coef}t^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}
