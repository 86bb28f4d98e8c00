use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::{NicholsError, RootOfUnity};
use crate::ffield::prime_factors;
use crate::permgrp::{Perm, PermGroup};

/// An abelian group written as a direct product of cyclic groups, with
/// invariant factors in decreasing order (each divides the previous one).
#[derive(Debug, Clone)]
pub struct CyclicDecomposition {
    degree: usize,
    generators: Vec<Perm>,
    orders: Vec<u64>,
    coords: FxHashMap<Perm, Vec<u64>>,
}

impl CyclicDecomposition {
    pub fn new(a: &PermGroup, cap: u64) -> Result<Self, NicholsError> {
        if !a.is_abelian() {
            return Err(NicholsError::NotAbelian);
        }
        let elements = a.elements(cap)?;
        let mut per_prime: Vec<Vec<(Perm, u64)>> = Vec::new();
        for p in prime_factors(a.order()) {
            let sylow: Vec<&Perm> = elements
                .iter()
                .filter(|x| is_power_of(x.order(), p))
                .collect();
            per_prime.push(decompose_p_group(&sylow, p, a.degree()));
        }
        let width = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut generators = Vec::with_capacity(width);
        let mut orders = Vec::with_capacity(width);
        for i in 0..width {
            let mut x = Perm::identity(a.degree());
            let mut n = 1;
            for factors in &per_prime {
                if let Some((y, e)) = factors.get(i) {
                    x = x.compose(y);
                    n *= e;
                }
            }
            generators.push(x);
            orders.push(n);
        }
        let dec = Self::from_parts(a.degree(), generators, orders);
        if dec.coords.len() as u64 != a.order() {
            return Err(NicholsError::DecompositionFailed);
        }
        Ok(dec)
    }

    fn from_parts(degree: usize, generators: Vec<Perm>, orders: Vec<u64>) -> Self {
        let mut coords = FxHashMap::default();
        coords.insert(Perm::identity(degree), vec![0; orders.len()]);
        for (i, (g, &n)) in generators.iter().zip(&orders).enumerate() {
            let current: Vec<(Perm, Vec<u64>)> = coords.drain().collect();
            for (x, v) in current {
                let mut y = x;
                for e in 0..n {
                    let mut w = v.clone();
                    w[i] = e;
                    let next = y.compose(g);
                    coords.insert(y, w);
                    y = next;
                }
            }
        }
        CyclicDecomposition {
            degree,
            generators,
            orders,
            coords,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent vector of `x`, or `None` when `x` lies outside the group.
    pub fn coordinates(&self, x: &Perm) -> Option<&[u64]> {
        self.coords.get(x).map(Vec::as_slice)
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.coords.contains_key(x)
    }

    /// All characters, exponent vectors in lexicographic order.
    pub fn characters(&self) -> Vec<Character> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut exps = vec![0; self.orders.len()];
        loop {
            out.push(Character {
                exponents: exps.clone(),
                orders: self.orders.clone(),
            });
            let mut i = exps.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < self.orders[i] {
                    break;
                }
                exps[i] = 0;
            }
        }
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Greedy basis of an abelian p-group: repeatedly take an element of
/// maximal order modulo the span so far and correct it to a lift of the
/// same order.
fn decompose_p_group(sylow: &[&Perm], p: u64, degree: usize) -> Vec<(Perm, u64)> {
    let mut span: FxHashSet<Perm> = FxHashSet::default();
    span.insert(Perm::identity(degree));
    let mut out = Vec::new();
    while span.len() < sylow.len() {
        let coset_order = |y: &Perm| {
            let mut e = 1;
            let mut z = y.clone();
            while !span.contains(&z) {
                z = z.pow(p as i64);
                e *= p;
            }
            e
        };
        let (y, e) = sylow
            .iter()
            .map(|y| (*y, coset_order(y)))
            .fold(None, |best: Option<(&Perm, u64)>, cur| match best {
                Some(b) if b.1 >= cur.1 => Some(b),
                _ => Some(cur),
            })
            .expect("nonempty");
        let target = y.pow(e as i64).inverse();
        let mut lifts: Vec<&Perm> = span.iter().filter(|s| s.pow(e as i64) == target).collect();
        lifts.sort();
        let x = y.compose(lifts.first().expect("a lift of equal order exists"));
        let mut next = FxHashSet::default();
        for s in &span {
            let mut z = s.clone();
            for _ in 0..e {
                let w = z.compose(&x);
                next.insert(z);
                z = w;
            }
        }
        span = next;
        out.push((x, e));
    }
    out
}

/// A linear character, given by its exponent on each cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    exponents: Vec<u64>,
    #[serde(skip)]
    orders: Vec<u64>,
}

impl Character {
    pub fn new(dec: &CyclicDecomposition, exponents: Vec<u64>) -> Result<Self, NicholsError> {
        if exponents.len() != dec.orders.len()
            || exponents.iter().zip(&dec.orders).any(|(e, n)| e >= n)
        {
            return Err(NicholsError::CharacterMismatch);
        }
        Ok(Character {
            exponents,
            orders: dec.orders.clone(),
        })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Value on the `i`-th generator.
    pub fn image(&self, i: usize) -> RootOfUnity {
        RootOfUnity::new(self.orders[i], self.exponents[i])
    }

    pub fn images(&self) -> Vec<RootOfUnity> {
        (0..self.exponents.len()).map(|i| self.image(i)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn eval(&self, dec: &CyclicDecomposition, x: &Perm) -> Option<RootOfUnity> {
        let c = dec.coordinates(x)?;
        Some(c.iter().enumerate().fold(RootOfUnity::ONE, |acc, (i, &e)| {
            acc * self.image(i).pow(e as i64)
        }))
    }
}
