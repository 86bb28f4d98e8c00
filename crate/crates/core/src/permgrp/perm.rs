use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A permutation of `{0, .., n-1}` in one-line notation.
///
/// Products compose right to left: `(a * b).apply(i) == a.apply(b.apply(i))`.
/// The derived ordering is lexicographic on the image array and defines the
/// canonical ("serialized-minimal") choice of class representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= n || b as usize >= n {
                    return Err(GroupError::NotAPermutation);
                }
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i as u32)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self * other`, that is `other` first.
    pub fn compose(&self, other: &Perm) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    /// The rack operation `self ▷ y = self * y * self^-1`.
    pub fn conj(&self, y: &Perm) -> Self {
        let mut out = vec![0u32; self.images.len()];
        for (i, &yi) in y.images.iter().enumerate() {
            out[self.images[i] as usize] = self.images[yi as usize];
        }
        Perm { images: out }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| self.images[b as usize] == other.images[a as usize])
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start as u32;
            while !seen[i as usize] {
                seen[i as usize] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k` the identity.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// `self` on points `0..n` and `other` on `n..n+m`.
    pub fn direct_sum(&self, other: &Perm) -> Self {
        let n = self.degree() as u32;
        let images = self
            .images
            .iter()
            .copied()
            .chain(other.images.iter().map(|&j| j + n))
            .collect();
        Perm { images }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        self.compose(&rhs)
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = GroupError;
    fn try_from(images: Vec<u32>) -> Result<Self, GroupError> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Vec<u32> {
        p.images
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, fixed points omitted.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = &a * &b;
        for i in 0..3 {
            assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
    }

    #[test]
    fn conjugation_matches_product() {
        let x = Perm::from_images(vec![2, 0, 3, 1, 4]).unwrap();
        let y = Perm::from_images(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(x.conj(&y), &(&x * &y) * &x.inverse());
    }

    #[test]
    fn orders_and_inverses() {
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(Perm::identity(4).order(), 1);
        assert_eq!(c.pow(-1), c.inverse());
        assert!((&c * &c.inverse()).is_identity());
        let mixed = Perm::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(mixed.order(), 6);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
        let p: Perm = serde_json::from_str("[1,0,2]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0,2]");
    }

    #[test]
    fn display_cycles() {
        let p = Perm::from_cycles(5, &[&[0, 2], &[1, 3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 2)(1 3 4)");
        assert_eq!(Perm::identity(3).to_string(), "()");
    }
}
