use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::permgrp::{gcd, lcm};

/// `e^{2πik/n}` in canonical form: `gcd(k, n) = 1` (and `n = 1` for 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(u64, u64)", try_from = "(u64, u64)")]
pub struct RootOfUnity {
    n: u64,
    k: u64,
}

impl RootOfUnity {
    /// Panics if `n == 0`.
    pub fn new(n: u64, k: u64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let k = k % n;
        let d = gcd(k, n);
        if k == 0 {
            RootOfUnity { n: 1, k: 0 }
        } else {
            RootOfUnity { n: n / d, k: k / d }
        }
    }

    pub const ONE: RootOfUnity = RootOfUnity { n: 1, k: 0 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { n: 2, k: 1 };

    /// Multiplicative order.
    pub fn order(self) -> u64 {
        self.n
    }

    pub fn exponent(self) -> u64 {
        self.k
    }

    pub fn is_one(self) -> bool {
        self.n == 1
    }

    pub fn is_minus_one(self) -> bool {
        self == Self::MINUS_ONE
    }

    pub fn inv(self) -> Self {
        RootOfUnity::new(self.n, self.n - self.k)
    }

    pub fn pow(self, e: i64) -> Self {
        let n = self.n as i128;
        let k = (self.k as i128 * e as i128).rem_euclid(n);
        RootOfUnity::new(self.n, k as u64)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let l = lcm(self.n, rhs.n);
        let k = (self.k * (l / self.n) + rhs.k * (l / rhs.n)) % l;
        RootOfUnity::new(l, k)
    }
}

impl From<RootOfUnity> for (u64, u64) {
    fn from(z: RootOfUnity) -> Self {
        (z.n, z.k)
    }
}

impl TryFrom<(u64, u64)> for RootOfUnity {
    type Error = String;

    fn try_from((n, k): (u64, u64)) -> Result<Self, String> {
        let z = if n == 0 {
            None
        } else {
            Some(RootOfUnity::new(n, k))
        };
        match z {
            Some(z) if (z.n, z.k) == (n, k) => Ok(z),
            _ => Err(format!("({n},{k}) is not a canonical root of unity")),
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n, self.k) {
            (1, _) => f.write_str("1"),
            (2, _) => f.write_str("-1"),
            (n, k) => write!(f, "e({k}/{n})"),
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(RootOfUnity::new(6, 3), RootOfUnity::MINUS_ONE);
        assert_eq!(RootOfUnity::new(6, 0), RootOfUnity::ONE);
        assert_eq!(RootOfUnity::new(6, 4), RootOfUnity::new(3, 2));
        assert_eq!(
            RootOfUnity::new(3, 1) * RootOfUnity::new(3, 2),
            RootOfUnity::ONE
        );
        assert_eq!(
            RootOfUnity::new(2, 1) * RootOfUnity::new(3, 1),
            RootOfUnity::new(6, 5)
        );
        assert_eq!(RootOfUnity::new(3, 1).pow(-1), RootOfUnity::new(3, 2));
        assert_eq!(RootOfUnity::new(3, 1).inv(), RootOfUnity::new(3, 2));
    }

    #[test]
    fn serde_rejects_noncanonical() {
        let z: RootOfUnity = serde_json::from_str("[3,2]").unwrap();
        assert_eq!(serde_json::to_string(&z).unwrap(), "[3,2]");
        assert!(serde_json::from_str::<RootOfUnity>("[6,2]").is_err());
        assert!(serde_json::from_str::<RootOfUnity>("[0,0]").is_err());
    }
}
