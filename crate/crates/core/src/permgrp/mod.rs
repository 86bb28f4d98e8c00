//! Permutation groups: Schreier-Sims, conjugation orbits, centralizers,
//! class and subgroup enumeration.

mod bsgs;
mod classes;
mod orbit;
mod perm;
mod subgroups;

pub use bsgs::{closure, Closure, PermGroup};
pub use classes::conjugacy_classes;
pub use orbit::{
    centralizer, centralizer_from_orbit, conj_orbit, conj_orbit_size, is_real, point_orbit,
    same_conj_orbit, ClassOrbit,
};
pub use perm::Perm;
pub(crate) use perm::{gcd, lcm};
pub use subgroups::{all_subgroups, ElementSet, ElementTable, Subgroup, SubgroupLattice};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("image array is not a permutation")]
    NotAPermutation,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("orbit exceeds cap of {cap} elements")]
    OrbitCap { cap: usize },
    #[error("group of order {order} exceeds cap {cap}")]
    TooLarge { order: u64, cap: u64 },
}

/// Order of a permutation.
pub fn element_order(x: &Perm) -> u64 {
    x.order()
}
