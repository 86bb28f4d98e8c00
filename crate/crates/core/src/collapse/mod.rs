//! Collapse conditions C, D, F on conjugacy classes: exact checks,
//! re-verifiable certificates, searches and the exhaustive kthulhu test.

mod certificate;
mod classify;
mod kthulhu;
mod search;

pub use certificate::{
    verify, verify_detailed, CollapseCertificate, GroupInfo, VerifyFailure, SCHEMA,
};
pub use classify::{classify, ClassReport, DetectorOutcome};
pub use kthulhu::{
    kthulhu_exhaustive, IntersectionKind, KthulhuMode, KthulhuReport, SubgroupOutcome,
};
pub use search::{
    find_type, FSeeds, Hints, NotFound, NotFoundReason, SearchOptions, SearchOutcome, Strategy,
    StructuralSubgroup,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permgrp::{conj_orbit, conj_orbit_size, same_conj_orbit, GroupError, Perm, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CollapseKind {
    C,
    D,
    F,
}

impl CollapseKind {
    pub const ALL: [CollapseKind; 3] = [CollapseKind::C, CollapseKind::D, CollapseKind::F];
}

impl fmt::Display for CollapseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CollapseKind::C => "C",
            CollapseKind::D => "D",
            CollapseKind::F => "F",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollapseError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("witness is not in the subgroup generated by the given H generators")]
    NotInSubgroup,
    #[error("type F needs exactly four witnesses, got {0}")]
    WrongArity(usize),
}

/// `(rs)² ≠ (sr)²`.
pub fn squares_differ(r: &Perm, s: &Perm) -> bool {
    let rs = r.compose(s);
    let sr = s.compose(r);
    rs.compose(&rs) != sr.compose(&sr)
}

/// Size condition (d): `min > 2` or `max > 4`.
pub fn size_condition(a: usize, b: usize) -> bool {
    a.min(b) > 2 || a.max(b) > 4
}

/// Type D: `s ∉ O_r^⟨r,s⟩` and `(rs)² ≠ (sr)²`.
pub fn check_type_d(r: &Perm, s: &Perm, cap: usize) -> Result<bool, CollapseError> {
    if !squares_differ(r, s) {
        return Ok(false);
    }
    let gens = [r.clone(), s.clone()];
    Ok(!same_conj_orbit(r, s, &gens, cap)?)
}

/// Type C with respect to `H = ⟨h_gens⟩`.
///
/// Condition (c) is skipped when `h_gens` is exactly `{r, s}`.
pub fn check_type_c(
    r: &Perm,
    s: &Perm,
    h_gens: &[Perm],
    cap: usize,
) -> Result<bool, CollapseError> {
    let h = PermGroup::new(r.degree(), h_gens.iter().cloned())?;
    if !h.contains(r) || !h.contains(s) {
        return Err(CollapseError::NotInSubgroup);
    }
    if r.commutes_with(s) {
        return Ok(false);
    }
    let orbit_r = conj_orbit(r, h_gens, cap)?;
    if orbit_r.contains(s) {
        return Ok(false);
    }
    let orbit_s = conj_orbit(s, h_gens, cap)?;
    if !size_condition(orbit_r.len(), orbit_s.len()) {
        return Ok(false);
    }
    if is_pair_generating_set(r, s, h_gens) {
        return Ok(true);
    }
    Ok(generates_exactly(
        &h,
        orbit_r.elements().iter().chain(orbit_s.elements()),
    ))
}

fn is_pair_generating_set(r: &Perm, s: &Perm, h_gens: &[Perm]) -> bool {
    !h_gens.is_empty()
        && h_gens.iter().all(|g| g == r || g == s)
        && h_gens.contains(r)
        && h_gens.contains(s)
}

/// Whether the elements generate all of `h` (they are assumed to lie in it).
pub(crate) fn generates_exactly<'a>(
    h: &PermGroup,
    elems: impl IntoIterator<Item = &'a Perm>,
) -> bool {
    let target = h.order();
    let mut k = PermGroup::trivial(h.degree());
    for x in elems {
        k.add_generator(x.clone()).expect("degree matches");
        if k.order() == target {
            return true;
        }
    }
    k.order() == target
}

/// Type F on four witnesses.
pub fn check_type_f(rs: &[Perm], cap: usize) -> Result<bool, CollapseError> {
    if rs.len() != 4 {
        return Err(CollapseError::WrongArity(rs.len()));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if rs[i].commutes_with(&rs[j]) {
                return Ok(false);
            }
        }
    }
    for i in 0..3 {
        let orbit = conj_orbit(&rs[i], rs, cap)?;
        if rs[i + 1..].iter().any(|x| orbit.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What a search needs to know about a pair `(r, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PairProfile {
    pub commute: bool,
    pub squares_differ: bool,
    /// `s ∈ O_r^⟨r,s⟩`.
    pub same_orbit: bool,
    /// `(|O_r|, |O_s|)` under `⟨r,s⟩`, when computed and the orbits differ.
    pub sizes: Option<(usize, usize)>,
}

impl PairProfile {
    pub fn compute(r: &Perm, s: &Perm, need_sizes: bool, cap: usize) -> Result<Self, GroupError> {
        let commute = r.commutes_with(s);
        if commute {
            let same = r == s;
            return Ok(PairProfile {
                commute,
                squares_differ: false,
                same_orbit: same,
                sizes: (!same).then_some((1, 1)),
            });
        }
        let squares_differ = squares_differ(r, s);
        let gens = [r.clone(), s.clone()];
        let same_orbit = same_conj_orbit(r, s, &gens, cap)?;
        let sizes = if need_sizes && !same_orbit {
            Some((
                conj_orbit_size(r, &gens, cap)?,
                conj_orbit_size(s, &gens, cap)?,
            ))
        } else {
            None
        };
        Ok(PairProfile {
            commute,
            squares_differ,
            same_orbit,
            sizes,
        })
    }

    pub fn is_type_d(&self) -> bool {
        self.squares_differ && !self.same_orbit
    }

    pub fn is_type_c_pair(&self) -> bool {
        !self.commute && !self.same_orbit && self.sizes.is_some_and(|(a, b)| size_condition(a, b))
    }

    /// Necessary for `(r, s)` to sit inside a type-F quadruple.
    pub fn f_compatible(&self) -> bool {
        !self.commute && !self.same_orbit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        PermGroup::new(
            4,
            [
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_negatives() {
        let r = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let s = Perm::from_cycles(5, &[&[3, 4]]).unwrap();
        assert!(!check_type_d(&r, &s, 100).unwrap());
        assert!(!check_type_d(&r, &r, 100).unwrap());
        assert!(!check_type_c(&r, &s, &[r.clone(), s.clone()], 100).unwrap());
        let t = Perm::from_cycles(5, &[&[0, 1]]).unwrap();
        let quad = [t.clone(), t.clone(), t.clone(), t];
        assert!(!check_type_f(&quad, 100).unwrap());
        assert!(matches!(
            check_type_f(&quad[..3], 100),
            Err(CollapseError::WrongArity(3))
        ));
    }

    #[test]
    fn c_requires_membership() {
        let g = s4();
        let r = Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        let s = Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        let err = check_type_c(&r, &s, &g.generators()[..1], 100).unwrap_err();
        assert_eq!(err, CollapseError::NotInSubgroup);
    }

    #[test]
    fn pair_profile_agrees_with_d() {
        let g = s4();
        let elems = g.elements(100).unwrap();
        for r in &elems {
            for s in &elems {
                let p = PairProfile::compute(r, s, true, 1000).unwrap();
                assert_eq!(p.is_type_d(), check_type_d(r, s, 1000).unwrap());
                assert_eq!(
                    check_type_d(r, s, 1000).unwrap(),
                    check_type_d(s, r, 1000).unwrap()
                );
                if !p.commute {
                    assert_eq!(
                        p.is_type_c_pair(),
                        check_type_c(r, s, &[r.clone(), s.clone()], 1000).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn size_rule() {
        assert!(size_condition(3, 3));
        assert!(size_condition(1, 5));
        assert!(!size_condition(2, 4));
        assert!(!size_condition(1, 1));
    }
}
