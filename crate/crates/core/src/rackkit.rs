//! Racks given by conjugation on a conjugacy class.

use std::sync::OnceLock;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::permgrp::{conj_orbit, ClassOrbit, GroupError, Perm, PermGroup};

/// Classes below this size cache a full operation table.
pub const TABLE_THRESHOLD: usize = 512;

/// Exhaustive axiom checks are used when `|R|³` is at most this.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// A finite rack on `{0, .., size-1}`.
///
/// `act(i, j)` is `i ▷ j`, or `None` when the operation leaves the set.
pub trait Rack {
    fn size(&self) -> usize;
    fn act(&self, i: usize, j: usize) -> Option<usize>;
}

/// The class of `x` in `G` with `x ▷ y = x y x⁻¹`.
#[derive(Debug)]
pub struct ConjClassRack<'g> {
    ambient: &'g PermGroup,
    orbit: ClassOrbit,
    table: OnceLock<Vec<u32>>,
}

impl<'g> ConjClassRack<'g> {
    pub fn new(ambient: &'g PermGroup, x: &Perm, cap: usize) -> Result<Self, GroupError> {
        let orbit = conj_orbit(x, ambient.generators(), cap)?;
        Ok(Self::from_orbit(ambient, orbit))
    }

    pub fn from_orbit(ambient: &'g PermGroup, orbit: ClassOrbit) -> Self {
        ConjClassRack {
            ambient,
            orbit,
            table: OnceLock::new(),
        }
    }

    pub fn ambient(&self) -> &'g PermGroup {
        self.ambient
    }

    pub fn orbit(&self) -> &ClassOrbit {
        &self.orbit
    }

    pub fn representative(&self) -> &Perm {
        self.orbit.representative()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.orbit.elements()[i]
    }

    pub fn elements(&self) -> &[Perm] {
        self.orbit.elements()
    }

    pub fn position(&self, x: &Perm) -> Option<usize> {
        self.orbit.position(x)
    }

    fn compute(&self, i: usize, j: usize) -> Option<usize> {
        self.orbit.position(&self.element(i).conj(self.element(j)))
    }

    fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.size();
            let mut t = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    t.push(self.compute(i, j).map_or(u32::MAX, |k| k as u32));
                }
            }
            t
        })
    }
}

impl Rack for ConjClassRack<'_> {
    fn size(&self) -> usize {
        self.orbit.len()
    }

    fn act(&self, i: usize, j: usize) -> Option<usize> {
        if self.size() < TABLE_THRESHOLD {
            let k = self.table()[i * self.size() + j];
            (k != u32::MAX).then_some(k as usize)
        } else {
            self.compute(i, j)
        }
    }
}

/// A rack stored as an explicit table; entries may be edited freely.
#[derive(Debug, Clone)]
pub struct TableRack {
    n: usize,
    table: Vec<u32>,
}

impl TableRack {
    pub fn from_rack<R: Rack + ?Sized>(r: &R) -> Self {
        let n = r.size();
        let table = (0..n * n)
            .map(|k| r.act(k / n, k % n).map_or(u32::MAX, |v| v as u32))
            .collect();
        TableRack { n, table }
    }

    pub fn set(&mut self, i: usize, j: usize, value: usize) {
        self.table[i * self.n + j] = value as u32;
    }
}

impl Rack for TableRack {
    fn size(&self) -> usize {
        self.n
    }

    fn act(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.table[i * self.n + j];
        ((k as usize) < self.n).then_some(k as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    NotClosed { i: usize, j: usize },
    SelfDistributivity { i: usize, j: usize, k: usize },
    NotBijective { i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub size: usize,
    pub exhaustive: bool,
    pub triples_checked: u64,
    pub seed: Option<u64>,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn check_triple<R: Rack + ?Sized>(r: &R, i: usize, j: usize, k: usize) -> Option<AxiomViolation> {
    let jk = match r.act(j, k) {
        Some(v) => v,
        None => return Some(AxiomViolation::NotClosed { i: j, j: k }),
    };
    let lhs = r.act(i, jk);
    let ij = r.act(i, j);
    let ik = r.act(i, k);
    let (Some(lhs), Some(ij), Some(ik)) = (lhs, ij, ik) else {
        return Some(AxiomViolation::NotClosed { i, j });
    };
    match r.act(ij, ik) {
        Some(rhs) if rhs == lhs => None,
        Some(_) => Some(AxiomViolation::SelfDistributivity { i, j, k }),
        None => Some(AxiomViolation::NotClosed { i: ij, j: ik }),
    }
}

fn check_bijective<R: Rack + ?Sized>(r: &R, i: usize) -> Option<AxiomViolation> {
    let mut hit = vec![false; r.size()];
    for j in 0..r.size() {
        match r.act(i, j) {
            Some(v) if !hit[v] => hit[v] = true,
            Some(_) => return Some(AxiomViolation::NotBijective { i }),
            None => return Some(AxiomViolation::NotClosed { i, j }),
        }
    }
    None
}

/// Closure, self-distributivity and bijective left translations.
///
/// Exhaustive when `|R|³ ≤ 10⁶`; otherwise `samples` seeded random triples,
/// with bijectivity checked on the first 64 sampled left factors.
pub fn check_axioms<R: Rack + ?Sized>(r: &R, samples: u64, seed: u64) -> AxiomReport {
    let n = r.size();
    let exhaustive = (n as u64).pow(3) <= EXHAUSTIVE_LIMIT;
    let mut report = AxiomReport {
        size: n,
        exhaustive,
        triples_checked: 0,
        seed: (!exhaustive).then_some(seed),
        violation: None,
    };
    if n == 0 {
        return report;
    }
    if exhaustive {
        exhaustive_scan(r, &mut report);
    } else {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        for t in 0..samples {
            let (i, j, k) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            report.triples_checked += 1;
            let v = check_triple(r, i, j, k)
                .or_else(|| (t < 64).then(|| check_bijective(r, i)).flatten());
            if v.is_some() {
                report.violation = v;
                return report;
            }
        }
    }
    report
}

/// [`check_axioms`] without the size switch: every triple is checked.
pub fn check_axioms_exhaustive<R: Rack + ?Sized>(r: &R) -> AxiomReport {
    let mut report = AxiomReport {
        size: r.size(),
        exhaustive: true,
        triples_checked: 0,
        seed: None,
        violation: None,
    };
    exhaustive_scan(r, &mut report);
    report
}

fn exhaustive_scan<R: Rack + ?Sized>(r: &R, report: &mut AxiomReport) {
    let n = r.size();
    for i in 0..n {
        if let Some(v) = check_bijective(r, i) {
            report.violation = Some(v);
            return;
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.triples_checked += 1;
                if let Some(v) = check_triple(r, i, j, k) {
                    report.violation = Some(v);
                    return;
                }
            }
        }
    }
}

/// Whether the left translations act transitively.
pub fn is_indecomposable<R: Rack + ?Sized>(r: &R) -> bool {
    let n = r.size();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(j) = stack.pop() {
        for i in 0..n {
            if let Some(k) = r.act(i, j) {
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// All pairs commute.
pub fn is_commuting_set(s: &[Perm]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, a)| s[i + 1..].iter().all(|b| a.commutes_with(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::new(
            3,
            [
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn transpositions_of_s3() {
        let g = s3();
        let r = ConjClassRack::new(&g, &g.generators()[0], 100).unwrap();
        assert_eq!(r.size(), 3);
        let report = check_axioms(&r, 0, 0);
        assert!(report.passed() && report.exhaustive);
        assert_eq!(report.triples_checked, 27);
        assert!(is_indecomposable(&r));
        assert!(!is_commuting_set(r.elements()));
    }

    #[test]
    fn singleton_rack() {
        let g = s3();
        let r = ConjClassRack::new(&g, &Perm::identity(3), 100).unwrap();
        assert_eq!(r.size(), 1);
        assert!(check_axioms(&r, 10, 0).passed());
        assert!(is_commuting_set(r.elements()));
    }

    #[test]
    fn corrupted_table_is_caught() {
        let g = s3();
        let r = ConjClassRack::new(&g, &g.generators()[0], 100).unwrap();
        let mut t = TableRack::from_rack(&r);
        assert!(check_axioms(&t, 0, 0).passed());
        let current = t.act(0, 1).unwrap();
        t.set(0, 1, (current + 1) % 3);
        let report = check_axioms(&t, 0, 0);
        assert!(!report.passed());
        assert!(report.violation.is_some());
    }
}
