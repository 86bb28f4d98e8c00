use rand::{Rng, RngExt};
use rustc_hash::FxHashSet;

use super::{GroupError, Perm};

const NONE: u32 = u32::MAX;

/// One level of the stabilizer chain: `G^(i)` acting on the orbit of its
/// base point, with explicit coset representatives.
#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// Position of each point in `orbit`, or `NONE`.
    pos: Vec<u32>,
    /// `trans[k]` maps `base` to `orbit[k]`.
    trans: Vec<Perm>,
    trans_inv: Vec<Perm>,
    /// Schreier generators (orbit position, generator index) already sifted.
    checked: FxHashSet<(u32, u32)>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            trans: vec![Perm::identity(degree)],
            trans_inv: vec![Perm::identity(degree)],
            checked: FxHashSet::default(),
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        let gi = self.gens.len() - 1;
        let old = self.orbit.len();
        for k in 0..old {
            self.extend(k, gi);
        }
        let mut k = old;
        while k < self.orbit.len() {
            for gj in 0..self.gens.len() {
                self.extend(k, gj);
            }
            k += 1;
        }
    }

    fn extend(&mut self, k: usize, gi: usize) {
        let image = self.gens[gi].apply(self.orbit[k]);
        if self.pos[image as usize] == NONE {
            let u = self.gens[gi].compose(&self.trans[k]);
            self.pos[image as usize] = self.orbit.len() as u32;
            self.orbit.push(image);
            self.trans_inv.push(u.inverse());
            self.trans.push(u);
        }
    }
}

/// A permutation group with a base and strong generating set, built by the
/// deterministic incremental Schreier-Sims algorithm.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn new(
        degree: usize,
        generators: impl IntoIterator<Item = Perm>,
    ) -> Result<Self, GroupError> {
        let mut g = Self::trivial(degree);
        for p in generators {
            g.add_generator(p)?;
        }
        Ok(g)
    }

    /// Degree is taken from the first generator; `gens` must be nonempty.
    pub fn from_gens(gens: &[Perm]) -> Result<Self, GroupError> {
        let degree = gens.first().ok_or(GroupError::EmptyGenerators)?.degree();
        Self::new(degree, gens.iter().cloned())
    }

    /// Adds `g` to the generating set; returns whether the group grew.
    pub fn add_generator(&mut self, g: Perm) -> Result<bool, GroupError> {
        self.check_degree(&g)?;
        let (residue, j) = self.strip_from(&g, 0);
        self.generators.push(g);
        if residue.is_identity() {
            return Ok(false);
        }
        self.insert_residue(residue, 0, j);
        self.complete(j);
        Ok(true)
    }

    fn check_degree(&self, g: &Perm) -> Result<(), GroupError> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(())
    }

    /// Adds `y` to levels `from..=to`, opening a new level when `to` is past
    /// the current base.
    fn insert_residue(&mut self, y: Perm, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = y.first_moved_point().expect("nontrivial residue");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=to {
            self.levels[l].add_gen(y.clone());
        }
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let li = i as usize;
            match self.first_failing_schreier(li) {
                None => i -= 1,
                Some((y, j)) => {
                    self.insert_residue(y, li + 1, j);
                    i = j as isize;
                }
            }
        }
    }

    fn first_failing_schreier(&mut self, li: usize) -> Option<(Perm, usize)> {
        let mut k = 0;
        while k < self.levels[li].orbit.len() {
            for gi in 0..self.levels[li].gens.len() {
                if self.levels[li].checked.contains(&(k as u32, gi as u32)) {
                    continue;
                }
                let level = &self.levels[li];
                let s = &level.gens[gi];
                let image = s.apply(level.orbit[k]);
                let u_inv = &level.trans_inv[level.pos[image as usize] as usize];
                let schreier = u_inv.compose(&s.compose(&level.trans[k]));
                let (residue, j) = self.strip_from(&schreier, li + 1);
                if residue.is_identity() {
                    self.levels[li].checked.insert((k as u32, gi as u32));
                } else {
                    return Some((residue, j));
                }
            }
            k += 1;
        }
        None
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn strip_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            let k = level.pos[beta as usize];
            if k == NONE {
                return (h, l);
            }
            h = level.trans_inv[k as usize].compose(&h);
        }
        (h, self.levels.len())
    }

    pub fn strip(&self, g: &Perm) -> (Perm, usize) {
        self.strip_from(g, 0)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.strip_from(g, 0).0.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators, first level (the full set) only.
    pub fn strong_generators(&self) -> &[Perm] {
        self.levels
            .first()
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }

    pub fn order(&self) -> u64 {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
            .expect("group order overflows u64")
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Orbit of `point` under the whole group, in BFS order.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        super::orbit::point_orbit(&self.generators, point, self.degree)
    }

    /// The element with mixed-radix index `idx < order`, as a product of
    /// transversal elements `u_0 u_1 ... u_(k-1)`.
    pub fn element_at(&self, mut idx: u64) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let n = level.orbit.len() as u64;
            g = level.trans[(idx % n) as usize].compose(&g);
            idx /= n;
        }
        g
    }

    /// Uniform random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = rng.random_range(0..level.orbit.len());
            g = level.trans[k].compose(&g);
        }
        g
    }

    /// All elements; fails if the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>, GroupError> {
        let order = self.order();
        if order > cap {
            return Err(GroupError::TooLarge { order, cap });
        }
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for u in &level.trans {
                for e in &out {
                    next.push(u.compose(e));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// `G x H` acting on the disjoint union of the point sets.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let id_g = Perm::identity(self.degree);
        let id_h = Perm::identity(other.degree);
        let gens = self
            .generators
            .iter()
            .map(|g| g.direct_sum(&id_h))
            .chain(other.generators.iter().map(|h| id_g.direct_sum(h)));
        PermGroup::new(self.degree + other.degree, gens).expect("degrees agree by construction")
    }
}

/// Result of a capped closure.
#[derive(Debug, Clone)]
pub enum Closure {
    Group(PermGroup),
    TooLarge { order: u64 },
}

/// The subgroup generated by `gens`, or `TooLarge` when its order exceeds `cap`.
pub fn closure(degree: usize, gens: &[Perm], cap: u64) -> Result<Closure, GroupError> {
    let g = PermGroup::new(degree, gens.iter().cloned())?;
    let order = g.order();
    Ok(if order > cap {
        Closure::TooLarge { order }
    } else {
        Closure::Group(g)
    })
}
