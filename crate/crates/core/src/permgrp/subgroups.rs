use rustc_hash::{FxHashMap, FxHashSet};

use super::{GroupError, Perm, PermGroup};

/// The elements of a small group with a full multiplication table.
#[derive(Clone, Debug)]
pub struct ElementTable {
    elements: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

impl ElementTable {
    /// Elements sorted lexicographically; fails above `cap`.
    pub fn new(g: &PermGroup, cap: u64) -> Result<Self, GroupError> {
        let mut elements = g.elements(cap)?;
        elements.sort_unstable();
        let n = elements.len();
        let index: FxHashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&a.compose(b)]);
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        let identity = index[&Perm::identity(g.degree())];
        Ok(ElementTable {
            elements,
            index,
            mul,
            inv,
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `a ▷ x`.
    #[inline]
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(a, x), self.inv(a))
    }

    /// Closure of `gens` as an element set.
    pub fn generate(&self, gens: &[u32]) -> ElementSet {
        let mut set = ElementSet::empty(self.len());
        set.insert(self.identity);
        let mut list = vec![self.identity];
        let mut k = 0;
        while k < list.len() {
            for &s in gens {
                let y = self.mul(list[k], s);
                if set.insert(y) {
                    list.push(y);
                }
            }
            k += 1;
        }
        set
    }
}

/// A subset of an [`ElementTable`] as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        self.words[i as usize / 64] >> (i % 64) & 1 == 1
    }

    /// Returns whether `i` was newly inserted.
    pub fn insert(&mut self, i: u32) -> bool {
        let w = &mut self.words[i as usize / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| (k * 64 + b) as u32)
        })
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub members: ElementSet,
    /// Generator indices into the element table.
    pub generators: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn to_group(&self, table: &ElementTable, degree: usize) -> PermGroup {
        PermGroup::new(
            degree,
            self.generators.iter().map(|&i| table.element(i).clone()),
        )
        .expect("degree matches")
    }
}

/// Every subgroup of a small group, each once, sorted by (order, members).
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub table: ElementTable,
    pub subgroups: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn position(&self, members: &ElementSet) -> Option<usize> {
        self.subgroups.iter().position(|s| &s.members == members)
    }
}

/// Cyclic subgroups augmented one cyclic generator at a time until no new
/// subgroup appears.
pub fn all_subgroups(g: &PermGroup, cap: u64) -> Result<SubgroupLattice, GroupError> {
    let table = ElementTable::new(g, cap)?;
    let n = table.len() as u32;

    let mut seen: FxHashSet<ElementSet> = FxHashSet::default();
    let mut cyclic_gens = Vec::new();
    let mut subgroups = Vec::new();
    for x in 0..n {
        let set = table.generate(&[x]);
        if seen.insert(set.clone()) {
            cyclic_gens.push(x);
            let generators = if x == table.identity() {
                vec![]
            } else {
                vec![x]
            };
            subgroups.push(Subgroup {
                members: set,
                generators,
            });
        }
    }

    let mut k = 0;
    while k < subgroups.len() {
        for &c in &cyclic_gens {
            if subgroups[k].members.contains(c) {
                continue;
            }
            let mut gens = subgroups[k].generators.clone();
            gens.push(c);
            let set = table.generate(&gens);
            if seen.insert(set.clone()) {
                subgroups.push(Subgroup {
                    members: set,
                    generators: gens,
                });
            }
        }
        k += 1;
    }
    subgroups.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    Ok(SubgroupLattice { table, subgroups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, cycles: &[&[&[u32]]]) -> PermGroup {
        PermGroup::new(n, cycles.iter().map(|c| Perm::from_cycles(n, c).unwrap())).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        let c5 = group(5, &[&[&[0, 1, 2, 3, 4]]]);
        assert_eq!(all_subgroups(&c5, 2500).unwrap().subgroups.len(), 2);
        let s3 = group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let lat = all_subgroups(&s3, 2500).unwrap();
        let orders: Vec<usize> = lat.subgroups.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let s4 = group(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]);
        assert_eq!(all_subgroups(&s4, 2500).unwrap().subgroups.len(), 30);
    }

    #[test]
    fn closed_under_intersection() {
        let s4 = group(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]);
        let lat = all_subgroups(&s4, 2500).unwrap();
        for a in &lat.subgroups {
            for b in &lat.subgroups {
                assert!(lat.position(&a.members.intersection(&b.members)).is_some());
            }
            assert_eq!(a.to_group(&lat.table, 4).order() as usize, a.order());
        }
    }

    #[test]
    fn table_is_consistent() {
        let s3 = group(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let t = ElementTable::new(&s3, 100).unwrap();
        for a in 0..6 {
            assert_eq!(t.mul(a, t.inv(a)), t.identity());
            for b in 0..6 {
                assert_eq!(t.element(t.mul(a, b)), &t.element(a).compose(t.element(b)));
                assert_eq!(t.element(t.conj(a, b)), &t.element(a).conj(t.element(b)));
            }
        }
        assert!(matches!(
            all_subgroups(&s3, 5),
            Err(GroupError::TooLarge { .. })
        ));
    }
}
