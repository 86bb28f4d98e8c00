use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};

use super::{GroupError, Perm, PermGroup};

/// Orbit of a point under `gens`, in BFS order.
pub fn point_orbit(gens: &[Perm], point: u32, degree: usize) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut k = 0;
    while k < orbit.len() {
        for g in gens {
            let y = g.apply(orbit[k]);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        k += 1;
    }
    orbit
}

/// A conjugation orbit with one conjugator per element.
///
/// `conjugators[i].conj(&representative) == elements[i]`; element 0 is the
/// representative itself.
#[derive(Clone, Debug)]
pub struct ClassOrbit {
    elements: Vec<Perm>,
    conjugators: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
}

impl ClassOrbit {
    pub fn representative(&self) -> &Perm {
        &self.elements[0]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn conjugators(&self) -> &[Perm] {
        &self.conjugators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.index.contains_key(x)
    }

    /// A conjugator taking the representative to `x`, if `x` is in the orbit.
    pub fn conjugator_to(&self, x: &Perm) -> Option<&Perm> {
        self.position(x).map(|i| &self.conjugators[i])
    }
}

/// BFS closure of `{x}` under `g ▷ ·` for `g` in `gens`, generator-index order.
pub fn conj_orbit(x: &Perm, gens: &[Perm], cap: usize) -> Result<ClassOrbit, GroupError> {
    let mut elements = vec![x.clone()];
    let mut conjugators = vec![Perm::identity(x.degree())];
    let mut index = FxHashMap::default();
    index.insert(x.clone(), 0u32);
    let mut k = 0;
    while k < elements.len() {
        for g in gens {
            let y = g.conj(&elements[k]);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(GroupError::OrbitCap { cap });
                }
                index.insert(y.clone(), elements.len() as u32);
                conjugators.push(g.compose(&conjugators[k]));
                elements.push(y);
            }
        }
        k += 1;
    }
    Ok(ClassOrbit {
        elements,
        conjugators,
        index,
    })
}

/// Size of the conjugation orbit of `x` under `gens`.
pub fn conj_orbit_size(x: &Perm, gens: &[Perm], cap: usize) -> Result<usize, GroupError> {
    let mut seen = FxHashSet::default();
    seen.insert(x.clone());
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g.conj(&y);
            if !seen.contains(&z) {
                if seen.len() >= cap {
                    return Err(GroupError::OrbitCap { cap });
                }
                seen.insert(z.clone());
                queue.push_back(z);
            }
        }
    }
    Ok(seen.len())
}

/// Whether `y` lies in the conjugation orbit of `x` under `gens`; stops as
/// soon as `y` is reached.
pub fn same_conj_orbit(x: &Perm, y: &Perm, gens: &[Perm], cap: usize) -> Result<bool, GroupError> {
    if x == y {
        return Ok(true);
    }
    let mut seen = FxHashSet::default();
    seen.insert(x.clone());
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = g.conj(&a);
            if &b == y {
                return Ok(true);
            }
            if !seen.contains(&b) {
                if seen.len() >= cap {
                    return Err(GroupError::OrbitCap { cap });
                }
                seen.insert(b.clone());
                queue.push_back(b);
            }
        }
    }
    Ok(false)
}

/// `C_G(x)`, generated by Schreier generators of the conjugation action on
/// the orbit of `x`. Works for any `x` of the right degree, not only `x in G`.
pub fn centralizer(g: &PermGroup, x: &Perm, cap: usize) -> Result<PermGroup, GroupError> {
    let orbit = conj_orbit(x, g.generators(), cap)?;
    Ok(centralizer_from_orbit(g, &orbit))
}

pub fn centralizer_from_orbit(g: &PermGroup, orbit: &ClassOrbit) -> PermGroup {
    let target = g.order() / orbit.len() as u64;
    let mut c = PermGroup::trivial(g.degree());
    if target == 1 {
        return c;
    }
    for (k, y) in orbit.elements().iter().enumerate() {
        for s in g.generators() {
            let z = s.conj(y);
            let j = orbit.position(&z).expect("orbit closed under generators");
            let sg = orbit.conjugators[j]
                .inverse()
                .compose(&s.compose(&orbit.conjugators[k]));
            c.add_generator(sg).expect("degree matches");
            if c.order() == target {
                return c;
            }
        }
    }
    c
}

/// Whether `x^-1` is conjugate to `x` under `G`.
pub fn is_real(g: &PermGroup, x: &Perm, cap: usize) -> Result<bool, GroupError> {
    same_conj_orbit(x, &x.inverse(), g.generators(), cap)
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
    fn orbits_in_s3() {
        let g = s3();
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let o = conj_orbit(&c, g.generators(), 100).unwrap();
        assert_eq!(o.len(), 2);
        assert!(o.contains(&c.inverse()));
        for (x, u) in o.elements().iter().zip(o.conjugators()) {
            assert_eq!(&u.conj(&c), x);
        }
        let id = Perm::identity(3);
        assert_eq!(conj_orbit(&id, g.generators(), 100).unwrap().len(), 1);
        assert_eq!(
            conj_orbit_size(&g.generators()[0], g.generators(), 100).unwrap(),
            3
        );
    }

    #[test]
    fn orbit_cap_is_enforced() {
        let g = s3();
        let t = &g.generators()[0];
        assert!(matches!(
            conj_orbit(t, g.generators(), 2),
            Err(GroupError::OrbitCap { cap: 2 })
        ));
    }

    #[test]
    fn centralizers() {
        let g = s3();
        assert_eq!(centralizer(&g, &Perm::identity(3), 100).unwrap().order(), 6);
        let t = g.generators()[0].clone();
        let c = centralizer(&g, &t, 100).unwrap();
        assert_eq!(c.order(), 2);
        assert!(c.contains(&t));
        let cyclic = PermGroup::new(4, [Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()]).unwrap();
        let x = cyclic.generators()[0].pow(2);
        assert_eq!(centralizer(&cyclic, &x, 100).unwrap().order(), 4);
    }

    #[test]
    fn reality() {
        let g = s3();
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert!(is_real(&g, &c, 100).unwrap());
        let a3 = PermGroup::new(3, [c.clone()]).unwrap();
        assert!(!is_real(&a3, &c, 100).unwrap());
        assert!(same_conj_orbit(&c, &c.inverse(), g.generators(), 100).unwrap());
    }
}
