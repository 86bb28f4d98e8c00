use rustc_hash::FxHashSet;

use super::{conj_orbit, ClassOrbit, GroupError, PermGroup};

/// Partition of `G` into conjugacy classes.
///
/// Each class is a BFS orbit started at its lexicographically smallest
/// element; classes are listed in increasing order of that representative,
/// so the identity comes first.
pub fn conjugacy_classes(g: &PermGroup, cap: u64) -> Result<Vec<ClassOrbit>, GroupError> {
    let mut elements = g.elements(cap)?;
    elements.sort_unstable();
    let mut assigned: FxHashSet<&_> = FxHashSet::default();
    let mut classes = Vec::new();
    for x in &elements {
        if assigned.contains(x) {
            continue;
        }
        let orbit = conj_orbit(x, g.generators(), usize::MAX)?;
        for y in orbit.elements() {
            let k = elements.binary_search(y).expect("orbit stays inside G");
            assigned.insert(&elements[k]);
        }
        classes.push(orbit);
    }
    Ok(classes)
}
