use serde::Serialize;

use super::CollapseError;
use crate::permgrp::{all_subgroups, ElementSet, Perm, PermGroup};
use crate::rackkit::{ConjClassRack, Rack};

/// How `O ∩ H` looks for one subgroup `H`, tested in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionKind {
    Empty,
    SingleClass,
    Commuting,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupOutcome {
    pub order: usize,
    pub generators: Vec<Perm>,
    pub intersection_size: usize,
    pub h_classes: usize,
    pub kind: IntersectionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KthulhuMode {
    ExhaustiveProof,
    BudgetEvidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KthulhuReport {
    pub class_rep: Perm,
    pub class_size: usize,
    pub mode: KthulhuMode,
    pub subgroups_checked: usize,
    /// True when no subgroup produced [`IntersectionKind::Other`].
    pub proved: bool,
    pub outcomes: Vec<SubgroupOutcome>,
}

/// Runs the subgroup criterion over every subgroup of `G`.
///
/// A class passes when each `O ∩ H` is empty, a single `H`-class, or
/// pairwise commuting; passing proves the class is of none of the types.
pub fn kthulhu_exhaustive(
    g: &PermGroup,
    rack: &ConjClassRack<'_>,
    subgroup_cap: u64,
) -> Result<KthulhuReport, CollapseError> {
    let lattice = all_subgroups(g, subgroup_cap)?;
    let table = &lattice.table;
    let mut in_class = ElementSet::empty(table.len());
    for x in rack.elements() {
        in_class.insert(table.index_of(x).expect("class lies in G"));
    }
    let mut outcomes = Vec::with_capacity(lattice.subgroups.len());
    for h in &lattice.subgroups {
        let inter: Vec<u32> = h.members.intersection(&in_class).iter().collect();
        let mut h_classes = 0;
        let mut seen = ElementSet::empty(table.len());
        for &x in &inter {
            if !seen.insert(x) {
                continue;
            }
            h_classes += 1;
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for &c in &h.generators {
                    let z = table.conj(c, y);
                    if seen.insert(z) {
                        stack.push(z);
                    }
                }
            }
        }
        let commuting = inter.iter().enumerate().all(|(i, &a)| {
            inter[i + 1..]
                .iter()
                .all(|&b| table.mul(a, b) == table.mul(b, a))
        });
        let kind = if inter.is_empty() {
            IntersectionKind::Empty
        } else if h_classes == 1 {
            IntersectionKind::SingleClass
        } else if commuting {
            IntersectionKind::Commuting
        } else {
            IntersectionKind::Other
        };
        outcomes.push(SubgroupOutcome {
            order: h.order(),
            generators: h
                .generators
                .iter()
                .map(|&i| table.element(i).clone())
                .collect(),
            intersection_size: inter.len(),
            h_classes,
            kind,
        });
    }
    Ok(KthulhuReport {
        class_rep: rack.representative().clone(),
        class_size: rack.size(),
        mode: KthulhuMode::ExhaustiveProof,
        subgroups_checked: outcomes.len(),
        proved: outcomes.iter().all(|o| o.kind != IntersectionKind::Other),
        outcomes,
    })
}
