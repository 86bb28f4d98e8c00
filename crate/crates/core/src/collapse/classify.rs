use serde::Serialize;

use super::{find_type, CollapseError, CollapseKind, SearchOptions, SearchOutcome, SCHEMA};
use crate::permgrp::{centralizer_from_orbit, is_real, Perm};
use crate::rackkit::{ConjClassRack, Rack};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectorOutcome {
    pub kind: CollapseKind,
    #[serde(flatten)]
    pub outcome: SearchOutcome,
}

/// One document per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub schema: &'static str,
    pub group: String,
    pub class_rep: Perm,
    pub class_size: usize,
    pub element_order: u64,
    pub centralizer_order: u64,
    pub is_real: bool,
    pub detectors: Vec<DetectorOutcome>,
    /// `collapses` when some certificate was found, otherwise `no_certificate`
    /// (evidence, never a proof).
    pub status: &'static str,
}

impl ClassReport {
    pub fn certificates(&self) -> impl Iterator<Item = &super::CollapseCertificate> {
        self.detectors
            .iter()
            .filter_map(|d| d.outcome.certificate())
    }
}

/// Runs the C, D and F detectors on one class.
pub fn classify(
    rack: &ConjClassRack<'_>,
    opts: &SearchOptions,
) -> Result<ClassReport, CollapseError> {
    let g = rack.ambient();
    let rep = rack.representative();
    let mut detectors = Vec::new();
    for kind in CollapseKind::ALL {
        detectors.push(DetectorOutcome {
            kind,
            outcome: find_type(kind, rack, opts)?,
        });
    }
    let found = detectors.iter().any(|d| d.outcome.certificate().is_some());
    Ok(ClassReport {
        schema: SCHEMA,
        group: opts.group_label.clone(),
        class_rep: rep.clone(),
        class_size: rack.size(),
        element_order: rep.order(),
        centralizer_order: centralizer_from_orbit(g, rack.orbit()).order(),
        is_real: is_real(g, rep, opts.caps.orbit)?,
        detectors,
        status: if found { "collapses" } else { "no_certificate" },
    })
}
