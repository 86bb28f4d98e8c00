use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{check_type_c, check_type_d, check_type_f, CollapseKind};
use crate::permgrp::{conj_orbit, Perm, PermGroup};

pub const SCHEMA: &str = "rack-collapse/1";

/// Enough data to rebuild the ambient group from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub label: String,
    pub degree: usize,
    pub order: u64,
    pub generators: Vec<Perm>,
}

impl GroupInfo {
    pub fn new(label: impl Into<String>, g: &PermGroup) -> Self {
        GroupInfo {
            label: label.into(),
            degree: g.degree(),
            order: g.order(),
            generators: g.generators().to_vec(),
        }
    }
}

/// A witness tuple for type C, D or F.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseCertificate {
    pub schema: String,
    pub kind: CollapseKind,
    pub group: GroupInfo,
    pub class_rep: Perm,
    /// `(r, s)` for C and D, `(r₁, r₂, r₃, r₄)` for F.
    pub witnesses: Vec<Perm>,
    /// Generators of `H`, type C only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_generators: Option<Vec<Perm>>,
    pub seed: Option<u64>,
    pub verified: bool,
}

impl CollapseCertificate {
    pub fn new(
        kind: CollapseKind,
        group: GroupInfo,
        class_rep: Perm,
        witnesses: Vec<Perm>,
        h_generators: Option<Vec<Perm>>,
        seed: Option<u64>,
    ) -> Self {
        CollapseCertificate {
            schema: SCHEMA.to_string(),
            kind,
            group,
            class_rep,
            witnesses,
            h_generators,
            seed,
            verified: false,
        }
    }

    /// Verifies and marks the certificate; fails if verification fails.
    pub fn seal(mut self, cap: usize) -> Result<Self, VerifyFailure> {
        self.verified = false;
        verify_detailed(&self, cap)?;
        self.verified = true;
        Ok(self)
    }

    /// The certificate with every witness and `H` generator conjugated by `g`.
    pub fn conjugated_by(&self, g: &Perm) -> Self {
        let mut c = self.clone();
        c.witnesses = self.witnesses.iter().map(|w| g.conj(w)).collect();
        c.h_generators = self
            .h_generators
            .as_ref()
            .map(|h| h.iter().map(|x| g.conj(x)).collect());
        c.verified = false;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum VerifyFailure {
    #[error("unknown schema {0:?}")]
    Schema(String),
    #[error("element of degree {found} in a group of degree {expected}")]
    Degree { expected: usize, found: usize },
    #[error("rebuilt group has order {actual}, certificate claims {claimed}")]
    GroupOrder { claimed: u64, actual: u64 },
    #[error("{0} is not an element of the ambient group")]
    NotInGroup(String),
    #[error("witness {0} is not conjugate to the class representative")]
    NotConjugate(usize),
    #[error("wrong number of witnesses for type {kind}: {found}")]
    Arity { kind: CollapseKind, found: usize },
    #[error("type C certificate without H generators")]
    MissingH,
    #[error("defining conditions of type {0} fail")]
    Condition(CollapseKind),
    #[error("check aborted: {0}")]
    Aborted(String),
}

/// Recomputes everything: the ambient group, membership and conjugacy of
/// each witness (through an explicit conjugator that is itself sifted),
/// and the defining conditions of the claimed type.
pub fn verify_detailed(cert: &CollapseCertificate, cap: usize) -> Result<(), VerifyFailure> {
    if cert.schema != SCHEMA {
        return Err(VerifyFailure::Schema(cert.schema.clone()));
    }
    let degree = cert.group.degree;
    let all = cert
        .group
        .generators
        .iter()
        .chain([&cert.class_rep])
        .chain(&cert.witnesses)
        .chain(cert.h_generators.iter().flatten());
    for x in all {
        if x.degree() != degree {
            return Err(VerifyFailure::Degree {
                expected: degree,
                found: x.degree(),
            });
        }
    }
    let g = PermGroup::new(degree, cert.group.generators.iter().cloned())
        .map_err(|e| VerifyFailure::Aborted(e.to_string()))?;
    if g.order() != cert.group.order {
        return Err(VerifyFailure::GroupOrder {
            claimed: cert.group.order,
            actual: g.order(),
        });
    }
    if !g.contains(&cert.class_rep) {
        return Err(VerifyFailure::NotInGroup("class representative".into()));
    }
    for (i, h) in cert.h_generators.iter().flatten().enumerate() {
        if !g.contains(h) {
            return Err(VerifyFailure::NotInGroup(format!("H generator {i}")));
        }
    }
    let orbit = conj_orbit(&cert.class_rep, g.generators(), cap)
        .map_err(|e| VerifyFailure::Aborted(e.to_string()))?;
    for (i, w) in cert.witnesses.iter().enumerate() {
        if !g.contains(w) {
            return Err(VerifyFailure::NotInGroup(format!("witness {i}")));
        }
        let c = orbit
            .conjugator_to(w)
            .ok_or(VerifyFailure::NotConjugate(i))?;
        if !g.contains(c) || &c.conj(&cert.class_rep) != w {
            return Err(VerifyFailure::NotConjugate(i));
        }
    }
    let expected = if cert.kind == CollapseKind::F { 4 } else { 2 };
    if cert.witnesses.len() != expected {
        return Err(VerifyFailure::Arity {
            kind: cert.kind,
            found: cert.witnesses.len(),
        });
    }
    let w = &cert.witnesses;
    let ok = match cert.kind {
        CollapseKind::D => check_type_d(&w[0], &w[1], cap),
        CollapseKind::C => {
            let h = cert.h_generators.as_ref().ok_or(VerifyFailure::MissingH)?;
            check_type_c(&w[0], &w[1], h, cap)
        }
        CollapseKind::F => check_type_f(w, cap),
    }
    .map_err(|e| VerifyFailure::Aborted(e.to_string()))?;
    if ok {
        Ok(())
    } else {
        Err(VerifyFailure::Condition(cert.kind))
    }
}

/// `verify_detailed` with the default orbit cap, as a boolean.
pub fn verify(cert: &CollapseCertificate) -> bool {
    verify_detailed(cert, crate::config::Caps::default().orbit).is_ok()
}
