//! Diagonal braidings from abelian subracks, generalized Dynkin diagrams,
//! and the infinite-dimensionality rules applied to them.

mod braiding;
mod character;
mod lemmas;
mod root;

pub use braiding::{
    az_real_odd, az_real_odd_verdict, gdd, verdict, AbelianSetting, BraidingMatrix, Gdd, GddEdge,
    Outcome, Rule, Verdict, Witness,
};
pub use character::{Character, CyclicDecomposition};
pub use lemmas::{
    acca_span, verify_lemma_acca, verify_prop_g2_uni, AccaCharacter, AccaMode, AccaReport,
    G2Character, G2Report, PowerCycle, SpanReport,
};
pub use root::RootOfUnity;

use thiserror::Error;

use crate::ffield::FieldError;
use crate::permgrp::{GroupError, PermGroup};
use crate::ree_small::ReeError;
use crate::suzuki::SuzukiError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NicholsError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Suzuki(#[from] SuzukiError),
    #[error(transparent)]
    Ree(#[from] ReeError),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("cyclic factors do not generate the group as a direct product")]
    DecompositionFailed,
    #[error("element is not in the abelian subgroup")]
    NotInSubgroup,
    #[error("abelian subgroup does not centralize the element")]
    NotCentralizing,
    #[error("g_j⁻¹g_i▷g leaves the abelian subgroup at (i, j) = ({i}, {j})")]
    ClosureViolation { i: usize, j: usize },
    #[error("conjugator {0} does not give a valid transversal")]
    BadTransversal(usize),
    #[error("character does not match the decomposition")]
    CharacterMismatch,
    #[error("h = {0} is outside 1..=2")]
    UnsupportedH(usize),
    #[error("no rule fired for character {0:?}")]
    UnknownVerdict(Vec<u64>),
    #[error("no cyclic conjugator found")]
    NoCyclicConjugator,
}

/// [`CyclicDecomposition::new`] without an element cap.
pub fn cyclic_decomposition(a: &PermGroup) -> Result<CyclicDecomposition, NicholsError> {
    CyclicDecomposition::new(a, u64::MAX)
}

/// All characters of `a`, exponent vectors in lexicographic order.
pub fn characters(a: &PermGroup) -> Result<Vec<Character>, NicholsError> {
    Ok(cyclic_decomposition(a)?.characters())
}
