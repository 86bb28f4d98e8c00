//! Finite-field, permutation-group and rack tooling for collapse detection
//! over small Suzuki and Ree groups, plus diagonal braiding analysis.

pub mod checks;
pub mod collapse;
pub mod config;
pub mod ffield;
pub mod nichols;
pub mod permgrp;
pub mod projective;
pub mod rackkit;
pub mod ree_small;
pub mod suzuki;

pub use collapse::{CollapseCertificate, CollapseKind, SearchOutcome};
pub use config::{Budgets, Caps, RunConfig};
pub use ffield::{FieldCtx, FieldElem};
pub use nichols::{BraidingMatrix, RootOfUnity, Verdict};
pub use permgrp::{Perm, PermGroup};
