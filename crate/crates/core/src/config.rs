//! Run configuration shared by the library drivers and the CLI.

use serde::{Deserialize, Serialize};

/// Size limits; exceeding one is reported, never silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest conjugation orbit a BFS may build.
    pub orbit: usize,
    /// Largest group whose elements may be listed.
    pub group: u64,
    /// Largest group whose subgroup lattice may be enumerated.
    pub subgroups: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            orbit: 2_000_000,
            group: 1_000_000,
            subgroups: 2500,
        }
    }
}

/// Candidate counts per detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Pairs `(r, s)` examined by the D and C scans.
    pub pairs: u64,
    /// Quadruples examined by the exhaustive F scan.
    pub quadruples: u64,
    /// Samples drawn by the random strategy.
    pub random: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            pairs: 1_000_000,
            quadruples: 2_000_000,
            random: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct RunConfig {
    pub seed: u64,
    pub caps: Caps,
    pub budgets: Budgets,
    pub output: Option<String>,
}
