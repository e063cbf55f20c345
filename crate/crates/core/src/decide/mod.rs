//! Necessary conditions, substitutability witnesses and the verdict.

mod fastpath;
mod lattice;
mod simplex;
mod verdict;
mod witness;

use serde::{Deserialize, Serialize};

use crate::exactnum::NumError;

pub use fastpath::{corollary_fastpath, FastPathCondition};
pub use lattice::{search_side, substitutable, SearchOutcome};
pub use simplex::feasible;
pub use verdict::{
    branch4_rule, check_necessary, verdict, DecideConfig, LetterStatus, Necessary,
    NotEquivalentReason, UnknownReason, Verdict,
};
pub use witness::{admissible_last, SubstitutabilityWitness, WitnessSide};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("letter {0} is not a touching letter")]
    NotTouching(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("exponent {0} does not fit the witness format")]
    Overflow(u64),
    #[error("constructed witness fails its identity: {0}")]
    Unverified(SubstitutabilityWitness),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Limits for the witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Total letters in `j`.
    pub letters: usize,
    /// Bound on `k` and `k'`.
    pub exponent: u64,
    /// Distinct search states per side.
    pub states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            letters: 40,
            exponent: 60,
            states: 250_000,
        }
    }
}

impl Budget {
    /// Every limit scaled by `f`.
    pub fn scaled(&self, f: usize) -> Budget {
        Budget {
            letters: self.letters * f,
            exponent: self.exponent * f as u64,
            states: self.states * f,
        }
    }
}
